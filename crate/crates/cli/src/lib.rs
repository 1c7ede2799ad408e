//! The `sturm` command line: argument parsing, command dispatch and the
//! text, JSON and CSV renderings of every result.

use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use sturm_core::analysis::{
    boundary_classify, oc_from_directive, reconstruct_from_oc, run_profile, square_factorization,
    BoundaryEvent, BoundaryKind, FactorizationReport,
};
use sturm_core::exec::Exec;
use sturm_core::sturmian::generate_prefix;
use sturm_core::verify::{self, Fault, VerifyConfig, VerifyReport};
use sturm_core::words::{oc_sequence, runs, Run};
use sturm_core::{DirectiveSequence, Error, OcSequence, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sturm",
    version,
    about = "Open and closed prefixes of Sturmian words"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a prefix of the standard Sturmian word of a directive
    Generate {
        /// e.g. "2,2,1,(1)": terms d_0, d_1, ... with an optional periodic block
        #[arg(long)]
        directive: DirectiveSequence,
        #[arg(long)]
        length: usize,
    },
    /// Open/closed prefix bits of a word, or of a directive's word checked
    /// against the continuant prediction
    Oc {
        /// Word over {a, b}; read from stdin when neither it nor --directive is given
        word: Option<String>,
        #[arg(long, requires = "length", conflicts_with = "word")]
        directive: Option<DirectiveSequence>,
        #[arg(long)]
        length: Option<usize>,
    },
    /// Classify every prefix as open or closed and name the run boundaries
    Classify {
        #[arg(long)]
        directive: DirectiveSequence,
        #[arg(long)]
        length: usize,
    },
    /// Factor the letter-swapped word into squares of reversed standard words
    Factorize {
        #[arg(long)]
        directive: DirectiveSequence,
        #[arg(long)]
        count: usize,
    },
    /// Rebuild the a-initial Sturmian word with the given oc bits
    Reconstruct {
        /// Bits over {0, 1}; read from stdin when absent
        bits: Option<String>,
    },
    /// Run every invariant suite over small words and a directive family
    Verify {
        #[arg(long, default_value_t = 14)]
        max_word_len: usize,
        #[arg(long, default_value_t = 4)]
        family_max_entry: usize,
        #[arg(long, default_value_t = 5)]
        family_terms: usize,
        /// Disable the parallel sweep
        #[arg(long)]
        sequential: bool,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    ClosedFlip,
    OcBitFlip,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Fault {
        match f {
            FaultArg::ClosedFlip => Fault::ClosedFlip,
            FaultArg::OcBitFlip => Fault::OcBitFlip,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerateOutput {
    pub directive: DirectiveSequence,
    pub length: usize,
    pub word: Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Match,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OcOutput {
    pub word: Word,
    pub directive: Option<DirectiveSequence>,
    pub bits: OcSequence,
    pub runs: Vec<Run>,
    pub predicted_k: Option<Vec<usize>>,
    pub predicted_bits: Option<OcSequence>,
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRow {
    pub length: usize,
    pub prefix: Word,
    pub closed: bool,
    pub boundary: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub directive: DirectiveSequence,
    pub rows: Vec<ClassifyRow>,
    pub events: Vec<BoundaryEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizeOutput {
    pub directive: DirectiveSequence,
    pub report: FactorizationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructOutput {
    pub bits: OcSequence,
    pub word: Word,
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::NotSturmianOc { .. } => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        let message = if e.kind() == io::ErrorKind::BrokenPipe {
            String::new()
        } else {
            e.to_string()
        };
        Failure {
            code: EXIT_FAILURE,
            message,
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Failure {
        if e.is_io_error() {
            if let csv::ErrorKind::Io(io) = e.into_kind() {
                return io.into();
            }
            unreachable!();
        }
        Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: Cli, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let format = cli.format;
    let result = match cli.command {
        Command::Generate { directive, length } => cmd_generate(directive, length, format, out),
        Command::Oc {
            word,
            directive,
            length,
        } => match directive {
            Some(d) => cmd_oc_directive(d, length.unwrap_or(0), format, out),
            None => read_arg(word, input)
                .and_then(|w| Ok(w.parse::<Word>()?))
                .and_then(|w| cmd_oc_word(w, format, out)),
        },
        Command::Classify { directive, length } => cmd_classify(directive, length, format, out),
        Command::Factorize { directive, count } => cmd_factorize(directive, count, format, out),
        Command::Reconstruct { bits } => read_arg(bits, input)
            .and_then(|b| Ok(b.parse::<OcSequence>()?))
            .and_then(|b| cmd_reconstruct(b, format, out)),
        Command::Verify {
            max_word_len,
            family_max_entry,
            family_terms,
            sequential,
            inject_fault,
        } => {
            let cfg = VerifyConfig {
                max_word_len,
                family_max_entry,
                family_terms,
                exec: if sequential {
                    Exec::Sequential
                } else {
                    Exec::default()
                },
                fault: inject_fault.map(Fault::from),
            };
            cmd_verify(&cfg, format, out)
        }
    };
    match result {
        Ok(code) => code,
        // a closed pipe (e.g. `| head`) is not worth a message
        Err(f) if f.message.is_empty() => f.code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_arg(arg: Option<String>, input: &mut dyn Read) -> std::result::Result<String, Failure> {
    match arg {
        Some(a) => Ok(a),
        None => {
            let mut s = String::new();
            input.read_to_string(&mut s)?;
            Ok(s.trim().to_string())
        }
    }
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn bit_char(b: bool) -> char {
    if b {
        '1'
    } else {
        '0'
    }
}

fn status(closed: bool) -> &'static str {
    if closed {
        "closed"
    } else {
        "open"
    }
}

pub fn cmd_generate(
    d: DirectiveSequence,
    length: usize,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let word = generate_prefix(&d, length)?;
    match format {
        Format::Text => writeln!(out, "{word}")?,
        Format::Json => write_json(
            &GenerateOutput {
                directive: d,
                length,
                word,
            },
            out,
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["directive", "length", "word"])?;
            w.write_record([d.to_string(), length.to_string(), word.to_string()])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn emit_oc(o: &OcOutput, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => write_json(o, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "letter", "bit", "predicted"])?;
            for (i, (l, &b)) in o.word.iter().zip(o.bits.bits()).enumerate() {
                let predicted = o
                    .predicted_bits
                    .as_ref()
                    .and_then(|p| p.get(i + 1))
                    .map(|p| bit_char(p).to_string())
                    .unwrap_or_default();
                w.write_record([
                    (i + 1).to_string(),
                    l.to_string(),
                    bit_char(b).to_string(),
                    predicted,
                ])?;
            }
            w.flush()
        }
        Format::Text => {
            if o.bits.is_empty() {
                return Ok(());
            }
            writeln!(out, "{}", o.bits)?;
            writeln!(out, "bit  length")?;
            for r in &o.runs {
                writeln!(out, "{:<4} {}", bit_char(r.bit), r.len)?;
            }
            if let Some(ks) = &o.predicted_k {
                let ks: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                writeln!(out, "predicted k: {}", ks.join(" "))?;
            }
            match o.verdict {
                Some(Verdict::Match) => writeln!(out, "MATCH"),
                Some(Verdict::Mismatch) => writeln!(out, "MISMATCH"),
                None => Ok(()),
            }
        }
    }
}

pub fn cmd_oc_word(word: Word, format: Format, out: &mut dyn Write) -> CmdResult {
    let bits = oc_sequence(&word);
    let o = OcOutput {
        runs: runs(&bits),
        word,
        directive: None,
        bits,
        predicted_k: None,
        predicted_bits: None,
        verdict: None,
    };
    emit_oc(&o, format, out)?;
    Ok(EXIT_OK)
}

pub fn cmd_oc_directive(
    d: DirectiveSequence,
    length: usize,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let word = generate_prefix(&d, length)?;
    let bits = oc_sequence(&word);
    let predicted = oc_from_directive(&d, length)?;
    let profile = run_profile(&d, length)?;
    let verdict = if predicted == bits {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    let o = OcOutput {
        word,
        directive: Some(d),
        runs: profile.runs,
        bits,
        predicted_k: Some(profile.predicted_k),
        predicted_bits: Some(predicted),
        verdict: Some(verdict),
    };
    emit_oc(&o, format, out)?;
    Ok(if verdict == Verdict::Match {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn boundary_label(e: &BoundaryEvent) -> String {
    let form = match (e.kind, e.index_n) {
        (_, None) => "unmatched".to_string(),
        (BoundaryKind::OpenToClosed, Some(n)) => format!("u_{n}xyu_{n}"),
        (BoundaryKind::ClosedToOpen, Some(n)) => {
            format!("u_{n}xyu_{m}=u_{m}yxu_{n}", m = n + 1)
        }
    };
    let shape = match e.kind {
        BoundaryKind::OpenToClosed => "semicentral, next closed",
        BoundaryKind::ClosedToOpen => "central, next open",
    };
    format!("{form} ({shape})")
}

pub fn cmd_classify(
    d: DirectiveSequence,
    length: usize,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let word = generate_prefix(&d, length)?;
    let bits = oc_sequence(&word);
    let events = boundary_classify(&d, length)?;
    let rows: Vec<ClassifyRow> = (1..=length)
        .map(|i| ClassifyRow {
            length: i,
            prefix: word.prefix(i),
            closed: bits.get(i).unwrap(),
            boundary: events.iter().find(|e| e.position == i).map(boundary_label),
        })
        .collect();
    let o = ClassifyOutput {
        directive: d,
        rows,
        events,
    };
    match format {
        Format::Json => write_json(&o, out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["length", "prefix", "status", "boundary"])?;
            for r in &o.rows {
                w.write_record([
                    r.length.to_string(),
                    r.prefix.to_string(),
                    status(r.closed).to_string(),
                    r.boundary.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            let width = length.max(6);
            writeln!(
                out,
                "{:>4}  {:<width$}  {:<6}  boundary",
                "n", "prefix", "status"
            )?;
            for r in &o.rows {
                let line = format!(
                    "{:>4}  {:<width$}  {:<6}  {}",
                    r.length,
                    r.prefix.to_string(),
                    status(r.closed),
                    r.boundary.as_deref().unwrap_or("")
                );
                writeln!(out, "{}", line.trim_end())?;
            }
            writeln!(out, "flips: {}", o.events.len())?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_factorize(
    d: DirectiveSequence,
    count: usize,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let report = square_factorization(&d, count)?;
    let ok = report.all_verified();
    match format {
        Format::Json => write_json(
            &FactorizeOutput {
                directive: d,
                report,
            },
            out,
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "factor", "square", "verified"])?;
            for f in &report.factors {
                w.write_record([
                    f.n.to_string(),
                    f.factor.to_string(),
                    f.factor.repeat(2).to_string(),
                    f.verified.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "leading: {}", report.leading)?;
            for f in &report.factors {
                let mark = if f.verified { "VERIFIED" } else { "FAILED" };
                writeln!(out, "{:>3}  {}  {}", f.n, f.factor, mark)?;
            }
            writeln!(out, "covered: {}", report.covered_length)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

pub fn cmd_reconstruct(bits: OcSequence, format: Format, out: &mut dyn Write) -> CmdResult {
    let word = reconstruct_from_oc(&bits)?;
    match format {
        Format::Text => writeln!(out, "{word}")?,
        Format::Json => write_json(&ReconstructOutput { bits, word }, out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["bits", "word"])?;
            w.write_record([bits.to_string(), word.to_string()])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(cfg: &VerifyConfig, format: Format, out: &mut dyn Write) -> CmdResult {
    let report: VerifyReport = verify::run(cfg);
    match format {
        Format::Json => write_json(&report, out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["suite", "checked", "violations", "status"])?;
            for s in &report.suites {
                w.write_record([
                    s.name.clone(),
                    s.checked.to_string(),
                    s.violation_count.to_string(),
                    if s.passed() { "PASS" } else { "FAIL" }.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for s in &report.suites {
                let mark = if s.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{mark}  {:<36} {:>8} checked", s.name, s.checked)?;
                for v in &s.violations {
                    writeln!(out, "      {v}")?;
                }
                if s.violation_count > s.violations.len() as u64 {
                    writeln!(out, "      ... {} violations in total", s.violation_count)?;
                }
            }
        }
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}
