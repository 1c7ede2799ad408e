use std::io::Write;
use std::process::{Command, Output, Stdio};

use clap::Parser;
use sturm_cli::{Cli, OcOutput, ReconstructOutput, Verdict, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn sturm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sturm"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn in_process(args: &[&str], input: &str) -> (i32, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("sturm").chain(args.iter().copied())).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = sturm_cli::run(cli, &mut input.as_bytes(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn generate_fibonacci_prefix() {
    let o = sturm(&["generate", "--directive", "1,(1)", "--length", "21"]);
    assert_eq!(code(&o), EXIT_OK);
    assert_eq!(stdout(&o).trim(), "abaababaabaababaababa");
}

#[test]
fn generate_finite_directive_length_guard() {
    let o = sturm(&["generate", "--directive", "2,2,1", "--length", "15"]);
    assert_eq!(code(&o), EXIT_OK);
    assert_eq!(stdout(&o).trim(), "aabaabaaabaabaa");
    // s_3 s_2 = aabaabaaab·aabaaba is the longest prefix fixed by three terms
    let o = sturm(&["generate", "--directive", "2,2,1", "--length", "17"]);
    assert_eq!(stdout(&o).trim(), "aabaabaaabaabaaba");
    let o = sturm(&["generate", "--directive", "2,2,1", "--length", "18"]);
    assert_eq!(code(&o), EXIT_USAGE);
    assert!(!o.stderr.is_empty());
}

#[test]
fn oc_of_word() {
    let o = sturm(&["oc", "abaaab"]);
    assert_eq!(code(&o), EXIT_OK);
    assert!(stdout(&o).lines().next().unwrap().contains("101001"));
}

#[test]
fn oc_from_directive_matches_prediction() {
    let o = sturm(&[
        "--format",
        "json",
        "oc",
        "--directive",
        "2,2,1,(1)",
        "--length",
        "15",
    ]);
    assert_eq!(code(&o), EXIT_OK);
    let parsed: OcOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(parsed.bits.to_string(), "110011110000111");
    assert_eq!(parsed.predicted_k, Some(vec![2, 4, 3]));
    assert_eq!(parsed.verdict, Some(Verdict::Match));
}

#[test]
fn oc_json_round_trips() {
    let o = sturm(&[
        "--format",
        "json",
        "oc",
        "--directive",
        "1,(1)",
        "--length",
        "40",
    ]);
    let text = stdout(&o);
    let parsed: OcOutput = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap();
    assert_eq!(again.trim_end(), text.trim_end());
}

#[test]
fn oc_reads_stdin() {
    let (c, out, _) = in_process(&["--format", "json", "oc"], "abaaab\n");
    assert_eq!(c, EXIT_OK);
    let parsed: OcOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed.bits.to_string(), "101001");
}

#[test]
fn oc_rejects_bad_letters() {
    let o = sturm(&["oc", "abc"]);
    assert_eq!(code(&o), EXIT_USAGE);
}

#[test]
fn csv_output_has_header() {
    let o = sturm(&["--format", "csv", "oc", "abaaab"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,letter,bit,predicted"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn classify_marks_closed_and_boundary_rows() {
    let o = sturm(&["classify", "--directive", "2,2,1,(1)", "--length", "14"]);
    assert_eq!(code(&o), EXIT_OK);
    let text = stdout(&o);
    for prefix in ["aabaabaaabaab", "aabaabaaa"] {
        assert!(text.contains(prefix), "{prefix} missing");
    }
    assert!(text.contains("semicentral"));
    assert!(text.contains("central"));
}

#[test]
fn factorize_fibonacci() {
    let o = sturm(&["factorize", "--directive", "1,(1)", "--count", "6"]);
    assert_eq!(code(&o), EXIT_OK);
    let text = stdout(&o);
    let factors: Vec<&str> = text
        .lines()
        .filter(|l| l.ends_with("VERIFIED"))
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(factors, ["b", "a", "ba", "aba", "baaba", "ababaaba"]);
}

#[test]
fn factorize_zero_count_is_usage_error() {
    assert_eq!(
        code(&sturm(&[
            "factorize",
            "--directive",
            "1,(1)",
            "--count",
            "0"
        ])),
        EXIT_USAGE
    );
}

#[test]
fn invalid_directive_is_usage_error() {
    assert_eq!(
        code(&sturm(&["generate", "--directive", "0,1", "--length", "5"])),
        EXIT_USAGE
    );
}

#[test]
fn reconstruct_known_pairs() {
    let o = sturm(&["reconstruct", "101001"]);
    assert_eq!(code(&o), EXIT_OK);
    assert_eq!(stdout(&o).trim(), "abaaab");

    let o = sturm(&["--format", "json", "reconstruct", "100"]);
    let parsed: ReconstructOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(parsed.word.to_string(), "abb");
}

#[test]
fn reconstruct_inconsistent_bits_fails() {
    let o = sturm(&["reconstruct", "1101"]);
    assert_eq!(code(&o), EXIT_FAILURE);
    assert!(String::from_utf8_lossy(&o.stderr).contains('4'));
    assert_eq!(code(&sturm(&["reconstruct", "0"])), EXIT_USAGE);
}

#[test]
fn reconstruct_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sturm"))
        .arg("reconstruct")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"110011110000111\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), EXIT_OK);
    assert_eq!(stdout(&o).trim(), "aabaabaaabaabaa");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--format",
        "json",
        "classify",
        "--directive",
        "1,2,(3,1)",
        "--length",
        "60",
    ];
    assert_eq!(sturm(&args).stdout, sturm(&args).stdout);
}

#[test]
fn verify_default_passes() {
    let o = sturm(&["verify"]);
    assert_eq!(code(&o), EXIT_OK, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_longer_words_passes() {
    let o = sturm(&["verify", "--max-word-len", "16", "--family-terms", "2"]);
    assert_eq!(code(&o), EXIT_OK, "{}", stdout(&o));
}

#[test]
fn verify_sequential_matches_parallel() {
    let small = [
        "--format",
        "json",
        "verify",
        "--max-word-len",
        "10",
        "--family-terms",
        "3",
    ];
    let mut seq = small.to_vec();
    seq.push("--sequential");
    assert_eq!(sturm(&small).stdout, sturm(&seq).stdout);
}

#[test]
fn injected_faults_are_caught() {
    for (fault, suite) in [
        ("closed-flip", "oracle-equivalence"),
        ("oc-bit-flip", "continuant-oc-formula"),
    ] {
        let o = sturm(&[
            "verify",
            "--inject-fault",
            fault,
            "--max-word-len",
            "8",
            "--family-terms",
            "2",
        ]);
        assert_eq!(code(&o), EXIT_FAILURE);
        let failing: Vec<String> = stdout(&o)
            .lines()
            .filter(|l| l.starts_with("FAIL"))
            .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
            .collect();
        assert!(failing.iter().any(|s| s == suite), "{fault}: {failing:?}");
    }
}
