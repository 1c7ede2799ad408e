//! The verification sweep: every structural property of the crate checked
//! over the exhaustive small-word space and over a family of directives.
//!
//! Each suite reports how many cases it checked and the first few
//! violations it met. Suites are independent and run in a fixed order, so
//! the report is deterministic whatever the execution mode.

use serde::{Deserialize, Serialize};

use crate::analysis::{
    boundary_classify, boundary_formula, continuant, fibonacci_identities_check, oc_from_directive,
    reconstruct_from_oc, run_lengths_from_directive, run_profile, semicentral_prefixes,
    square_factorization, BoundaryKind,
};
use crate::exec::Exec;
use crate::oracle::{
    complexity_profile, enumerate_standard_words, is_periodic_like, naive_is_closed,
};
use crate::sturmian::{
    closing_letters, generate_prefix, is_central, is_finite_sturmian, is_semicentral, is_standard,
    reversed_standard_factor, standard_sequence, DirectiveSequence,
};
use crate::words::{is_closed, is_palindrome, min_period, oc_sequence, reversal, Letter, Word};

const KEPT_VIOLATIONS: usize = 5;

/// Deliberate corruption of one check, to exercise the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Flip the closedness of `aba` in the oracle-equivalence suite.
    ClosedFlip,
    /// Flip the last predicted oc bit in the continuant suite.
    OcBitFlip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Exhaustive word suites cover every word up to this length.
    pub max_word_len: usize,
    /// Family heads use entries `1..=family_max_entry`...
    pub family_max_entry: usize,
    /// ...with `1..=family_terms` terms, followed by the tail `(1)`.
    pub family_terms: usize,
    pub exec: Exec,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            max_word_len: 14,
            family_max_entry: 4,
            family_terms: 5,
            exec: Exec::default(),
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: u64,
    pub violation_count: u64,
    /// The first few violations, in deterministic order.
    pub violations: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str, checked: u64, violations: Vec<String>) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            checked,
            violation_count: violations.len() as u64,
            violations: violations.into_iter().take(KEPT_VIOLATIONS).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

/// Heads of `1..=terms` entries from `1..=max_entry`, each followed by the
/// tail `(1)`; shorter heads first, lexicographic within a length.
pub fn directive_family(max_entry: usize, terms: usize) -> Vec<DirectiveSequence> {
    let mut out = Vec::new();
    let mut heads: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..terms {
        heads = heads
            .iter()
            .flat_map(|h| {
                (1..=max_entry).map(move |d| {
                    let mut h = h.clone();
                    h.push(d);
                    h
                })
            })
            .collect();
        out.extend(
            heads
                .iter()
                .map(|h| DirectiveSequence::periodic(h.clone(), vec![1]).unwrap()),
        );
    }
    out
}

/// Length of `s_n`.
pub fn standard_length(d: &DirectiveSequence, n: usize) -> usize {
    standard_sequence(d, n)
        .expect("family directives are infinite")
        .s(n)
        .len()
}

pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let family = directive_family(cfg.family_max_entry, cfg.family_terms);
    let small = cfg.max_word_len.min(14);
    let suites = vec![
        oracle_equivalence(cfg),
        single_closed_extension(small, cfg.exec),
        closed_extension_period(small, cfg.exec),
        powers_closed(cfg.max_word_len, cfg.exec),
        standard_characterization(small),
        continuant_oc(&family, cfg),
        continuant_lengths(&family, cfg.exec),
        run_pairing(&family, cfg.exec),
        boundaries(&family, cfg.exec),
        semicentral(&family, cfg.exec),
        standard_sequences(&family, cfg.exec),
        factorization(&family, cfg.exec),
        reconstruction(&family, cfg.exec),
        sturmian_prefixes(&family, cfg.exec),
        fibonacci(),
    ];
    VerifyReport { suites }
}

fn exhaustive<F>(max_len: usize, exec: Exec, check: F) -> (u64, Vec<String>)
where
    F: Fn(&Word) -> Option<String> + Sync + Send,
{
    let mut checked = 0;
    let mut violations = Vec::new();
    for len in 1..=max_len {
        checked += 1u64 << len;
        violations.extend(
            exec.filter_map_range(0..1u64 << len, |code| check(&Word::from_code(code, len))),
        );
    }
    (checked, violations)
}

fn over_family<F>(family: &[DirectiveSequence], exec: Exec, check: F) -> (u64, Vec<String>)
where
    F: Fn(&DirectiveSequence) -> Vec<String> + Sync + Send,
{
    let found: Vec<Vec<String>> = exec.map(family, |d| {
        check(d)
            .into_iter()
            .map(|v| format!("d={d}: {v}"))
            .collect()
    });
    (family.len() as u64, found.into_iter().flatten().collect())
}

fn oracle_equivalence(cfg: &VerifyConfig) -> SuiteReport {
    let flip = cfg.fault == Some(Fault::ClosedFlip);
    let (checked, violations) = exhaustive(cfg.max_word_len, cfg.exec, |w| {
        let mut fast = is_closed(w);
        if flip && w.to_string() == "aba" {
            fast = !fast;
        }
        let naive = naive_is_closed(w);
        let periodic = is_periodic_like(w).unwrap();
        let oc_last = oc_sequence(w).get(w.len()).unwrap();
        (fast != naive || naive != periodic || oc_last != fast).then(|| {
            format!("{w}: is_closed={fast} naive={naive} periodic_like={periodic} oc={oc_last}")
        })
    });
    SuiteReport::new("oracle-equivalence", checked, violations)
}

fn single_closed_extension(max_len: usize, exec: Exec) -> SuiteReport {
    let (checked, violations) = exhaustive(max_len, exec, |w| {
        (is_closed(&w.with(Letter::A)) && is_closed(&w.with(Letter::B)))
            .then(|| format!("{w}: both extensions closed"))
    });
    SuiteReport::new("at-most-one-closed-extension", checked, violations)
}

fn closed_extension_period(max_len: usize, exec: Exec) -> SuiteReport {
    let (checked, violations) = exhaustive(max_len, exec, |w| {
        if !is_closed(w) {
            return None;
        }
        let p = min_period(w).unwrap();
        [Letter::A, Letter::B].into_iter().find_map(|x| {
            let wx = w.with(x);
            (is_closed(&wx) != (min_period(&wx).unwrap() == p))
                .then(|| format!("{w}{x}: closedness disagrees with period"))
        })
    });
    SuiteReport::new("closed-extension-keeps-period", checked, violations)
}

fn powers_closed(max_len: usize, exec: Exec) -> SuiteReport {
    let (checked, violations) = exhaustive(max_len / 2, exec, |v| {
        (2..=max_len / v.len())
            .map(|k| v.repeat(k))
            .find(|p| !is_closed(p))
            .map(|p| format!("{p}: power is open"))
    });
    SuiteReport::new("powers-are-closed", checked, violations)
}

fn standard_characterization(max_len: usize) -> SuiteReport {
    let listed: std::collections::HashSet<Word> = enumerate_standard_words(max_len)
        .unwrap()
        .into_iter()
        .collect();
    let mut checked = 0;
    let mut violations = Vec::new();
    for len in 0..=max_len {
        for code in 0..1u64 << len {
            let w = Word::from_code(code, len);
            checked += 1;
            if is_standard(&w) != listed.contains(&w) {
                violations.push(format!("{w}: is_standard disagrees with enumeration"));
            }
        }
    }
    SuiteReport::new("standard-words-match-enumeration", checked, violations)
}

fn continuant_oc(family: &[DirectiveSequence], cfg: &VerifyConfig) -> SuiteReport {
    let flip = cfg.fault == Some(Fault::OcBitFlip);
    let (checked, violations) = over_family(family, cfg.exec, |d| {
        let n = standard_length(d, 6);
        let mut predicted = oc_from_directive(d, n).unwrap().bits().to_vec();
        if flip {
            let last = predicted.last_mut().unwrap();
            *last = !*last;
        }
        let direct = oc_sequence(&generate_prefix(d, n).unwrap());
        match predicted
            .iter()
            .zip(direct.bits())
            .position(|(a, b)| a != b)
        {
            Some(i) => vec![format!("oc bit {} differs (N={n})", i + 1)],
            None => vec![],
        }
    });
    SuiteReport::new("continuant-oc-formula", checked, violations)
}

fn continuant_lengths(family: &[DirectiveSequence], exec: Exec) -> SuiteReport {
    let (checked, violations) = over_family(family, exec, |d| {
        let seq = standard_sequence(d, 8).unwrap();
        (0..=8)
            .filter_map(|n| {
                let mut args = vec![1u64];
                args.extend(d.terms(n).unwrap().into_iter().map(|t| t as u64));
                let k = continuant(&args);
                (k != seq.s(n).len() as u128).then(|| format!("|s_{n}| != {k}"))
            })
            .collect()
    });
    SuiteReport::new("standard-length-continuant", checked, violations)
}

fn run_pairing(family: &[DirectiveSequence], exec: Exec) -> SuiteReport {
    let (checked, violations) = over_family(family, exec, |d| {
        let n = standard_length(d, 6);
        let profile = run_profile(d, n).unwrap();
        let mut out = Vec::new();
        if !profile.matches_prediction() {
            out.push("runs do not pair as (1,k_n),(0,k_n)".to_string());
        }
        let ks = run_lengths_from_directive(d, 6).unwrap();
        let seq = standard_sequence(d, 7).unwrap();
        for (n, &k) in ks.iter().enumerate().skip(1) {
            if seq.u(n + 1).len() - seq.u(n).len() != k {
                out.push(format!("|u_{}| - |u_{n}| != k_{n}", n + 1));
            }
        }
        out
    });
    SuiteReport::new("run-pairing", checked, violations)
}

fn boundaries(family: &[DirectiveSequence], exec: Exec) -> SuiteReport {
    let (checked, violations) = over_family(family, exec, |d| {
        let n = standard_length(d, 6);
        let oc = oc_sequence(&generate_prefix(d, n).unwrap());
        let events = boundary_classify(d, n).unwrap();
        let mut out = Vec::new();
        let flips: Vec<usize> = (1..n).filter(|&i| oc.get(i) != oc.get(i + 1)).collect();
        let positions: Vec<usize> = events.iter().map(|e| e.position).collect();
        if flips != positions {
            out.push("events differ from oc flips".to_string());
        }
        for e in &events {
            let Some(k) = e.index_n else {
                out.push(format!("flip at {} matches no boundary form", e.position));
                continue;
            };
            if boundary_formula(d, e.kind, k).ok().as_ref() != Some(&e.witness) {
                out.push(format!("witness at {} is not the n={k} form", e.position));
            }
            let shaped = match e.kind {
                BoundaryKind::OpenToClosed => is_semicentral(&e.witness),
                BoundaryKind::ClosedToOpen => is_central(&e.witness),
            };
            if !shaped {
                out.push(format!("witness at {} has the wrong shape", e.position));
            }
        }
        out
    });
    SuiteReport::new("run-boundaries", checked, violations)
}

fn semicentral(family: &[DirectiveSequence], exec: Exec) -> SuiteReport {
    let (checked, violations) = over_family(family, exec, |d| {
        let n = standard_length(d, 6);
        let w = generate_prefix(d, n).unwrap();
        let brute: Vec<Word> = (0..=n)
            .filter(|&l| is_semicentral(&w[..l]))
            .map(|l| w.prefix(l))
            .collect();
        match semicentral_prefixes(d, n) {
            Ok(formula) if formula == brute => vec![],
            _ => vec!["semicentral prefixes differ from brute force".to_string()],
        }
    });
    SuiteReport::new("semicentral-prefixes", checked, violations)
}

fn standard_sequences(family: &[DirectiveSequence], exec: Exec) -> SuiteReport {
    let (checked, violations) = over_family(family, exec, |d| {
        let top = 6;
        let seq = standard_sequence(d, top + 1).unwrap();
        let mut out = Vec::new();
        for n in 1..=top {
            let (x, y) = closing_letters(n);
            let (u, v) = (seq.u(n), seq.u(n + 1));
            if !is_palindrome(u) {
                out.push(format!("u_{n} is not a palindrome"));
            }
            if !v.starts_with(u) {
                out.push(format!("u_{n} is not a prefix of u_{}", n + 1));
            }
            if u.with(x).with(y).concat(v) != v.with(y).with(x).concat(u) {
                out.push(format!("u_n xy u_n+1 != u_n+1 yx u_n at n={n}"));
            }
            // the balance-based predicates are quadratic; keep them to the short levels
            if n > 4 {
                continue;
            }
            if !is_central(&u.with(x).with(y).concat(v)) {
                out.push(format!("u_n xy u_n+1 is not central at n={n}"));
            }
            if !is_standard(seq.s(n)) {
                out.push(format!("s_{n} is not standard"));
            }
            for k in 0..=d.get(n + 1).unwrap() {
                if !is_standard(&seq.s(n + 1).repeat(k).concat(seq.s(n))) {
                    out.push(format!("s_{}^{k} s_{n} is not standard", n + 1));
                }
            }
            if !is_standard(&reversal(&reversed_standard_factor(d, n).unwrap())) {
                out.push(format!("factor {n} is not a reversed standard word"));
            }
        }
        out
    });
    SuiteReport::new("standard-sequence-structure", checked, violations)
}

fn factorization(family: &[DirectiveSequence], exec: Exec) -> SuiteReport {
    let (checked, violations) = over_family(family, exec, |d| {
        let report = square_factorization(d, 6).unwrap();
        let mut out = Vec::new();
        if !report.all_verified() {
            out.push("unverified square factor".to_string());
        }
        let w = generate_prefix(d, report.covered_length).unwrap();
        if report.rewritten() != w {
            out.push("leading form does not rebuild the word".to_string());
        }
        let seq = standard_sequence(d, 5).unwrap();
        for f in report.factors.iter().filter(|f| f.n >= 1) {
            let n = f.n;
            let closed_form = reversal(
                &seq.s(n)
                    .repeat(d.get(n).unwrap() - 1)
                    .concat(&seq.s_words[n]),
            );
            if f.factor != closed_form {
                out.push(format!("factor {n} differs from rev(s_n^(d_n-1) s_n-1)"));
            }
        }
        out
    });
    SuiteReport::new("square-factorization", checked, violations)
}

fn reconstruction(family: &[DirectiveSequence], exec: Exec) -> SuiteReport {
    let (checked, violations) = over_family(family, exec, |d| {
        let w = generate_prefix(d, 200).unwrap();
        match reconstruct_from_oc(&oc_sequence(&w)) {
            Ok(r) if r == w => vec![],
            Ok(_) => vec!["reconstruction returned another word".to_string()],
            Err(e) => vec![format!("reconstruction failed: {e}")],
        }
    });
    SuiteReport::new("oc-reconstruction", checked, violations)
}

fn sturmian_prefixes(family: &[DirectiveSequence], exec: Exec) -> SuiteReport {
    let (checked, violations) = over_family(family, exec, |d| {
        let w = generate_prefix(d, 200).unwrap();
        let mut out = Vec::new();
        // both properties pass to every prefix
        if !is_finite_sturmian(&w) {
            out.push("prefix is unbalanced".to_string());
        }
        // the factor count is cubic, so a shorter prefix
        if let Some(k) = complexity_profile(&w[..64])
            .iter()
            .enumerate()
            .find(|(i, &c)| c > i + 2)
        {
            out.push(format!(
                "more than {} factors of length {}",
                k.0 + 2,
                k.0 + 1
            ));
        }
        out
    });
    SuiteReport::new("sturmian-prefixes", checked, violations)
}

fn fibonacci() -> SuiteReport {
    let lengths = [2, 11, 50, 200, 1000];
    let violations = lengths
        .iter()
        .filter(|&&n| !fibonacci_identities_check(n))
        .map(|n| format!("identities fail at N={n}"))
        .collect();
    SuiteReport::new("fibonacci-identities", lengths.len() as u64, violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyConfig {
        VerifyConfig {
            max_word_len: 8,
            family_max_entry: 2,
            family_terms: 3,
            ..Default::default()
        }
    }

    #[test]
    fn family_shape() {
        let f = directive_family(4, 5);
        assert_eq!(f.len(), 4 + 16 + 64 + 256 + 1024);
        assert_eq!(f[0].to_string(), "1,(1)");
        assert_eq!(f[4].to_string(), "1,1,(1)");
    }

    #[test]
    fn quick_sweep_passes() {
        let report = run(&quick());
        for s in &report.suites {
            assert!(s.passed(), "{}: {:?}", s.name, s.violations);
            assert!(s.checked > 0);
        }
    }

    #[test]
    fn injected_faults_fail_named_suites() {
        let cfg = VerifyConfig {
            fault: Some(Fault::ClosedFlip),
            ..quick()
        };
        let report = run(&cfg);
        let failed: Vec<&str> = report
            .suites
            .iter()
            .filter(|s| !s.passed())
            .map(|s| s.name.as_str())
            .collect();
        assert_eq!(failed, ["oracle-equivalence"]);

        let cfg = VerifyConfig {
            fault: Some(Fault::OcBitFlip),
            ..quick()
        };
        let report = run(&cfg);
        let failed: Vec<&str> = report
            .suites
            .iter()
            .filter(|s| !s.passed())
            .map(|s| s.name.as_str())
            .collect();
        assert_eq!(failed, ["continuant-oc-formula"]);
    }

    #[test]
    fn sequential_and_parallel_reports_agree() {
        let seq = run(&VerifyConfig {
            exec: Exec::Sequential,
            ..quick()
        });
        let par = run(&VerifyConfig {
            exec: Exec::Parallel,
            ..quick()
        });
        assert_eq!(seq, par);
    }
}
