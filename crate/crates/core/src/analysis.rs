//! oc-sequences of standard Sturmian words from their directive: continuant
//! run lengths, run-boundary classification, the square factorization of
//! the letter-swapped word, and reconstruction of a word from its oc bits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sturmian::{
    closing_letters, generate_prefix, reversed_standard_factor, standard_lengths,
    standard_sequence, BalanceProfile, DirectiveSequence,
};
use crate::words::{
    is_closed, oc_sequence, reversal, runs, swap_first_letter, Letter, OcSequence, Run, Word,
};

/// `K[]` = 1, `K[a_0]` = a_0, `K[a_0..a_n] = a_n K[a_0..a_{n-1}] + K[a_0..a_{n-2}]`.
///
/// Panics if the value overflows `u128`.
pub fn continuant(terms: &[u64]) -> u128 {
    let (mut before, mut last) = (0u128, 1u128);
    for &t in terms {
        let next = (t as u128)
            .checked_mul(last)
            .and_then(|v| v.checked_add(before))
            .expect("continuant overflows u128");
        (before, last) = (last, next);
    }
    last
}

/// `k_n = K[1, d_0, ..., d_{n-1}, d_n - 1]` for `n < count`.
pub fn run_lengths_from_directive(d: &DirectiveSequence, count: usize) -> Result<Vec<usize>> {
    let terms = d.terms(count)?;
    Ok((0..count)
        .map(|n| {
            let mut args = Vec::with_capacity(n + 2);
            args.push(1u64);
            args.extend(terms[..n].iter().map(|&t| t as u64));
            args.push(terms[n] as u64 - 1);
            usize::try_from(continuant(&args)).expect("run length exceeds usize")
        })
        .collect())
}

/// Run lengths `k_0, k_1, ...` needed to cover `len` bits of `1^{k_n} 0^{k_n}` blocks.
fn covering_run_lengths(d: &DirectiveSequence, len: usize) -> Result<Vec<usize>> {
    let mut ks = Vec::new();
    let mut covered = 0;
    while covered < len {
        let count = ks.len() + 1;
        let k = *run_lengths_from_directive(d, count)?.last().unwrap();
        covered += 2 * k;
        ks.push(k);
    }
    Ok(ks)
}

/// First `len` bits of `∏ 1^{k_n} 0^{k_n}`.
pub fn oc_from_directive(d: &DirectiveSequence, len: usize) -> Result<OcSequence> {
    let ks = covering_run_lengths(d, len)?;
    let mut bits = Vec::with_capacity(len);
    for k in ks {
        bits.extend(std::iter::repeat_n(true, k));
        bits.extend(std::iter::repeat_n(false, k));
    }
    bits.truncate(len);
    Ok(OcSequence::from_bits(bits))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunProfile {
    /// Runs of the directly computed oc-sequence.
    pub runs: Vec<Run>,
    pub predicted_k: Vec<usize>,
    /// False when the final run may continue past the computed prefix.
    pub last_run_complete: bool,
}

impl RunProfile {
    pub fn complete_runs(&self) -> &[Run] {
        match self.last_run_complete {
            true => &self.runs,
            false => &self.runs[..self.runs.len().saturating_sub(1)],
        }
    }

    /// Complete runs pair up as `(1, k_0), (0, k_0), (1, k_1), (0, k_1), ...`.
    pub fn matches_prediction(&self) -> bool {
        let expected = self
            .predicted_k
            .iter()
            .flat_map(|&k| [Run { bit: true, len: k }, Run { bit: false, len: k }]);
        self.complete_runs()
            .iter()
            .zip(expected.clone())
            .all(|(a, b)| *a == b)
            && self.complete_runs().len() <= expected.count()
    }
}

pub fn run_profile(d: &DirectiveSequence, len: usize) -> Result<RunProfile> {
    let word = generate_prefix(d, len)?;
    let predicted_k = covering_run_lengths(d, len)?;
    let mut boundary = 0;
    let mut last_run_complete = len == 0;
    for &k in &predicted_k {
        for _ in 0..2 {
            boundary += k;
            last_run_complete |= boundary == len;
        }
    }
    Ok(RunProfile {
        runs: runs(&oc_sequence(&word)),
        predicted_k,
        last_run_complete,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    /// `v` open, `vx` closed.
    OpenToClosed,
    /// `v` closed, `vx` open.
    ClosedToOpen,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryEvent {
    /// Length of the witness prefix `v`.
    pub position: usize,
    pub kind: BoundaryKind,
    pub witness: Word,
    /// `n` with `v = u_n x y u_n` (open to closed) or `v = u_n x y u_{n+1}`
    /// (closed to open); `None` if no such `n` exists.
    pub index_n: Option<usize>,
}

/// The word a boundary of the given kind and index must be: `u_n x y u_n`
/// for open to closed (`n >= 1`), `u_n x y u_{n+1}` for closed to open,
/// which is `a^{d_0}` when `n = 0`.
pub fn boundary_formula(d: &DirectiveSequence, kind: BoundaryKind, n: usize) -> Result<Word> {
    let (x, y) = closing_letters(n);
    match (kind, n) {
        (BoundaryKind::OpenToClosed, 0) => Err(Error::InvalidArgument(
            "open-to-closed boundaries start at n = 1".into(),
        )),
        (BoundaryKind::ClosedToOpen, 0) => Ok(Word::power_of(Letter::A, d.first())),
        (BoundaryKind::OpenToClosed, n) => {
            let seq = standard_sequence(d, n)?;
            Ok(seq.u(n).with(x).with(y).concat(seq.u(n)))
        }
        (BoundaryKind::ClosedToOpen, n) => {
            let seq = standard_sequence(d, n + 1)?;
            Ok(seq.u(n).with(x).with(y).concat(seq.u(n + 1)))
        }
    }
}

/// Every prefix length `1 <= i < len` where the oc bit flips, with the
/// index `n` of the boundary form it matches.
pub fn boundary_classify(d: &DirectiveSequence, len: usize) -> Result<Vec<BoundaryEvent>> {
    let word = generate_prefix(d, len)?;
    let oc = oc_sequence(&word);
    // lens[k + 1] = |s_k|
    let lens = standard_lengths(d, len + 2);
    let s_len = |n: usize| lens.get(n + 1).copied();
    let d0 = d.first();

    let mut events = Vec::new();
    for i in 1..len {
        let (here, next) = (oc.get(i).unwrap(), oc.get(i + 1).unwrap());
        if here == next {
            continue;
        }
        let (kind, index_n) = if here {
            let n = if i == d0 {
                Some(0)
            } else {
                (1..lens.len()).find(
                    |&n| matches!((s_len(n), s_len(n + 1)), (Some(a), Some(b)) if a + b - 2 == i),
                )
            };
            (BoundaryKind::ClosedToOpen, n)
        } else {
            let n = (1..lens.len()).find(|&n| s_len(n).is_some_and(|a| 2 * a - 2 == i));
            (BoundaryKind::OpenToClosed, n)
        };
        events.push(BoundaryEvent {
            position: i,
            kind,
            witness: word.prefix(i),
            index_n,
        });
    }
    Ok(events)
}

/// Semicentral prefixes of length at most `len`: the words `u_n x y u_n`, `n >= 1`.
pub fn semicentral_prefixes(d: &DirectiveSequence, len: usize) -> Result<Vec<Word>> {
    // |u_n x y u_n| = 2|s_n| - 2
    let (mut prev, mut cur) = (1usize, 1usize);
    let mut top = 0;
    loop {
        let next = match d.get(top) {
            Some(dn) => dn * cur + prev,
            None if 2 * (cur + prev) - 2 > len => break,
            None => return Err(Error::InsufficientDirective { index: top }),
        };
        if 2 * next - 2 > len {
            break;
        }
        (prev, cur) = (cur, next);
        top += 1;
    }
    (1..=top)
        .map(|n| boundary_formula(d, BoundaryKind::OpenToClosed, n))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareFactor {
    pub n: usize,
    pub factor: Word,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    /// `a^{d_0} b a^{d_0 - 1}`, the head of `w` before the squares for `n >= 1`.
    pub leading: Word,
    pub factors: Vec<SquareFactor>,
    pub covered_length: usize,
}

impl FactorizationReport {
    /// `∏ f_n²` over all factors; a prefix of `w` with its first letter swapped.
    pub fn swapped_product(&self) -> Word {
        let mut out = Word::empty();
        for f in &self.factors {
            out.extend_from(&f.factor);
            out.extend_from(&f.factor);
        }
        out
    }

    /// `leading · ∏_{n >= 1} f_n²`; a prefix of `w` itself.
    pub fn rewritten(&self) -> Word {
        let mut out = self.leading.clone();
        for f in self.factors.iter().filter(|f| f.n >= 1) {
            out.extend_from(&f.factor);
            out.extend_from(&f.factor);
        }
        out
    }

    pub fn all_verified(&self) -> bool {
        self.factors.iter().all(|f| f.verified)
    }
}

/// Squares `(u_n^{-1} u_{n+1})²` for `n < count`, each checked against the
/// letter-swapped prefix of the generated word.
pub fn square_factorization(d: &DirectiveSequence, count: usize) -> Result<FactorizationReport> {
    if count == 0 {
        return Err(Error::InvalidArgument(
            "factor count must be at least 1".into(),
        ));
    }
    let factors = (0..count)
        .map(|n| reversed_standard_factor(d, n))
        .collect::<Result<Vec<_>>>()?;
    let covered_length = 2 * factors.iter().map(|f| f.len()).sum::<usize>();
    let target = swap_first_letter(&generate_prefix(d, covered_length)?)?;

    let mut at = 0;
    let factors = factors
        .into_iter()
        .enumerate()
        .map(|(n, factor)| {
            let k = factor.len();
            let verified =
                target[at..at + k] == factor[..] && target[at + k..at + 2 * k] == factor[..];
            at += 2 * k;
            SquareFactor {
                n,
                factor,
                verified,
            }
        })
        .collect();

    let d0 = d.first();
    let mut leading = Word::power_of(Letter::A, d0);
    leading.push(Letter::B);
    leading.extend_from(&Word::power_of(Letter::A, d0 - 1));
    Ok(FactorizationReport {
        leading,
        factors,
        covered_length,
    })
}

/// The `a`-initial finite Sturmian word whose oc-sequence is `bits`.
///
/// Extends letter by letter, keeping only balanced extensions; when both
/// letters are possible exactly one extension is closed, and the next bit
/// picks it.
pub fn reconstruct_from_oc(bits: &OcSequence) -> Result<Word> {
    match bits.get(1) {
        None => return Err(Error::InvalidOc("empty sequence".into())),
        Some(false) => return Err(Error::InvalidOc("the first prefix is always closed".into())),
        Some(true) => {}
    }
    let mut profile = BalanceProfile::new(&[Letter::A]).unwrap();
    for position in 2..=bits.len() {
        let want = bits.get(position).unwrap();
        let mut fits = [Letter::A, Letter::B].into_iter().filter(|&x| {
            profile.accepts_right(x) && {
                let mut ext = profile.word().to_vec();
                ext.push(x);
                is_closed(&ext) == want
            }
        });
        let chosen = fits.next().ok_or(Error::NotSturmianOc { position })?;
        assert!(
            fits.next().is_none(),
            "two closed one-letter extensions of {}",
            Word::from(profile.word())
        );
        profile.push(chosen);
    }
    Ok(Word::from(profile.word()))
}

/// Checks `F = ∏_{n>=0} rev(f_n)` and `F = ab ∏_{n>=0} f_n` on the first `len`
/// letters of the Fibonacci word `F`.
pub fn fibonacci_identities_check(len: usize) -> bool {
    let fib = DirectiveSequence::fibonacci();
    let Ok(prefix) = generate_prefix(&fib, len) else {
        return false;
    };
    let mut reversed_product = Word::empty();
    let mut ab_product: Word = "ab".parse().unwrap();
    let mut n = 0;
    while reversed_product.len() < len || ab_product.len() < len {
        let seq = standard_sequence(&fib, n).expect("infinite directive");
        let f = seq.s(n);
        reversed_product.extend_from(&reversal(f));
        ab_product.extend_from(f);
        n += 1;
    }
    reversed_product[..len] == prefix[..] && ab_product[..len] == prefix[..]
}
