//! Directive sequences, standard sequences and the Sturmian word predicates.
//!
//! The standard sequence of a directive `(d_0, d_1, ...)` is
//! `s_{-1} = b`, `s_0 = a`, `s_{n+1} = s_n^{d_n} s_{n-1}`. For `n >= 1`,
//! `s_n = u_n x y` where `xy = ab` for odd `n` and `ba` for even `n`; the
//! words `u_n` are the central prefixes the rest of the crate is built on.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{is_palindrome, reversal, Letter, Word};

/// Terms `d_0, d_1, ...`: a finite head optionally followed by a periodic tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct DirectiveSequence {
    head: Vec<usize>,
    tail: Vec<usize>,
}

impl DirectiveSequence {
    pub fn new(head: Vec<usize>, tail: Vec<usize>) -> Result<DirectiveSequence> {
        let first = head.first().or(tail.first()).copied();
        match first {
            None => return Err(Error::InvalidDirective("no terms given".into())),
            Some(0) => {
                return Err(Error::InvalidDirective(
                    "d_0 = 0 describes a b-initial word; exchange the letters a and b and \
                     drop the leading zero"
                        .into(),
                ))
            }
            Some(_) => {}
        }
        if head.iter().chain(&tail).any(|&d| d == 0) {
            return Err(Error::InvalidDirective(
                "every term must be at least 1".into(),
            ));
        }
        Ok(DirectiveSequence { head, tail })
    }

    pub fn finite(head: Vec<usize>) -> Result<DirectiveSequence> {
        DirectiveSequence::new(head, Vec::new())
    }

    pub fn periodic(head: Vec<usize>, tail: Vec<usize>) -> Result<DirectiveSequence> {
        if tail.is_empty() {
            return Err(Error::InvalidDirective("periodic block is empty".into()));
        }
        DirectiveSequence::new(head, tail)
    }

    /// `(1, 1, 1, ...)`, the directive of the Fibonacci word.
    pub fn fibonacci() -> DirectiveSequence {
        DirectiveSequence {
            head: Vec::new(),
            tail: vec![1],
        }
    }

    pub fn head(&self) -> &[usize] {
        &self.head
    }

    pub fn tail(&self) -> &[usize] {
        &self.tail
    }

    pub fn is_infinite(&self) -> bool {
        !self.tail.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<usize> {
        if let Some(&d) = self.head.get(n) {
            return Some(d);
        }
        if self.tail.is_empty() {
            return None;
        }
        Some(self.tail[(n - self.head.len()) % self.tail.len()])
    }

    pub fn require(&self, n: usize) -> Result<usize> {
        self.get(n).ok_or(Error::InsufficientDirective { index: n })
    }

    /// `d_0, ..., d_{count - 1}`.
    pub fn terms(&self, count: usize) -> Result<Vec<usize>> {
        (0..count).map(|n| self.require(n)).collect()
    }

    pub fn first(&self) -> usize {
        self.get(0).expect("constructor guarantees d_0")
    }
}

impl fmt::Display for DirectiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match (self.head.is_empty(), self.tail.is_empty()) {
            (_, true) => write!(f, "{}", join(&self.head)),
            (true, false) => write!(f, "({})", join(&self.tail)),
            (false, false) => write!(f, "{},({})", join(&self.head), join(&self.tail)),
        }
    }
}

/// Parses `"2,2,1,(1)"`: comma-separated terms with an optional trailing
/// parenthesized block repeated forever.
impl FromStr for DirectiveSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<DirectiveSequence> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let parse_list = |part: &str| -> Result<Vec<usize>> {
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidDirective(format!("bad term {t:?}")))
                })
                .collect()
        };
        match s.find('(') {
            None => {
                if s.contains(')') {
                    return Err(Error::InvalidDirective("unbalanced parenthesis".into()));
                }
                DirectiveSequence::finite(parse_list(&s)?)
            }
            Some(open) => {
                let head = s[..open]
                    .strip_suffix(',')
                    .or(if open == 0 { Some("") } else { None })
                    .ok_or_else(|| {
                        Error::InvalidDirective("expected ',' before the periodic block".into())
                    })?;
                let block = s[open + 1..].strip_suffix(')').ok_or_else(|| {
                    Error::InvalidDirective("periodic block must close the sequence".into())
                })?;
                if block.contains(['(', ')']) {
                    return Err(Error::InvalidDirective("nested parentheses".into()));
                }
                DirectiveSequence::periodic(parse_list(head)?, parse_list(block)?)
            }
        }
    }
}

impl From<DirectiveSequence> for String {
    fn from(d: DirectiveSequence) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for DirectiveSequence {
    type Error = Error;

    fn try_from(s: String) -> Result<DirectiveSequence> {
        s.parse()
    }
}

/// `s_{-1}, ..., s_n` together with `u_1, ..., u_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardSequencePrefix {
    pub s_words: Vec<Word>,
    pub u_words: Vec<Word>,
}

impl StandardSequencePrefix {
    /// Index of the last standard word held.
    pub fn last_index(&self) -> usize {
        self.s_words.len() - 2
    }

    /// `s_n` for `n >= 0`.
    pub fn s(&self, n: usize) -> &Word {
        &self.s_words[n + 1]
    }

    pub fn s_minus_one(&self) -> &Word {
        &self.s_words[0]
    }

    /// `u_n` for `n >= 1`.
    pub fn u(&self, n: usize) -> &Word {
        assert!(n >= 1, "u_0 and u_-1 are formal inverses");
        &self.u_words[n - 1]
    }
}

/// The two letters closing `s_n`: `ab` for odd `n`, `ba` for even `n`.
pub fn closing_letters(n: usize) -> (Letter, Letter) {
    if n % 2 == 1 {
        (Letter::A, Letter::B)
    } else {
        (Letter::B, Letter::A)
    }
}

pub fn standard_sequence(d: &DirectiveSequence, n: usize) -> Result<StandardSequencePrefix> {
    let mut s_words = vec![Word::power_of(Letter::B, 1), Word::power_of(Letter::A, 1)];
    for k in 0..n {
        let dk = d.require(k)?;
        let cur = &s_words[k + 1];
        let next = cur.repeat(dk).concat(&s_words[k]);
        s_words.push(next);
    }
    let u_words = s_words[2..].iter().map(|s| s.prefix(s.len() - 2)).collect();
    Ok(StandardSequencePrefix { s_words, u_words })
}

/// The length-`len` prefix of the standard Sturmian word of `d`.
///
/// With `d_0..d_{m-1}` known, the word is determined up to `|s_m s_{m-1}|`
/// letters, since it begins with `s_{m}s_{m-1}` whatever `d_m >= 1` is.
pub fn generate_prefix(d: &DirectiveSequence, len: usize) -> Result<Word> {
    let mut prev = Word::power_of(Letter::B, 1);
    let mut cur = Word::power_of(Letter::A, 1);
    let mut n = 0;
    loop {
        if cur.len() >= len {
            return Ok(cur.prefix(len));
        }
        match d.get(n) {
            Some(dn) => {
                let next = cur.repeat(dn).concat(&prev);
                prev = std::mem::replace(&mut cur, next);
                n += 1;
            }
            None => {
                if n >= 1 && cur.len() + prev.len() >= len {
                    return Ok(cur.concat(&prev).prefix(len));
                }
                return Err(Error::InsufficientDirective { index: n });
            }
        }
    }
}

/// Balance check: for each factor length, the `a`-counts of all factors
/// of that length differ by at most one.
pub fn is_finite_sturmian(w: &[Letter]) -> bool {
    let mut prefix_a = Vec::with_capacity(w.len() + 1);
    prefix_a.push(0usize);
    for &l in w {
        prefix_a.push(prefix_a.last().unwrap() + (l == Letter::A) as usize);
    }
    for k in 1..w.len() {
        let mut lo = usize::MAX;
        let mut hi = 0;
        for i in 0..=w.len() - k {
            let c = prefix_a[i + k] - prefix_a[i];
            lo = lo.min(c);
            hi = hi.max(c);
            if hi - lo > 1 {
                return false;
            }
        }
    }
    true
}

/// Per-length min and max `a`-counts over all factors of a balanced word,
/// supporting O(|w|) checks of one-letter extensions on either side.
#[derive(Debug, Clone)]
pub struct BalanceProfile {
    word: Vec<Letter>,
    // index k - 1 holds (min, max) over factors of length k
    bounds: Vec<(usize, usize)>,
}

impl BalanceProfile {
    /// `None` if `w` is not balanced.
    pub fn new(w: &[Letter]) -> Option<BalanceProfile> {
        let mut profile = BalanceProfile {
            word: Vec::new(),
            bounds: Vec::new(),
        };
        for &l in w {
            if !profile.accepts_right(l) {
                return None;
            }
            profile.push(l);
        }
        Some(profile)
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    fn accepts(&self, counts: impl Iterator<Item = usize>) -> bool {
        counts
            .zip(&self.bounds)
            .all(|(c, &(lo, hi))| hi.max(c) - lo.min(c) <= 1)
    }

    /// Whether the word followed by `x` is still balanced.
    pub fn accepts_right(&self, x: Letter) -> bool {
        let suffix_counts = std::iter::once(x)
            .chain(self.word.iter().rev().copied())
            .scan(0, |acc, l| {
                *acc += (l == Letter::A) as usize;
                Some(*acc)
            });
        self.accepts(suffix_counts)
    }

    /// Whether `x` followed by the word is still balanced.
    pub fn accepts_left(&self, x: Letter) -> bool {
        let prefix_counts =
            std::iter::once(x)
                .chain(self.word.iter().copied())
                .scan(0, |acc, l| {
                    *acc += (l == Letter::A) as usize;
                    Some(*acc)
                });
        self.accepts(prefix_counts)
    }

    /// Appends `x`; the caller must have checked `accepts_right(x)`.
    pub fn push(&mut self, x: Letter) {
        self.word.push(x);
        let mut acc = 0;
        for (k, &l) in self.word.iter().rev().enumerate() {
            acc += (l == Letter::A) as usize;
            match self.bounds.get_mut(k) {
                Some((lo, hi)) => {
                    *lo = (*lo).min(acc);
                    *hi = (*hi).max(acc);
                }
                None => self.bounds.push((acc, acc)),
            }
        }
    }
}

pub fn is_left_special(w: &[Letter]) -> bool {
    BalanceProfile::new(w).is_some_and(|p| p.accepts_left(Letter::A) && p.accepts_left(Letter::B))
}

pub fn is_right_special(w: &[Letter]) -> bool {
    BalanceProfile::new(w).is_some_and(|p| p.accepts_right(Letter::A) && p.accepts_right(Letter::B))
}

pub fn is_bispecial(w: &[Letter]) -> bool {
    BalanceProfile::new(w).is_some_and(|p| {
        [Letter::A, Letter::B]
            .into_iter()
            .all(|x| p.accepts_left(x) && p.accepts_right(x))
    })
}

/// Palindromic bispecial Sturmian word.
pub fn is_central(w: &[Letter]) -> bool {
    is_palindrome(w) && is_bispecial(w)
}

/// `w = u x y u` with `x != y` and `u` central.
pub fn is_semicentral(w: &[Letter]) -> bool {
    if w.len() < 2 || !w.len().is_multiple_of(2) {
        return false;
    }
    let h = (w.len() - 2) / 2;
    let (u, rest) = w.split_at(h);
    rest[0] != rest[1] && &rest[2..] == u && is_central(u)
}

/// A single letter, or `u x y` with `x != y` and `u` central.
pub fn is_standard(w: &[Letter]) -> bool {
    match w.len() {
        0 => false,
        1 => true,
        n => w[n - 2] != w[n - 1] && is_central(&w[..n - 2]),
    }
}

/// Lengths `|s_{-1}|, |s_0|, |s_1|, ...` as far as the directive allows,
/// stopping once a length exceeds `limit`.
pub(crate) fn standard_lengths(d: &DirectiveSequence, limit: usize) -> Vec<usize> {
    let mut lens = vec![1, 1];
    let mut n = 0;
    while *lens.last().unwrap() <= limit {
        let Some(dn) = d.get(n) else { break };
        let k = lens.len();
        lens.push(dn * lens[k - 1] + lens[k - 2]);
        n += 1;
    }
    lens
}

/// Central prefixes of the generated word of length at most `len`, shortest first.
///
/// They are `(u_n x y)^k u_{n-1}` for `1 <= k <= d_n + 1` (the last one
/// coinciding with the first of level `n + 1`), of length
/// `k|s_n| + |s_{n-1}| - 2`; level 0 gives `ε, a, ..., a^{d_0}`.
pub fn central_prefixes(d: &DirectiveSequence, len: usize) -> Result<Vec<Word>> {
    let w = generate_prefix(d, len)?;
    let mut lengths = BTreeSet::new();
    let (mut prev, mut cur) = (1usize, 1usize);
    let mut n = 0;
    loop {
        let at = |k: usize| k * cur + prev - 2;
        for k in 1..=2 {
            if at(k) <= len {
                lengths.insert(at(k));
            }
        }
        if at(3) > len {
            break;
        }
        let dn = d.require(n)?;
        lengths.extend((3..=dn + 1).map(at).filter(|&l| l <= len));
        (prev, cur) = (cur, dn * cur + prev);
        n += 1;
    }
    Ok(lengths.into_iter().map(|l| w.prefix(l)).collect())
}

/// `u_n^{-1} u_{n+1}` for `n >= 1`, and `b a^{d_0 - 1}` for `n = 0`.
pub fn reversed_standard_factor(d: &DirectiveSequence, n: usize) -> Result<Word> {
    if n == 0 {
        let d0 = d.first();
        let mut out = Word::power_of(Letter::B, 1);
        out.extend_from(&Word::power_of(Letter::A, d0 - 1));
        return Ok(out);
    }
    let seq = standard_sequence(d, n + 1)?;
    let (short, long) = (seq.u(n), seq.u(n + 1));
    assert!(
        long.starts_with(short),
        "u_{n} is not a prefix of u_{} for directive {d}",
        n + 1
    );
    Ok(Word::from(&long[short.len()..]))
}

/// `reversal(s_n^{d_n - 1} s_{n-1})`, the closed form of the factor above for `n >= 1`.
pub fn reversed_standard_factor_closed_form(d: &DirectiveSequence, n: usize) -> Result<Word> {
    assert!(n >= 1);
    let seq = standard_sequence(d, n)?;
    let dn = d.require(n)?;
    Ok(reversal(&seq.s(n).repeat(dn - 1).concat(&seq.s_words[n])))
}
