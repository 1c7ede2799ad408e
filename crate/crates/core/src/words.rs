//! Binary words and the open/closed machinery: borders, periods,
//! occurrences, closedness and oc-sequences.
//!
//! A word is *closed* when it is empty or its longest border occurs in it
//! exactly twice, once as a prefix and once as a suffix. Otherwise it is
//! *open*. The empty border of a single letter counts as occurring twice
//! (at both ends), so every letter is closed.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word over `{a, b}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    /// `letter` repeated `n` times.
    pub fn power_of(letter: Letter, n: usize) -> Word {
        Word(vec![letter; n])
    }

    /// Decodes the low `len` bits of `code`, most significant first, with
    /// 0 as `a` and 1 as `b`. Used to walk the whole word space of a length.
    pub fn from_code(code: u64, len: usize) -> Word {
        debug_assert!(len <= 64);
        Word(
            (0..len)
                .rev()
                .map(|i| {
                    if (code >> i) & 1 == 0 {
                        Letter::A
                    } else {
                        Letter::B
                    }
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &[Letter]) {
        self.0.extend_from_slice(other);
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(other);
        Word(out)
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn with(&self, letter: Letter) -> Word {
        let mut out = self.clone();
        out.push(letter);
        out
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Word {
        Word(letters.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .map(Letter::from_char)
            .collect::<Option<Vec<_>>>()
            .map(Word)
            .ok_or_else(|| Error::InvalidWord {
                input: s.to_string(),
            })
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Word> {
        s.parse()
    }
}

/// Bit `n` (1-based) tells whether the prefix of length `n` is closed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct OcSequence(Vec<bool>);

impl OcSequence {
    pub fn from_bits(bits: Vec<bool>) -> OcSequence {
        OcSequence(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bit for the prefix of length `n`, `1 <= n <= len`.
    pub fn get(&self, n: usize) -> Option<bool> {
        n.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn truncated(&self, n: usize) -> OcSequence {
        OcSequence(self.0[..n.min(self.0.len())].to_vec())
    }
}

impl fmt::Display for OcSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for OcSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<OcSequence> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidOc(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(OcSequence)
    }
}

impl From<OcSequence> for String {
    fn from(s: OcSequence) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for OcSequence {
    type Error = Error;

    fn try_from(s: String) -> Result<OcSequence> {
        s.parse()
    }
}

/// A maximal block of equal bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub bit: bool,
    pub len: usize,
}

/// Entry `i` is the length of the longest border of the prefix of length `i + 1`.
pub fn border_array(w: &[Letter]) -> Vec<usize> {
    let mut border = vec![0; w.len()];
    for i in 1..w.len() {
        let mut b = border[i - 1];
        while b > 0 && w[i] != w[b] {
            b = border[b - 1];
        }
        if w[i] == w[b] {
            b += 1;
        }
        border[i] = b;
    }
    border
}

pub fn longest_border(w: &[Letter]) -> Result<Word> {
    let last = *border_array(w).last().ok_or(Error::EmptyWord)?;
    Ok(Word::from(&w[..last]))
}

/// Smallest `p >= 1` with `w[i] == w[i + p]` wherever both sides exist.
pub fn min_period(w: &[Letter]) -> Result<usize> {
    let b = longest_border(w)?;
    Ok(w.len() - b.len())
}

/// Start positions of `u` in `w`, ascending. The empty word occurs at every
/// position `0..=|w|`.
pub fn occurrences(w: &[Letter], u: &[Letter]) -> Vec<usize> {
    if u.is_empty() {
        return (0..=w.len()).collect();
    }
    let fail = border_array(u);
    let mut out = Vec::new();
    let mut matched = 0;
    for (i, &c) in w.iter().enumerate() {
        while matched > 0 && u[matched] != c {
            matched = fail[matched - 1];
        }
        if u[matched] == c {
            matched += 1;
        }
        if matched == u.len() {
            out.push(i + 1 - u.len());
            matched = fail[matched - 1];
        }
    }
    out
}

pub fn is_closed(w: &[Letter]) -> bool {
    if w.is_empty() {
        return true;
    }
    let b = border_array(w)[w.len() - 1];
    // The border occurs at 0 and at |w| - b; any further hit is internal.
    occurrences(w, &w[..b]).len() == 2
}

/// The oc-sequence of `w`, computed in one pass.
///
/// `last_end[l]` holds the end of the most recent occurrence of the prefix
/// of length `l` seen so far. The prefix of length `i` with longest border
/// `b > 0` is closed iff, before position `i`, the border was last seen
/// only as itself (ending at `b`).
pub fn oc_sequence(w: &[Letter]) -> OcSequence {
    let border = border_array(w);
    let mut last_end = vec![0usize; w.len() + 1];
    let mut bits = Vec::with_capacity(w.len());
    for i in 1..=w.len() {
        let b = border[i - 1];
        let closed = if b == 0 { i == 1 } else { last_end[b] == b };
        bits.push(closed);
        last_end[i] = i;
        let mut l = b;
        while l > 0 {
            last_end[l] = i;
            l = border[l - 1];
        }
    }
    OcSequence(bits)
}

pub fn runs(s: &OcSequence) -> Vec<Run> {
    let mut out: Vec<Run> = Vec::new();
    for &bit in s.bits() {
        match out.last_mut() {
            Some(run) if run.bit == bit => run.len += 1,
            _ => out.push(Run { bit, len: 1 }),
        }
    }
    out
}

pub fn expand_runs(runs: &[Run]) -> OcSequence {
    OcSequence(
        runs.iter()
            .flat_map(|r| std::iter::repeat_n(r.bit, r.len))
            .collect(),
    )
}

pub fn reversal(w: &[Letter]) -> Word {
    w.iter().rev().copied().collect()
}

pub fn is_palindrome(w: &[Letter]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// Replaces the first letter with the other one, e.g. `ba⁻¹w` for an
/// `a`-initial `w`.
pub fn swap_first_letter(w: &[Letter]) -> Result<Word> {
    let (&first, rest) = w.split_first().ok_or(Error::EmptyWord)?;
    let mut out = Word::from_letters(Vec::with_capacity(w.len()));
    out.push(first.other());
    out.extend_from(rest);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn brute_border_array(w: &[Letter]) -> Vec<usize> {
        (1..=w.len())
            .map(|i| {
                let p = &w[..i];
                (0..i).rev().find(|&l| p[..l] == p[i - l..]).unwrap()
            })
            .collect()
    }

    #[test]
    fn border_array_examples() {
        assert_eq!(border_array(&w("aba")), vec![0, 0, 1]);
        assert_eq!(brute_border_array(&w("aabaa")), vec![0, 1, 0, 1, 2]);
        assert_eq!(border_array(&w("aabaa")), vec![0, 1, 0, 1, 2]);
        assert!(border_array(&w("")).is_empty());
    }

    #[test]
    fn border_array_matches_brute_force() {
        for len in 0..=10 {
            for code in 0..1u64 << len {
                let word = Word::from_code(code, len);
                assert_eq!(border_array(&word), brute_border_array(&word), "{word}");
            }
        }
    }

    #[test]
    fn longest_border_and_period() {
        assert_eq!(longest_border(&w("aba")).unwrap(), w("a"));
        assert_eq!(longest_border(&w("abaab")).unwrap(), w("ab"));
        assert_eq!(longest_border(&w("ab")).unwrap(), w(""));
        assert_eq!(longest_border(&w("")), Err(Error::EmptyWord));

        assert_eq!(min_period(&w("aa")).unwrap(), 1);
        assert_eq!(min_period(&w("abaab")).unwrap(), 3);
        assert_eq!(min_period(&w("ab")).unwrap(), 2);
        assert_eq!(min_period(&w("")), Err(Error::EmptyWord));

        let x = w("abaab");
        let p = min_period(&x).unwrap();
        assert!((0..x.len() - p).all(|i| x[i] == x[i + p]));
    }

    #[test]
    fn occurrence_positions() {
        assert_eq!(occurrences(&w("abaa"), &w("a")), vec![0, 2, 3]);
        assert_eq!(occurrences(&w("aba"), &w("aba")), vec![0]);
        assert_eq!(occurrences(&w("abaa"), &w("b")), vec![1]);
        assert_eq!(occurrences(&w("aaaa"), &w("aa")), vec![0, 1, 2]);
        assert_eq!(occurrences(&w("ab"), &w("")), vec![0, 1, 2]);
        assert!(occurrences(&w("ab"), &w("abb")).is_empty());
    }

    #[test]
    fn closed_examples() {
        assert!(is_closed(&w("aba")));
        assert!(!is_closed(&w("abaa")));
        assert!(is_closed(&w("aaaa")));
        assert!(is_closed(&w("aabaab")));
        assert!(is_closed(&w("")));
        assert!(is_closed(&w("a")));
        assert!(!is_closed(&w("ab")));
    }

    #[test]
    fn oc_examples() {
        assert_eq!(oc_sequence(&w("abaaab")).to_string(), "101001");
        assert_eq!(
            oc_sequence(&w("aabaabaaabaabaa")).to_string(),
            "110011110000111"
        );
        assert_eq!(oc_sequence(&w("aaaaa")).to_string(), "11111");
        assert!(oc_sequence(&w("")).is_empty());
    }

    #[test]
    fn oc_sequence_agrees_with_per_prefix_closedness() {
        for len in 0..=12 {
            for code in 0..1u64 << len {
                let word = Word::from_code(code, len);
                let expect: Vec<bool> = (1..=len).map(|i| is_closed(&word[..i])).collect();
                assert_eq!(oc_sequence(&word).bits(), &expect[..], "{word}");
            }
        }
    }

    #[test]
    fn run_encoding() {
        let s: OcSequence = "110011110000111".parse().unwrap();
        let r: Vec<(u8, usize)> = runs(&s).iter().map(|r| (r.bit as u8, r.len)).collect();
        assert_eq!(r, vec![(1, 2), (0, 2), (1, 4), (0, 4), (1, 3)]);

        let s: OcSequence = "101001".parse().unwrap();
        let r: Vec<(u8, usize)> = runs(&s).iter().map(|r| (r.bit as u8, r.len)).collect();
        assert_eq!(r, vec![(1, 1), (0, 1), (1, 1), (0, 2), (1, 1)]);

        assert!(runs(&OcSequence::default()).is_empty());
    }

    #[test]
    fn reversal_and_palindromes() {
        assert_eq!(reversal(&w("aab")), w("baa"));
        assert!(is_palindrome(&w("aabaa")));
        assert!(is_palindrome(&w("")));
        assert!(!is_palindrome(&w("ab")));
    }

    #[test]
    fn swap_first() {
        assert_eq!(swap_first_letter(&w("aab")).unwrap(), w("bab"));
        assert_eq!(swap_first_letter(&w("abaab")).unwrap(), w("bbaab"));
        assert_eq!(swap_first_letter(&w("a")).unwrap(), w("b"));
        assert_eq!(swap_first_letter(&w("")), Err(Error::EmptyWord));
    }

    #[test]
    fn parsing_rejects_other_symbols() {
        assert!("ab0".parse::<Word>().is_err());
        assert!("A".parse::<Word>().is_err());
        assert!("102".parse::<OcSequence>().is_err());
        assert_eq!(Word::from_code(0b011, 3), w("abb"));
    }
}
