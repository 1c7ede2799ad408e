//! Slow reference implementations taken straight from the definitions.
//! Nothing here shares code with the fast paths it is used to check.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::sturmian::is_finite_sturmian;
use crate::words::{Letter, Word};

pub const MAX_STURMIAN_ENUMERATION: usize = 18;
pub const MAX_STANDARD_ENUMERATION: usize = 64;

fn count_occurrences(w: &[Letter], v: &[Letter]) -> usize {
    if v.len() > w.len() {
        return 0;
    }
    (0..=w.len() - v.len())
        .filter(|&i| &w[i..i + v.len()] == v)
        .count()
}

/// Empty, or some factor `v != w` occurs exactly twice: once as a prefix and
/// once as a suffix.
pub fn naive_is_closed(w: &[Letter]) -> bool {
    if w.is_empty() {
        return true;
    }
    // such a factor is in particular a prefix
    (0..w.len()).any(|l| {
        let v = &w[..l];
        w.ends_with(v) && count_occurrences(w, v) == 2
    })
}

/// The longest prefix occurring at least twice (overlaps allowed) is not
/// followed by two distinct letters among its occurrences.
pub fn is_periodic_like(w: &[Letter]) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let repeated = (0..w.len())
        .rev()
        .find(|&l| count_occurrences(w, &w[..l]) >= 2)
        .expect("the empty prefix occurs |w| + 1 times");
    let v = &w[..repeated];
    let followers: HashSet<Letter> = (0..=w.len() - v.len())
        .filter(|&i| &w[i..i + v.len()] == v)
        .filter_map(|i| w.get(i + v.len()).copied())
        .collect();
    Ok(followers.len() < 2)
}

/// All balanced words of length `n`, in lexicographic order.
pub fn enumerate_finite_sturmian(n: usize) -> Result<Vec<Word>> {
    if n > MAX_STURMIAN_ENUMERATION {
        return Err(Error::LengthGuard {
            requested: n,
            max: MAX_STURMIAN_ENUMERATION,
        });
    }
    Ok((0..1u64 << n)
        .map(|code| Word::from_code(code, n))
        .filter(|w| is_finite_sturmian(w))
        .collect())
}

/// Every `s_n` of length at most `max_len` over all directives with
/// `d_0 >= 0` and `d_i >= 1`, shortest first.
pub fn enumerate_standard_words(max_len: usize) -> Result<Vec<Word>> {
    if max_len > MAX_STANDARD_ENUMERATION {
        return Err(Error::LengthGuard {
            requested: max_len,
            max: MAX_STANDARD_ENUMERATION,
        });
    }
    let a = Word::power_of(Letter::A, 1);
    let b = Word::power_of(Letter::B, 1);
    let mut found = BTreeSet::new();
    if max_len >= 1 {
        found.insert((1, a.clone()));
        found.insert((1, b.clone()));
    }

    // (s_{n-1}, s_n, n)
    let mut stack = vec![(b, a, 0usize)];
    while let Some((prev, cur, n)) = stack.pop() {
        let min_d = if n == 0 { 0 } else { 1 };
        for d in min_d.. {
            let next = cur.repeat(d).concat(&prev);
            if next.len() > max_len {
                break;
            }
            found.insert((next.len(), next.clone()));
            stack.push((cur.clone(), next, n + 1));
        }
    }
    Ok(found.into_iter().map(|(_, w)| w).collect())
}

/// Entry `k - 1` is the number of distinct factors of length `k`.
pub fn complexity_profile(w: &[Letter]) -> Vec<usize> {
    (1..=w.len())
        .map(|k| w.windows(k).collect::<HashSet<_>>().len())
        .collect()
}
