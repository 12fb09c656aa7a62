//! Permutations of `[n]` in one-line notation, exhaustive generation of
//! `S_n` in lexicographic order, and the reverse/inverse/cycle symmetries.
//!
//! Entries are stored 1-based exactly as written: `σ = σ_1 … σ_n` is held as
//! the slice `[σ_1, …, σ_n]`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest `n` for which `S_n` is enumerated unless the caller raises it.
pub const DEFAULT_ENUMERATION_CAP: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            if e == 0 || e as usize > n {
                return Err(Error::InvalidPermutation { n, reason: format!("entry {e} outside 1..={n}") });
            }
            if std::mem::replace(&mut seen[e as usize], true) {
                return Err(Error::InvalidPermutation { n, reason: format!("entry {e} repeated") });
            }
        }
        Ok(Self(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Self(entries)
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n as u32).collect())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    /// `σ_i` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e as usize == i + 1)
    }

    /// `σ^r = σ_n … σ_1`.
    pub fn reverse(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &e) in self.0.iter().enumerate() {
            inv[e as usize - 1] = i as u32 + 1;
        }
        Self(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different lengths");
        Self(other.0.iter().map(|&e| self.0[e as usize - 1]).collect())
    }

    /// Canonical cycle form: each cycle written with its largest element last,
    /// cycles ordered by increasing largest element.
    pub fn to_cycles(&self) -> CycleForm {
        let n = self.0.len();
        let mut visited = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n as u32 {
            if visited[start as usize] {
                continue;
            }
            let mut cycle = vec![start];
            visited[start as usize] = true;
            let mut next = self.0[start as usize - 1];
            while next != start {
                visited[next as usize] = true;
                cycle.push(next);
                next = self.0[next as usize - 1];
            }
            let max_at = cycle.iter().enumerate().max_by_key(|(_, &e)| e).map(|(i, _)| i).unwrap();
            let len = cycle.len();
            cycle.rotate_left((max_at + 1) % len);
            cycles.push(cycle);
        }
        cycles.sort_by_key(|c| *c.last().unwrap());
        CycleForm { n, cycles }
    }

    pub fn from_cycles(cycles: &CycleForm) -> Self {
        let mut entries = vec![0u32; cycles.n];
        for cycle in &cycles.cycles {
            for (idx, &e) in cycle.iter().enumerate() {
                entries[e as usize - 1] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Self(entries)
    }
}

impl Deref for Permutation {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

/// Digits for `n ≤ 9`, comma-separated otherwise.
pub fn format_entries(entries: &[u32]) -> String {
    if entries.len() <= 9 {
        entries.iter().map(u32::to_string).collect()
    } else {
        entries.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_entries(&self.0))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: String| Error::PermutationSyntax { input: s.to_string(), reason };
        let entries: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| bad(format!("bad entry `{}`", t.trim()))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| bad(format!("bad digit `{c}`"))))
                .collect::<Result<_>>()?
        };
        Permutation::new(entries).map_err(|e| bad(e.to_string()))
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleForm {
    n: usize,
    cycles: Vec<Vec<u32>>,
}

impl CycleForm {
    /// Validates that `cycles` partition `[n]`, where `n` is the total number
    /// of listed elements. The cycles are kept as given.
    pub fn new(cycles: Vec<Vec<u32>>) -> Result<Self> {
        let n: usize = cycles.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for cycle in &cycles {
            if cycle.is_empty() {
                return Err(Error::InvalidCycles { n, reason: "empty cycle".into() });
            }
            for &e in cycle {
                if e == 0 || e as usize > n {
                    return Err(Error::InvalidCycles { n, reason: format!("element {e} outside 1..={n}") });
                }
                if std::mem::replace(&mut seen[e as usize], true) {
                    return Err(Error::InvalidCycles { n, reason: format!("element {e} repeated") });
                }
            }
        }
        Ok(Self { n, cycles })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    pub fn is_canonical(&self) -> bool {
        let max_last = self.cycles.iter().all(|c| c.iter().max() == c.last());
        let ordered = self.cycles.windows(2).all(|w| w[0].last() < w[1].last());
        max_last && ordered
    }
}

impl fmt::Display for CycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n <= 9 { "" } else { "," };
        for cycle in &self.cycles {
            let items: Vec<String> = cycle.iter().map(u32::to_string).collect();
            write!(f, "({})", items.join(sep))?;
        }
        Ok(())
    }
}

pub fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::EnumerationCap { n, cap })
    } else {
        Ok(())
    }
}

/// Rearranges `v` into its lexicographic successor; false at the last one.
pub(crate) fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Lexicographic stream over `S_n`, or over the block of `S_n` whose entries
/// begin with a fixed prefix.
#[derive(Debug, Clone)]
pub struct Lexicographic {
    current: Option<Vec<u32>>,
    fixed: usize,
}

impl Lexicographic {
    fn with_prefix(n: usize, prefix: &[u32]) -> Self {
        let mut start = prefix.to_vec();
        start.extend((1..=n as u32).filter(|e| !prefix.contains(e)));
        Self { current: Some(start), fixed: prefix.len() }
    }

    /// Visits every remaining permutation as a borrowed slice.
    pub fn for_each_slice<F: FnMut(&[u32])>(mut self, mut f: F) {
        if let Some(mut cur) = self.current.take() {
            loop {
                f(&cur);
                if !next_permutation(&mut cur[self.fixed..]) {
                    break;
                }
            }
        }
    }
}

impl Iterator for Lexicographic {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.as_mut()?;
        let out = Permutation(cur.clone());
        if !next_permutation(&mut cur[self.fixed..]) {
            self.current = None;
        }
        Some(out)
    }
}

/// Every permutation of `[n]` once, in lexicographic order.
pub fn enumerate_sn(n: usize, cap: usize) -> Result<Lexicographic> {
    check_cap(n, cap)?;
    Ok(Lexicographic::with_prefix(n, &[]))
}

/// The permutations of `[n]` beginning with `prefix`, in lexicographic order.
/// Concatenating the blocks for all prefixes of one length reproduces
/// [`enumerate_sn`].
pub fn enumerate_with_prefix(n: usize, prefix: &[u32], cap: usize) -> Result<Lexicographic> {
    check_cap(n, cap)?;
    let valid = prefix.len() <= n
        && prefix.iter().enumerate().all(|(i, &e)| e >= 1 && e as usize <= n && !prefix[..i].contains(&e));
    if !valid {
        return Err(Error::InvalidPermutation { n, reason: format!("bad prefix {prefix:?}") });
    }
    Ok(Lexicographic::with_prefix(n, prefix))
}

/// Folds over `S_n` with one task per first entry and merges the partial
/// results. The merge must be commutative for the result to be independent of
/// scheduling; all callers here add counts.
pub fn par_fold_sn<T, I, F, M>(n: usize, cap: usize, init: I, fold: F, merge: M) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[u32]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    check_cap(n, cap)?;
    if n == 0 {
        let mut acc = init();
        fold(&mut acc, &[]);
        return Ok(acc);
    }
    let out = (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            Lexicographic::with_prefix(n, &[first]).for_each_slice(|p| fold(&mut acc, p));
            acc
        })
        .reduce(&init, &merge);
    Ok(out)
}
