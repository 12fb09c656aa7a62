//! Insertion recurrences, built bottom-up from the single permutation of
//! length 0.
//!
//! Each step from length `m` to `m + 1` is described by [`Transitions`]: for a
//! permutation with statistic value `k`, how many of the `m + 1` insertions of
//! the new element lower the value by one, raise it by one, or leave it. The
//! coefficient row then follows as
//! `c'[k] = down(k+1)·c[k+1] + up(k−1)·c[k−1] + stay(k)·c[k]`.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::setspec::SetSpec;
use crate::stats::StatId;

use super::Distribution;

/// Where the inserted element `m + 1` lands relative to `X` and `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InsertionCase {
    Neither,
    Both,
    XOnly,
    YOnly,
}

impl InsertionCase {
    pub fn of(x: &SetSpec, y: &SetSpec, element: u32) -> Self {
        match (x.contains(element), y.contains(element)) {
            (false, false) => InsertionCase::Neither,
            (true, true) => InsertionCase::Both,
            (true, false) => InsertionCase::XOnly,
            (false, true) => InsertionCase::YOnly,
        }
    }
}

/// Counts of insertions by effect on the statistic, for a length-`m`
/// permutation with value `k`. Counts may come out negative only for values
/// `k` that no permutation attains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transitions {
    pub down: i64,
    pub up: i64,
    pub stay: i64,
}

impl Transitions {
    fn lowering(m: i64, k: i64) -> Self {
        Self { down: k, up: 0, stay: m + 1 - k }
    }

    fn raising(m: i64, raisers: i64) -> Self {
        Self { down: 0, up: raisers, stay: m + 1 - raisers }
    }
}

/// Inserting `m + 1` anywhere into a length-`m` permutation, counted by
/// `(X, Y)`-descents with value `k`.
pub fn des_transitions(x: &SetSpec, y: &SetSpec, m: u32, k: i64) -> Transitions {
    let m_i = m as i64;
    if x.contains(m + 1) {
        // Raises exactly when placed before a Y-entry that is not already the
        // bottom of an (X, Y)-descent.
        Transitions::raising(m_i, y.prefix_count(m) as i64 - k)
    } else {
        Transitions::lowering(m_i, k)
    }
}

/// Inserting `m + 1` anywhere, counted by `(X, Y)`-adjacencies with value `k`.
pub fn adj_transitions(x: &SetSpec, y: &SetSpec, m: u32, k: i64) -> Transitions {
    let (xm, ym, m_i) = (x.prefix_count(m) as i64, y.prefix_count(m) as i64, m as i64);
    match InsertionCase::of(x, y, m + 1) {
        InsertionCase::Neither => Transitions::lowering(m_i, k),
        InsertionCase::Both => Transitions::raising(m_i, xm + ym - k),
        InsertionCase::XOnly => Transitions::raising(m_i, ym - k),
        InsertionCase::YOnly => Transitions::raising(m_i, xm - k),
    }
}

/// The position-replacing insertion `I^{(i)}`, counted by `(X, Y)`-place-value
/// pairs with value `k`. Differs from [`adj_transitions`] only when `m + 1`
/// lies in both sets, where appending `m + 1` is one extra raising move.
pub fn val_transitions(x: &SetSpec, y: &SetSpec, m: u32, k: i64) -> Transitions {
    let (xm, ym, m_i) = (x.prefix_count(m) as i64, y.prefix_count(m) as i64, m as i64);
    match InsertionCase::of(x, y, m + 1) {
        InsertionCase::Neither => Transitions::lowering(m_i, k),
        InsertionCase::Both => Transitions::raising(m_i, 1 + xm + ym - k),
        InsertionCase::XOnly => Transitions::raising(m_i, ym - k),
        InsertionCase::YOnly => Transitions::raising(m_i, xm - k),
    }
}

fn step(row: &[BigInt], m: u32, rule: &dyn Fn(u32, i64) -> Transitions) -> Vec<BigInt> {
    let width = m as usize + 2;
    let at = |k: i64| -> BigInt {
        if k < 0 || k as usize >= row.len() {
            BigInt::zero()
        } else {
            row[k as usize].clone()
        }
    };
    (0..width as i64)
        .map(|k| {
            let from_above = at(k + 1) * rule(m, k + 1).down;
            let from_below = if k >= 1 { at(k - 1) * rule(m, k - 1).up } else { BigInt::zero() };
            let same = at(k) * rule(m, k).stay;
            from_above + from_below + same
        })
        .collect()
}

fn run(n: usize, stat: StatId, rule: &dyn Fn(u32, i64) -> Transitions) -> Distribution {
    let mut row = vec![BigInt::from(1)];
    for m in 0..n as u32 {
        row = step(&row, m, rule);
    }
    let coeffs: Vec<BigUint> = row
        .into_iter()
        .map(|c| {
            assert!(!c.is_negative(), "recurrence produced a negative coefficient");
            c.to_biguint().unwrap()
        })
        .collect();
    Distribution::new(n, stat, coeffs)
}

pub fn des_recurrence(x: &SetSpec, y: &SetSpec, n: usize) -> Distribution {
    run(n, StatId::Des(x.clone(), y.clone()), &|m, k| des_transitions(x, y, m, k))
}

pub fn adj_recurrence(x: &SetSpec, y: &SetSpec, n: usize) -> Distribution {
    run(n, StatId::Adj(x.clone(), y.clone()), &|m, k| adj_transitions(x, y, m, k))
}

pub fn val_recurrence(x: &SetSpec, y: &SetSpec, n: usize) -> Distribution {
    run(n, StatId::Val(x.clone(), y.clone()), &|m, k| val_transitions(x, y, m, k))
}

/// Checks that `X` and `Y` partition `[n]`.
pub(crate) fn check_partition(x: &SetSpec, y: &SetSpec, n: usize) -> Result<()> {
    for m in 1..=n as u32 {
        match (x.contains(m), y.contains(m)) {
            (true, true) => {
                return Err(Error::Hypothesis(format!("{m} lies in both X = {x} and Y = {y}; need X ∩ Y = ∅")))
            }
            (false, false) => {
                return Err(Error::Hypothesis(format!("{m} lies in neither X = {x} nor Y = {y}; need X ∪ Y ⊇ [{n}]")))
            }
            _ => {}
        }
    }
    Ok(())
}

/// `Γ^{X,Y}` for complementary `X`, `Y` via the place-value recurrence for
/// `(X, X)`: when `X` and `Y` split `[n]`, every `Y`-position not holding an
/// `X`-value holds a `Y`-value, so `γ = 2·val_{X,X} + y_n − x_n`.
pub fn gamma_recurrence(x: &SetSpec, y: &SetSpec, n: usize) -> Result<Distribution> {
    check_partition(x, y, n)?;
    let v = val_recurrence(x, x, n);
    let shift = y.prefix_count(n as u32) as i64 - x.prefix_count(n as u32) as i64;
    let mut coeffs = vec![BigUint::zero(); n + 1];
    for (k, c) in v.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = 2 * k as i64 + shift;
        assert!((0..=n as i64).contains(&s), "γ value {s} outside 0..={n}");
        coeffs[s as usize] += c;
    }
    Ok(Distribution::new(n, StatId::Gamma(x.clone(), y.clone()), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binom, factorial};

    fn s(src: &str) -> SetSpec {
        src.parse().unwrap()
    }

    #[test]
    fn worked_descent_example() {
        let d = des_recurrence(&s("set:2,3,4,6,7,9"), &s("set:1,4,8"), 6);
        assert_eq!(d.coeff(2), 72u32.into());
        assert!(d.sums_to_factorial());
    }

    #[test]
    fn base_cases() {
        assert_eq!(des_recurrence(&SetSpec::All, &SetSpec::All, 0).to_u64().unwrap(), vec![1]);
        assert_eq!(val_recurrence(&SetSpec::All, &SetSpec::All, 1).to_u64().unwrap(), vec![0, 1]);
        assert_eq!(adj_recurrence(&SetSpec::All, &SetSpec::All, 1).to_u64().unwrap(), vec![1, 0]);
    }

    #[test]
    fn empty_top_set_has_no_descents() {
        for n in 0..8 {
            let d = des_recurrence(&SetSpec::empty(), &SetSpec::All, n);
            assert_eq!(d.coeff(0), factorial(n as u64));
            assert!(d.coeffs()[1..].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn all_pairs_adjacent() {
        for n in 1..8 {
            let d = adj_recurrence(&SetSpec::All, &SetSpec::All, n);
            assert_eq!(d.coeff(n - 1), factorial(n as u64));
            assert_eq!(d.total(), factorial(n as u64));
        }
    }

    #[test]
    fn odd_odd_adjacency_even_length() {
        // (n!)^2 C(n-1, k) C(n+1, k+1) at length 2n.
        for half in 1..6u64 {
            let d = adj_recurrence(&SetSpec::Odd, &SetSpec::Odd, 2 * half as usize);
            for k in 0..=half as i64 {
                let want = factorial(half).pow(2) * binom(half as i64 - 1, k) * binom(half as i64 + 1, k + 1);
                assert_eq!(d.coeff(k as usize), want);
            }
        }
    }

    #[test]
    fn odd_odd_place_value_odd_length() {
        // n!(n+1)! C(n, k-1) C(n+1, k) at length 2n+1.
        for half in 0..5u64 {
            let d = val_recurrence(&SetSpec::Odd, &SetSpec::Odd, 2 * half as usize + 1);
            for k in 0..=(half as i64 + 1) {
                let want = factorial(half) * factorial(half + 1) * binom(half as i64, k - 1) * binom(half as i64 + 1, k);
                assert_eq!(d.coeff(k as usize), want, "half={half} k={k}");
            }
        }
    }

    #[test]
    fn gamma_needs_partition() {
        assert!(gamma_recurrence(&SetSpec::Even, &SetSpec::Even, 3).is_err());
        assert!(gamma_recurrence(&s("set:1"), &s("set:2"), 3).is_err());
        let d = gamma_recurrence(&SetSpec::Even, &SetSpec::Odd, 2).unwrap();
        assert_eq!(d.to_u64().unwrap(), vec![1, 0, 1]);
    }
}
