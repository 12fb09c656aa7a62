//! Closed forms, evaluated coefficient by coefficient with exact integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use crate::arith::{binom, binom_signed, factorial};
use crate::error::Result;
use crate::setspec::SetSpec;
use crate::stats::StatId;

use super::recurrence::check_partition;
use super::Distribution;

fn counts(x: &SetSpec, n: usize) -> (i64, i64) {
    let xn = x.prefix_count(n as u32) as i64;
    (xn, n as i64 - xn)
}

fn members(x: &SetSpec, n: usize) -> Vec<u32> {
    (1..=n as u32).filter(|&j| x.contains(j)).collect()
}

fn into_unsigned(v: BigInt, what: &str) -> BigUint {
    assert!(v.sign() != Sign::Minus, "{what} evaluated to a negative count");
    v.to_biguint().unwrap()
}

/// `V^{X,Y}_{n,k} = k! (x−k)! (n−x)! C(x,k) C(y,k) C(n−y, x−k)`, where
/// `x, y` count `X, Y` inside `[n]`.
pub fn val_formula(x: &SetSpec, y: &SetSpec, n: usize) -> Distribution {
    let (xn, xc) = counts(x, n);
    let (yn, yc) = counts(y, n);
    let coeffs = (0..=n as i64)
        .map(|k| {
            if k > xn {
                return BigUint::zero();
            }
            factorial(k as u64)
                * factorial((xn - k) as u64)
                * factorial(xc as u64)
                * binom(xn, k)
                * binom(yn, k)
                * binom(yc, xn - k)
        })
        .collect();
    Distribution::new(n, StatId::Val(x.clone(), y.clone()), coeffs)
}

/// `A^{X,X}_{n,s} = x! (n−x)! C(x−1, s) C(n−x+1, x−s)`.
pub fn adj_same_set_formula(x: &SetSpec, n: usize) -> Distribution {
    let (xn, xc) = counts(x, n);
    let coeffs = (0..=n as i64)
        .map(|s| factorial(xn as u64) * factorial(xc as u64) * binom(xn - 1, s) * binom(xc + 1, xn - s))
        .collect();
    Distribution::new(n, StatId::Adj(x.clone(), x.clone()), coeffs)
}

/// First alternating sum for `D^{X,Y}`.
pub fn des_hr1(x: &SetSpec, y: &SetSpec, n: usize) -> Distribution {
    let (_, xc) = counts(x, n);
    let nn = n as u32;
    // Per-member offsets 1 + α_X + β_Y; the product is then a polynomial in r.
    let offsets: Vec<i64> = members(x, n).iter().map(|&j| 1 + x.alpha(nn, j) as i64 + y.beta(nn, j) as i64).collect();
    let product = |r: i64| -> BigInt { offsets.iter().map(|&o| BigInt::from(r + o)).product() };
    let lead = BigInt::from(factorial(xc as u64));
    let coeffs = (0..=n as i64)
        .map(|s| {
            let sum: BigInt = (0..=s)
                .map(|r| {
                    let term = binom_signed(xc + r, r) * binom_signed(n as i64 + 1, s - r) * product(r);
                    if (s - r) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum();
            into_unsigned(&lead * sum, "first alternating sum")
        })
        .collect();
    Distribution::new(n, StatId::Des(x.clone(), y.clone()), coeffs)
}

/// Second alternating sum for `D^{X,Y}`, whose product factors
/// `r + β_X − β_Y` can be zero or negative.
pub fn des_hr2(x: &SetSpec, y: &SetSpec, n: usize) -> Distribution {
    let (xn, xc) = counts(x, n);
    let nn = n as u32;
    let offsets: Vec<i64> = members(x, n).iter().map(|&j| x.beta(nn, j) as i64 - y.beta(nn, j) as i64).collect();
    let product = |r: i64| -> BigInt { offsets.iter().map(|&o| BigInt::from(r + o)).product() };
    let lead = BigInt::from(factorial(xc as u64));
    let coeffs = (0..=n as i64)
        .map(|s| {
            let top = xn - s;
            if top < 0 {
                return BigUint::zero();
            }
            let sum: BigInt = (0..=top)
                .map(|r| {
                    let term = binom_signed(xc + r, r) * binom_signed(n as i64 + 1, top - r) * product(r);
                    if (top - r) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum();
            into_unsigned(&lead * sum, "second alternating sum")
        })
        .collect();
    Distribution::new(n, StatId::Des(x.clone(), y.clone()), coeffs)
}

/// `Γ^{X,Y}_{n, 2k+y−x} = x! y! C(x,k) C(y, x−k)` for `X`, `Y` splitting
/// `[n]`; all other coefficients vanish.
pub fn gamma_formula(x: &SetSpec, y: &SetSpec, n: usize) -> Result<Distribution> {
    check_partition(x, y, n)?;
    let (xn, _) = counts(x, n);
    let (yn, _) = counts(y, n);
    let mut coeffs = vec![BigUint::zero(); n + 1];
    let lead = factorial(xn as u64) * factorial(yn as u64);
    for k in 0..=xn {
        let s = 2 * k + yn - xn;
        if !(0..=n as i64).contains(&s) {
            continue;
        }
        coeffs[s as usize] = &lead * binom(xn, k) * binom(yn, xn - k);
    }
    Ok(Distribution::new(n, StatId::Gamma(x.clone(), y.clone()), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(src: &str) -> SetSpec {
        src.parse().unwrap()
    }

    #[test]
    fn worked_example_both_sums() {
        let (x, y) = (s("set:2,3,4,6,7,9"), s("set:1,4,8"));
        assert_eq!(des_hr1(&x, &y, 6).coeff(2), 72u32.into());
        assert_eq!(des_hr2(&x, &y, 6).coeff(2), 72u32.into());
        assert_eq!(des_hr1(&x, &y, 6), des_hr2(&x, &y, 6));
    }

    #[test]
    fn eulerian() {
        let d = des_hr2(&SetSpec::All, &SetSpec::All, 5);
        assert_eq!(d.to_u64().unwrap(), vec![1, 26, 66, 26, 1, 0]);
        assert_eq!(des_hr1(&SetSpec::All, &SetSpec::All, 5), d);
    }

    #[test]
    fn empty_top_set() {
        for n in 0..7 {
            let d = des_hr1(&SetSpec::empty(), &SetSpec::All, n);
            assert_eq!(d.coeff(0), factorial(n as u64));
            assert!(d.sums_to_factorial());
        }
    }

    #[test]
    fn value_pairs_even_even() {
        for half in 0..5u64 {
            let d = val_formula(&SetSpec::Even, &SetSpec::Even, 2 * half as usize);
            for k in 0..=half as i64 {
                assert_eq!(d.coeff(k as usize), (factorial(half) * binom(half as i64, k)).pow(2));
            }
        }
    }

    #[test]
    fn value_pairs_odd_even() {
        for half in 0..5u64 {
            let d = val_formula(&SetSpec::Odd, &SetSpec::Even, 2 * half as usize + 1);
            for k in 0..=half as i64 {
                let want = factorial(half) * factorial(half + 1) * binom(half as i64, k) * binom(half as i64 + 1, k);
                assert_eq!(d.coeff(k as usize), want);
            }
        }
    }

    #[test]
    fn same_set_adjacency() {
        for half in 1..5u64 {
            let d = adj_same_set_formula(&SetSpec::Even, 2 * half as usize);
            for k in 0..=half as i64 {
                let want = factorial(half).pow(2) * binom(half as i64 - 1, k) * binom(half as i64 + 1, k + 1);
                assert_eq!(d.coeff(k as usize), want);
            }
        }
        assert_eq!(adj_same_set_formula(&s("set:1"), 3).to_u64().unwrap(), vec![6, 0, 0, 0]);
        // No member of X in [n]: every permutation has value 0.
        assert_eq!(adj_same_set_formula(&s("set:9"), 3).to_u64().unwrap(), vec![6, 0, 0, 0]);
    }

    #[test]
    fn gamma_even_odd() {
        let d = gamma_formula(&SetSpec::Even, &SetSpec::Odd, 2).unwrap();
        assert_eq!(d.to_u64().unwrap(), vec![1, 0, 1]);
        for half in 0..5u64 {
            let d = gamma_formula(&SetSpec::Even, &SetSpec::Odd, 2 * half as usize).unwrap();
            for j in 0..=half as i64 {
                assert_eq!(d.coeff(2 * j as usize), (factorial(half) * binom(half as i64, j)).pow(2));
                if j < half as i64 {
                    assert!(d.coeff(2 * j as usize + 1).is_zero());
                }
            }
        }
        assert!(gamma_formula(&SetSpec::All, &SetSpec::Odd, 3).is_err());
    }
}
