//! Exact integer kernels shared by the closed forms and identity checks.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Factorial of a signed argument; negative arguments give zero.
pub fn factorial_signed(n: i64) -> BigInt {
    if n < 0 {
        BigInt::zero()
    } else {
        BigInt::from(factorial(n as u64))
    }
}

/// Binomial coefficient with the conventions used throughout the crate.
///
/// `C(a, b) = 0` whenever `b < 0`, `a < 0` or `b > a`, with the single
/// exception `C(-1, 0) = 1`. That exception is what makes the same-set
/// adjacency formula reproduce `A_{n,0} = n!` when `X ∩ [n]` is empty.
pub fn binom(a: i64, b: i64) -> BigUint {
    if b == 0 && a == -1 {
        return BigUint::one();
    }
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

pub fn binom_signed(a: i64, b: i64) -> BigInt {
    BigInt::from(binom(a, b))
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn rising(a: i64, n: u64) -> BigInt {
    (0..n as i64).fold(BigInt::one(), |acc, q| acc * (a + q))
}

/// Falling factorial `a (a-1) ... (a-n+1)`, with value 1 at `n = 0`.
pub fn falling(a: i64, n: u64) -> BigInt {
    (0..n as i64).fold(BigInt::one(), |acc, q| acc * (a - q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(7, 2), BigUint::from(21u32));
        assert_eq!(binom(5, 0), BigUint::one());
        assert_eq!(binom(3, 4), BigUint::zero());
        assert_eq!(binom(3, -1), BigUint::zero());
        assert_eq!(binom(-2, 0), BigUint::zero());
        assert_eq!(binom(-1, 0), BigUint::one());
        assert_eq!(binom(-1, 1), BigUint::zero());
        assert_eq!(binom(60, 30), "118264581564861424".parse::<BigUint>().unwrap());
    }

    #[test]
    fn pascal_rule() {
        for a in 1..40 {
            for b in 1..a {
                assert_eq!(binom(a, b), binom(a - 1, b - 1) + binom(a - 1, b));
            }
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(11), BigUint::from(39_916_800u64));
        assert_eq!(factorial_signed(-1), BigInt::zero());
    }

    #[test]
    fn rising_and_falling() {
        assert_eq!(rising(3, 0), BigInt::one());
        assert_eq!(rising(2, 3), BigInt::from(24));
        assert_eq!(rising(-1, 3), BigInt::zero());
        assert_eq!(falling(5, 0), BigInt::one());
        assert_eq!(falling(5, 3), BigInt::from(60));
        assert_eq!(falling(2, 4), BigInt::zero());
        assert_eq!(falling(-2, 2), BigInt::from(6));
    }
}
