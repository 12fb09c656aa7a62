//! Distributions of statistics over `S_n`, computed by three independent
//! routes: exhaustive enumeration, insertion recurrences, and closed forms.
//!
//! The routes never fall back on one another. Asking for a route that does
//! not exist for a given statistic and pair of sets is an error.

mod brute;
mod cache;
mod formula;
mod recurrence;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::setspec::SetSpec;
use crate::stats::StatId;

pub use brute::{brute_force, brute_force_many};
pub use cache::{CacheEntry, DistCache};
pub use formula::{adj_same_set_formula, des_hr1, des_hr2, gamma_formula, val_formula};
pub use recurrence::{
    adj_recurrence, adj_transitions, des_recurrence, des_transitions, gamma_recurrence, val_recurrence,
    val_transitions, InsertionCase, Transitions,
};

/// Coefficients `c[s] = |{σ ∈ S_n : stat(σ) = s}|` for `s = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    n: usize,
    stat: StatId,
    coeffs: Vec<BigUint>,
}

impl Distribution {
    /// Pads `coeffs` with zeros, or truncates zeros, to length `n + 1`.
    pub fn new(n: usize, stat: StatId, mut coeffs: Vec<BigUint>) -> Self {
        if coeffs.len() > n + 1 {
            assert!(coeffs[n + 1..].iter().all(Zero::is_zero), "statistic values above n must have zero count");
        }
        coeffs.resize(n + 1, BigUint::zero());
        Self { n, stat, coeffs }
    }

    pub(crate) fn from_counts(n: usize, stat: StatId, counts: &[u64]) -> Self {
        Self::new(n, stat, counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stat(&self) -> &StatId {
        &self.stat
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Coefficient at `s`, zero outside `0..=n`.
    pub fn coeff(&self, s: usize) -> BigUint {
        self.coeffs.get(s).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn sums_to_factorial(&self) -> bool {
        self.total() == factorial(self.n as u64)
    }

    /// Same length and same coefficients, regardless of which statistic
    /// produced them.
    pub fn same_counts(&self, other: &Distribution) -> bool {
        self.n == other.n && self.coeffs == other.coeffs
    }

    /// Coefficients without trailing zeros (at least one entry).
    pub fn trimmed(&self) -> &[BigUint] {
        let len = self.coeffs.iter().rposition(|c| !c.is_zero()).map_or(1, |i| i + 1);
        &self.coeffs[..len]
    }

    pub fn with_stat(mut self, stat: StatId) -> Self {
        self.stat = stat;
        self
    }

    /// Coefficients as `u64`, if they all fit.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(ToPrimitive::to_u64).collect()
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.trimmed().iter().map(BigUint::to_string).collect();
        write!(f, "[{}]", items.join(","))
    }
}

/// The generating polynomials `D, A, V, E` and `Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Poly {
    D,
    A,
    V,
    E,
    Gamma,
}

impl Poly {
    pub fn stat(self, x: &SetSpec, y: &SetSpec) -> StatId {
        let (x, y) = (x.clone(), y.clone());
        match self {
            Poly::D => StatId::Des(x, y),
            Poly::A => StatId::Adj(x, y),
            Poly::V => StatId::Val(x, y),
            Poly::E => StatId::Exc(x, y),
            Poly::Gamma => StatId::Gamma(x, y),
        }
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "D" | "d" => Ok(Poly::D),
            "A" | "a" => Ok(Poly::A),
            "V" | "v" => Ok(Poly::V),
            "E" | "e" => Ok(Poly::E),
            "Gamma" | "gamma" | "G" => Ok(Poly::Gamma),
            other => Err(Error::StatSyntax { input: other.to_string(), reason: "expected D, A, V, E or Gamma".into() }),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Poly::D => "D",
            Poly::A => "A",
            Poly::V => "V",
            Poly::E => "E",
            Poly::Gamma => "Gamma",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Recurrence,
    /// The primary closed form (the first alternating-sum formula for `D`).
    ClosedForm,
    /// The second alternating-sum formula; exists for `D` and `E` only.
    ClosedFormAlt,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Brute, Method::Recurrence, Method::ClosedForm, Method::ClosedFormAlt];

    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Recurrence => "rec",
            Method::ClosedForm => "formula",
            Method::ClosedFormAlt => "formula2",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "brute" => Ok(Method::Brute),
            "rec" | "recurrence" => Ok(Method::Recurrence),
            "formula" => Ok(Method::ClosedForm),
            "formula2" => Ok(Method::ClosedFormAlt),
            other => Err(Error::StatSyntax {
                input: other.to_string(),
                reason: "expected brute, rec, formula or formula2".into(),
            }),
        }
    }
}

fn no_method(method: Method, poly: Poly, x: &SetSpec, y: &SetSpec) -> Error {
    Error::NoMethod { method: method.name().to_string(), what: format!("{poly}^{{{x},{y}}}") }
}

/// `E^{X,Y}` by the requested route. Enumeration counts excedances directly;
/// the other routes use `E^{X,Y}_n = D^{Y,X}_n`.
pub fn exc_distribution(x: &SetSpec, y: &SetSpec, n: usize, method: Method, cap: usize) -> Result<Distribution> {
    let stat = StatId::Exc(x.clone(), y.clone());
    let d = match method {
        Method::Brute => return brute_force(&stat, n, cap),
        Method::Recurrence => des_recurrence(y, x, n),
        Method::ClosedForm => des_hr1(y, x, n),
        Method::ClosedFormAlt => des_hr2(y, x, n),
    };
    Ok(d.with_stat(stat))
}

/// Dispatches to the route `method` for polynomial `poly`.
pub fn compute(poly: Poly, x: &SetSpec, y: &SetSpec, n: usize, method: Method, cap: usize) -> Result<Distribution> {
    match (poly, method) {
        (_, Method::Brute) => brute_force(&poly.stat(x, y), n, cap),
        (Poly::E, m) => exc_distribution(x, y, n, m, cap),
        (Poly::D, Method::Recurrence) => Ok(des_recurrence(x, y, n)),
        (Poly::D, Method::ClosedForm) => Ok(des_hr1(x, y, n)),
        (Poly::D, Method::ClosedFormAlt) => Ok(des_hr2(x, y, n)),
        (Poly::A, Method::Recurrence) => Ok(adj_recurrence(x, y, n)),
        (Poly::A, Method::ClosedForm) => {
            if x.agrees_on(y, n as u32) {
                Ok(adj_same_set_formula(x, n).with_stat(poly.stat(x, y)))
            } else {
                Err(no_method(method, poly, x, y))
            }
        }
        (Poly::V, Method::Recurrence) => Ok(val_recurrence(x, y, n)),
        (Poly::V, Method::ClosedForm) => Ok(val_formula(x, y, n)),
        (Poly::Gamma, Method::Recurrence) => gamma_recurrence(x, y, n),
        (Poly::Gamma, Method::ClosedForm) => gamma_formula(x, y, n),
        (_, Method::ClosedFormAlt) => Err(no_method(method, poly, x, y)),
    }
}

/// Every route available for `poly` on `(X, Y)`; unavailable routes are
/// skipped.
pub fn compute_all(poly: Poly, x: &SetSpec, y: &SetSpec, n: usize, cap: usize) -> Vec<(Method, Result<Distribution>)> {
    Method::ALL.iter().map(|&m| (m, compute(poly, x, y, n, m, cap))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(src: &str) -> SetSpec {
        src.parse().unwrap()
    }

    #[test]
    fn method_and_poly_syntax() {
        assert_eq!("rec".parse::<Method>().unwrap(), Method::Recurrence);
        assert_eq!("formula".parse::<Method>().unwrap(), Method::ClosedForm);
        assert!("magic".parse::<Method>().is_err());
        assert_eq!("Gamma".parse::<Poly>().unwrap(), Poly::Gamma);
        assert!("Q".parse::<Poly>().is_err());
    }

    #[test]
    fn dispatch_refuses_missing_closed_forms() {
        let err = compute(Poly::A, &SetSpec::Odd, &SetSpec::Even, 5, Method::ClosedForm, 11).unwrap_err();
        assert!(err.to_string().contains("no formula route"), "{err}");
        assert!(compute(Poly::V, &SetSpec::Odd, &SetSpec::Even, 5, Method::ClosedFormAlt, 11).is_err());
        // Sets that agree on [n] count as the same set.
        assert!(compute(Poly::A, &s("res:1,2"), &SetSpec::Odd, 5, Method::ClosedForm, 11).is_ok());
    }

    #[test]
    fn trimmed_display() {
        let d = compute(Poly::A, &SetSpec::All, &SetSpec::All, 3, Method::Brute, 11).unwrap();
        assert_eq!(d.to_string(), "[0,0,6]");
        assert_eq!(d.coeffs().len(), 4);
        let v = compute(Poly::V, &SetSpec::Even, &SetSpec::Even, 4, Method::ClosedForm, 11).unwrap();
        assert_eq!(v.to_string(), "[4,16,4]");
    }
}
