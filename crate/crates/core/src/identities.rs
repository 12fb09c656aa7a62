//! The residue-class identity families.
//!
//! For `X = i + kℕ` and `Y = j + kℕ` (or `Y = X`) and length `m = kn + t`,
//! the place-value and same-set adjacency closed forms can be equated with
//! the first alternating sum for `D^{A,B}`. Each family is a pair of explicit
//! expressions in `k, n, t, s`. [`verify_identity`] evaluates both printed
//! sides, the closed form with the true set counts at `m`, the alternating
//! sum for the derived `(A, B)`, and (within reach) exhaustive enumeration.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::distribution::{adj_same_set_formula, brute_force, des_hr1, val_formula, Distribution};
use crate::error::{Error, Result};
use crate::setspec::{derive_ab_for_adjacency, derive_ab_for_value, SetSpec};
use crate::stats::StatId;

pub use crate::arith::{falling, rising};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityCase {
    Case1,
    Case2,
    Case3,
    CaseI,
    CaseII,
    CaseA,
    CaseB,
}

impl IdentityCase {
    pub const ALL: [IdentityCase; 7] = [
        IdentityCase::Case1,
        IdentityCase::Case2,
        IdentityCase::Case3,
        IdentityCase::CaseI,
        IdentityCase::CaseII,
        IdentityCase::CaseA,
        IdentityCase::CaseB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityCase::Case1 => "1",
            IdentityCase::Case2 => "2",
            IdentityCase::Case3 => "3",
            IdentityCase::CaseI => "I",
            IdentityCase::CaseII => "II",
            IdentityCase::CaseA => "A",
            IdentityCase::CaseB => "B",
        }
    }

    /// Whether the family uses a second class `Y = j + kℕ`.
    pub fn uses_j(self) -> bool {
        matches!(self, IdentityCase::Case1 | IdentityCase::Case2 | IdentityCase::Case3)
    }

    /// Whether the underlying statistic is the same-set adjacency count
    /// rather than place-value pairs.
    pub fn is_adjacency(self) -> bool {
        matches!(self, IdentityCase::CaseA | IdentityCase::CaseB)
    }

    /// Legal remainders `t` for the given offsets.
    pub fn t_range(self, k: u32, i: u32, j: u32) -> std::ops::Range<u32> {
        match self {
            IdentityCase::Case1 | IdentityCase::CaseI => 0..i,
            IdentityCase::Case2 => i..j,
            IdentityCase::Case3 => j..k,
            IdentityCase::CaseII => i..k,
            IdentityCase::CaseA => 0..i.saturating_sub(1),
            IdentityCase::CaseB => i..k - 1,
        }
    }

    fn t_header(self) -> &'static str {
        match self {
            IdentityCase::Case1 | IdentityCase::CaseI => "0 <= t < i",
            IdentityCase::Case2 => "i <= t < j",
            IdentityCase::Case3 => "j <= t <= k-1",
            IdentityCase::CaseII => "i <= t <= k-1",
            IdentityCase::CaseA => "0 <= t < i-1",
            IdentityCase::CaseB => "i <= t < k-1",
        }
    }

    /// `|X ∩ [m]|` as the case header states it, which bounds `s`.
    pub fn header_x_count(self, n: u32) -> u32 {
        match self {
            IdentityCase::Case1 | IdentityCase::CaseI | IdentityCase::CaseA => n,
            _ => n + 1,
        }
    }

    /// `|Y ∩ [m]|` as the case header states it.
    pub fn header_y_count(self, n: u32) -> u32 {
        match self {
            IdentityCase::Case1 | IdentityCase::Case2 | IdentityCase::CaseI | IdentityCase::CaseA => n,
            _ => n + 1,
        }
    }
}

impl fmt::Display for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().trim_start_matches("Case").trim_start_matches("case");
        IdentityCase::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| Error::IdentityRange(format!("unknown identity case `{s}`")))
    }
}

impl Serialize for IdentityCase {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// One grid point. `j` is present exactly for the two-class families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IdentityParams {
    pub case: IdentityCase,
    pub k: u32,
    pub i: u32,
    pub j: Option<u32>,
    pub t: u32,
    pub n: u32,
    pub s: u32,
}

impl IdentityParams {
    pub fn m(&self) -> u32 {
        self.k * self.n + self.t
    }

    pub fn validate(&self) -> Result<()> {
        let c = self.case;
        let fail = |msg: String| Err(Error::IdentityRange(format!("case {c}: {msg}")));
        if self.k < 2 {
            return fail(format!("modulus k = {} must be at least 2", self.k));
        }
        if self.i >= self.k {
            return fail(format!("offset i = {} must satisfy 0 <= i <= k-1 = {}", self.i, self.k - 1));
        }
        let j = match (c.uses_j(), self.j) {
            (true, Some(j)) if self.i < j && j < self.k => j,
            (true, Some(j)) => return fail(format!("offsets need 0 <= i < j <= k-1, got i = {}, j = {j}", self.i)),
            (true, None) => return fail("needs a second offset j".into()),
            (false, Some(_)) => return fail("takes no second offset j".into()),
            (false, None) => self.i,
        };
        if !c.t_range(self.k, self.i, j).contains(&self.t) {
            return fail(format!("m = kn+t requires {}, got t = {}", c.t_header(), self.t));
        }
        let top = c.header_x_count(self.n);
        if self.s > top {
            return fail(format!("s = {} exceeds {top}", self.s));
        }
        Ok(())
    }

    pub fn x(&self) -> SetSpec {
        SetSpec::residue(self.i, self.k).expect("validated modulus")
    }

    pub fn y(&self) -> SetSpec {
        match self.j {
            Some(j) => SetSpec::residue(j, self.k).expect("validated modulus"),
            None => self.x(),
        }
    }

    /// The statistic both sides count on `S_m`.
    pub fn stat(&self) -> StatId {
        if self.case.is_adjacency() {
            StatId::Adj(self.x(), self.x())
        } else {
            StatId::Val(self.x(), self.y())
        }
    }
}

fn fact(a: i64) -> BigInt {
    crate::arith::factorial_signed(a)
}

fn c(a: i64, b: i64) -> BigInt {
    crate::arith::binom_signed(a, b)
}

/// `pre · Σ_{r=0}^{s} (−1)^{s−r} C(base + r, r) C(kn+t+1, s−r) · term(r)`.
fn alternating(pre: i64, base: i64, top: i64, s: i64, term: impl Fn(i64) -> BigInt) -> BigInt {
    let sum: BigInt = (0..=s)
        .map(|r| {
            let v = c(base + r, r) * c(top, s - r) * term(r);
            if (s - r) % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum();
    fact(pre) * sum
}

/// The two sides exactly as displayed for the family. Negative factorials
/// evaluate to zero.
pub fn printed_sides(p: &IdentityParams) -> (BigInt, BigInt) {
    let (k, n, t, s) = (p.k as i64, p.n as i64, p.t as i64, p.s as i64);
    let top = k * n + t + 1;
    let (n_u, n1_u) = (n as u64, n as u64 + 1);
    let lhs_n = || c(n, s).pow(2) * c((k - 1) * n + t, n - s) * fact(s) * fact(n - s) * fact((k - 1) * n + t);
    let lhs_n1 = || {
        c(n + 1, s).pow(2) * c((k - 1) * n + t - 1, n + 1 - s) * fact(s) * fact(n + 1 - s) * fact((k - 1) * n + t - 1)
    };
    match p.case {
        IdentityCase::Case1 => {
            let base = (k - 2) * n + t;
            (lhs_n(), alternating(base, base, top, s, |r| rising(1 + r + base, n_u).pow(2)))
        }
        IdentityCase::Case2 => {
            let lhs = c(n + 1, s) * c(n, s) * c((k - 1) * n + t, n + 1 - s) * fact(s) * fact(n - s) * fact((k - 1) * n + t - 1);
            let base = (k - 2) * n + t - 1;
            (lhs, alternating(base, base, top, s, |r| rising(r + base + 1, n1_u) * rising(r + base + 1, n_u)))
        }
        IdentityCase::Case3 => {
            let base = (k - 2) * n + t - 1;
            (lhs_n1(), alternating(base, base, top, s, |r| rising(r + base, n1_u).pow(2)))
        }
        IdentityCase::CaseI => {
            let base = (k - 1) * n + t;
            (lhs_n(), alternating(base, base, top, s, |r| falling(1 + r + base, n_u)))
        }
        IdentityCase::CaseII => {
            let base = (k - 1) * n + t - 1;
            (lhs_n1(), alternating(base, base, top, s, |r| falling(r + base + 1, n1_u)))
        }
        IdentityCase::CaseA => {
            let base = (k - 1) * n + t;
            let lhs = fact(n) * fact(base) * c(n - 1, s) * c(base + 1, n - s);
            (lhs, alternating(base, base, top, s, |r| falling(r + base, n_u)))
        }
        IdentityCase::CaseB => {
            let base = (k - 1) * n + t - 1;
            let lhs = fact(n) * fact(base) * c(n + 1, s) * c(base + 1, n + 1 - s);
            (lhs, alternating(base, base, top, s, |r| falling(r + base, n1_u)))
        }
    }
}

fn as_decimal<S: Serializer>(v: &BigInt, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(v)
}

fn as_decimal_opt<S: Serializer>(v: &Option<BigInt>, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => serializer.collect_str(v),
        None => serializer.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    #[serde(flatten)]
    pub params: IdentityParams,
    pub m: u32,
    /// Printed left side.
    #[serde(serialize_with = "as_decimal")]
    pub lhs: BigInt,
    /// Printed right side.
    #[serde(serialize_with = "as_decimal")]
    pub rhs: BigInt,
    pub equal: bool,
    /// Closed form evaluated with the true counts `|X ∩ [m]|`, `|Y ∩ [m]|`.
    #[serde(serialize_with = "as_decimal")]
    pub theorem: BigInt,
    /// `D^{A,B}_{m,s}` by the first alternating sum, when `(A, B)` exists.
    #[serde(serialize_with = "as_decimal_opt")]
    pub chain: Option<BigInt>,
    /// Exhaustive count, when `m` is within reach.
    #[serde(serialize_with = "as_decimal_opt")]
    pub oracle: Option<BigInt>,
    /// Whether the case header's set counts agree with the true counts.
    pub header_counts_match: bool,
}

impl IdentityReport {
    pub fn lhs_matches_theorem(&self) -> bool {
        self.lhs == self.theorem
    }

    pub fn rhs_matches_theorem(&self) -> bool {
        self.rhs == self.theorem
    }

    /// Either printed side disagrees with the other or with the true value.
    pub fn printed_discrepancy(&self) -> bool {
        !self.equal || !self.lhs_matches_theorem() || !self.rhs_matches_theorem()
    }

    /// The closed form disagrees with enumeration, or the derived descent
    /// sets do not reproduce it.
    pub fn failed(&self) -> bool {
        let oracle_bad = self.oracle.as_ref().is_some_and(|o| *o != self.theorem);
        let chain_bad = self.chain.as_ref().is_some_and(|c| *c != self.theorem);
        oracle_bad || chain_bad || self.theorem.is_negative()
    }

    pub fn csv_row(&self) -> String {
        let p = &self.params;
        let j = p.j.map(|j| j.to_string()).unwrap_or_default();
        format!("{},{},{},{},{},{},{},{},{},{}", p.case, p.k, p.i, j, p.t, p.n, p.s, self.lhs, self.rhs, self.equal)
    }
}

pub const CSV_HEADER: &str = "case,k,i,j,t,n,s,lhs,rhs,equal";

/// Shared state for evaluating many grid points: each distribution is
/// computed once per `(statistic, m)`.
struct Evaluator {
    oracle_max: u32,
    cap: usize,
    oracle: HashMap<(String, u32), Distribution>,
    theorem: HashMap<(String, u32), Distribution>,
    chain: HashMap<(String, u32), Option<Distribution>>,
}

impl Evaluator {
    fn new(oracle_max: u32, cap: usize) -> Self {
        Self { oracle_max, cap, oracle: HashMap::new(), theorem: HashMap::new(), chain: HashMap::new() }
    }

    fn eval(&mut self, p: &IdentityParams) -> Result<IdentityReport> {
        p.validate()?;
        let (x, y, m) = (p.x(), p.y(), p.m());
        let stat = p.stat();
        let key = (stat.to_string(), m);
        let s = p.s as usize;

        let theorem = self
            .theorem
            .entry(key.clone())
            .or_insert_with(|| {
                if p.case.is_adjacency() {
                    adj_same_set_formula(&x, m as usize)
                } else {
                    val_formula(&x, &y, m as usize)
                }
            })
            .coeff(s);

        let chain = self
            .chain
            .entry(key.clone())
            .or_insert_with(|| {
                let ab = if p.case.is_adjacency() { derive_ab_for_adjacency(&x, &y) } else { derive_ab_for_value(&x, &y) };
                ab.ok().map(|(a, b)| des_hr1(&a, &b, m as usize))
            })
            .as_ref()
            .map(|d| BigInt::from(d.coeff(s)));

        let oracle = if m <= self.oracle_max {
            if !self.oracle.contains_key(&key) {
                let d = brute_force(&stat, m as usize, self.cap)?;
                self.oracle.insert(key.clone(), d);
            }
            Some(BigInt::from(self.oracle[&key].coeff(s)))
        } else {
            None
        };

        let (lhs, rhs) = printed_sides(p);
        let header_counts_match =
            x.prefix_count(m) == p.case.header_x_count(p.n) && y.prefix_count(m) == p.case.header_y_count(p.n);
        Ok(IdentityReport {
            params: *p,
            m,
            equal: lhs == rhs,
            lhs,
            rhs,
            theorem: BigInt::from(theorem),
            chain,
            oracle,
            header_counts_match,
        })
    }
}

/// Largest `m` at which [`verify_identity`] enumerates `S_m`.
pub const DEFAULT_ORACLE_MAX: u32 = 9;

pub fn verify_identity(p: &IdentityParams, cap: usize) -> Result<IdentityReport> {
    Evaluator::new(DEFAULT_ORACLE_MAX.min(cap as u32), cap).eval(p)
}

#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub cases: Vec<IdentityCase>,
    pub ks: std::ops::RangeInclusive<u32>,
    pub ns: std::ops::RangeInclusive<u32>,
    pub oracle_max: u32,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self { cases: IdentityCase::ALL.to_vec(), ks: 2..=5, ns: 0..=4, oracle_max: DEFAULT_ORACLE_MAX }
    }
}

impl SweepGrid {
    /// Every legal parameter tuple, in case, k, i, j, t, n, s order.
    pub fn points(&self) -> Vec<IdentityParams> {
        let mut out = Vec::new();
        for &case in &self.cases {
            for k in self.ks.clone().filter(|&k| k >= 2) {
                for i in 0..k {
                    let js: Vec<Option<u32>> = if case.uses_j() { (i + 1..k).map(Some).collect() } else { vec![None] };
                    for j in js {
                        for t in case.t_range(k, i, j.unwrap_or(i)) {
                            for n in self.ns.clone() {
                                for s in 0..=case.header_x_count(n) {
                                    out.push(IdentityParams { case, k, i, j, t, n, s });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CaseSummary {
    pub points: usize,
    pub failures: usize,
    pub oracle_checked: usize,
    pub chain_checked: usize,
    pub printed_unequal: usize,
    pub lhs_off_theorem: usize,
    pub rhs_off_theorem: usize,
    pub header_count_mismatches: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub points: usize,
    pub failures: usize,
    pub printed_discrepancies: usize,
    pub cases: BTreeMap<String, CaseSummary>,
    #[serde(skip)]
    pub reports: Vec<IdentityReport>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn first_failure(&self) -> Option<&IdentityReport> {
        self.reports.iter().find(|r| r.failed())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.reports {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }

    /// Counts per case plus every point where a printed side is off.
    pub fn summary_json(&self) -> serde_json::Value {
        let discrepancies: Vec<&IdentityReport> = self.reports.iter().filter(|r| r.printed_discrepancy()).collect();
        let failures: Vec<&IdentityReport> = self.reports.iter().filter(|r| r.failed()).collect();
        serde_json::json!({
            "points": self.points,
            "failures": self.failures,
            "printed_discrepancies": self.printed_discrepancies,
            "cases": self.cases,
            "failing_points": failures,
            "discrepancies": discrepancies,
        })
    }
}

pub fn sweep(grid: &SweepGrid, cap: usize) -> Result<SweepReport> {
    let mut ev = Evaluator::new(grid.oracle_max.min(cap as u32), cap);
    let mut report = SweepReport::default();
    for p in grid.points() {
        let r = ev.eval(&p)?;
        let cs = report.cases.entry(p.case.name().to_string()).or_default();
        cs.points += 1;
        cs.failures += usize::from(r.failed());
        cs.oracle_checked += usize::from(r.oracle.is_some());
        cs.chain_checked += usize::from(r.chain.is_some());
        cs.printed_unequal += usize::from(!r.equal);
        cs.lhs_off_theorem += usize::from(!r.lhs_matches_theorem());
        cs.rhs_off_theorem += usize::from(!r.rhs_matches_theorem());
        cs.header_count_mismatches += usize::from(!r.header_counts_match);
        report.points += 1;
        report.failures += usize::from(r.failed());
        report.printed_discrepancies += usize::from(r.printed_discrepancy());
        report.reports.push(r);
    }
    Ok(report)
}
