//! Per-permutation statistics.
//!
//! All functions take the one-line notation as a slice of 1-based entries, so
//! they accept `&Permutation` through deref as well as the borrowed buffers
//! produced during enumeration.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::setspec::SetSpec;

/// Number of `i` with `σ_i > σ_{i+1}`, `σ_i ∈ X`, `σ_{i+1} ∈ Y`.
pub fn des(sigma: &[u32], x: &SetSpec, y: &SetSpec) -> usize {
    sigma.windows(2).filter(|w| w[0] > w[1] && x.contains(w[0]) && y.contains(w[1])).count()
}

/// Number of `i` with `σ_i ∈ X` and `σ_{i+1} ∈ Y`.
pub fn adj(sigma: &[u32], x: &SetSpec, y: &SetSpec) -> usize {
    sigma.windows(2).filter(|w| x.contains(w[0]) && y.contains(w[1])).count()
}

/// Number of positions `i ∈ X` holding a value `σ_i ∈ Y`.
pub fn val(sigma: &[u32], x: &SetSpec, y: &SetSpec) -> usize {
    positions(sigma).filter(|&(i, v)| x.contains(i) && y.contains(v)).count()
}

/// Number of positions `i ∈ X` with `σ_i > i` and `σ_i ∈ Y`.
pub fn exc(sigma: &[u32], x: &SetSpec, y: &SetSpec) -> usize {
    positions(sigma).filter(|&(i, v)| v > i && x.contains(i) && y.contains(v)).count()
}

/// `|{i ∈ X : σ_i ∈ X} ∪ {i ∈ Y : σ_i ∈ Y}|`, counted as a union of
/// positions so that overlapping `X` and `Y` are handled by definition.
pub fn gamma(sigma: &[u32], x: &SetSpec, y: &SetSpec) -> usize {
    positions(sigma)
        .filter(|&(i, v)| (x.contains(i) && x.contains(v)) || (y.contains(i) && y.contains(v)))
        .count()
}

/// Largest `i` such that the values `1, 2, …, i` occur left to right.
pub fn s17(sigma: &[u32]) -> usize {
    let mut pos = vec![0usize; sigma.len() + 1];
    for (idx, &v) in sigma.iter().enumerate() {
        pos[v as usize] = idx;
    }
    let mut i = 0;
    while i < sigma.len() && (i == 0 || pos[i + 1] > pos[i]) {
        i += 1;
    }
    i
}

/// Pair-level split of odd-top descents against (odd, odd) adjacencies.
///
/// Returns `(t1, t2, t3)`: `t1` counts odd-top descents that are not
/// (odd, odd) pairs, `t2` counts (odd, odd) pairs that are not descents, and
/// `t3` counts pairs that are both. An (odd, odd) descent always has an odd
/// top, so `t2` is exactly the number of (odd, odd) ascents.
pub fn t_stats(sigma: &[u32]) -> (usize, usize, usize) {
    let (mut t1, mut t2, mut t3) = (0, 0, 0);
    for w in sigma.windows(2) {
        let odd_top_descent = w[0] > w[1] && w[0] % 2 == 1;
        let odd_pair = w[0] % 2 == 1 && w[1] % 2 == 1;
        match (odd_top_descent, odd_pair) {
            (true, true) => t3 += 1,
            (true, false) => t1 += 1,
            (false, true) => t2 += 1,
            (false, false) => {}
        }
    }
    (t1, t2, t3)
}

fn positions(sigma: &[u32]) -> impl Iterator<Item = (u32, u32)> + '_ {
    sigma.iter().enumerate().map(|(i, &v)| (i as u32 + 1, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TStat {
    T1,
    T2,
    T3,
}

/// Index of one of the seventeen named statistics `S_1 … S_17`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Named(u8);

impl Named {
    pub fn new(index: u8) -> Option<Self> {
        (1..=17).contains(&index).then_some(Self(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Named> {
        (1..=17).map(Named)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StatId {
    Des(SetSpec, SetSpec),
    Adj(SetSpec, SetSpec),
    Val(SetSpec, SetSpec),
    Exc(SetSpec, SetSpec),
    Gamma(SetSpec, SetSpec),
    Named(Named),
    T(TStat),
}

impl StatId {
    pub fn named(index: u8) -> Self {
        StatId::Named(Named::new(index).expect("named statistics are S1..S17"))
    }

    /// The set-family instance behind `S_1 … S_16`; other ids are returned
    /// unchanged.
    pub fn resolve(&self) -> StatId {
        use SetSpec::{All as N, Even as E, Odd as O};
        let StatId::Named(Named(i)) = self else {
            return self.clone();
        };
        match i {
            1 => StatId::Des(E, N),
            2 => StatId::Exc(N, E),
            3 => StatId::Val(E, E),
            4 => StatId::Des(N, O),
            5 => StatId::Exc(O, N),
            6 => StatId::Val(O, E),
            7 => StatId::Val(E, O),
            8 => StatId::Adj(O, E),
            9 => StatId::Adj(E, O),
            10 => StatId::Des(O, N),
            11 => StatId::Exc(N, O),
            12 => StatId::Adj(O, O),
            13 => StatId::Des(N, E),
            14 => StatId::Exc(E, N),
            15 => StatId::Val(O, O),
            16 => StatId::Adj(E, E),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, sigma: &[u32]) -> usize {
        match self {
            StatId::Des(x, y) => des(sigma, x, y),
            StatId::Adj(x, y) => adj(sigma, x, y),
            StatId::Val(x, y) => val(sigma, x, y),
            StatId::Exc(x, y) => exc(sigma, x, y),
            StatId::Gamma(x, y) => gamma(sigma, x, y),
            StatId::Named(Named(17)) => s17(sigma),
            StatId::Named(_) => self.resolve().eval(sigma),
            StatId::T(t) => {
                let (t1, t2, t3) = t_stats(sigma);
                match t {
                    TStat::T1 => t1,
                    TStat::T2 => t2,
                    TStat::T3 => t3,
                }
            }
        }
    }

    /// Precomputes membership tables for evaluation on `S_n`.
    pub fn compile(&self, n: usize) -> CompiledStat {
        let masks = |x: &SetSpec, y: &SetSpec| (x.mask(n), y.mask(n));
        match self.resolve() {
            StatId::Des(x, y) => {
                let (x, y) = masks(&x, &y);
                CompiledStat::Des(x, y)
            }
            StatId::Adj(x, y) => {
                let (x, y) = masks(&x, &y);
                CompiledStat::Adj(x, y)
            }
            StatId::Val(x, y) => {
                let (x, y) = masks(&x, &y);
                CompiledStat::Val(x, y)
            }
            StatId::Exc(x, y) => {
                let (x, y) = masks(&x, &y);
                CompiledStat::Exc(x, y)
            }
            StatId::Gamma(x, y) => {
                let (x, y) = masks(&x, &y);
                CompiledStat::Gamma(x, y)
            }
            StatId::Named(_) => CompiledStat::S17,
            StatId::T(t) => CompiledStat::T(t),
        }
    }
}

/// [`StatId`] with set membership tabulated for a fixed length.
#[derive(Debug, Clone)]
pub enum CompiledStat {
    Des(Vec<bool>, Vec<bool>),
    Adj(Vec<bool>, Vec<bool>),
    Val(Vec<bool>, Vec<bool>),
    Exc(Vec<bool>, Vec<bool>),
    Gamma(Vec<bool>, Vec<bool>),
    S17,
    T(TStat),
}

impl CompiledStat {
    pub fn eval(&self, sigma: &[u32]) -> usize {
        let at = |m: &Vec<bool>, v: u32| m[v as usize];
        match self {
            CompiledStat::Des(x, y) => {
                sigma.windows(2).filter(|w| w[0] > w[1] && at(x, w[0]) && at(y, w[1])).count()
            }
            CompiledStat::Adj(x, y) => sigma.windows(2).filter(|w| at(x, w[0]) && at(y, w[1])).count(),
            CompiledStat::Val(x, y) => positions(sigma).filter(|&(i, v)| at(x, i) && at(y, v)).count(),
            CompiledStat::Exc(x, y) => {
                positions(sigma).filter(|&(i, v)| v > i && at(x, i) && at(y, v)).count()
            }
            CompiledStat::Gamma(x, y) => positions(sigma)
                .filter(|&(i, v)| (at(x, i) && at(x, v)) || (at(y, i) && at(y, v)))
                .count(),
            CompiledStat::S17 => s17(sigma),
            CompiledStat::T(t) => {
                let (t1, t2, t3) = t_stats(sigma);
                match t {
                    TStat::T1 => t1,
                    TStat::T2 => t2,
                    TStat::T3 => t3,
                }
            }
        }
    }
}

impl fmt::Display for StatId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatId::Des(x, y) => write!(f, "des:{x};{y}"),
            StatId::Adj(x, y) => write!(f, "adj:{x};{y}"),
            StatId::Val(x, y) => write!(f, "val:{x};{y}"),
            StatId::Exc(x, y) => write!(f, "exc:{x};{y}"),
            StatId::Gamma(x, y) => write!(f, "gamma:{x};{y}"),
            StatId::Named(Named(i)) => write!(f, "s{i}"),
            StatId::T(TStat::T1) => f.write_str("t1"),
            StatId::T(TStat::T2) => f.write_str("t2"),
            StatId::T(TStat::T3) => f.write_str("t3"),
        }
    }
}

impl FromStr for StatId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let src = s.trim();
        let bad = |reason: String| Error::StatSyntax { input: s.to_string(), reason };
        if let Some((family, sets)) = src.split_once(':') {
            let (x, y) = sets.split_once(';').ok_or_else(|| bad("expected `family:X;Y`".into()))?;
            let x: SetSpec = x.parse().map_err(|e: Error| bad(e.to_string()))?;
            let y: SetSpec = y.parse().map_err(|e: Error| bad(e.to_string()))?;
            return match family {
                "des" => Ok(StatId::Des(x, y)),
                "adj" => Ok(StatId::Adj(x, y)),
                "val" => Ok(StatId::Val(x, y)),
                "exc" => Ok(StatId::Exc(x, y)),
                "gamma" => Ok(StatId::Gamma(x, y)),
                other => Err(bad(format!("unknown family `{other}`"))),
            };
        }
        match src {
            "t1" => return Ok(StatId::T(TStat::T1)),
            "t2" => return Ok(StatId::T(TStat::T2)),
            "t3" => return Ok(StatId::T(TStat::T3)),
            _ => {}
        }
        if let Some(idx) = src.strip_prefix('s') {
            let i: u8 = idx.parse().map_err(|_| bad(format!("unknown statistic `{src}`")))?;
            return Named::new(i).map(StatId::Named).ok_or_else(|| bad(format!("no statistic s{i}; use s1..s17")));
        }
        Err(bad(format!("unknown statistic `{src}`")))
    }
}

impl serde::Serialize for StatId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::Permutation;
    use SetSpec::{All, Even, Odd};

    fn p(src: &str) -> Permutation {
        src.parse().unwrap()
    }

    #[test]
    fn family_examples() {
        let s = p("215436");
        assert_eq!(des(&s, &Even, &All), 2);
        assert_eq!(des(&s, &All, &Odd), 2);
        assert_eq!(des(&p("123456"), &All, &All), 0);
        assert_eq!(adj(&s, &Odd, &Even), 2);
        assert_eq!(adj(&s, &Even, &Even), 0);
        assert_eq!(adj(&s, &Odd, &Odd), 1);
        assert_eq!(val(&s, &Even, &Even), 2);
        assert_eq!(val(&s, &Odd, &Odd), 2);
        assert_eq!(val(&Permutation::identity(4), &Even, &Odd), 0);
        assert_eq!(exc(&s, &All, &Even), 1);
        assert_eq!(exc(&s, &Odd, &All), 2);
        assert_eq!(exc(&Permutation::identity(5), &All, &All), 0);
    }

    #[test]
    fn empty_and_singleton() {
        let e = Permutation::identity(0);
        assert_eq!(des(&e, &All, &All), 0);
        assert_eq!(adj(&p("1"), &All, &All), 0);
        assert_eq!(s17(&e), 0);
        assert_eq!(t_stats(&e), (0, 0, 0));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&p("12"), &Even, &Odd), 2);
        assert_eq!(gamma(&p("21"), &Even, &Odd), 0);
        assert_eq!(gamma(&p("3142"), &All, &All), 4);
        // Overlapping sets: position 2 qualifies through both X and Y but
        // counts once.
        let x: SetSpec = "set:2".parse().unwrap();
        assert_eq!(gamma(&p("12"), &x, &x), 1);
    }

    #[test]
    fn s17_examples() {
        assert_eq!(s17(&p("34152")), 2);
        assert_eq!(s17(&Permutation::identity(6)), 6);
        assert_eq!(s17(&p("4321")), 1);
    }

    #[test]
    fn t_stats_examples() {
        // 21 is an even-top descent, 15 an (odd, odd) ascent, 54 an odd-top
        // descent onto an even value, 43 even top, 36 ascent.
        assert_eq!(t_stats(&p("215436")), (1, 1, 0));
        assert_eq!(t_stats(&p("12345")), (0, 0, 0));
        assert_eq!(t_stats(&p("13572468")), (1, 3, 0));
        assert_eq!(t_stats(&p("3142")), (0, 0, 1));
        assert_eq!(t_stats(&[5, 3, 1]), (0, 0, 2));
    }

    #[test]
    fn table_examples_on_215436() {
        let s = p("215436");
        let expected = [2, 1, 2, 2, 2, 1, 1, 2, 2, 1, 1, 1, 1, 0, 2, 0];
        for (i, want) in expected.iter().enumerate() {
            let id = StatId::named(i as u8 + 1);
            assert_eq!(id.eval(&s), *want, "{id}");
            assert_eq!(id.compile(6).eval(&s), *want, "{id} compiled");
        }
    }

    #[test]
    fn syntax_round_trip() {
        for src in ["des:even;all", "adj:odd;res:1,3|set:4", "val:set:;all", "gamma:even;odd", "s1", "s17", "t2"] {
            let id: StatId = src.parse().unwrap();
            assert_eq!(id.to_string(), src);
        }
        assert!("s18".parse::<StatId>().is_err());
        assert!("s0".parse::<StatId>().is_err());
        assert!("foo:all;all".parse::<StatId>().is_err());
        assert!("des:all".parse::<StatId>().is_err());
        let err = "des:even;prime".parse::<StatId>().unwrap_err().to_string();
        assert!(err.contains("prime"), "{err}");
    }
}
