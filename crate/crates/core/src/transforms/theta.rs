//! The matched-insertion bijection `Θ_n : S_n → S_n` carrying `(X, Y)`
//! adjacencies to `(X, Y)` place-value pairs, for disjoint `X` and `Y`.
//!
//! `Θ_{n+1}` is grown from `Θ_n`. For `σ ↦ τ`, the `n + 1` gaps of `σ` (where
//! `n + 1` may be inserted) and the `n + 1` loci of `τ` (where `I^{(i)}` may
//! act) are each labeled `1..=n+1`, and the insertion at label `ℓ` in `σ` is
//! sent to the insertion at label `ℓ` in `τ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::distribution::{adj_transitions, val_transitions, InsertionCase};
use crate::error::{Error, Result};
use crate::permutation::{check_cap, Permutation};
use crate::setspec::SetSpec;
use crate::stats::StatId;

/// Inserts `n + 1` into the gap `gap ∈ 0..=n` of `σ ∈ S_n` (after the first
/// `gap` entries).
pub fn insert_max(sigma: &Permutation, gap: usize) -> Result<Permutation> {
    let n = sigma.len();
    if gap > n {
        return Err(Error::LocusOutOfRange { locus: gap, min: 0, max: n });
    }
    let mut v = sigma.entries().to_vec();
    v.insert(gap, n as u32 + 1);
    Ok(Permutation::from_vec_unchecked(v))
}

/// `I^{(i)}`: for `i ≤ n`, put `n + 1` at position `i` and move the displaced
/// entry to the end; `I^{(n+1)}` appends `n + 1`.
pub fn insert_i(tau: &Permutation, locus: usize) -> Result<Permutation> {
    let n = tau.len();
    if locus == 0 || locus > n + 1 {
        return Err(Error::LocusOutOfRange { locus, min: 1, max: n + 1 });
    }
    let mut v = tau.entries().to_vec();
    if locus == n + 1 {
        v.push(n as u32 + 1);
    } else {
        let displaced = std::mem::replace(&mut v[locus - 1], n as u32 + 1);
        v.push(displaced);
    }
    Ok(Permutation::from_vec_unchecked(v))
}

/// How an insertion moves the statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Effect {
    Down,
    Up,
    Unchanged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    /// Gap index `0..=n` on the adjacency side, position `1..=n+1` on the
    /// value side.
    pub locus: usize,
    pub label: usize,
    pub effect: Effect,
}

/// Labeled loci in left-to-right order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotLabeling {
    pub slots: Vec<Slot>,
}

impl SlotLabeling {
    /// Labels in locus order.
    pub fn labels(&self) -> Vec<usize> {
        self.slots.iter().map(|s| s.label).collect()
    }

    pub fn locus_of(&self, label: usize) -> Option<usize> {
        self.slots.iter().find(|s| s.label == label).map(|s| s.locus)
    }

    /// `(down, up, unchanged)`.
    pub fn effect_counts(&self) -> (usize, usize, usize) {
        let count = |e: Effect| self.slots.iter().filter(|s| s.effect == e).count();
        (count(Effect::Down), count(Effect::Up), count(Effect::Unchanged))
    }

    pub fn is_valid(&self) -> bool {
        let labels: BTreeSet<usize> = self.slots.iter().map(|s| s.label).collect();
        labels.len() == self.slots.len() && labels.iter().copied().eq(1..=self.slots.len())
    }
}

/// Pair loci come first, then the remaining loci that change the statistic,
/// then the rest; left to right within each group.
fn assign_labels(loci: Vec<(usize, bool, Effect)>) -> SlotLabeling {
    let rank = |l: &(usize, bool, Effect)| match l {
        (_, true, _) => 0,
        (_, false, Effect::Unchanged) => 2,
        _ => 1,
    };
    let mut order: Vec<usize> = (0..loci.len()).collect();
    order.sort_by_key(|&i| rank(&loci[i]));
    let mut slots: Vec<Slot> = loci.iter().map(|&(locus, _, effect)| Slot { locus, label: 0, effect }).collect();
    for (label, &i) in order.iter().enumerate() {
        slots[i].label = label + 1;
    }
    SlotLabeling { slots }
}

fn check_disjoint(x: &SetSpec, y: &SetSpec, upto: usize) -> Result<()> {
    if let Some(m) = (1..=upto as u32).find(|&m| x.contains(m) && y.contains(m)) {
        return Err(Error::Hypothesis(format!("X = {x} and Y = {y} share {m}; need X ∩ Y = ∅")));
    }
    Ok(())
}

/// Labels the gaps of `σ ∈ S_n` for inserting `n + 1`, classifying each gap
/// as if `n + 1` fell in `case`.
pub fn label_adjacency_slots_in(sigma: &[u32], x: &SetSpec, y: &SetSpec, case: InsertionCase) -> SlotLabeling {
    let n = sigma.len();
    let loci = (0..=n)
        .map(|g| {
            let left_x = g > 0 && x.contains(sigma[g - 1]);
            let right_y = g < n && y.contains(sigma[g]);
            let pair = left_x && right_y;
            let effect = match case {
                InsertionCase::Neither if pair => Effect::Down,
                InsertionCase::Neither => Effect::Unchanged,
                InsertionCase::XOnly if right_y && !left_x => Effect::Up,
                InsertionCase::YOnly if left_x && !right_y => Effect::Up,
                InsertionCase::Both if left_x || right_y => Effect::Up,
                _ => Effect::Unchanged,
            };
            (g, pair, effect)
        })
        .collect();
    assign_labels(loci)
}

pub fn label_adjacency_slots(sigma: &[u32], x: &SetSpec, y: &SetSpec) -> Result<SlotLabeling> {
    let n = sigma.len();
    check_disjoint(x, y, n + 1)?;
    Ok(label_adjacency_slots_in(sigma, x, y, InsertionCase::of(x, y, n as u32 + 1)))
}

/// Labels the loci `1..=n+1` of `τ ∈ S_n` for `I^{(i)}`, classifying each as
/// if `n + 1` fell in `case`.
pub fn label_value_slots_in(tau: &[u32], x: &SetSpec, y: &SetSpec, case: InsertionCase) -> SlotLabeling {
    let n = tau.len();
    let mut loci: Vec<(usize, bool, Effect)> = (1..=n)
        .map(|p| {
            let in_x = x.contains(p as u32);
            let value_y = y.contains(tau[p - 1]);
            let pair = in_x && value_y;
            let effect = match case {
                InsertionCase::Neither if pair => Effect::Down,
                InsertionCase::Neither => Effect::Unchanged,
                InsertionCase::XOnly if value_y && !in_x => Effect::Up,
                InsertionCase::YOnly if in_x && !value_y => Effect::Up,
                InsertionCase::Both if in_x || value_y => Effect::Up,
                _ => Effect::Unchanged,
            };
            (p, pair, effect)
        })
        .collect();
    let terminal = if case == InsertionCase::Both { Effect::Up } else { Effect::Unchanged };
    loci.push((n + 1, false, terminal));
    assign_labels(loci)
}

pub fn label_value_slots(tau: &[u32], x: &SetSpec, y: &SetSpec) -> Result<SlotLabeling> {
    let n = tau.len();
    check_disjoint(x, y, n + 1)?;
    Ok(label_value_slots_in(tau, x, y, InsertionCase::of(x, y, n as u32 + 1)))
}

/// Checks a labeling's effect counts against the recurrence transition counts
/// at the permutation's current value `k`.
pub fn matches_transitions(labeling: &SlotLabeling, adjacency: bool, x: &SetSpec, y: &SetSpec, n: usize, k: usize) -> bool {
    let t = if adjacency {
        adj_transitions(x, y, n as u32, k as i64)
    } else {
        val_transitions(x, y, n as u32, k as i64)
    };
    let (down, up, same) = labeling.effect_counts();
    (down as i64, up as i64, same as i64) == (t.down, t.up, t.stay)
}

/// A map on `S_n` together with the statistics it should carry one to the
/// other.
#[derive(Debug, Clone)]
pub struct BijectionTable {
    pub n: usize,
    pub forward: BTreeMap<Permutation, Permutation>,
    pub source_stat: StatId,
    pub target_stat: StatId,
}

impl BijectionTable {
    pub fn from_fn<F>(n: usize, cap: usize, source_stat: StatId, target_stat: StatId, f: F) -> Result<Self>
    where
        F: Fn(&Permutation) -> Permutation,
    {
        let forward = crate::permutation::enumerate_sn(n, cap)?.map(|s| {
            let t = f(&s);
            (s, t)
        });
        Ok(Self { n, forward: forward.collect(), source_stat, target_stat })
    }

    pub fn get(&self, sigma: &Permutation) -> Option<&Permutation> {
        self.forward.get(sigma)
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Defined on all of `S_n` and injective.
    pub fn is_bijective(&self) -> bool {
        let expected: usize = (1..=self.n).product();
        let image: BTreeSet<&Permutation> = self.forward.values().collect();
        self.forward.len() == expected
            && image.len() == expected
            && self.forward.keys().all(|s| s.len() == self.n)
            && image.iter().all(|t| t.len() == self.n)
    }

    /// Elements whose statistic is not carried over.
    pub fn mismatches(&self) -> Vec<(&Permutation, &Permutation)> {
        self.forward.iter().filter(|(s, t)| self.source_stat.eval(s) != self.target_stat.eval(t)).collect()
    }

    pub fn verify(&self) -> bool {
        self.is_bijective() && self.mismatches().is_empty()
    }

    /// One line `sigma,image,source_value,target_value` per element, in
    /// lexicographic order of `sigma`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (s, t) in &self.forward {
            writeln!(out, "{s},{t},{},{}", self.source_stat.eval(s), self.target_stat.eval(t)).unwrap();
        }
        out
    }
}

/// `Θ_n` for disjoint `X`, `Y`, as a full table.
pub fn build_theta(n: usize, x: &SetSpec, y: &SetSpec, cap: usize) -> Result<BijectionTable> {
    check_cap(n, cap)?;
    check_disjoint(x, y, n)?;
    let mut pairs = vec![(Permutation::identity(0), Permutation::identity(0))];
    for m in 0..n {
        let mut next = Vec::with_capacity(pairs.len() * (m + 1));
        for (sigma, tau) in &pairs {
            let gaps = label_adjacency_slots(sigma, x, y)?;
            let loci = label_value_slots(tau, x, y)?;
            for label in 1..=m + 1 {
                let g = gaps.locus_of(label).expect("labels cover 1..=m+1");
                let p = loci.locus_of(label).expect("labels cover 1..=m+1");
                next.push((insert_max(sigma, g)?, insert_i(tau, p)?));
            }
        }
        pairs = next;
    }
    Ok(BijectionTable {
        n,
        forward: pairs.into_iter().collect(),
        source_stat: StatId::Adj(x.clone(), y.clone()),
        target_stat: StatId::Val(x.clone(), y.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{adj, val};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn insertions() {
        assert_eq!(insert_i(&p("14253"), 1).unwrap(), p("642531"));
        assert_eq!(insert_i(&p("14253"), 6).unwrap(), p("142536"));
        assert!(insert_i(&p("14253"), 7).is_err());
        assert!(insert_i(&p("14253"), 0).is_err());
        assert_eq!(insert_max(&p("213"), 0).unwrap(), p("4213"));
        assert_eq!(insert_max(&p("213"), 3).unwrap(), p("2134"));
        assert!(insert_max(&p("213"), 4).is_err());
    }

    #[test]
    fn adjacency_labels_example() {
        let l = label_adjacency_slots(&p("14325"), &SetSpec::Even, &SetSpec::Odd).unwrap();
        assert_eq!(l.labels(), vec![3, 4, 1, 5, 2, 6]);
        assert!(l.is_valid());
    }

    #[test]
    fn value_labels_example() {
        // Labels as drawn when the inserted element lies in neither set.
        let l = label_value_slots_in(&p("14253"), &SetSpec::Odd, &SetSpec::Even, InsertionCase::Neither);
        assert_eq!(l.labels(), vec![2, 3, 1, 4, 5, 6]);
        let l = label_value_slots(&p("14253"), &SetSpec::Odd, &SetSpec::Even).unwrap();
        assert_eq!(l.labels(), vec![2, 4, 1, 5, 3, 6]);
    }

    #[test]
    fn no_members_all_unchanged() {
        let x: SetSpec = "set:9".parse().unwrap();
        let y: SetSpec = "set:8".parse().unwrap();
        let l = label_adjacency_slots(&p("1234"), &x, &y).unwrap();
        assert_eq!(l.labels(), vec![1, 2, 3, 4, 5]);
        assert_eq!(l.effect_counts(), (0, 0, 5));
    }

    #[test]
    fn overlapping_sets_rejected() {
        assert!(label_adjacency_slots(&p("123"), &SetSpec::Odd, &SetSpec::Odd).is_err());
        assert!(label_value_slots(&p("123"), &SetSpec::Odd, &SetSpec::All).is_err());
        assert!(build_theta(4, &SetSpec::Odd, &SetSpec::Odd, 11).is_err());
    }

    #[test]
    fn theta_small() {
        let t = build_theta(1, &SetSpec::Odd, &SetSpec::Even, 11).unwrap();
        assert_eq!(t.to_csv(), "1,1,0,0\n");
        for n in 0..=6 {
            let t = build_theta(n, &SetSpec::Odd, &SetSpec::Even, 11).unwrap();
            assert!(t.is_bijective(), "n={n}");
            for (s, tau) in &t.forward {
                assert_eq!(adj(s, &SetSpec::Odd, &SetSpec::Even), val(tau, &SetSpec::Odd, &SetSpec::Even));
            }
        }
    }

    #[test]
    fn class_counts_follow_recurrences() {
        let (x, y) = (SetSpec::Odd, SetSpec::Even);
        for sigma in crate::permutation::enumerate_sn(5, 11).unwrap() {
            let a = label_adjacency_slots(&sigma, &x, &y).unwrap();
            assert!(matches_transitions(&a, true, &x, &y, 5, adj(&sigma, &x, &y)));
            let v = label_value_slots(&sigma, &x, &y).unwrap();
            assert!(matches_transitions(&v, false, &x, &y, 5, val(&sigma, &x, &y)));
        }
    }
}
