//! Subsets of `ℕ = {1, 2, ...}` used as position and value sets.
//!
//! Textual syntax: `all`, `even`, `odd`, `res:i,k` (the class
//! `{i + k·m : m ≥ 0} ∩ ℕ`), `set:a,b,c` (finite, possibly empty), and unions
//! of those joined by `|`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The class `{offset + modulus·m : m ≥ 0}` intersected with `ℕ`.
///
/// An offset of 0 contributes nothing below `modulus`, so `res:0,k` and
/// `res:k,k` denote the same set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    offset: u32,
    modulus: u32,
}

impl Residue {
    pub fn new(offset: u32, modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::SetSyntax {
                input: format!("res:{offset},{modulus}"),
                reason: "modulus must be at least 2".into(),
            });
        }
        Ok(Self { offset, modulus })
    }

    pub fn offset(&self) -> u32 {
        self.offset
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn contains(&self, m: u32) -> bool {
        m >= 1 && m >= self.offset && (m - self.offset).is_multiple_of(self.modulus)
    }

    pub fn prefix_count(&self, n: u32) -> u32 {
        if self.offset == 0 {
            n / self.modulus
        } else if n < self.offset {
            0
        } else {
            (n - self.offset) / self.modulus + 1
        }
    }

    /// Smallest member, i.e. the representative in `1..=modulus` when the
    /// class is a full congruence class.
    pub fn first(&self) -> u32 {
        if self.offset == 0 {
            self.modulus
        } else {
            self.offset
        }
    }

    /// True when the set is an entire congruence class modulo `modulus`.
    pub fn is_full_class(&self) -> bool {
        self.offset <= self.modulus
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetSpec {
    All,
    Even,
    Odd,
    Residue(Residue),
    /// Finite set, kept sorted and deduplicated; members are ≥ 1.
    Explicit(Vec<u32>),
    Union(Vec<SetSpec>),
}

impl SetSpec {
    pub fn residue(offset: u32, modulus: u32) -> Result<Self> {
        Residue::new(offset, modulus).map(SetSpec::Residue)
    }

    pub fn explicit<I: IntoIterator<Item = u32>>(members: I) -> Result<Self> {
        let set: BTreeSet<u32> = members.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::SetSyntax {
                input: format!("{set:?}"),
                reason: "members must be positive".into(),
            });
        }
        Ok(SetSpec::Explicit(set.into_iter().collect()))
    }

    pub fn empty() -> Self {
        SetSpec::Explicit(Vec::new())
    }

    pub fn union(members: Vec<SetSpec>) -> Self {
        SetSpec::Union(members)
    }

    pub fn contains(&self, m: u32) -> bool {
        if m == 0 {
            return false;
        }
        match self {
            SetSpec::All => true,
            SetSpec::Even => m.is_multiple_of(2),
            SetSpec::Odd => m % 2 == 1,
            SetSpec::Residue(r) => r.contains(m),
            SetSpec::Explicit(v) => v.binary_search(&m).is_ok(),
            SetSpec::Union(parts) => parts.iter().any(|p| p.contains(m)),
        }
    }

    /// `|S ∩ [n]|`.
    pub fn prefix_count(&self, n: u32) -> u32 {
        match self {
            SetSpec::All => n,
            SetSpec::Even => n / 2,
            SetSpec::Odd => n.div_ceil(2),
            SetSpec::Residue(r) => r.prefix_count(n),
            SetSpec::Explicit(v) => v.partition_point(|&m| m <= n) as u32,
            SetSpec::Union(_) => (1..=n).filter(|&m| self.contains(m)).count() as u32,
        }
    }

    /// `|[n] − S|`.
    pub fn complement_count(&self, n: u32) -> u32 {
        n - self.prefix_count(n)
    }

    /// Number of `x` with `j < x ≤ n` and `x ∉ S`.
    pub fn alpha(&self, n: u32, j: u32) -> u32 {
        debug_assert!(1 <= j && j <= n);
        (n - j) - (self.prefix_count(n) - self.prefix_count(j))
    }

    /// Number of `x` with `1 ≤ x < j` and `x ∉ S`.
    pub fn beta(&self, _n: u32, j: u32) -> u32 {
        debug_assert!(1 <= j && j <= _n);
        self.complement_count(j - 1)
    }

    /// Membership table for `0..=n`; index 0 is always false.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        (0..=n as u32).map(|m| self.contains(m)).collect()
    }

    /// True when both sets have the same members in `[n]`.
    pub fn agrees_on(&self, other: &SetSpec, n: u32) -> bool {
        (1..=n).all(|m| self.contains(m) == other.contains(m))
    }

    /// True when the sets share no member of `[n]`.
    pub fn disjoint_on(&self, other: &SetSpec, n: u32) -> bool {
        (1..=n).all(|m| !(self.contains(m) && other.contains(m)))
    }

    /// Normal form: parity classes spelled `even`/`odd`, residue offsets
    /// reduced into `0..k` for full classes, unions flattened, sorted and
    /// collapsed to `all` when their full classes cover every residue.
    pub fn canonical(&self) -> SetSpec {
        match self {
            SetSpec::Residue(r) if r.is_full_class() => {
                let offset = r.offset % r.modulus;
                match (r.modulus, offset) {
                    (2, 0) => SetSpec::Even,
                    (2, 1) => SetSpec::Odd,
                    _ => SetSpec::Residue(Residue { offset, modulus: r.modulus }),
                }
            }
            SetSpec::Union(parts) => canonical_union(parts),
            other => other.clone(),
        }
    }

    /// `(representative in 1..=k, k)` when the set is a full residue class.
    fn as_class(&self) -> Option<(u32, u32)> {
        match self {
            SetSpec::Even => Some((2, 2)),
            SetSpec::Odd => Some((1, 2)),
            SetSpec::Residue(r) if r.is_full_class() => Some((r.first(), r.modulus)),
            _ => None,
        }
    }
}

fn flatten_into(parts: &[SetSpec], out: &mut Vec<SetSpec>) {
    for p in parts {
        match p {
            SetSpec::Union(inner) => flatten_into(inner, out),
            other => out.push(other.canonical()),
        }
    }
}

fn canonical_union(parts: &[SetSpec]) -> SetSpec {
    let mut flat = Vec::new();
    flatten_into(parts, &mut flat);
    if flat.contains(&SetSpec::All) {
        return SetSpec::All;
    }
    let mut classes: std::collections::BTreeMap<u32, BTreeSet<u32>> = Default::default();
    for p in &flat {
        if let Some((rep, k)) = p.as_class() {
            classes.entry(k).or_default().insert(rep % k);
        }
    }
    if classes.iter().any(|(&k, reps)| reps.len() == k as usize) {
        return SetSpec::All;
    }
    let mut explicit: BTreeSet<u32> = BTreeSet::new();
    let mut rest: Vec<SetSpec> = Vec::new();
    for p in flat {
        match p {
            SetSpec::Explicit(v) => explicit.extend(v),
            other => {
                if !rest.contains(&other) {
                    rest.push(other);
                }
            }
        }
    }
    if !explicit.is_empty() || rest.is_empty() {
        rest.push(SetSpec::Explicit(explicit.into_iter().collect()));
    }
    rest.sort_by_key(|p| p.to_string());
    if rest.len() == 1 {
        rest.pop().unwrap()
    } else {
        SetSpec::Union(rest)
    }
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetSpec::All => f.write_str("all"),
            SetSpec::Even => f.write_str("even"),
            SetSpec::Odd => f.write_str("odd"),
            SetSpec::Residue(r) => write!(f, "res:{},{}", r.offset, r.modulus),
            SetSpec::Explicit(v) => {
                f.write_str("set:")?;
                let items: Vec<String> = v.iter().map(u32::to_string).collect();
                f.write_str(&items.join(","))
            }
            SetSpec::Union(parts) => {
                let items: Vec<String> = parts.iter().map(SetSpec::to_string).collect();
                f.write_str(&items.join("|"))
            }
        }
    }
}

fn parse_atom(src: &str, whole: &str) -> Result<SetSpec> {
    let bad = |reason: &str| Error::SetSyntax { input: whole.to_string(), reason: reason.to_string() };
    let atom = src.trim();
    match atom {
        "all" => return Ok(SetSpec::All),
        "even" => return Ok(SetSpec::Even),
        "odd" => return Ok(SetSpec::Odd),
        _ => {}
    }
    if let Some(body) = atom.strip_prefix("res:") {
        let nums: Vec<&str> = body.split(',').map(str::trim).collect();
        if nums.len() != 2 {
            return Err(bad("expected res:i,k"));
        }
        let offset = nums[0].parse().map_err(|_| bad(&format!("bad offset `{}`", nums[0])))?;
        let modulus = nums[1].parse().map_err(|_| bad(&format!("bad modulus `{}`", nums[1])))?;
        return SetSpec::residue(offset, modulus).map_err(|_| bad("modulus must be at least 2"));
    }
    if let Some(body) = atom.strip_prefix("set:") {
        let body = body.trim();
        if body.is_empty() {
            return Ok(SetSpec::empty());
        }
        let mut members = Vec::new();
        for tok in body.split(',').map(str::trim) {
            let m: u32 = tok.parse().map_err(|_| bad(&format!("bad member `{tok}`")))?;
            if m == 0 {
                return Err(bad("members must be positive"));
            }
            members.push(m);
        }
        return SetSpec::explicit(members);
    }
    Err(bad(&format!("unknown token `{atom}`")))
}

impl FromStr for SetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() == 1 {
            return parse_atom(parts[0], s);
        }
        let members = parts.into_iter().map(|p| parse_atom(p, s)).collect::<Result<Vec<_>>>()?;
        Ok(SetSpec::Union(members))
    }
}

impl serde::Serialize for SetSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn class_spec(rep: u32, k: u32) -> SetSpec {
    SetSpec::Residue(Residue { offset: rep % k, modulus: k }).canonical()
}

fn no_construction(x: &SetSpec, y: &SetSpec) -> Error {
    Error::NoConstruction { x: x.to_string(), y: y.to_string() }
}

/// Which side of the equidistribution the pair `(A, B)` should reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Adjacency,
    PlaceValue,
}

fn derive_ab(x: &SetSpec, y: &SetSpec, target: Target) -> Result<(SetSpec, SetSpec)> {
    let (Some((rx, kx)), Some((ry, ky))) = (x.as_class(), y.as_class()) else {
        return Err(no_construction(x, y));
    };
    if kx != ky {
        return Err(no_construction(x, y));
    }
    let k = kx;
    if rx != ry {
        // Disjoint classes. At m + 1 in X we need b_m = y_m and at m + 1 in Y
        // we need b_m = x_m; the class whose least member comes first does both.
        let a = SetSpec::union(vec![class_spec(rx, k), class_spec(ry, k)]).canonical();
        let b = class_spec(rx.min(ry), k);
        return Ok((a, b));
    }
    // X = Y = class with least member r. At m + 1 = r + k·q we have
    // x_m = y_m = q; adjacency needs b_m = 2q, place-value needs 2q + 1.
    let r = rx;
    let a = class_spec(r, k);
    let b = match target {
        Target::Adjacency => {
            // X plus the next class, whose first member r + 1 also follows m.
            let next = SetSpec::Residue(Residue { offset: r + 1, modulus: k }).canonical();
            SetSpec::union(vec![a.clone(), next]).canonical()
        }
        Target::PlaceValue => {
            // Needs b_0 = 1 when r = 1, impossible for any B.
            if r == 1 {
                return Err(no_construction(x, y));
            }
            SetSpec::union(vec![a.clone(), class_spec(r - 1, k)]).canonical()
        }
    };
    Ok((a, b))
}

/// Sets `(A, B)` with `D^{A,B}_n = A^{X,Y}_n` for every `n`.
///
/// Supported: `X`, `Y` full residue classes of one modulus (parity classes
/// included), either distinct or equal. Anything else is refused.
pub fn derive_ab_for_adjacency(x: &SetSpec, y: &SetSpec) -> Result<(SetSpec, SetSpec)> {
    derive_ab(x, y, Target::Adjacency)
}

/// Sets `(A, B)` with `D^{A,B}_n = V^{X,Y}_n` for every `n`.
///
/// Same regime as [`derive_ab_for_adjacency`]; for `X = Y` the class must not
/// contain 1, since `V^{X,X}_1 = [0, 1]` is never a descent distribution.
pub fn derive_ab_for_value(x: &SetSpec, y: &SetSpec) -> Result<(SetSpec, SetSpec)> {
    derive_ab(x, y, Target::PlaceValue)
}

/// The value of `b_m = |B ∩ [m]|` that the descent/adjacency (or
/// descent/place-value) correspondence demands, or `None` when `m + 1` lies
/// outside `X ∪ Y` and `b_m` is unconstrained.
pub fn required_b_count(x: &SetSpec, y: &SetSpec, m: u32, with_extra: bool) -> Option<u32> {
    let (in_x, in_y) = (x.contains(m + 1), y.contains(m + 1));
    let (xm, ym) = (x.prefix_count(m), y.prefix_count(m));
    match (in_x, in_y) {
        (true, true) => Some(xm + ym + u32::from(with_extra)),
        (true, false) => Some(ym),
        (false, true) => Some(xm),
        (false, false) => None,
    }
}
