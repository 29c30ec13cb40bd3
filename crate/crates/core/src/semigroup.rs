//! Affine semigroups in `N^d`: membership, gap sets, the order function of
//! the maximal ideal, Hilbert-Samuel data and the face localization used for
//! the homogenized rings.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::differences::stabilized_difference;
use crate::algebra::{ExponentVector, Field, Matrix};
use crate::{Error, Result};

/// Largest `t` tried when reading off a multiplicity.
pub const MAX_MULTIPLICITY_T: usize = 40;

/// A finitely generated subsemigroup of `N^d` (including `0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineSemigroup {
    dim: usize,
    #[serde(serialize_with = "serialize_vectors")]
    generators: Vec<ExponentVector>,
}

fn serialize_vectors<S: serde::Serializer>(v: &[ExponentVector], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for e in v {
        seq.serialize_element(e.as_slice())?;
    }
    seq.end()
}

/// Result of [`AffineSemigroup::sg_member`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// Generator indices (with repetition) summing to the queried vector.
    pub decomposition: Vec<usize>,
}

/// Gaps of a semigroup with finite complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapSet {
    #[serde(serialize_with = "serialize_vectors")]
    pub gaps: Vec<ExponentVector>,
    /// Degree bound at which the full shell was observed.
    pub bound_used: u64,
}

impl GapSet {
    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GapSetResult {
    Finite(GapSet),
    /// Some gap was found at or above the shell; carries one such point.
    NotFiniteWithinBound {
        bound: u64,
        #[serde(serialize_with = "serialize_opt_vector")]
        witness: Option<ExponentVector>,
    },
}

fn serialize_opt_vector<S: serde::Serializer>(
    v: &Option<ExponentVector>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(e) => s.serialize_some(e.as_slice()),
        None => s.serialize_none(),
    }
}

impl GapSetResult {
    pub fn finite(&self) -> Option<&GapSet> {
        match self {
            GapSetResult::Finite(g) => Some(g),
            GapSetResult::NotFiniteWithinBound { .. } => None,
        }
    }
}

/// Multiplicity with its finite-difference certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupMultiplicity {
    pub value: u64,
    /// `ℓ(R/m^t)` for `t = 0..table.len()`.
    pub table: Vec<u64>,
    /// Order of the stabilized difference (the Krull dimension).
    pub order: usize,
    /// First index of the run of three equal differences.
    pub window_start: usize,
}

/// Dense table of `ord` over the points of `N^d` with degree at most `bound`.
///
/// `ord(s)` is the largest `k` with `x^s ∈ m^k`, i.e. the longest way of
/// writing `s` as a sum of generators; non-members are absent.
#[derive(Clone, Debug)]
pub struct OrderTable {
    dim: usize,
    bound: u64,
    side: usize,
    ord: Vec<i32>,
}

impl OrderTable {
    fn index(&self, v: &[u32]) -> Option<usize> {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for &c in v {
            if c as usize >= self.side {
                return None;
            }
            idx += c as usize * stride;
            stride *= self.side;
        }
        Some(idx)
    }

    fn point(&self, mut idx: usize) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.dim);
        for _ in 0..self.dim {
            v.push((idx % self.side) as u32);
            idx /= self.side;
        }
        v
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `Some(ord)` for members within the bound, `None` for gaps.
    ///
    /// Panics when `v` lies above the bound.
    pub fn ord(&self, v: &ExponentVector) -> Option<u32> {
        assert!(v.degree() <= self.bound, "point above the table bound");
        let i = self.index(v.as_slice()).expect("point inside the box");
        let o = self.ord[i];
        (o >= 0).then_some(o as u32)
    }

    pub fn is_member(&self, v: &ExponentVector) -> bool {
        self.ord(v).is_some()
    }

    /// All points of degree at most the bound, with their `ord` when members.
    pub fn points(&self) -> impl Iterator<Item = (ExponentVector, Option<u32>)> + '_ {
        (0..self.ord.len()).filter_map(move |i| {
            let p = self.point(i);
            let deg: u64 = p.iter().map(|&c| c as u64).sum();
            (deg <= self.bound).then(|| {
                let o = self.ord[i];
                (ExponentVector::from(p), (o >= 0).then_some(o as u32))
            })
        })
    }
}

impl AffineSemigroup {
    pub fn new(dim: usize, generators: Vec<ExponentVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::precondition("semigroup dimension must be positive"));
        }
        for g in &generators {
            if g.len() != dim {
                return Err(crate::algebra::AlgebraError::DimensionMismatch {
                    left: dim,
                    right: g.len(),
                }
                .into());
            }
            if g.is_zero() {
                return Err(Error::precondition("semigroup generators must be nonzero"));
            }
        }
        Ok(AffineSemigroup { dim, generators })
    }

    pub fn from_tuples(dim: usize, tuples: &[&[u32]]) -> Result<Self> {
        Self::new(dim, tuples.iter().map(|t| ExponentVector::new(t)).collect())
    }

    /// `N^d` itself.
    pub fn full(dim: usize) -> Self {
        let gens = (0..dim).map(|i| ExponentVector::unit(dim, i)).collect();
        AffineSemigroup { dim, generators: gens }
    }

    /// Exponents of `x^n, x^{n+1}, x^n y, y^n, y^{n+1}, x y^n, x y`: the
    /// finite-colength subring of `k[x, y]` with minimal reduction
    /// `(xy, x^n - y^n)`.
    pub fn pinched_plane(n: u32) -> Self {
        let g: [[u32; 2]; 7] = [
            [n, 0],
            [n + 1, 0],
            [n, 1],
            [0, n],
            [0, n + 1],
            [1, n],
            [1, 1],
        ];
        let mut gens: Vec<ExponentVector> = Vec::new();
        for e in g {
            let e = ExponentVector::from(e);
            if !gens.contains(&e) {
                gens.push(e);
            }
        }
        AffineSemigroup { dim: 2, generators: gens }
    }

    /// Homogenization of [`pinched_plane`](Self::pinched_plane) in `(s, x, y)`:
    /// each generator `x^a y^b` becomes `s^{n+1-a-b} x^a y^b`, and `s^{n+1}`
    /// is added.
    pub fn homogenized_pinched(n: u32) -> Self {
        let d = n + 1;
        let mut gens = vec![ExponentVector::from([d, 0, 0])];
        for g in Self::pinched_plane(n).generators {
            let (a, b) = (g.get(0), g.get(1));
            gens.push(ExponentVector::from([d - a - b, a, b]));
        }
        AffineSemigroup { dim: 3, generators: gens }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn max_generator_degree(&self) -> u64 {
        self.generators.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    /// Rank of the group generated; the Krull dimension of `k[semigroup]`.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<i64>> = self
            .generators
            .iter()
            .map(|g| g.as_slice().iter().map(|&c| c as i64).collect())
            .collect();
        if rows.is_empty() {
            return 0;
        }
        Matrix::from_i64_rows(Field::Rational, &rows).rank()
    }

    fn check_dim(&self, v: &ExponentVector) -> Result<()> {
        if v.len() != self.dim {
            return Err(crate::algebra::AlgebraError::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            }
            .into());
        }
        Ok(())
    }

    /// `ord` table over all points of degree at most `bound`.
    pub fn order_table(&self, bound: u64) -> OrderTable {
        let side = bound as usize + 1;
        let size = side
            .checked_pow(self.dim as u32)
            .expect("lattice box size overflow");
        let mut t = OrderTable {
            dim: self.dim,
            bound,
            side,
            ord: vec![-1; size],
        };
        t.ord[0] = 0;
        // Every s - g has a smaller dense index than s, so one ascending pass
        // sees all predecessors first.
        for i in 1..size {
            let p = t.point(i);
            let deg: u64 = p.iter().map(|&c| c as u64).sum();
            if deg > bound {
                continue;
            }
            let mut best = -1;
            for g in &self.generators {
                let ok = p.iter().zip(g.as_slice()).all(|(a, b)| a >= b);
                if !ok {
                    continue;
                }
                let q: Vec<u32> = p.iter().zip(g.as_slice()).map(|(a, b)| a - b).collect();
                let j = t.index(&q).expect("inside box");
                if t.ord[j] >= 0 {
                    best = best.max(t.ord[j] + 1);
                }
            }
            t.ord[i] = best;
        }
        t
    }

    /// Membership with an explicit generator decomposition.
    pub fn sg_member(&self, v: &ExponentVector) -> Result<Membership> {
        self.check_dim(v)?;
        let table = self.order_table(v.degree());
        if !table.is_member(v) {
            return Ok(Membership {
                member: false,
                decomposition: Vec::new(),
            });
        }
        let mut decomposition = Vec::new();
        let mut cur = v.clone();
        while !cur.is_zero() {
            let (gi, rest) = self
                .generators
                .iter()
                .enumerate()
                .find_map(|(i, g)| {
                    let r = cur.checked_sub(g)?;
                    table.is_member(&r).then_some((i, r))
                })
                .expect("a member has a generator step back into the semigroup");
            decomposition.push(gi);
            cur = rest;
        }
        Ok(Membership {
            member: true,
            decomposition,
        })
    }

    pub fn contains(&self, v: &ExponentVector) -> bool {
        self.sg_member(v).map(|m| m.member).unwrap_or(false)
    }

    /// Gap set certificate.
    ///
    /// Finite gaps need a pure power `a_i e_i` on every axis. Once every point
    /// of degree in `[B - maxgen, B]` is a member and `B ≥ Σ (a_i - 1)`, every
    /// point of larger degree has some coordinate `≥ a_i`, so subtracting
    /// `a_i e_i` lands in a member by induction on the degree. The bound is
    /// raised to `Σ (a_i - 1)` when needed.
    pub fn gap_set(&self, bound: u64) -> Result<GapSetResult> {
        if !(2..=3).contains(&self.dim) {
            return Err(Error::Unsupported(format!(
                "gap sets are implemented for d = 2, 3 (got d = {})",
                self.dim
            )));
        }
        let maxgen = self.max_generator_degree();
        if bound < maxgen {
            return Err(Error::precondition(format!(
                "bound {bound} is below the largest generator degree {maxgen}"
            )));
        }
        let mut axis_sum = 0u64;
        for i in 0..self.dim {
            let pure = self
                .generators
                .iter()
                .filter(|g| g.support().all(|j| j == i))
                .map(|g| g.get(i) as u64)
                .min();
            match pure {
                Some(a) => axis_sum += a - 1,
                None => {
                    // No power of x_i is ever reached.
                    let mut w = ExponentVector::zero(self.dim);
                    w.set(i, bound as u32);
                    return Ok(GapSetResult::NotFiniteWithinBound {
                        bound,
                        witness: Some(w),
                    });
                }
            }
        }
        let b = bound.max(axis_sum);
        let table = self.order_table(b);
        let shell_low = b.saturating_sub(maxgen);
        let mut gaps = Vec::new();
        for (p, o) in table.points() {
            if o.is_some() {
                continue;
            }
            if p.degree() >= shell_low {
                return Ok(GapSetResult::NotFiniteWithinBound {
                    bound: b,
                    witness: Some(p),
                });
            }
            gaps.push(p);
        }
        gaps.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        Ok(GapSetResult::Finite(GapSet {
            gaps,
            bound_used: b,
        }))
    }

    /// [`AffineSemigroup::gap_set`] with the bound doubled from `2 * maxgen`
    /// until the certificate closes or the bound reaches `max_bound`.
    pub fn gap_set_auto(&self, max_bound: u64) -> Result<GapSetResult> {
        let every_axis = (0..self.dim)
            .all(|i| self.generators.iter().any(|g| g.support().all(|j| j == i) && !g.is_zero()));
        let mut bound = 2 * self.max_generator_degree().max(1);
        loop {
            let r = self.gap_set(bound)?;
            if r.finite().is_some() || !every_axis || bound >= max_bound {
                return Ok(r);
            }
            bound = (bound * 2).min(max_bound);
        }
    }

    /// `ℓ(R/m^t)`: members with `ord < t`. Such points have degree below
    /// `t * maxgen`, so the table bound is `t * maxgen`.
    pub fn hilbert_samuel(&self, t: u64) -> u64 {
        if t == 0 {
            return 0;
        }
        let table = self.order_table(t * self.max_generator_degree());
        hilbert_from_table(&table, t)
    }

    /// `ℓ(R/m^t)` for `t = 0..=t_max` from one order table.
    pub fn hilbert_samuel_table(&self, t_max: u64) -> Vec<u64> {
        let table = self.order_table(t_max * self.max_generator_degree());
        let mut counts = vec![0u64; t_max as usize + 1];
        for (_, o) in table.points() {
            if let Some(o) = o {
                for c in counts.iter_mut().skip(o as usize + 1) {
                    *c += 1;
                }
            }
        }
        counts
    }

    /// Hilbert-Samuel multiplicity: the `d`-th difference of `ℓ(R/m^t)` once
    /// three consecutive values agree, `d` the Krull dimension.
    pub fn multiplicity(&self) -> Result<SemigroupMultiplicity> {
        let order = self.rank();
        if order == 0 {
            return Err(Error::precondition("semigroup has rank 0"));
        }
        let mut t_max = (order as u64 + 6).max(10);
        loop {
            let table = self.hilbert_samuel_table(t_max);
            let vals: Vec<i64> = table.iter().map(|&v| v as i64).collect();
            if let Some(s) = stabilized_difference(&vals, order, 3) {
                if s.value > 0 {
                    return Ok(SemigroupMultiplicity {
                        value: s.value as u64,
                        table,
                        order,
                        window_start: s.window_start,
                    });
                }
            }
            if t_max as usize >= MAX_MULTIPLICITY_T {
                return Err(Error::Inconclusive(format!(
                    "no stabilization of {order}-th differences up to t = {t_max}; table {table:?}"
                )));
            }
            t_max = (t_max * 2).min(MAX_MULTIPLICITY_T as u64);
        }
    }

    /// Minimal generators: members with `ord = 1` that are not sums of two
    /// nonzero members.
    pub fn minimal_generators(&self) -> Vec<ExponentVector> {
        let table = self.order_table(self.max_generator_degree());
        let mut out: Vec<ExponentVector> = Vec::new();
        for g in &self.generators {
            if table.ord(g) != Some(1) || out.contains(g) {
                continue;
            }
            out.push(g.clone());
        }
        out
    }

    /// `ν_R(m_R)`.
    pub fn nu_max_ideal(&self) -> usize {
        self.minimal_generators().len()
    }

    /// Inverts the variable `face` (only `s`, index 0, of a homogeneous
    /// 3-dimensional semigroup is supported).
    ///
    /// Requires a pure generator `s^D` and every generator of total degree
    /// `D`; then `s^a x^b y^c ↦ (x/s)^b (y/s)^c`, and generators mapping to
    /// `(0, 0)` become units.
    pub fn localize_at_face(&self, face: usize) -> Result<LocalizedSemigroup> {
        if self.dim != 3 || face != 0 {
            return Err(Error::Unsupported(
                "only inverting the first variable of a 3-dimensional semigroup is implemented"
                    .to_string(),
            ));
        }
        let d = self
            .generators
            .iter()
            .find(|g| g.get(1) == 0 && g.get(2) == 0)
            .map(|g| g.get(0) as u64)
            .ok_or_else(|| Error::precondition("no pure power of the inverted variable"))?;
        let mut units = Vec::new();
        let mut images: Vec<ExponentVector> = Vec::new();
        for g in &self.generators {
            if g.degree() != d {
                return Err(Error::precondition(format!(
                    "generator {g:?} has degree {} instead of {d}",
                    g.degree()
                )));
            }
            let img = ExponentVector::from([g.get(1), g.get(2)]);
            if img.is_zero() {
                units.push(g.clone());
            } else if !images.contains(&img) {
                images.push(img);
            }
        }
        Ok(LocalizedSemigroup {
            semigroup: AffineSemigroup::new(2, images)?,
            units,
        })
    }

    /// Same generator set up to order.
    pub fn same_generators(&self, other: &AffineSemigroup) -> bool {
        let mut a = self.generators.clone();
        let mut b = other.generators.clone();
        a.sort();
        a.dedup();
        b.sort();
        b.dedup();
        self.dim == other.dim && a == b
    }
}

fn hilbert_from_table(table: &OrderTable, t: u64) -> u64 {
    table
        .points()
        .filter(|(_, o)| o.is_some_and(|o| (o as u64) < t))
        .count() as u64
}

/// Result of [`AffineSemigroup::localize_at_face`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedSemigroup {
    pub semigroup: AffineSemigroup,
    /// Generators that became units.
    pub units: Vec<ExponentVector>,
}

impl fmt::Display for AffineSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sg {} {{", self.dim)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g:?}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for AffineSemigroup {
    type Err = Error;

    /// `sg 2 {(2,0),(3,0),(1,1)}`; the `sg d` prefix is optional.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (dim_hint, body) = match s.strip_prefix("sg") {
            Some(rest) => {
                let rest = rest.trim_start();
                let end = rest.find('{').ok_or_else(|| Error::parse("expected `{`"))?;
                let d: usize = rest[..end]
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse("expected the dimension after `sg`"))?;
                (Some(d), &rest[end..])
            }
            None => (None, s),
        };
        let body = body.trim();
        let inner = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| Error::parse("expected a `{...}` list of tuples"))?;
        let mut gens = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::parse(format!("expected `(` at `{rest}`")))?;
            let close = open.find(')').ok_or_else(|| Error::parse("unclosed tuple"))?;
            let comps: Result<Vec<u32>> = open[..close]
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::parse(format!("bad exponent `{}`", c.trim())))
                })
                .collect();
            gens.push(ExponentVector::from(comps?));
            rest = open[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            }
        }
        let dim = match (dim_hint, gens.first()) {
            (Some(d), _) => d,
            (None, Some(g)) => g.len(),
            (None, None) => return Err(Error::parse("cannot infer the dimension of an empty list")),
        };
        AffineSemigroup::new(dim, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v)
    }

    fn r2() -> AffineSemigroup {
        "sg 2 {(2,0),(3,0),(2,1),(0,2),(0,3),(1,2),(1,1)}".parse().unwrap()
    }

    #[test]
    fn parsing_and_named_families() {
        assert!(r2().same_generators(&AffineSemigroup::pinched_plane(2)));
        assert_eq!(AffineSemigroup::pinched_plane(3).generators().len(), 7);
        assert!("sg 2 {(1,0),(0,1,2)}".parse::<AffineSemigroup>().is_err());
        assert!("sg 2 {(0,0)}".parse::<AffineSemigroup>().is_err());
        let printed = r2().to_string();
        assert_eq!(printed.parse::<AffineSemigroup>().unwrap(), r2());
    }

    #[test]
    fn membership_examples() {
        let r = r2();
        assert!(!r.sg_member(&ev(&[1, 0])).unwrap().member);
        let m = r.sg_member(&ev(&[2, 2])).unwrap();
        assert!(m.member);
        let sum = m
            .decomposition
            .iter()
            .fold(ev(&[0, 0]), |acc, &i| acc.add(&r.generators()[i]));
        assert_eq!(sum, ev(&[2, 2]));
        assert!(r.sg_member(&ev(&[0, 0])).unwrap().member);
        assert!(r.sg_member(&ev(&[1])).is_err());
    }

    #[test]
    fn gap_set_examples() {
        let g = r2().gap_set(6).unwrap();
        let gaps = g.finite().unwrap();
        assert_eq!(gaps.gaps, vec![ev(&[1, 0]), ev(&[0, 1])]);
        let line = AffineSemigroup::from_tuples(2, &[&[1, 0]]).unwrap();
        assert!(matches!(line.gap_set(5).unwrap(), GapSetResult::NotFiniteWithinBound { .. }));
        assert!(AffineSemigroup::full(2).gap_set(3).unwrap().finite().unwrap().is_empty());
        assert!(r2().gap_set(2).is_err());
        let veronese = AffineSemigroup::from_tuples(2, &[&[2, 0], &[1, 1], &[0, 2]]).unwrap();
        assert!(veronese.gap_set(8).unwrap().finite().is_none());
        let numerical = AffineSemigroup::from_tuples(2, &[&[3, 0], &[5, 0], &[0, 1]]).unwrap();
        // 1, 2, 4, 7 times x are gaps, each times any power of y.
        assert!(numerical.gap_set(20).unwrap().finite().is_none());
    }

    #[test]
    fn hilbert_samuel_examples() {
        let r = r2();
        assert_eq!(r.hilbert_samuel(0), 0);
        assert_eq!(r.hilbert_samuel(1), 1);
        assert_eq!(r.hilbert_samuel(2), 8);
        assert_eq!(&r.hilbert_samuel_table(4)[..3], &[0, 1, 8]);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(r2().multiplicity().unwrap().value, 4);
        assert_eq!(AffineSemigroup::full(2).multiplicity().unwrap().value, 1);
        assert_eq!(AffineSemigroup::pinched_plane(3).multiplicity().unwrap().value, 6);
    }

    #[test]
    fn minimal_generator_counts() {
        assert_eq!(r2().nu_max_ideal(), 7);
        assert_eq!(AffineSemigroup::full(2).nu_max_ideal(), 2);
        let v = AffineSemigroup::from_tuples(2, &[&[2, 0], &[0, 2], &[1, 1]]).unwrap();
        assert_eq!(v.nu_max_ideal(), 3);
        let redundant = AffineSemigroup::from_tuples(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(redundant.nu_max_ideal(), 2);
    }

    #[test]
    fn face_localization() {
        let t2 = "sg 3 {(3,0,0),(1,2,0),(0,3,0),(0,2,1),(1,0,2),(0,0,3),(0,1,2),(1,1,1)}"
            .parse::<AffineSemigroup>()
            .unwrap();
        assert!(t2.same_generators(&AffineSemigroup::homogenized_pinched(2)));
        let loc = t2.localize_at_face(0).unwrap();
        assert!(loc.semigroup.same_generators(&r2()));
        assert_eq!(loc.units, vec![ev(&[3, 0, 0])]);
        let loc3 = AffineSemigroup::homogenized_pinched(3).localize_at_face(0).unwrap();
        assert!(loc3.semigroup.same_generators(&AffineSemigroup::pinched_plane(3)));
        assert!(t2.localize_at_face(1).is_err());
        assert!(r2().localize_at_face(0).is_err());
    }

    #[test]
    fn order_function_is_superadditive() {
        let r = r2();
        let table = r.order_table(12);
        let members: Vec<_> = table.points().filter_map(|(p, o)| o.map(|o| (p, o))).collect();
        for (a, oa) in &members {
            for (b, ob) in &members {
                let s = a.add(b);
                if s.degree() <= 12 {
                    assert!(table.ord(&s).unwrap() >= oa + ob);
                }
            }
            if !a.is_zero() {
                assert!(*oa >= 1);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn hilbert_samuel_is_nondecreasing(
            gens in prop::collection::vec((0u32..4, 0u32..4), 1..5),
            a in 1u32..4,
            b in 1u32..4,
        ) {
            let mut g: Vec<ExponentVector> = gens
                .into_iter()
                .filter(|&(x, y)| x + y > 0)
                .map(|(x, y)| ExponentVector::from([x, y]))
                .collect();
            g.push(ExponentVector::from([a, 0]));
            g.push(ExponentVector::from([0, b]));
            let sg = AffineSemigroup::new(2, g).unwrap();
            let table = sg.hilbert_samuel_table(12);
            prop_assert!(table.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(sg.multiplicity().is_ok());
        }
    }
}
