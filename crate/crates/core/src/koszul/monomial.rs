//! Rank-one monomial modules over an affine semigroup ring in two variables,
//! and their `Z^2`-graded Koszul homology.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::differences::stabilized_difference;
use crate::algebra::{ExponentVector, Field, Matrix};
use crate::semigroup::{AffineSemigroup, OrderTable, MAX_MULTIPLICITY_T};
use crate::{Error, Result};

use super::KoszulTally;

pub type Point = [i64; 2];

/// Largest degree bound tried by the automatic variants.
pub const MAX_DEGREE_BOUND: u64 = 512;

fn deg(v: Point) -> i64 {
    v[0] + v[1]
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1]]
}

/// `ord` lookups for lattice points, negative coordinates being non-members.
struct Lookup {
    table: OrderTable,
}

impl Lookup {
    fn new(sg: &AffineSemigroup, bound: i64) -> Self {
        Lookup {
            table: sg.order_table(bound.max(0) as u64),
        }
    }

    fn ord(&self, w: Point) -> Option<u32> {
        if w[0] < 0 || w[1] < 0 {
            return None;
        }
        self.table
            .ord(&ExponentVector::from([w[0] as u32, w[1] as u32]))
    }

    fn member(&self, w: Point) -> bool {
        self.ord(w).is_some()
    }
}

/// The `R`-submodule of the fraction lattice generated by `x^{m_i}`,
/// `R = k[semigroup]` with the semigroup in `N^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialModule {
    semigroup: AffineSemigroup,
    generators: Vec<Point>,
}

/// Per-degree Koszul data of a monomial module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedKoszul {
    pub tally: KoszulTally,
    pub degree_bound: u64,
    /// Degrees (relative to the corner of the module) carrying homology.
    pub support: Vec<(Point, [u64; 3])>,
}

impl MonomialModule {
    pub fn new(semigroup: &AffineSemigroup, generators: Vec<Point>) -> Result<Self> {
        if semigroup.dim() != 2 {
            return Err(Error::Unsupported(format!(
                "monomial modules need a semigroup in N^2, got dimension {}",
                semigroup.dim()
            )));
        }
        let set: BTreeSet<Point> = generators.into_iter().collect();
        Ok(MonomialModule {
            semigroup: semigroup.clone(),
            generators: set.into_iter().collect(),
        })
    }

    /// `R` as a module over itself.
    pub fn free(semigroup: &AffineSemigroup) -> Result<Self> {
        Self::new(semigroup, vec![[0, 0]])
    }

    /// `k[x, y]` as an `R`-module.
    pub fn polynomial_ring(semigroup: &AffineSemigroup) -> Result<Self> {
        Self::free(semigroup)?.s_saturation()
    }

    pub fn semigroup(&self) -> &AffineSemigroup {
        &self.semigroup
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Componentwise minimum of the generators; every element lies above it.
    pub fn corner(&self) -> Point {
        let mut c = self.generators.first().copied().unwrap_or([0, 0]);
        for g in &self.generators {
            c = [c[0].min(g[0]), c[1].min(g[1])];
        }
        c
    }

    fn spread(&self) -> i64 {
        let c = self.corner();
        self.generators.iter().map(|&g| deg(sub(g, c))).max().unwrap_or(0)
    }

    /// Table covering `v − m_i` for all `v` with `deg(v − corner) ≤ rel`.
    fn lookup(&self, rel: i64) -> Lookup {
        Lookup::new(&self.semigroup, rel)
    }

    fn contains_with(&self, lookup: &Lookup, v: Point) -> bool {
        self.generators.iter().any(|&m| lookup.member(sub(v, m)))
    }

    /// Whether `x^v` lies in the module.
    pub fn contains(&self, v: Point) -> bool {
        let c = self.corner();
        if self.is_zero() || v[0] < c[0] || v[1] < c[1] {
            return false;
        }
        self.contains_with(&self.lookup(deg(sub(v, c))), v)
    }

    /// Generators that are not in `m_R M`.
    pub fn minimal_generators(&self) -> Vec<Point> {
        let lookup = self.lookup(self.spread());
        self.generators
            .iter()
            .copied()
            .filter(|&m| {
                !self
                    .generators
                    .iter()
                    .any(|&n| n != m && lookup.member(sub(m, n)))
            })
            .collect()
    }

    /// `ν_R(M)`.
    pub fn nu(&self) -> usize {
        self.minimal_generators().len()
    }

    /// `ℓ(M / m^t M)` for `t = 0..=t_max`: a point `v` lies in `m^t M` iff
    /// `ord(v − m_i) ≥ t` for some `i`.
    pub fn hilbert_samuel_table(&self, t_max: u64) -> Vec<u64> {
        let mut counts = vec![0u64; t_max as usize + 1];
        if self.is_zero() {
            return counts;
        }
        let rel = t_max as i64 * self.semigroup.max_generator_degree() as i64 + self.spread();
        let lookup = self.lookup(rel);
        let c = self.corner();
        for_points(rel, |w| {
            let v = add(c, w);
            let best = self.generators.iter().filter_map(|&m| lookup.ord(sub(v, m))).max();
            if let Some(o) = best {
                for x in counts.iter_mut().skip(o as usize + 1) {
                    *x += 1;
                }
            }
        });
        counts
    }

    /// `e_R(M)` as the stabilized second difference of `ℓ(M / m^t M)`.
    pub fn multiplicity(&self) -> Result<u64> {
        if self.is_zero() {
            return Ok(0);
        }
        let mut t_max = 10u64;
        loop {
            let table = self.hilbert_samuel_table(t_max);
            let vals: Vec<i64> = table.iter().map(|&v| v as i64).collect();
            if let Some(s) = stabilized_difference(&vals, 2, 3) {
                if s.value > 0 {
                    return Ok(s.value as u64);
                }
            }
            if t_max >= MAX_MULTIPLICITY_T as u64 {
                return Err(Error::Inconclusive(format!(
                    "module multiplicity: no stabilization up to t = {t_max}; table {table:?}"
                )));
            }
            t_max = (t_max * 2).min(MAX_MULTIPLICITY_T as u64);
        }
    }

    /// `MS`, the `k[x, y]`-module generated by `M`, presented over `R`.
    ///
    /// Minimal `R`-generators of `MS` have the form `m_i + w` with `w` zero or
    /// a gap; everything else is `m_i` plus a nonzero semigroup element.
    pub fn s_saturation(&self) -> Result<MonomialModule> {
        let gaps = self
            .semigroup
            .gap_set_auto(MAX_DEGREE_BOUND)?;
        let Some(gaps) = gaps.finite() else {
            return Err(Error::precondition(format!(
                "{} has infinitely many gaps",
                self.semigroup
            )));
        };
        let mut candidates: Vec<Point> = Vec::new();
        for &m in &self.generators {
            candidates.push(m);
            for g in &gaps.gaps {
                candidates.push(add(m, [g.get(0) as i64, g.get(1) as i64]));
            }
        }
        let in_ms = |v: Point| self.generators.iter().any(|&m| v[0] >= m[0] && v[1] >= m[1]);
        let c = self.corner();
        let rel = candidates.iter().map(|&v| deg(sub(v, c))).max().unwrap_or(0);
        let lookup = self.lookup(rel);
        let mut keep = Vec::new();
        for &v in &candidates {
            // v ∈ m_R MS iff v − s ∈ MS for a nonzero member s ≤ v − corner.
            let mut redundant = false;
            for_points(deg(sub(v, c)), |s| {
                if !redundant && s != [0, 0] && lookup.member(s) && in_ms(sub(v, s)) {
                    redundant = true;
                }
            });
            if !redundant {
                keep.push(v);
            }
        }
        MonomialModule::new(&self.semigroup, keep)
    }

    /// Points of `MS` not in `M`; finite when the gap set is.
    pub fn saturation_quotient(&self) -> Result<Vec<Point>> {
        let ms = self.s_saturation()?;
        let c = self.corner();
        let rel = ms.generators.iter().map(|&v| deg(sub(v, c))).max().unwrap_or(0)
            + self.spread()
            + 4 * self.semigroup.max_generator_degree() as i64;
        let lookup = self.lookup(rel);
        let mut out = Vec::new();
        for_points(rel, |w| {
            let v = add(c, w);
            let in_ms = ms.generators.iter().any(|&m| v[0] >= m[0] && v[1] >= m[1]);
            if in_ms && !self.contains_with(&lookup, v) {
                out.push(v);
            }
        });
        Ok(out)
    }

    fn check_sop(&self, u: (Point, Point)) -> Result<()> {
        let lookup = Lookup::new(&self.semigroup, deg(u.0).max(deg(u.1)));
        for a in [u.0, u.1] {
            if !lookup.member(a) {
                return Err(Error::precondition(format!("x^{a:?} is not in R")));
            }
        }
        let pure = |a: Point, i: usize| a[i] > 0 && a[1 - i] == 0;
        if !((pure(u.0, 0) && pure(u.1, 1)) || (pure(u.0, 1) && pure(u.1, 0))) {
            return Err(Error::precondition(
                "monomial system of parameters must be pure powers of distinct variables",
            ));
        }
        Ok(())
    }

    /// Koszul homology of the monomials `u = (x^α, x^β)` on `M`, summed over
    /// the degrees `v` with `deg(v − corner) ≤ bound`. The bound is accepted
    /// only when no homology sits in the top `max(deg α, deg β)` degrees.
    pub fn koszul(&self, u: (Point, Point), bound: u64) -> Result<GradedKoszul> {
        self.check_sop(u)?;
        let (alpha, beta) = u;
        let c = self.corner();
        let window = deg(alpha).max(deg(beta));
        let lookup = self.lookup(bound as i64);
        let q = Field::Rational;
        let mut sums = [0u64; 3];
        let mut support = Vec::new();
        let mut last_nonzero: Option<i64> = None;
        if !self.is_zero() {
            for_points(bound as i64, |w| {
                let v = add(c, w);
                let present = |p: Point| self.contains_with(&lookup, p);
                let k0 = present(v) as usize;
                let slots: Vec<bool> = vec![present(sub(v, alpha)), present(sub(v, beta))];
                let k1 = slots.iter().filter(|&&s| s).count();
                let k2 = present(sub(sub(v, alpha), beta)) as usize;
                // d1(p, q) = x^α p + x^β q; d2(r) = (−x^β r, x^α r).
                let d1 = Matrix::from_i64_rows(q, &vec![vec![1; k1]; k0]);
                let d2_rows: Vec<Vec<i64>> = [(-1), 1]
                    .iter()
                    .zip(&slots)
                    .filter(|(_, &s)| s)
                    .map(|(&sign, _)| vec![sign; k2])
                    .collect();
                let d2 = Matrix::from_i64_rows(q, &d2_rows);
                let (r1, r2) = (d1.rank(), d2.rank());
                let h = [
                    (k0 - r1) as u64,
                    (k1 - r1 - r2) as u64,
                    (k2 - r2) as u64,
                ];
                if h.iter().any(|&x| x > 0) {
                    for i in 0..3 {
                        sums[i] += h[i];
                    }
                    support.push((w, h));
                    last_nonzero = Some(last_nonzero.map_or(deg(w), |l: i64| l.max(deg(w))));
                }
            });
        }
        if let Some(l) = last_nonzero {
            if l > bound as i64 - window {
                return Err(Error::IncreaseBound {
                    bound,
                    last_nonzero: l as u64,
                });
            }
        }
        Ok(GradedKoszul {
            tally: KoszulTally::new(sums[0], sums[1], sums[2])?,
            degree_bound: bound,
            support,
        })
    }

    /// [`MonomialModule::koszul`] with the bound doubled until the window is
    /// homology free.
    pub fn koszul_auto(&self, u: (Point, Point)) -> Result<GradedKoszul> {
        let mut bound = (2 * (deg(u.0) + deg(u.1))
            + self.spread()
            + 2 * self.semigroup.max_generator_degree() as i64) as u64;
        loop {
            match self.koszul(u, bound) {
                Err(Error::IncreaseBound { .. }) if bound < MAX_DEGREE_BOUND => {
                    bound = (bound * 2).min(MAX_DEGREE_BOUND)
                }
                other => return other,
            }
        }
    }

    /// `ℓ((M : (x^{tX}, x^{tY})) / M)`, the colon taken in the fraction lattice.
    pub fn colon_length(&self, t: u32, x: Point, y: Point) -> Result<u64> {
        if self.is_zero() {
            return Ok(0);
        }
        let (tx, ty) = ([x[0] * t as i64, x[1] * t as i64], [y[0] * t as i64, y[1] * t as i64]);
        self.check_sop((tx, ty))?;
        let c = self.corner();
        // v + tX ∈ M and v + tY ∈ M force v ≥ corner − t·min(X, Y).
        let low = sub(c, [tx[0].min(ty[0]), tx[1].min(ty[1])]);
        let shift = deg(sub(c, low));
        let window = deg(tx).max(deg(ty)) + self.semigroup.max_generator_degree() as i64;
        let mut bound = 2 * (window + shift) + self.spread();
        loop {
            let lookup = self.lookup(bound + deg(tx) + deg(ty));
            let mut count = 0u64;
            let mut last = None;
            for_points(bound, |w| {
                let v = add(low, w);
                let present = |p: Point| {
                    p[0] >= c[0] && p[1] >= c[1] && self.contains_with(&lookup, p)
                };
                if present(add(v, tx)) && present(add(v, ty)) && !present(v) {
                    count += 1;
                    last = Some(deg(w));
                }
            });
            match last {
                Some(l) if l > bound - window => {
                    if bound as u64 >= MAX_DEGREE_BOUND {
                        return Err(Error::IncreaseBound {
                            bound: bound as u64,
                            last_nonzero: l as u64,
                        });
                    }
                    bound *= 2;
                }
                _ => return Ok(count),
            }
        }
    }
}

/// Calls `f` on every `w ∈ N^2` with `deg(w) ≤ rel`, by degree then first
/// coordinate descending.
fn for_points(rel: i64, mut f: impl FnMut(Point)) {
    for d in 0..=rel.max(-1) {
        for a in (0..=d).rev() {
            f([a, d - a]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> AffineSemigroup {
        AffineSemigroup::pinched_plane(2)
    }

    #[test]
    fn pinched_plane_over_itself() {
        let r = MonomialModule::free(&r2()).unwrap();
        let k = r.koszul_auto(([2, 0], [0, 2])).unwrap();
        assert_eq!(k.tally.triple(), (6, 2, 0));
        assert_eq!(r.nu(), 1);
        assert_eq!(r.multiplicity().unwrap(), 4);
        assert_eq!(r.colon_length(1, [2, 0], [0, 2]).unwrap(), 2);
    }

    #[test]
    fn polynomial_ring_as_a_module() {
        let s = MonomialModule::polynomial_ring(&r2()).unwrap();
        assert_eq!(s.generators(), &[[0, 0], [0, 1], [1, 0]]);
        assert_eq!(s.nu(), 3);
        assert_eq!(s.multiplicity().unwrap(), 4);
        assert_eq!(s.koszul_auto(([2, 0], [0, 2])).unwrap().tally.triple(), (4, 0, 0));
        assert_eq!(s.colon_length(1, [2, 0], [0, 2]).unwrap(), 0);
        assert!(s.saturation_quotient().unwrap().is_empty());
    }

    #[test]
    fn saturation_of_the_ring() {
        let r = MonomialModule::free(&r2()).unwrap();
        let q = r.saturation_quotient().unwrap();
        assert_eq!(q, vec![[1, 0], [0, 1]]);
        let principal = MonomialModule::new(&r2(), vec![[4, 0]]).unwrap();
        assert_eq!(principal.saturation_quotient().unwrap().len(), 2);
    }

    #[test]
    fn zero_module() {
        let z = MonomialModule::new(&r2(), vec![]).unwrap();
        assert_eq!(z.koszul_auto(([2, 0], [0, 2])).unwrap().tally.triple(), (0, 0, 0));
        assert_eq!(z.nu(), 0);
        assert_eq!(z.multiplicity().unwrap(), 0);
    }

    #[test]
    fn small_bound_asks_for_more() {
        let r = MonomialModule::free(&r2()).unwrap();
        assert!(matches!(
            r.koszul(([2, 0], [0, 2]), 2),
            Err(Error::IncreaseBound { .. })
        ));
        assert!(r.koszul(([1, 1], [0, 2]), 20).is_err());
    }

    #[test]
    fn membership_matches_the_semigroup() {
        let sg = r2();
        let r = MonomialModule::free(&sg).unwrap();
        for a in 0..6u32 {
            for b in 0..6u32 {
                assert_eq!(
                    r.contains([a as i64, b as i64]),
                    sg.contains(&ExponentVector::from([a, b]))
                );
            }
        }
        assert!(!r.contains([-1, 3]));
    }
}
