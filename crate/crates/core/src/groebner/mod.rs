//! Ideals of polynomial rings: Groebner bases and ideal arithmetic.

mod engine;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::differences::stabilized_difference;
use crate::algebra::parse::{parse_polynomial_list, ParseOptions};
use crate::algebra::{AlgebraError, ExponentVector, MonomialOrder, Polynomial, Ring};
use crate::{Error, Result};

pub use engine::BuchbergerStats;
use engine::{from_sorted, groebner_basis, is_groebner, reduce, to_sorted, Term};

/// Name of the auxiliary variable used for intersections.
const TAG_VARIABLE: &str = "_t";

/// Default cap on `t` when reading a multiplicity off `colength(I^t)`.
pub const DEFAULT_MULTIPLICITY_CAP: usize = 16;

/// `ℓ(S/I)`: a count of standard monomials, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Colength::Finite(_))
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// Hilbert-Samuel multiplicity with its stabilization certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityCertificate {
    pub value: u64,
    /// `colength(I^t)` for `t = 0, 1, ...`.
    pub table: Vec<u64>,
    /// Order of the finite difference that stabilized (the dimension).
    pub order: usize,
    /// First index of the run of three equal differences.
    pub window_start: usize,
}

#[derive(Clone)]
struct GroebnerCache {
    sorted: Vec<Vec<Term>>,
    polys: Vec<Polynomial>,
    stats: BuchbergerStats,
}

/// An ideal given by generators, with a lazily computed reduced Groebner basis.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    gb: OnceLock<Arc<GroebnerCache>>,
}

impl Ideal {
    /// Ideal under grevlex.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        Self::with_order(ring, generators, MonomialOrder::grevlex())
    }

    pub fn with_order(
        ring: &Arc<Ring>,
        generators: Vec<Polynomial>,
        order: MonomialOrder,
    ) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(AlgebraError::AmbientMismatch.into());
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators,
            order,
            gb: OnceLock::new(),
        })
    }

    /// Parses a generator list such as `(x*y, x^2 - y^2)`.
    pub fn parse(text: &str, ring: &Arc<Ring>) -> Result<Self> {
        Self::parse_with(text, ring, &ParseOptions::default())
    }

    pub fn parse_with(text: &str, ring: &Arc<Ring>, opts: &ParseOptions) -> Result<Self> {
        Self::new(ring, parse_polynomial_list(text, ring, opts)?)
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::new(ring, Vec::new()).expect("empty generator list")
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_d)`.
    pub fn maximal(ring: &Arc<Ring>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Self::new(ring, gens).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    fn cache(&self) -> &GroebnerCache {
        self.gb.get_or_init(|| {
            let (sorted, stats) = groebner_basis(&self.generators, &self.order);
            debug_assert!(is_groebner(&sorted, &self.order));
            let polys = sorted
                .iter()
                .map(|t| from_sorted(&self.ring, t.clone()))
                .collect();
            Arc::new(GroebnerCache {
                sorted,
                polys,
                stats,
            })
        })
    }

    /// The reduced Groebner basis, sorted by decreasing leading monomial.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.cache().polys
    }

    pub fn buchberger_stats(&self) -> BuchbergerStats {
        self.cache().stats
    }

    /// Re-checks Buchberger's criterion on the cached basis.
    pub fn verify_groebner(&self) -> bool {
        is_groebner(&self.cache().sorted, &self.order)
    }

    /// Leading monomials of the reduced Groebner basis.
    pub fn leading_monomials(&self) -> Vec<ExponentVector> {
        self.cache().sorted.iter().map(|g| g[0].0.clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cache().sorted.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.cache()
            .sorted
            .first()
            .is_some_and(|g| g[0].0.is_zero())
    }

    fn check_ring(&self, ring: &Arc<Ring>) -> Result<()> {
        if &self.ring != ring {
            return Err(AlgebraError::AmbientMismatch.into());
        }
        Ok(())
    }

    /// Remainder of `p` modulo the Groebner basis; zero iff `p` is in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check_ring(p.ring())?;
        let terms = reduce(to_sorted(p, &self.order), &self.cache().sorted, &self.order);
        Ok(from_sorted(&self.ring, terms))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(&other.ring)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual membership of generators.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    fn derived(&self, generators: Vec<Polynomial>) -> Ideal {
        Ideal::with_order(&self.ring, generators, self.order.clone()).expect("same ring")
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ok(self.derived(g))
    }

    /// `self + (p)`.
    pub fn with_element(&self, p: &Polynomial) -> Result<Ideal> {
        self.check_ring(p.ring())?;
        let mut g = self.generators.clone();
        g.push(p.clone());
        Ok(self.derived(g))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        let a = self.compact_generators();
        let b = other.compact_generators();
        let mut g = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                let p = x * y;
                if !g.contains(&p) {
                    g.push(p);
                }
            }
        }
        Ok(self.derived(g))
    }

    /// Whichever of the generator list and the Groebner basis is shorter.
    fn compact_generators(&self) -> Vec<Polynomial> {
        match self.gb.get() {
            Some(c) if c.polys.len() < self.generators.len() => c.polys.clone(),
            _ => self.generators.iter().filter(|g| !g.is_zero()).cloned().collect(),
        }
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring).with_same_order(self);
        for _ in 0..k {
            let next = acc.product(self).expect("same ring");
            next.groebner_basis();
            acc = next;
        }
        acc
    }

    fn with_same_order(mut self, other: &Ideal) -> Ideal {
        self.order = other.order.clone();
        self.gb = OnceLock::new();
        self
    }

    /// `self ∩ other`, by eliminating `t` from `t*A + (1 - t)*B`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring).with_same_order(self));
        }
        let n = self.ring.nvars();
        let mut names = vec![TAG_VARIABLE.to_string()];
        names.extend(self.ring.names().iter().cloned());
        let big = Ring::new(&names, self.ring.field());
        let map: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens = Vec::new();
        for a in self.compact_generators() {
            gens.push(&t * &a.rename(&big, &map));
        }
        for b in other.compact_generators() {
            gens.push(&one_minus_t * &b.rename(&big, &map));
        }
        let elim = Ideal::with_order(&big, gens, MonomialOrder::elimination(1))?;
        let back: Vec<usize> = (0..=n).map(|i| i.saturating_sub(1)).collect();
        let kept = elim
            .groebner_basis()
            .iter()
            .filter(|g| g.terms().all(|(e, _)| e.get(0) == 0))
            .map(|g| restrict(g, &self.ring, &back))
            .collect();
        Ok(self.derived(kept))
    }

    /// `(self : b)` for a single polynomial `b`.
    pub fn quotient_by_element(&self, b: &Polynomial) -> Result<Ideal> {
        self.check_ring(b.ring())?;
        if self.contains(b)? {
            return Ok(Ideal::unit(&self.ring).with_same_order(self));
        }
        let principal = self.derived(vec![b.clone()]);
        let inter = self.intersect(&principal)?;
        let gens = inter
            .groebner_basis()
            .iter()
            .map(|g| g.div_exact(b).expect("elements of (b) are divisible by b"))
            .collect();
        Ok(self.derived(gens))
    }

    /// `(self : other)` as the intersection of `(self : b)` over generators `b`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        let mut acc = Ideal::unit(&self.ring).with_same_order(self);
        for b in other.compact_generators() {
            let q = self.quotient_by_element(&b)?;
            acc = if acc.is_unit() { q } else { acc.intersect(&q)? };
        }
        Ok(acc)
    }

    /// `ℓ(S/I)` as the number of standard monomials.
    pub fn colength(&self) -> Colength {
        match self.standard_monomials() {
            Ok(v) => Colength::Finite(v.len() as u64),
            Err(_) => Colength::Infinite,
        }
    }

    /// Monomials not divisible by any leading monomial, when there are finitely
    /// many; sorted by decreasing grevlex.
    pub fn standard_monomials(&self) -> Result<Vec<ExponentVector>> {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        for i in 0..n {
            let pure = lms.iter().any(|m| m.support().all(|j| j == i));
            if !pure {
                return Err(Error::InfiniteColength {
                    what: format!("ideal {self}"),
                });
            }
        }
        let mut seen: HashSet<ExponentVector> = HashSet::new();
        let mut queue = VecDeque::new();
        let zero = ExponentVector::zero(n);
        if !lms.iter().any(|m| zero.is_divisible_by(m)) {
            seen.insert(zero.clone());
            queue.push_back(zero);
        }
        while let Some(e) = queue.pop_front() {
            for i in 0..n {
                let next = e.add(&ExponentVector::unit(n, i));
                if seen.contains(&next) || lms.iter().any(|m| next.is_divisible_by(m)) {
                    continue;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        let ord = MonomialOrder::grevlex();
        let mut v: Vec<ExponentVector> = seen.into_iter().collect();
        v.sort_by(|a, b| ord.cmp(b, a));
        Ok(v)
    }

    /// Krull dimension of `S/I`: the largest set of variables that contains
    /// the support of no leading monomial.
    pub fn dim_quotient(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let independent = lms
                .iter()
                .all(|m| m.support().any(|j| mask & (1 << j) == 0));
            if independent {
                best = size;
            }
        }
        Ok(best)
    }

    /// Hilbert-Samuel multiplicity `e(I)` of an ideal of finite colength, read
    /// off as the stabilized `d`-th difference of `t ↦ colength(I^t)`.
    pub fn multiplicity(&self, cap: usize) -> Result<MultiplicityCertificate> {
        if !self.colength().is_finite() {
            return Err(Error::InfiniteColength {
                what: format!("ideal {self}"),
            });
        }
        let d = self.ring.nvars();
        let mut table = vec![0u64];
        let mut power = Ideal::unit(&self.ring).with_same_order(self);
        for _ in 1..=cap.max(d + 3) {
            power = power.product(self)?;
            let c = power.colength().finite().expect("powers of a finite-colength ideal");
            table.push(c);
            let vals: Vec<i64> = table.iter().map(|&v| v as i64).collect();
            if let Some(s) = stabilized_difference(&vals, d, 3) {
                if s.value > 0 {
                    return Ok(MultiplicityCertificate {
                        value: s.value as u64,
                        table,
                        order: d,
                        window_start: s.window_start,
                    });
                }
            }
        }
        Err(Error::Inconclusive(format!(
            "multiplicity of {self}: no stabilization up to t = {}; colengths {:?}",
            table.len() - 1,
            table
        )))
    }
}

/// Drops the variables mapped away; `back[i]` is the target index of variable
/// `i` (ignored when its exponent is zero).
fn restrict(p: &Polynomial, target: &Arc<Ring>, back: &[usize]) -> Polynomial {
    let terms = p.terms().map(|(e, c)| {
        let mut f = ExponentVector::zero(target.nvars());
        for (i, &k) in e.as_slice().iter().enumerate() {
            if k > 0 {
                f.set(back[i], k);
            }
        }
        (f, c.clone())
    });
    Polynomial::from_terms(target, terms.collect::<Vec<_>>())
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// Explicit operation selector mirroring the textual interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Power(u32),
    Intersect,
    Quotient,
    Equal,
}

#[derive(Clone, Debug)]
pub enum IdealOpResult {
    Ideal(Ideal),
    Bool(bool),
}

pub fn ideal_ops(a: &Ideal, b: &Ideal, op: IdealOp) -> Result<IdealOpResult> {
    a.check_ring(&b.ring)?;
    Ok(match op {
        IdealOp::Sum => IdealOpResult::Ideal(a.sum(b)?),
        IdealOp::Product => IdealOpResult::Ideal(a.product(b)?),
        IdealOp::Power(k) => IdealOpResult::Ideal(a.power(k)),
        IdealOp::Intersect => IdealOpResult::Ideal(a.intersect(b)?),
        IdealOp::Quotient => IdealOpResult::Ideal(a.quotient(b)?),
        IdealOp::Equal => IdealOpResult::Bool(a.equals(b)?),
    })
}
