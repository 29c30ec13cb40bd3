//! Sparse polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::coefficient::{Coefficient, Field};
use super::monomial::{ExponentVector, MonomialOrder};
use super::AlgebraError;

/// A polynomial ring `k[x_1, ..., x_d]`: variable names plus coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    field: Field,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S], field: Field) -> Arc<Ring> {
        Arc::new(Ring {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            field,
        })
    }

    /// `k[x, y]` over `Q`.
    pub fn plane() -> Arc<Ring> {
        Ring::new(&["x", "y"], Field::Rational)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Polynomial rings are regular; the multiplicity-based negative branch of
    /// the reduction test relies on this.
    pub fn is_regular(&self) -> bool {
        true
    }
}

/// A polynomial: a map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<ExponentVector, Coefficient>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Coefficient) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(ExponentVector::zero(ring.nvars()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, ExponentVector::unit(ring.nvars(), i))
    }

    pub fn monomial(ring: &Arc<Ring>, e: ExponentVector) -> Self {
        Self::term(ring, e, ring.field().one())
    }

    pub fn term(ring: &Arc<Ring>, e: ExponentVector, c: Coefficient) -> Self {
        assert_eq!(e.len(), ring.nvars(), "exponent vector length");
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, collecting like
    /// terms and dropping zeros.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Coefficient)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Coefficient) {
        debug_assert_eq!(e.len(), self.ring.nvars());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Coefficient {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.ring.field().zero())
    }

    /// The single exponent vector when this is `c * x^e`.
    pub fn as_monomial(&self) -> Option<&ExponentVector> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    /// Smallest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Leading exponent and coefficient under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&ExponentVector, &Coefficient)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    /// Terms sorted in decreasing order under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(&ExponentVector, &Coefficient)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c * x^e`.
    pub fn mul_term(&self, e: &ExponentVector, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.add(e), a * c)).collect(),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::AmbientMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `values[i]` for variable `i`; the values live in `target`.
    pub fn substitute(&self, target: &Arc<Ring>, values: &[Polynomial]) -> Polynomial {
        assert_eq!(values.len(), self.ring.nvars());
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    t = &t * &values[i].pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Re-embeds into `target` by sending variable `i` to variable `map[i]`.
    pub fn rename(&self, target: &Arc<Ring>, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.nvars());
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut f = ExponentVector::zero(target.nvars());
            for (i, &k) in e.as_slice().iter().enumerate() {
                f.set(map[i], f.get(map[i]) + k);
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let ord = MonomialOrder::grevlex();
        let (lm, lc) = divisor.leading_term(&ord).map(|(e, c)| (e.clone(), c.clone()))?;
        let lc_inv = lc.inverse();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((e, c)) = rem.leading_term(&ord).map(|(e, c)| (e.clone(), c.clone())) {
            let shift = e.checked_sub(&lm)?;
            let q = &c * &lc_inv;
            rem = &rem - &divisor.mul_term(&shift, &q);
            quot.add_term(shift, q);
        }
        Some(quot)
    }

    /// Formats with terms in decreasing grevlex order.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

/// Explicit `op` selector mirroring the textual interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial, AlgebraError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

pub(crate) fn format_monomial(names: &[String], e: &ExponentVector) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.as_slice().iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ord = MonomialOrder::grevlex();
        for (i, (e, c)) in self.sorted_terms(&ord).into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mono = format_monomial(self.ring.names(), e);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &Ring::plane()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
        assert!((&p("x^3 + 2") * &p("0")).is_zero());
        assert_eq!(&p("x^2 - y^2") + &p("y^2"), p("x^2"));
        assert_eq!(poly_arith(&p("x"), &p("y"), ArithOp::Sub).unwrap(), p("x - y"));
    }

    #[test]
    fn ambient_mismatch() {
        let other = Ring::new(&["x", "z"], Field::Rational);
        let q = Polynomial::var(&other, 0);
        assert!(matches!(
            poly_arith(&p("x"), &q, ArithOp::Add),
            Err(AlgebraError::AmbientMismatch)
        ));
    }

    #[test]
    fn display_orders_terms_by_grevlex() {
        assert_eq!(p("y^2 - x^2 + 3").to_string(), "-x^2 + y^2 + 3");
        assert_eq!(p("x*y + x^2").to_string(), "x^2 + x*y");
        assert_eq!(p("1/2*x - 2/3").to_string(), "1/2*x - 2/3");
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x^3 - y^3").div_exact(&p("x - y")).unwrap(), p("x^2 + x*y + y^2"));
        assert!(p("x^2 + 1").div_exact(&p("x")).is_none());
    }

    #[test]
    fn substitution() {
        let r = Ring::plane();
        let vals = vec![p("x*y"), p("x + y")];
        assert_eq!(p("x + y^2").substitute(&r, &vals), p("x^2 + 3*x*y + y^2"));
    }
}
