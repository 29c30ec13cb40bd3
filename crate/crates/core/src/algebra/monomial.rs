//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::AlgebraError;

/// Exponents of a monomial `x_1^{e_1} ... x_d^{e_d}`.
///
/// The derived `Ord` is plain lexicographic order on the components and is
/// only used for canonical storage; monomial orders live in [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(SmallVec<[u32; 12]>);

impl ExponentVector {
    pub fn zero(nvars: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, nvars))
    }

    pub fn new(exponents: &[u32]) -> Self {
        ExponentVector(SmallVec::from_slice(exponents))
    }

    /// `x_var` in `nvars` variables.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.0[var] = 1;
        e
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// `self - other`, or `None` if some component would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = SmallVec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(ExponentVector(out))
    }

    pub fn scale(&self, k: u32) -> Self {
        ExponentVector(self.0.iter().map(|&e| e * k).collect())
    }

    /// `other` divides `self`.
    pub fn is_divisible_by(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub(crate) fn set(&mut self, i: usize, value: u32) {
        self.0[i] = value;
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(SmallVec::from_vec(v))
    }
}

impl<const N: usize> From<[u32; N]> for ExponentVector {
    fn from(v: [u32; N]) -> Self {
        ExponentVector::new(&v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
    /// Block order: the first `split` variables form a block that dominates the
    /// rest; each block is compared by grevlex.
    Elimination { split: usize },
}

/// A multiplicative total order on exponent vectors with `0` as minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// `permutation[i]` is the variable read in position `i`.
    permutation: Option<Vec<usize>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::grevlex()
    }
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::Grevlex,
            permutation: None,
        }
    }

    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            permutation: None,
        }
    }

    pub fn elimination(split: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Elimination { split },
            permutation: None,
        }
    }

    /// Reads the variables in the order given by `permutation` before applying
    /// the comparison rule.
    pub fn with_permutation(mut self, permutation: Vec<usize>) -> Result<Self, AlgebraError> {
        let mut seen = vec![false; permutation.len()];
        for &p in &permutation {
            if p >= seen.len() || seen[p] {
                return Err(AlgebraError::InvalidPermutation);
            }
            seen[p] = true;
        }
        self.permutation = Some(permutation);
        Ok(self)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// Compares two exponent vectors of the same length.
    pub fn cmp(&self, u: &ExponentVector, v: &ExponentVector) -> Ordering {
        debug_assert_eq!(u.len(), v.len());
        match &self.permutation {
            None => self.cmp_slices(u.as_slice(), v.as_slice()),
            Some(p) => {
                let pu: Vec<u32> = p.iter().map(|&i| u.get(i)).collect();
                let pv: Vec<u32> = p.iter().map(|&i| v.get(i)).collect();
                self.cmp_slices(&pu, &pv)
            }
        }
    }

    fn cmp_slices(&self, u: &[u32], v: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Grevlex => grevlex(u, v),
            OrderKind::Lex => u.cmp(v),
            OrderKind::Elimination { split } => {
                let split = split.min(u.len());
                grevlex(&u[..split], &v[..split]).then_with(|| grevlex(&u[split..], &v[split..]))
            }
        }
    }
}

/// Total degree first; on ties the larger exponent in the last variable makes
/// the monomial smaller, then the next-to-last, and so on.
fn grevlex(u: &[u32], v: &[u32]) -> Ordering {
    let du: u64 = u.iter().map(|&e| e as u64).sum();
    let dv: u64 = v.iter().map(|&e| e as u64).sum();
    du.cmp(&dv).then_with(|| {
        for (a, b) in u.iter().rev().zip(v.iter().rev()) {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    })
}

/// Checked comparison for user-facing code.
pub fn compare_monomials(
    u: &ExponentVector,
    v: &ExponentVector,
    ord: &MonomialOrder,
) -> Result<Ordering, AlgebraError> {
    if u.len() != v.len() {
        return Err(AlgebraError::DimensionMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if let Some(p) = &ord.permutation {
        if p.len() != u.len() {
            return Err(AlgebraError::DimensionMismatch {
                left: p.len(),
                right: u.len(),
            });
        }
    }
    Ok(ord.cmp(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v)
    }

    #[test]
    fn grevlex_examples() {
        let ord = MonomialOrder::grevlex();
        assert_eq!(ord.cmp(&ev(&[2, 0]), &ev(&[1, 1])), Ordering::Greater);
        assert_eq!(ord.cmp(&ev(&[1, 1]), &ev(&[1, 1])), Ordering::Equal);
        assert_eq!(ord.cmp(&ev(&[0, 1]), &ev(&[2, 0])), Ordering::Less);
        // x*z^2 < y^3 in grevlex with three variables
        assert_eq!(ord.cmp(&ev(&[1, 0, 2]), &ev(&[0, 3, 0])), Ordering::Less);
    }

    #[test]
    fn lex_examples() {
        let ord = MonomialOrder::lex();
        assert_eq!(ord.cmp(&ev(&[0, 5]), &ev(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let ord = MonomialOrder::elimination(1);
        assert_eq!(ord.cmp(&ev(&[1, 0, 0]), &ev(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(ord.cmp(&ev(&[1, 2, 0]), &ev(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn permutation_reorders_variables() {
        let ord = MonomialOrder::lex().with_permutation(vec![1, 0]).unwrap();
        assert_eq!(ord.cmp(&ev(&[0, 1]), &ev(&[5, 0])), Ordering::Greater);
        assert!(MonomialOrder::lex().with_permutation(vec![0, 0]).is_err());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let r = compare_monomials(&ev(&[1]), &ev(&[1, 0]), &MonomialOrder::grevlex());
        assert!(matches!(r, Err(AlgebraError::DimensionMismatch { .. })));
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::grevlex(),
            MonomialOrder::lex(),
            MonomialOrder::elimination(1),
            MonomialOrder::elimination(2),
            MonomialOrder::grevlex().with_permutation(vec![2, 0, 1]).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_total_and_multiplicative(
            u in prop::collection::vec(0u32..6, 3),
            v in prop::collection::vec(0u32..6, 3),
            w in prop::collection::vec(0u32..6, 3),
        ) {
            let (u, v, w) = (ev(&u), ev(&v), ev(&w));
            for ord in orders() {
                let c = ord.cmp(&u, &v);
                prop_assert_eq!(c, ord.cmp(&v, &u).reverse());
                prop_assert_eq!(c == Ordering::Equal, u == v);
                if c == Ordering::Less {
                    prop_assert_eq!(ord.cmp(&u.add(&w), &v.add(&w)), Ordering::Less);
                }
                prop_assert_ne!(ord.cmp(&ExponentVector::zero(3), &u), Ordering::Greater);
            }
        }
    }
}
