//! Finite-length modules given by a basis and commuting nilpotent actions.

use crate::algebra::{ExponentVector, Field, Matrix, Polynomial};
use crate::groebner::Ideal;
use crate::{Error, Result};

use super::KoszulTally;

/// A module of finite length over `k[x_1..x_d]` localized at the origin:
/// `actions[i]` is the matrix of multiplication by `x_i` acting on column
/// vectors in the basis `labels`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLengthModule {
    field: Field,
    labels: Vec<String>,
    actions: Vec<Matrix>,
}

impl FiniteLengthModule {
    pub fn new(field: Field, labels: Vec<String>, actions: Vec<Matrix>) -> Result<Self> {
        let n = labels.len();
        for (i, a) in actions.iter().enumerate() {
            if a.rows() != n || a.cols() != n || a.field() != field {
                return Err(Error::precondition(format!(
                    "action {i} is not a {n}x{n} matrix over {field}"
                )));
            }
            if !a.is_nilpotent() {
                return Err(Error::precondition(format!("action {i} is not nilpotent")));
            }
        }
        for i in 0..actions.len() {
            for j in i + 1..actions.len() {
                if !actions[i].commutes_with(&actions[j]) {
                    return Err(Error::precondition(format!(
                        "actions {i} and {j} do not commute"
                    )));
                }
            }
        }
        Ok(FiniteLengthModule {
            field,
            labels,
            actions,
        })
    }

    pub fn zero(field: Field, nvars: usize) -> Self {
        FiniteLengthModule {
            field,
            labels: Vec::new(),
            actions: vec![Matrix::zeros(field, 0, 0); nvars],
        }
    }

    /// The residue field `k`, every variable acting by zero.
    pub fn residue_field(field: Field, nvars: usize) -> Self {
        FiniteLengthModule {
            field,
            labels: vec!["1".into()],
            actions: vec![Matrix::zeros(field, 1, 1); nvars],
        }
    }

    /// `S/J` for `J` of finite colength, in the basis of standard monomials.
    /// `J` should be supported at the origin.
    pub fn from_quotient(j: &Ideal) -> Result<Self> {
        let ring = j.ring();
        let basis = j.standard_monomials()?;
        let field = ring.field();
        let n = basis.len();
        let mut actions = Vec::with_capacity(ring.nvars());
        for v in 0..ring.nvars() {
            let mut a = Matrix::zeros(field, n, n);
            for (col, m) in basis.iter().enumerate() {
                let image = j.normal_form(&Polynomial::monomial(ring, m.add(&ExponentVector::unit(ring.nvars(), v))))?;
                for (e, c) in image.terms() {
                    let row = basis.iter().position(|b| b == e).expect("normal forms are standard");
                    a.set(row, col, c.clone());
                }
            }
            actions.push(a);
        }
        let labels = basis
            .iter()
            .map(|m| Polynomial::monomial(ring, m.clone()).to_string())
            .collect();
        Self::new(field, labels, actions)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn length(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Matrix of multiplication by `p`.
    pub fn act(&self, p: &Polynomial) -> Result<Matrix> {
        if p.ring().nvars() != self.actions.len() || p.ring().field() != self.field {
            return Err(Error::precondition(format!(
                "{p} does not live in a ring with {} variables over {}",
                self.actions.len(),
                self.field
            )));
        }
        let n = self.length();
        let mut out = Matrix::zeros(self.field, n, n);
        for (e, c) in p.terms() {
            let mut term = Matrix::identity(self.field, n).scale(c);
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    term = term.mul(&self.actions[i].pow(k));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `ν(M) = dim_k M/mM`.
    pub fn min_generators(&self) -> usize {
        let n = self.length();
        let mut image = Matrix::zeros(self.field, n, 0);
        for a in &self.actions {
            image = image.hstack(a);
        }
        n - image.rank()
    }

    /// Direct sum, block diagonal actions.
    pub fn direct_sum(&self, other: &FiniteLengthModule) -> Result<Self> {
        if self.field != other.field || self.actions.len() != other.actions.len() {
            return Err(Error::precondition("direct sum of modules over different rings"));
        }
        let (a, b) = (self.length(), other.length());
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(x, y)| {
                let top = x.hstack(&Matrix::zeros(self.field, a, b));
                let bottom = Matrix::zeros(self.field, b, a).hstack(y);
                top.vstack(&bottom)
            })
            .collect();
        let labels = self
            .labels
            .iter()
            .map(|l| format!("{l}@0"))
            .chain(other.labels.iter().map(|l| format!("{l}@1")))
            .collect();
        Ok(FiniteLengthModule {
            field: self.field,
            labels,
            actions,
        })
    }
}

/// Koszul homology of `(f, g)` on a finite-length module, from the explicit
/// complex `0 → M → M² → M → 0` with `d2(m) = (−g m, f m)` and
/// `d1(a, b) = f a + g b`.
pub fn koszul_finlen(m: &FiniteLengthModule, f: &Polynomial, g: &Polynomial) -> Result<KoszulTally> {
    let n = m.length();
    let fm = m.act(f)?;
    let gm = m.act(g)?;
    if !fm.commutes_with(&gm) {
        return Err(Error::precondition("f and g act by non-commuting matrices"));
    }
    let d1 = fm.hstack(&gm);
    let d2 = gm.scale(&m.field.from_i64(-1)).vstack(&fm);
    debug_assert!(d1.mul(&d2).is_zero());
    let (r1, r2) = (d1.rank(), d2.rank());
    let tally = KoszulTally::new((n - r1) as u64, (2 * n - r1 - r2) as u64, (n - r2) as u64)?;
    // χ of a finite-length module vanishes in dimension 2.
    assert_eq!(tally.chi, 0, "Euler characteristic of a finite-length module");
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;
    use crate::algebra::Ring;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &Ring::plane()).unwrap()
    }

    #[test]
    fn baselines() {
        let q = Field::Rational;
        let k = FiniteLengthModule::residue_field(q, 2);
        assert_eq!(koszul_finlen(&k, &p("x"), &p("y")).unwrap().triple(), (1, 2, 1));
        assert_eq!(koszul_finlen(&k, &p("x^2 + y"), &p("x*y")).unwrap().triple(), (1, 2, 1));
        let zero = FiniteLengthModule::zero(q, 2);
        assert_eq!(koszul_finlen(&zero, &p("x"), &p("y")).unwrap().triple(), (0, 0, 0));
    }

    #[test]
    fn square_of_the_maximal_ideal() {
        let m2 = Ideal::parse("(x, y)", &Ring::plane()).unwrap().power(2);
        let m = FiniteLengthModule::from_quotient(&m2).unwrap();
        assert_eq!(m.length(), 3);
        assert_eq!(m.min_generators(), 1);
        assert_eq!(koszul_finlen(&m, &p("x"), &p("y")).unwrap().triple(), (1, 3, 2));
    }

    #[test]
    fn rejects_non_commuting_actions() {
        let q = Field::Rational;
        let a = Matrix::from_i64_rows(q, &[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        let b = Matrix::from_i64_rows(q, &[vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let labels = vec!["a".into(), "b".into(), "c".into()];
        assert!(FiniteLengthModule::new(q, labels.clone(), vec![a.clone(), b]).is_err());
        let not_nilpotent = Matrix::identity(q, 3);
        assert!(FiniteLengthModule::new(q, labels, vec![a, not_nilpotent]).is_err());
    }

    #[test]
    fn direct_sums_add() {
        let q = Field::Rational;
        let k = FiniteLengthModule::residue_field(q, 2);
        let m2 = FiniteLengthModule::from_quotient(
            &Ideal::parse("(x^2, y)", &Ring::plane()).unwrap(),
        )
        .unwrap();
        let sum = k.direct_sum(&m2).unwrap();
        let (a, b, c) = (
            koszul_finlen(&k, &p("x"), &p("y")).unwrap(),
            koszul_finlen(&m2, &p("x"), &p("y")).unwrap(),
            koszul_finlen(&sum, &p("x"), &p("y")).unwrap(),
        );
        assert_eq!(a + b, c);
        assert_eq!(sum.min_generators(), 2);
    }
}
