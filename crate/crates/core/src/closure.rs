//! Reductions of ideals and integral-closure membership.
//!
//! `I ⊆ J` is a reduction when `J^{t+1} = I J^t` for some `t`. The search is a
//! semi-decision; for `m`-primary ideals of a polynomial ring (regular, hence
//! formally equidimensional) Rees' theorem makes unequal multiplicities a
//! definitive negative.

use serde::Serialize;

use crate::algebra::Polynomial;
use crate::groebner::{Ideal, DEFAULT_MULTIPLICITY_CAP};
use crate::subring::PresentedSubring;
use crate::{Error, Result};

/// Default largest `t` in the reduction search.
pub const DEFAULT_T_MAX: u32 = 12;

/// Number of powers tried before consulting multiplicities.
const EARLY_SEARCH: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReductionCertificate {
    /// `J^{t+1} = I J^t`, re-verified by ideal equality.
    Positive { t: u32 },
    /// `e(I) ≠ e(J)`: not a reduction (Rees).
    NegativeMultiplicity { e_i: u64, e_j: u64 },
    /// No `t ≤ t_max` found although the multiplicities agree.
    Inconclusive { t_max: u32, e_i: u64, e_j: u64 },
}

impl ReductionCertificate {
    pub fn is_positive(&self) -> bool {
        matches!(self, ReductionCertificate::Positive { .. })
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ReductionCertificate::NegativeMultiplicity { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ReductionCertificate::Positive { .. } => "POSITIVE",
            ReductionCertificate::NegativeMultiplicity { .. } => "NEGATIVE_MULTIPLICITY",
            ReductionCertificate::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

/// Decides whether `i` is a reduction of `j`.
pub fn is_reduction(i: &Ideal, j: &Ideal, t_max: u32) -> Result<ReductionCertificate> {
    if !j.contains_ideal(i)? {
        return Err(Error::precondition(format!("{i} is not contained in {j}")));
    }
    for (name, ideal) in [("I", i), ("J", j)] {
        if !ideal.colength().is_finite() {
            return Err(Error::InfiniteColength {
                what: format!("{name} = {ideal}"),
            });
        }
    }
    let mut jt = Ideal::unit(j.ring());
    let mut multiplicities: Option<(u64, u64)> = None;
    for t in 0..=t_max {
        let next = jt.product(j)?;
        let ijt = i.product(&jt)?;
        if ijt.contains_ideal(&next)? {
            if !next.equals(&ijt)? {
                return Err(Error::Inconclusive(format!(
                    "equality J^{} = I J^{t} failed re-verification",
                    t + 1
                )));
            }
            return Ok(ReductionCertificate::Positive { t });
        }
        if t + 1 == EARLY_SEARCH || t == t_max {
            let (e_i, e_j) = match multiplicities {
                Some(m) => m,
                None => {
                    // Rees' theorem needs a formally equidimensional ambient.
                    assert!(j.ring().is_regular(), "multiplicity branch needs a regular ambient");
                    let m = (
                        i.multiplicity(DEFAULT_MULTIPLICITY_CAP)?.value,
                        j.multiplicity(DEFAULT_MULTIPLICITY_CAP)?.value,
                    );
                    multiplicities = Some(m);
                    m
                }
            };
            if e_i != e_j {
                return Ok(ReductionCertificate::NegativeMultiplicity { e_i, e_j });
            }
        }
        jt = next;
    }
    let (e_i, e_j) = multiplicities.expect("computed at t_max");
    Ok(ReductionCertificate::Inconclusive { t_max, e_i, e_j })
}

/// `z ∈ Ī` iff `I` is a reduction of `I + (z)`.
pub fn is_integral(z: &Polynomial, i: &Ideal, t_max: u32) -> Result<ReductionCertificate> {
    if !i.colength().is_finite() {
        return Err(Error::InfiniteColength {
            what: format!("I = {i}"),
        });
    }
    if i.contains(z)? {
        return Ok(ReductionCertificate::Positive { t: 0 });
    }
    is_reduction(i, &i.with_element(z)?, t_max)
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorIntegrality {
    pub generator: String,
    pub certificate: ReductionCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalReductionReport {
    pub reduction: Vec<String>,
    pub generators: Vec<GeneratorIntegrality>,
    /// Every generator of `m_R` is integral over `(u)S`.
    pub confirmed: bool,
    /// First generator with a negative certificate.
    pub witness: Option<String>,
}

/// Checks that `u` (with `d = dim` elements) generates a minimal reduction of
/// `m_R` by testing every generator of `R` for integrality over `(u)S`.
pub fn verify_minimal_reduction(
    r: &PresentedSubring,
    u: &[Polynomial],
    t_max: u32,
) -> Result<MinimalReductionReport> {
    let d = r.ambient().nvars();
    if u.len() != d {
        return Err(Error::precondition(format!(
            "a minimal reduction needs {d} elements, got {}",
            u.len()
        )));
    }
    for ui in u {
        if !r.contains(ui)? {
            return Err(Error::precondition(format!("{ui} is not in R")));
        }
    }
    let ideal = Ideal::new(r.ambient(), u.to_vec())?;
    if !ideal.colength().is_finite() {
        return Err(Error::InfiniteColength {
            what: format!("(u)S = {ideal}"),
        });
    }
    let mut generators = Vec::new();
    let mut witness = None;
    for g in r.generators() {
        let certificate = is_integral(g, &ideal, t_max)?;
        if !certificate.is_positive() && witness.is_none() {
            witness = Some(g.to_string());
        }
        generators.push(GeneratorIntegrality {
            generator: g.to_string(),
            certificate,
        });
    }
    Ok(MinimalReductionReport {
        reduction: u.iter().map(|p| p.to_string()).collect(),
        confirmed: generators.iter().all(|g| g.certificate.is_positive()),
        generators,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;
    use crate::algebra::Ring;
    use crate::semigroup::AffineSemigroup;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &Ring::plane()).unwrap()
    }

    fn ideal(s: &str) -> Ideal {
        Ideal::parse(s, &Ring::plane()).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let i = ideal("(x*y, x^2 - y^2)");
        let j = ideal("(x*y, x^2 - y^2, x^2)");
        assert!(is_reduction(&i, &j, 12).unwrap().is_positive());
        assert_eq!(
            is_reduction(&i, &ideal("(x, y)"), 12).unwrap(),
            ReductionCertificate::NegativeMultiplicity { e_i: 4, e_j: 1 }
        );
        assert_eq!(is_reduction(&i, &i, 12).unwrap(), ReductionCertificate::Positive { t: 0 });
        assert!(is_reduction(&ideal("(x, y)"), &i, 12).is_err());
        assert!(is_reduction(&ideal("(x*y)"), &ideal("(x)"), 12).is_err());
    }

    #[test]
    fn integrality_examples() {
        let i = ideal("(x*y, x^2 - y^2)");
        assert!(is_integral(&p("x^2"), &i, 12).unwrap().is_positive());
        assert!(!i.contains(&p("x^2")).unwrap());
        assert_eq!(
            is_integral(&p("x"), &i, 12).unwrap(),
            ReductionCertificate::NegativeMultiplicity { e_i: 4, e_j: 2 }
        );
        assert_eq!(
            is_integral(&p("x*y"), &i, 12).unwrap(),
            ReductionCertificate::Positive { t: 0 }
        );
        // Monotone in the ideal.
        assert!(is_integral(&p("x^2"), &ideal("(x*y, x^2 - y^2, y^3)"), 12).unwrap().is_positive());
    }

    #[test]
    fn the_maximal_ideal_is_integrally_closed() {
        for z in ["x*y + 1/2*x", "x + y", "x^2 - y"] {
            let c = is_integral(&p(z), &ideal("(x^2, x*y, y^2)"), 12).unwrap();
            assert!(c.is_negative(), "{z}: {c:?}");
        }
    }

    #[test]
    fn integral_elements_over_ideals_in_m2_stay_in_m2() {
        let m2 = ideal("(x, y)").power(2);
        let i = ideal("(x*y, x^2 - y^2)");
        for z in ["x^2", "y^2", "x^3 + y", "x", "x^2 + y", "y^3"] {
            if is_integral(&p(z), &i, 12).unwrap().is_positive() {
                assert!(m2.contains(&p(z)).unwrap(), "{z}");
            }
        }
    }

    #[test]
    fn minimal_reduction_of_the_pinched_plane() {
        let r = PresentedSubring::from_semigroup(&Ring::plane(), &AffineSemigroup::pinched_plane(2))
            .unwrap();
        let rep = verify_minimal_reduction(&r, &[p("x*y"), p("x^2 - y^2")], 12).unwrap();
        assert!(rep.confirmed);
        assert_eq!(rep.generators.len(), 7);
        let other = verify_minimal_reduction(&r, &[p("x^2"), p("y^2")], 12).unwrap();
        assert!(other.confirmed);
        assert!(verify_minimal_reduction(&r, &[p("x^2"), p("x^3")], 12).is_err());
        assert!(verify_minimal_reduction(&r, &[p("x"), p("y^2")], 12).is_err());
    }

    #[test]
    fn f_hypothesis_for_small_n() {
        for n in 2..=5 {
            let opts = crate::algebra::ParseOptions::default().with_param("n", n);
            let i = Ideal::parse_with("(x*y, x^n - y^n)", &Ring::plane(), &opts).unwrap();
            let f = p(&format!("x^{n}"));
            assert!(is_integral(&f, &i, 12).unwrap().is_positive(), "n = {n}");
            assert!(!i.normal_form(&f).unwrap().is_zero());
        }
    }
}
