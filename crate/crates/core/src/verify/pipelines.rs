use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::{Field, Polynomial, Ring};
use crate::closure::{is_integral, verify_minimal_reduction, MinimalReductionReport, DEFAULT_T_MAX};
use crate::groebner::{Ideal, DEFAULT_MULTIPLICITY_CAP};
use crate::koszul::MonomialModule;
use crate::semigroup::{AffineSemigroup, GapSetResult};
use crate::subring::{build_ring, pinched_plane_params, MultiplierWitness, PresentedSubring, RingSpec};
use crate::{Error, Result};

use super::{holds, CheckVerdict, VerificationReport};

/// Largest bound used when certifying a finite gap set.
const GAP_BOUND: u64 = 256;

/// Combinations tried per pair of degrees when a ring file names no
/// minimal reduction.
const REDUCTION_ATTEMPTS: usize = 2;

const REDUCTION_SEED: u64 = 0x5eed;

fn outcome_or(report: &VerificationReport, success: &str, failure: &str) -> String {
    match report.required_outcome() {
        Some(true) => success.into(),
        Some(false) => failure.into(),
        None => "INCONCLUSIVE".into(),
    }
}

fn gap_check(report: &mut VerificationReport, sg: &AffineSemigroup) -> Result<bool> {
    let verdict = match sg.gap_set_auto(GAP_BOUND)? {
        GapSetResult::Finite(g) => {
            let gaps: Vec<Vec<u32>> = g.gaps.iter().map(|v| v.as_slice().to_vec()).collect();
            report.push(
                "the gap set of the semigroup is finite",
                "gap-set",
                CheckVerdict::Holds,
                true,
                json!({ "gaps": gaps, "size": g.len(), "bound": g.bound_used }),
            )
        }
        GapSetResult::NotFiniteWithinBound { bound, witness } => report.push(
            "the gap set of the semigroup is finite",
            "gap-set",
            CheckVerdict::Fails,
            true,
            json!({
                "bound": bound,
                "witness": witness.map(|w| w.as_slice().to_vec()),
            }),
        ),
    };
    Ok(verdict == CheckVerdict::Holds)
}

fn reduction_certificate(rep: &MinimalReductionReport) -> serde_json::Value {
    json!({
        "reduction": rep.reduction,
        "generators": rep.generators,
        "witness": rep.witness,
    })
}

fn reduction_verdict(rep: &MinimalReductionReport) -> CheckVerdict {
    if rep.confirmed {
        CheckVerdict::Holds
    } else if rep.generators.iter().any(|g| g.certificate.is_negative()) {
        CheckVerdict::Fails
    } else {
        CheckVerdict::Inconclusive
    }
}

/// First generator of `m_R S` outside `IS`, with its normal form modulo `IS`.
fn criterion_witness(r: &PresentedSubring, is: &Ideal) -> Result<Option<(String, String)>> {
    for g in r.generators() {
        let nf = is.normal_form(g)?;
        if !nf.is_zero() {
            return Ok(Some((g.to_string(), nf.to_string())));
        }
    }
    Ok(None)
}

/// Checks that the subring `R_n` of `k[x, y]` with minimal reduction
/// `I = (xy, x^n − y^n)` has no Ulrich modules: `R_n` is rebuilt from its
/// defining data, its S2-ification is `k[x, y]`, and `IS ≠ m_R S`.
pub fn verify_no_ulrich(n: u32, field: Field) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("verify-35", &field);
    let sg = AffineSemigroup::pinched_plane(n);
    report.input("n", n).input("semigroup", &sg);
    let ring = Ring::new(&["x", "y"], field);
    let params = pinched_plane_params(n, field);
    report.input("reduction", format!("({}, {})", params.u[0], params.u[1]));
    report.input("f", &params.f);

    let built = match build_ring(&params) {
        Ok(b) => b,
        Err(Error::Hypothesis { clause }) => {
            report.push(
                "the ring builder's hypotheses hold",
                "builder-hypotheses",
                CheckVerdict::Fails,
                true,
                json!({ "failed_clause": clause }),
            );
            report.verdict = "PRECONDITION_FAILED".into();
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let r = PresentedSubring::from_semigroup(&ring, &sg)?;
    let simplified = built.ring.simplified()?;
    let same = r.generators().iter().all(|g| simplified.contains(g).unwrap_or(false))
        && simplified.generators().iter().all(|g| r.contains(g).unwrap_or(false));
    report.push(
        "the ring builder reproduces the semigroup ring",
        "builder-hypotheses",
        holds(same),
        true,
        json!({
            "checks": built.checks,
            "built_generators": simplified.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }),
    );

    gap_check(&mut report, &sg)?;

    for (name, var) in [("x", 0), ("y", 1)] {
        let v = Polynomial::var(&ring, var);
        let w = r.s2_multiplier_witness(&v)?;
        let verdict = match w {
            MultiplierWitness::Found { .. } => CheckVerdict::Holds,
            MultiplierWitness::NotFound { .. } => CheckVerdict::Inconclusive,
        };
        report.push(
            &format!("{name} lies in the S2-ification: u {name}, v {name} ∈ R with (u, v) of finite colength"),
            "s2-multiplier",
            verdict,
            true,
            serde_json::to_value(&w).expect("witness serializes"),
        );
    }

    let rep = verify_minimal_reduction(&r, &params.u, DEFAULT_T_MAX)?;
    report.push(
        "(xy, x^n - y^n) is a minimal reduction of m_R",
        "minimal-reduction",
        reduction_verdict(&rep),
        true,
        reduction_certificate(&rep),
    );

    let i = Ideal::new(&ring, params.u.clone())?;
    let integral = is_integral(&params.f, &i, DEFAULT_T_MAX)?;
    let nf = i.normal_form(&params.f)?;
    let f_verdict = match (&integral, nf.is_zero()) {
        (c, false) if c.is_positive() => CheckVerdict::Holds,
        (c, _) if c.is_negative() => CheckVerdict::Fails,
        (_, true) => CheckVerdict::Fails,
        _ => CheckVerdict::Inconclusive,
    };
    report.push(
        "f = x^n is integral over I but not in I",
        "f-hypothesis",
        f_verdict,
        true,
        json!({ "integrality": integral, "normal_form": nf.to_string() }),
    );

    let is = r.extend_to_s(&params.u)?;
    let ms = r.max_ideal_extension();
    let equal = is.equals(&ms)?;
    let witness = criterion_witness(&r, &is)?;
    report.push(
        "IS differs from m_R S",
        "ulrich-criterion",
        holds(!equal),
        true,
        json!({
            "IS": is.to_string(),
            "mS": ms.to_string(),
            "witness": witness.as_ref().map(|w| &w.0),
            "witness_normal_form": witness.as_ref().map(|w| &w.1),
        }),
    );

    report.verdict = match report.required_outcome() {
        Some(true) => "NO_ULRICH".into(),
        None => "INCONCLUSIVE".into(),
        Some(false) if equal => "ULRICH_CRITERION_MET".into(),
        Some(false) => "PRECONDITION_FAILED".into(),
    };
    Ok(report)
}

fn pure_power_reduction(r: &PresentedSubring, sg: &AffineSemigroup) -> Option<Vec<Polynomial>> {
    let ring = r.ambient();
    (0..sg.dim())
        .map(|i| {
            sg.generators()
                .iter()
                .filter(|g| !g.is_zero() && g.support().all(|j| j == i))
                .min_by_key(|g| g.degree())
                .map(|g| Polynomial::monomial(ring, g.clone()))
        })
        .collect()
}

/// Generic combination of the generators of total degree `deg`.
fn homogeneous_combination(r: &PresentedSubring, deg: u64, rng: &mut ChaCha8Rng) -> Polynomial {
    let ring = r.ambient();
    r.generators()
        .iter()
        .filter(|g| g.degree() == Some(deg))
        .fold(Polynomial::zero(ring), |acc, g| {
            let c = rng.gen_range(1i64..=7);
            &acc + &g.scale(&ring.field().from_i64(c))
        })
}

/// Finds a minimal reduction among pure powers and seeded generic
/// combinations of the generators in two degrees. The candidates are
/// homogeneous, so their colength only sees the origin.
fn find_minimal_reduction(
    r: &PresentedSubring,
    sg: &AffineSemigroup,
) -> Result<Option<MinimalReductionReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(REDUCTION_SEED);
    let mut candidates: Vec<Vec<Polynomial>> = pure_power_reduction(r, sg).into_iter().collect();
    let mut degrees: Vec<u64> = r.generators().iter().filter_map(|g| g.degree()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for (i, &a) in degrees.iter().enumerate() {
        for &b in &degrees[i..] {
            for _ in 0..REDUCTION_ATTEMPTS {
                let u = vec![
                    homogeneous_combination(r, a, &mut rng),
                    homogeneous_combination(r, b, &mut rng),
                ];
                candidates.push(u);
            }
        }
    }
    for u in candidates {
        let ideal = Ideal::new(r.ambient(), u.clone())?;
        if !ideal.colength().is_finite() {
            continue;
        }
        match verify_minimal_reduction(r, &u, DEFAULT_T_MAX) {
            Ok(rep) if rep.confirmed => return Ok(Some(rep)),
            Ok(_) | Err(Error::Precondition(_)) | Err(Error::InfiniteColength { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

fn refuse(report: &mut VerificationReport, why: &str) {
    report.verdict = "REFUSED".into();
    report.input("refusal", format!("hypotheses not satisfied: {why}"));
}

/// For a finite-colength monomial subring `R ⊆ k[x, y]` with minimal
/// reduction `I`, decides `IS = m_R S` and reports the equivalent conditions:
/// existence of weakly lim Ulrich sequences, of Ulrich modules, and `S`
/// being Ulrich over `R`.
pub fn verify_ulrich_equivalence(spec: &RingSpec) -> Result<VerificationReport> {
    let r = &spec.ring;
    let field = r.ambient().field();
    let mut report = VerificationReport::new("verify-51", &field);
    report.input("ring", r.describe());
    if let Some(u) = &spec.reduction {
        let u: Vec<String> = u.iter().map(|p| p.to_string()).collect();
        report.input("reduction", format!("({})", u.join(", ")));
    }

    let sg = match r.monomial_model() {
        Some(sg) if sg.dim() == 2 => sg.clone(),
        _ => {
            report.push(
                "R is generated by monomials in two variables",
                "monomial-class",
                CheckVerdict::Fails,
                true,
                json!({ "generators": r.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>() }),
            );
            refuse(&mut report, "R is not a monomial subring of k[x, y]");
            return Ok(report);
        }
    };
    report.push(
        "R is generated by monomials in two variables",
        "monomial-class",
        CheckVerdict::Holds,
        true,
        json!({ "semigroup": sg.to_string() }),
    );
    if !gap_check(&mut report, &sg)? {
        refuse(&mut report, "the gap set is not finite, so k[x, y] is not the S2-ification of R");
        return Ok(report);
    }

    let reduction = match &spec.reduction {
        Some(u) => Some(verify_minimal_reduction(r, u, DEFAULT_T_MAX)?),
        None => find_minimal_reduction(r, &sg)?,
    };
    let rep = match reduction {
        Some(rep) => {
            let verdict = report.push(
                "I is a minimal reduction of m_R",
                "minimal-reduction",
                reduction_verdict(&rep),
                true,
                reduction_certificate(&rep),
            );
            if verdict != CheckVerdict::Holds {
                report.verdict = if verdict == CheckVerdict::Inconclusive {
                    "INCONCLUSIVE".into()
                } else {
                    "REFUSED".into()
                };
                report.input("refusal", "the supplied reduction is not certified");
                return Ok(report);
            }
            rep
        }
        None => {
            report.push(
                "I is a minimal reduction of m_R",
                "minimal-reduction",
                CheckVerdict::Inconclusive,
                true,
                json!({ "searched": "pure powers and seeded random combinations" }),
            );
            report.verdict = "INCONCLUSIVE".into();
            return Ok(report);
        }
    };
    let ring = r.ambient();
    let u: Vec<Polynomial> = rep
        .reduction
        .iter()
        .map(|t| crate::algebra::parse_polynomial(t, ring))
        .collect::<std::result::Result<_, _>>()?;
    let is = r.extend_to_s(&u)?;
    let ms = r.max_ideal_extension();
    let d = is.equals(&ms)?;
    let witness = criterion_witness(r, &is)?;
    report.push(
        "(d) IS = m_R S",
        "condition-d",
        holds(d),
        true,
        json!({
            "IS": is.to_string(),
            "mS": ms.to_string(),
            "witness": witness.as_ref().map(|w| &w.0),
            "witness_normal_form": witness.as_ref().map(|w| &w.1),
        }),
    );

    let e_r = sg.multiplicity()?.value;
    let e_is = is.multiplicity(DEFAULT_MULTIPLICITY_CAP)?.value;
    report.push(
        "e(R) = e(I; S)",
        "multiplicity-data",
        holds(e_r == e_is),
        true,
        json!({ "e_R": e_r, "e_IS": e_is }),
    );
    let s_module = MonomialModule::polynomial_ring(&sg)?;
    let nu_s = s_module.nu() as u64;
    report.push(
        "nu_R(S) = e_R(S), i.e. S is Ulrich over R (computed directly)",
        "s-ulrich-direct",
        holds(nu_s == e_r),
        false,
        json!({ "nu_R_S": nu_s, "e_R_S": e_r }),
    );
    let deduced = if d {
        CheckVerdict::DeducedHolds
    } else {
        CheckVerdict::DeducedFails
    };
    for (claim, anchor) in [
        ("(a) R has a weakly lim Ulrich sequence", "condition-a"),
        ("(b) R has an Ulrich module", "condition-b"),
        ("(c) S is an Ulrich R-module", "condition-c"),
    ] {
        report.push(
            &format!("{claim} (deduced from (d) by the equivalence of (a)-(d))"),
            anchor,
            deduced,
            false,
            json!({ "deduced_from": "condition-d" }),
        );
    }
    // (d) decides the answer; any other required failure means the data is
    // inconsistent.
    let others_hold = report
        .checks
        .iter()
        .filter(|c| c.required && c.anchor != "condition-d")
        .all(|c| c.verdict == CheckVerdict::Holds);
    report.verdict = match (others_hold, d) {
        (false, _) => "INCONSISTENT".into(),
        (true, true) => "ULRICH_EXISTS".into(),
        (true, false) => "NO_ULRICH".into(),
    };
    Ok(report)
}

/// Checks the 3-dimensional homogenization `T_n`: its multiplicity is
/// `(n + 1)^2`, inverting the first variable gives back `R_n`, and (for
/// `n ≥ 2`) the localized ring has no Ulrich modules.
pub fn verify_face_localization(n: u32) -> Result<VerificationReport> {
    let field = Field::Rational;
    let mut report = VerificationReport::new("verify-37", &field);
    let t = AffineSemigroup::homogenized_pinched(n);
    report.input("n", n).input("semigroup", &t);
    let expected = ((n + 1) * (n + 1)) as u64;
    match t.multiplicity() {
        Ok(m) => {
            report.push(
                "e(T_n) = (n + 1)^2",
                "multiplicity-formula",
                holds(m.value == expected),
                true,
                json!({
                    "value": m.value,
                    "expected": expected,
                    "hilbert_samuel": m.table,
                    "difference_order": m.order,
                    "window_start": m.window_start,
                }),
            );
        }
        Err(Error::Inconclusive(msg)) => {
            report.push(
                "e(T_n) = (n + 1)^2",
                "multiplicity-formula",
                CheckVerdict::Inconclusive,
                true,
                json!({ "reason": msg }),
            );
        }
        Err(e) => return Err(e),
    }
    let loc = t.localize_at_face(0)?;
    let target = AffineSemigroup::pinched_plane(n);
    report.push(
        "inverting the first variable gives the semigroup of R_n",
        "face-localization",
        holds(loc.semigroup.same_generators(&target)),
        true,
        json!({
            "localized": loc.semigroup.to_string(),
            "expected": target.to_string(),
            "units": loc.units.iter().map(|u| u.as_slice().to_vec()).collect::<Vec<_>>(),
        }),
    );
    if n >= 2 {
        let sub = verify_no_ulrich(n, field)?;
        report.push(
            "the localized ring has no Ulrich modules",
            "no-ulrich-localized",
            holds(sub.verdict == "NO_ULRICH"),
            true,
            json!({ "subreport_verdict": sub.verdict }),
        );
        report.subreports.push(sub);
        report.verdict = outcome_or(&report, "LOCALIZES_TO_NO_ULRICH", "MISMATCH");
    } else {
        report.push(
            "the localized ring has no Ulrich modules",
            "no-ulrich-localized",
            CheckVerdict::Unavailable,
            false,
            json!({ "reason": "n < 2 is outside the range of the no-Ulrich argument" }),
        );
        report.verdict = outcome_or(&report, "LOCALIZATION_VERIFIED", "MISMATCH");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subring::parse_ring_spec;

    #[test]
    fn no_ulrich_for_small_n() {
        let rep = verify_no_ulrich(2, Field::Rational).unwrap();
        assert_eq!(rep.verdict, "NO_ULRICH", "{}", rep.to_text());
        let c = rep.check("ulrich-criterion").unwrap();
        assert_eq!(c.certificate["witness"], "x^2");
        assert_eq!(c.certificate["witness_normal_form"], "y^2");
        let rep3 = verify_no_ulrich(3, Field::Rational).unwrap();
        assert_eq!(rep3.verdict, "NO_ULRICH");
        assert_eq!(rep3.check("ulrich-criterion").unwrap().certificate["witness"], "x^3");
    }

    #[test]
    fn n_equal_one_fails_the_hypotheses() {
        let rep = verify_no_ulrich(1, Field::Rational).unwrap();
        assert_eq!(rep.verdict, "PRECONDITION_FAILED");
        let clause = rep.checks[0].certificate["failed_clause"].as_str().unwrap();
        assert!(clause.contains("not integral"), "{clause}");
    }

    #[test]
    fn prime_field_run() {
        let rep = verify_no_ulrich(2, Field::prime(101).unwrap()).unwrap();
        assert_eq!(rep.verdict, "NO_ULRICH");
        assert_eq!(rep.field, "fp:101");
    }

    #[test]
    fn equivalence_report_for_the_pinched_plane() {
        let spec = parse_ring_spec(
            "ring ambient=(x,y) gens=[x^2, x^3, x^2*y, y^2, y^3, x*y^2, x*y] reduction=[x*y, x^2-y^2]",
        )
        .unwrap();
        let rep = verify_ulrich_equivalence(&spec).unwrap();
        assert_eq!(rep.verdict, "NO_ULRICH", "{}", rep.to_text());
        assert_eq!(rep.check("condition-d").unwrap().verdict, CheckVerdict::Fails);
        assert_eq!(rep.check("condition-b").unwrap().verdict, CheckVerdict::DeducedFails);
        assert_eq!(rep.check("multiplicity-data").unwrap().certificate["e_R"], 4);
        assert_eq!(rep.check("s-ulrich-direct").unwrap().certificate["nu_R_S"], 3);
    }

    #[test]
    fn equivalence_report_searches_for_a_reduction() {
        for gens in [
            "x^2, x^3, x^2*y, y^2, y^3, x*y^2, x*y",
            "x^3, x^4, x^3*y, y^3, y^4, x*y^3, x*y",
        ] {
            let spec = parse_ring_spec(&format!("ring ambient=(x,y) gens=[{gens}]")).unwrap();
            let rep = verify_ulrich_equivalence(&spec).unwrap();
            assert_eq!(rep.verdict, "NO_ULRICH", "{}", rep.to_text());
        }
    }

    #[test]
    fn regular_ring_has_ulrich_modules() {
        let spec = parse_ring_spec("ring ambient=(x,y) gens=[x, y]").unwrap();
        let rep = verify_ulrich_equivalence(&spec).unwrap();
        assert_eq!(rep.verdict, "ULRICH_EXISTS", "{}", rep.to_text());
        assert_eq!(rep.check("condition-c").unwrap().verdict, CheckVerdict::DeducedHolds);
    }

    #[test]
    fn veronese_is_refused() {
        let spec = parse_ring_spec("ring ambient=(x,y) gens=[x^2, x*y, y^2]").unwrap();
        let rep = verify_ulrich_equivalence(&spec).unwrap();
        assert_eq!(rep.verdict, "REFUSED");
        assert!(rep.inputs["refusal"].contains("hypotheses not satisfied"));
    }

    #[test]
    fn face_localization() {
        let rep = verify_face_localization(2).unwrap();
        assert_eq!(rep.verdict, "LOCALIZES_TO_NO_ULRICH", "{}", rep.to_text());
        assert_eq!(rep.check("multiplicity-formula").unwrap().certificate["value"], 9);
        let rep1 = verify_face_localization(1).unwrap();
        assert_eq!(rep1.verdict, "LOCALIZATION_VERIFIED", "{}", rep1.to_text());
        assert_eq!(
            rep1.check("no-ulrich-localized").unwrap().verdict,
            CheckVerdict::Unavailable
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_no_ulrich(2, Field::Rational).unwrap().to_json();
        let b = verify_no_ulrich(2, Field::Rational).unwrap().to_json();
        assert_eq!(a, b);
    }
}
