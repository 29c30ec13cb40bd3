use ulrich_forge::algebra::Field;
use ulrich_forge::subring::parse_ring_spec;
use ulrich_forge::verify::{
    verify_face_localization, verify_no_ulrich, verify_ulrich_equivalence, CheckVerdict,
};

fn pinched_spec(n: u32) -> String {
    format!(
        "ring ambient=(x,y)\n  gens=[x^{n}, x^{m}, x^{n}*y, y^{n}, y^{m}, x*y^{n}, x*y]\n  reduction=[x*y, x^{n} - y^{n}]\n",
        m = n + 1
    )
}

#[test]
fn pipelines_agree_on_the_criterion() {
    for n in 2..=4 {
        let a = verify_no_ulrich(n, Field::Rational).unwrap();
        let b = verify_ulrich_equivalence(&parse_ring_spec(&pinched_spec(n)).unwrap()).unwrap();
        let ca = a.check("ulrich-criterion").unwrap();
        let cb = b.check("condition-d").unwrap();
        // One asserts IS ≠ mS, the other IS = mS.
        assert_eq!(ca.verdict, CheckVerdict::Holds, "n = {n}");
        assert_eq!(cb.verdict, CheckVerdict::Fails, "n = {n}");
        assert_eq!(ca.certificate["witness"], cb.certificate["witness"], "n = {n}");
    }
}

#[test]
fn report_layout_is_stable() {
    let rep = verify_no_ulrich(2, Field::Rational).unwrap();
    let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    for key in ["schema", "pipeline", "inputs", "checks", "verdict", "field"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let anchors: Vec<&str> = rep.checks.iter().map(|c| c.anchor.as_str()).collect();
    assert_eq!(
        anchors,
        [
            "builder-hypotheses",
            "gap-set",
            "s2-multiplier",
            "s2-multiplier",
            "minimal-reduction",
            "f-hypothesis",
            "ulrich-criterion"
        ]
    );
    assert!(rep.checks.iter().all(|c| !c.certificate.is_null()));
}

#[test]
fn prime_fields_give_the_same_verdicts() {
    for n in 2..=3 {
        let q = verify_no_ulrich(n, Field::Rational).unwrap();
        let fp = verify_no_ulrich(n, Field::prime(32003).unwrap()).unwrap();
        assert_eq!(q.verdict, fp.verdict);
        let (cq, cp) = (
            &q.check("ulrich-criterion").unwrap().certificate,
            &fp.check("ulrich-criterion").unwrap().certificate,
        );
        assert_eq!(cq["witness"], cp["witness"]);
        assert_eq!(cq["witness_normal_form"], cp["witness_normal_form"]);
    }
}

#[test]
fn localization_for_n_three() {
    let rep = verify_face_localization(3).unwrap();
    assert_eq!(rep.verdict, "LOCALIZES_TO_NO_ULRICH");
    assert_eq!(rep.check("multiplicity-formula").unwrap().certificate["value"], 16);
    assert_eq!(rep.subreports.len(), 1);
}

#[test]
fn non_monomial_rings_are_refused() {
    let spec = parse_ring_spec("ring ambient=(x,y) gens=[x + y, x*y]").unwrap();
    let rep = verify_ulrich_equivalence(&spec).unwrap();
    assert_eq!(rep.verdict, "REFUSED");
}
