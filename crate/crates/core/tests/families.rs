use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ulrich_forge::semigroup::AffineSemigroup;
use ulrich_forge::sequences::{
    analyze, evaluate, fit_polynomial, parse_family, saturate_over_s, torsion_reduce, Judgment,
    Verdict,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fitting_recovers_integer_polynomials(c0 in -20i64..20, c1 in -5i64..5, c2 in -3i64..3, start in 1u32..4) {
        let f = |n: i64| c0 + c1 * n + c2 * n * n;
        let values: Vec<i64> = (0..8).map(|i| f(start as i64 + i)).collect();
        let p = fit_polynomial(start, &values).expect("quadratic fits");
        for n in 0..20 {
            prop_assert_eq!(evaluate(&p, n), BigRational::from_integer(BigInt::from(f(n))));
        }
    }
}

#[test]
fn geometric_growth_does_not_fit() {
    let values: Vec<i64> = (0..8).map(|i| 1 << i).collect();
    assert!(fit_polynomial(1, &values).is_none());
}

#[test]
fn free_modules_are_lim_ulrich() {
    let t = analyze(&parse_family("free growth=n", (1, 8)).unwrap()).unwrap();
    assert_eq!(t.verdict, Verdict::LimUlrichTrend);
    assert!(t.rows.iter().all(|r| r.h1 == 0 && r.e == r.nu));
}

#[test]
fn freeplus_rows_are_exact() {
    let t = analyze(&parse_family("freeplus ideal=(x,y) growth=n", (1, 10)).unwrap()).unwrap();
    for r in &t.rows {
        assert_eq!(r.nu, r.n as u64 + 2);
        assert_eq!(r.e, r.n as u64 + 1);
        assert_eq!(r.h1, 1);
    }
}

#[test]
fn torsion_reduction_strips_residue_fields() {
    let f = parse_family("torsionplus residues=1 growth=n", (1, 8)).unwrap();
    let red = torsion_reduce(&f).unwrap();
    assert!(red.ledger.all_checks_hold());
    assert!(red.ledger.transitivity_violations().is_empty());
    assert_eq!(red.reduced_table.verdict, Verdict::LimUlrichTrend);
    assert_eq!(red.ledger.judgment("nu(C_n)", "0"), Some(Judgment::Exact));
}

#[test]
fn saturation_of_principal_modules() {
    let r2 = AffineSemigroup::pinched_plane(2);
    let f = parse_family("module rmodule ring=pinched:2 gens={(2*n,0)}", (1, 6)).unwrap();
    let sat = saturate_over_s(&f, &r2).unwrap();
    assert_eq!(sat.t, 2);
    for row in &sat.rows {
        assert!(row.quotient_length <= row.h1_t);
    }
    assert!(sat.ledger.all_checks_hold());
}

#[test]
fn family_grammar_errors() {
    for bad in ["", "powers", "freeplus ideal=(x,y)", "module", "free growth=n sop=(x)"] {
        assert!(parse_family(bad, (1, 5)).is_err(), "{bad}");
    }
}
