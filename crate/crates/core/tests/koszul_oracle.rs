mod support;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ulrich_forge::algebra::{parse_polynomial, Field, Polynomial, Ring};
use ulrich_forge::groebner::Ideal;
use ulrich_forge::koszul::{
    colon_module, koszul_cyclic, koszul_finlen, parse_module, FiniteLengthModule, ModuleRep,
    MonomialModule,
};
use ulrich_forge::semigroup::AffineSemigroup;
use ulrich_forge::sequences::resolution_ranks;

use support::SemigroupOracle;

fn p(s: &str) -> Polynomial {
    parse_polynomial(s, &Ring::plane()).unwrap()
}

#[test]
fn cyclic_modules_match_explicit_complexes() {
    let ring = Ring::plane();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 25 {
        let gens = support::random_ideal(&ring, &mut rng);
        if support::colength(&gens) > 30 {
            continue;
        }
        let f = support::random_parameter(&ring, &mut rng);
        let g = support::random_parameter(&ring, &mut rng);
        let j = Ideal::new(&ring, gens.clone()).unwrap();
        let t = koszul_cyclic(&f, &g, &j).unwrap();
        let want = support::koszul_cyclic(&f, &g, &gens);
        assert_eq!(
            (t.h0 as usize, t.h1 as usize, t.h2 as usize),
            want,
            "J = {j}, f = {f}, g = {g}"
        );
        assert_eq!(t.chi, 0);
        checked += 1;
    }
}

#[test]
fn positive_dimensional_cyclic_examples() {
    let ring = Ring::plane();
    // S/(xy) has dimension 1, so χ = 0 although (x^2, y^2) has colength 4.
    let j = Ideal::parse("(x*y)", &ring).unwrap();
    let t = koszul_cyclic(&p("x^2"), &p("y^2"), &j).unwrap();
    assert_eq!((t.triple(), t.chi), ((3, 3, 0), 0));
    let zero = Ideal::zero(&ring);
    let t = koszul_cyclic(&p("x^2"), &p("y^2"), &zero).unwrap();
    assert_eq!((t.triple(), t.chi), ((4, 0, 0), 4));
}

#[test]
fn ideal_modules_follow_hilbert_burch() {
    let ring = Ring::plane();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..15 {
        let gens = support::random_ideal(&ring, &mut rng);
        let j = Ideal::new(&ring, gens.clone()).unwrap();
        let (a, b) = resolution_ranks(&j).unwrap();
        assert_eq!(a as usize, support::min_generators(&gens), "J = {j}");
        assert_eq!(b + 1, a);
    }
}

#[test]
fn colon_lengths_over_r3_match_the_lattice() {
    let sg = AffineSemigroup::pinched_plane(3);
    let gens: Vec<Vec<i64>> = sg
        .generators()
        .iter()
        .map(|g| g.as_slice().iter().map(|&c| c as i64).collect())
        .collect();
    let mut oracle = SemigroupOracle::new(&gens);
    for pts in [vec![[0, 0]], vec![[1, 0], [0, 1]], vec![[2, 1], [0, 3]], vec![[0, 0], [1, 1]]] {
        let m = MonomialModule::new(&sg, pts.clone()).unwrap();
        let rep = colon_module(&ModuleRep::MonomialR(m), 3, [1, 0], [0, 1]).unwrap();
        let want = support::lattice_colon_length(&mut oracle, &pts, 3, [1, 0], [0, 1]) as u64;
        assert_eq!((rep.length, rep.h1), (want, want), "{pts:?}");
    }
}

#[test]
fn torsion_blocks_colon_modules() {
    let ring = Ring::plane();
    let m = parse_module("cyclic (x^2, y)", &ring, &Default::default()).unwrap();
    assert!(colon_module(&m, 2, [1, 0], [0, 1]).is_err());
    let mixed = parse_module("rmodule ring=pinched:2 gens={(0,0)} + residue", &ring, &Default::default());
    assert!(mixed.is_err());
}

fn finlen_from_seed(seed: u64) -> FiniteLengthModule {
    let ring = Ring::plane();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let j = Ideal::new(&ring, support::random_ideal(&ring, &mut rng)).unwrap();
    FiniteLengthModule::from_quotient(&j).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn finite_length_euler_characteristic_vanishes(seed in any::<u64>(), a in 1u32..4, b in 1u32..4) {
        let m = finlen_from_seed(seed);
        let t = koszul_finlen(&m, &p(&format!("x^{a}")), &p(&format!("y^{b} + x*y"))).unwrap();
        prop_assert_eq!(t.chi, 0);
        prop_assert!(t.chi1 >= 0);
        prop_assert_eq!(t.h0 + t.h2, t.h1);
    }

    #[test]
    fn koszul_is_additive(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (m1, m2) = (finlen_from_seed(s1), finlen_from_seed(s2));
        let (x, y) = (p("x"), p("y"));
        let sum = koszul_finlen(&m1.direct_sum(&m2).unwrap(), &x, &y).unwrap();
        let parts = koszul_finlen(&m1, &x, &y).unwrap() + koszul_finlen(&m2, &x, &y).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn minimal_generators_of_quotients_are_one(seed in any::<u64>()) {
        let m = finlen_from_seed(seed);
        prop_assert_eq!(m.min_generators(), 1);
    }
}

#[test]
fn residue_field_over_prime_field() {
    let m = FiniteLengthModule::residue_field(Field::prime(7).unwrap(), 2);
    let ring = Ring::new(&["x", "y"], Field::prime(7).unwrap());
    let (x, y) = (Polynomial::var(&ring, 0), Polynomial::var(&ring, 1));
    assert_eq!(koszul_finlen(&m, &x, &y).unwrap().triple(), (1, 2, 1));
}

