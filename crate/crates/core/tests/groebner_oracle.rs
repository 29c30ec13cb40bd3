mod support;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ulrich_forge::algebra::{parse_polynomial, Field, Polynomial, Ring};
use ulrich_forge::groebner::{Colength, Ideal};

fn ideal_from_seed(seed: u64) -> (Vec<Polynomial>, Ideal) {
    let ring = Ring::plane();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = support::random_ideal(&ring, &mut rng);
    let ideal = Ideal::new(&ring, gens.clone()).unwrap();
    (gens, ideal)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn colength_matches_linear_algebra(seed in any::<u64>()) {
        let (gens, ideal) = ideal_from_seed(seed);
        prop_assert_eq!(ideal.colength(), Colength::Finite(support::colength(&gens) as u64));
    }

    #[test]
    fn normal_form_is_congruent_and_reduced(seed in any::<u64>(), a in 0u32..7, b in 0u32..7) {
        let (gens, ideal) = ideal_from_seed(seed);
        let ring = Ring::plane();
        let p = parse_polynomial(&format!("x^{a}*y^{b} + 3*x^{b} - y^{a}"), &ring).unwrap();
        let nf = ideal.normal_form(&p).unwrap();
        let q = support::TruncatedQuotient::new(&gens);
        prop_assert_eq!(q.reduce(&(&p - &nf)), q.reduce(&Polynomial::zero(&ring)));
        prop_assert_eq!(ideal.normal_form(&nf).unwrap(), nf.clone());
        prop_assert_eq!(nf.is_zero(), ideal.contains(&p).unwrap());
    }

    #[test]
    fn equality_is_generator_independent(seed in any::<u64>()) {
        let (gens, ideal) = ideal_from_seed(seed);
        let ring = Ring::plane();
        let mut doubled = gens.clone();
        doubled.push(&gens[0] * &Polynomial::var(&ring, 1));
        doubled.push(&gens[0] + &gens[1]);
        let other = Ideal::new(&ring, doubled).unwrap();
        prop_assert!(ideal.equals(&other).unwrap());
    }
}

#[test]
fn normal_form_example() {
    let ring = Ring::plane();
    let i = Ideal::parse("(x*y, x^2 - y^2)", &ring).unwrap();
    let nf = i.normal_form(&parse_polynomial("x^2", &ring).unwrap()).unwrap();
    assert_eq!(nf.to_string(), "y^2");
}

#[test]
fn prime_field_colength_agrees_with_rationals() {
    for seed in 0..10 {
        let (gens, ideal) = ideal_from_seed(seed);
        let ring_p = Ring::new(&["x", "y"], Field::prime(32003).unwrap());
        let texts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        let ip = Ideal::parse(&format!("({})", texts.join(", ")), &ring_p).unwrap();
        assert_eq!(ip.colength(), ideal.colength(), "seed {seed}");
    }
}

#[test]
fn infinite_colength_is_reported() {
    let i = Ideal::parse("(x^2, x*y)", &Ring::plane()).unwrap();
    assert_eq!(i.colength(), Colength::Infinite);
}
