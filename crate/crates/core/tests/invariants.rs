mod common;

use common::*;
use crossprod::certificate::{Certificate, Claim};
use crossprod::coefficients::{BaseRing, DerivationSpec};
use crossprod::pbw::Strategy;
use crossprod::properties::{sample_element, trial_rng};
use crossprod::{Algebra, CrossedElement, ExpTuple, OrderRule};
use proptest::prelude::*;
use std::cmp::Ordering;
use std::sync::OnceLock;

fn presets() -> &'static [Algebra] {
    static ALGS: OnceLock<Vec<Algebra>> = OnceLock::new();
    ALGS.get_or_init(|| {
        ["weyl", "heisenberg", "heisenberg-ext", "weyl-ext-abelian", "sphere:3"]
            .iter()
            .map(|p| Algebra::load(p).unwrap())
            .collect()
    })
}

fn draw(alg: &Algebra, seed: u64, n: usize, bound: u32) -> Vec<CrossedElement> {
    let mut rng = trial_rng(seed, 0);
    (0..n).map(|_| sample_element(alg, &mut rng, bound)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn ring_axioms(which in 0..5usize, seed: u64) {
        let alg = &presets()[which];
        let v = draw(alg, seed, 3, 3);
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(alg.mul(&alg.mul(a, b), c), alg.mul(a, &alg.mul(b, c)));
        prop_assert_eq!(alg.mul(a, &(b + c)), &alg.mul(a, b) + &alg.mul(a, c));
        prop_assert_eq!(alg.mul(&(a + b), c), &alg.mul(a, c) + &alg.mul(b, c));
        prop_assert_eq!(&alg.mul(&alg.one(), a), a);
        prop_assert_eq!(&alg.mul(a, &alg.one()), a);
    }

    #[test]
    fn weyl_products_match_oracle(seed: u64) {
        let w = &presets()[0];
        let v = draw(w, seed, 2, 5);
        let product = weyl_from_element(&w.mul(&v[0], &v[1]));
        prop_assert_eq!(product, weyl_mul(&weyl_from_element(&v[0]), &weyl_from_element(&v[1])));
    }

    #[test]
    fn commutator_with_coefficients_is_the_derivation(which in 0..5usize, seed: u64) {
        let alg = &presets()[which];
        let base = alg.presentation().base();
        let r = as_poly(&draw(alg, seed, 1, 0).pop().unwrap());
        let r = draw(alg, seed, 3, 4).iter().map(as_poly).fold(r, |acc, p| acc.checked_add(&p).unwrap());
        let re = alg.coefficient(r.clone());
        for (i, delta) in alg.presentation().derivations().iter().enumerate() {
            let g = alg.generator(i);
            let comm = &alg.mul(&g, &re) - &alg.mul(&re, &g);
            prop_assert_eq!(comm, alg.coefficient(base.normalize(&delta.apply(&r, base.quotient()).unwrap())));
        }
    }

    #[test]
    fn leibniz_rule(seed: u64, images in proptest::collection::vec(-3i64..=3, 4)) {
        let base = BaseRing::polynomial(vec!["x".into(), "y".into()]);
        let alg = Algebra::load("poly:x,y").unwrap();
        let img = |a: i64, b: i64| base.parse(&format!("({a})*x^2 + ({b})*y")).unwrap();
        let d = DerivationSpec::new(vec![img(images[0], images[1]), img(images[2], images[3])]).unwrap();
        let v = draw(&alg, seed, 2, 4);
        let (p, q) = (as_poly(&v[0]), as_poly(&v[1]));
        let lhs = d.apply(&base.mul(&p, &q), None).unwrap();
        let rhs = base.mul(&d.apply(&p, None).unwrap(), &q).checked_add(&base.mul(&p, &d.apply(&q, None).unwrap())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rewriting_is_confluent(which in 0..4usize, letters in proptest::collection::vec(0..4usize, 1..=6)) {
        let alg = &presets()[which];
        let names: Vec<String> = alg.presentation().base().names().iter().cloned()
            .chain(alg.presentation().lie().generator_names().iter().cloned())
            .collect();
        let src = letters.iter().map(|&i| names[i % names.len()].as_str()).collect::<Vec<_>>().join("*");
        let words = alg.parse_words(&src).unwrap();
        let left = alg.rewrite(&words, Strategy::Leftmost);
        prop_assert_eq!(&left, &alg.rewrite(&words, Strategy::Rightmost));
        prop_assert_eq!(&left, &alg.parse_element(&src).unwrap());
    }

    #[test]
    fn degree_and_type_are_additive(which in prop_oneof![Just(0usize), Just(3)], seed: u64) {
        let alg = &presets()[which];
        let v = draw(alg, seed, 2, 4);
        let ab = alg.mul(&v[0], &v[1]);
        prop_assert_eq!(ab.total_degree(), v[0].total_degree() + v[1].total_degree());
        let t = |e: &CrossedElement| e.type_of(OrderRule::DegLex).unwrap();
        prop_assert_eq!(t(&ab), t(&v[0]).add(&t(&v[1])));
    }

    #[test]
    fn filtration_index_is_submultiplicative(which in 1..4usize, seed: u64) {
        let alg = &presets()[which];
        let v = draw(alg, seed, 2, 4);
        let ab = alg.mul(&v[0], &v[1]);
        let f = |e: &CrossedElement| e.filtration_index().unwrap();
        let sum = f(&v[0]).add(&f(&v[1]));
        prop_assert_ne!(OrderRule::DegLex.cmp(&f(&ab), &sum), Ordering::Greater);
    }

    #[test]
    fn deglex_is_translation_invariant(a in proptest::collection::vec(0u32..5, 3), b in proptest::collection::vec(0u32..5, 3), c in proptest::collection::vec(0u32..5, 3)) {
        let (a, b, c) = (ExpTuple::new(a), ExpTuple::new(b), ExpTuple::new(c));
        prop_assert_eq!(OrderRule::DegLex.cmp(&a, &b), OrderRule::DegLex.cmp(&a.add(&c), &b.add(&c)));
    }

    #[test]
    fn printing_round_trips(which in 0..5usize, seed: u64) {
        let alg = &presets()[which];
        let e = draw(alg, seed, 1, 5).pop().unwrap();
        prop_assert_eq!(&alg.parse_element(&alg.format(&e)).unwrap(), &e);
        prop_assert_eq!(&alg.parse_element(&alg.format_with(&e, OrderRule::TrimmedLengthLex)).unwrap(), &e);
    }

    #[test]
    fn false_claims_are_not_certified(seed: u64) {
        let w = &presets()[0];
        let noise = draw(w, seed, 1, 2).pop().unwrap();
        let claim = Claim::UnimodularRow {
            a: "x^2".into(),
            b: "1 + x*g1".into(),
            u: w.format(&(&w.parse_element("1/2*d^2").unwrap() + &noise)),
            v: "1 - 1/2*x*d".into(),
            cofactor_degree: 2,
        };
        prop_assert!(Certificate::issue(w, claim).is_err());
    }

    #[test]
    fn perturbed_certificates_fail(pos: prop::sample::Index, digit in 0u8..9) {
        static TEXT: OnceLock<String> = OnceLock::new();
        let text = TEXT.get_or_init(|| {
            let w = Algebra::load("weyl").unwrap();
            let k = crossprod::stably_free::IdealSpec::intersection(
                w.parse_element("x").unwrap(),
                w.parse_element("d").unwrap(),
            ).unwrap();
            let c = crossprod::stably_free::certify_noncyclic(&w, &k, 6, 4).unwrap();
            Certificate::noncyclicity(&w, &k, c.certificate().unwrap()).unwrap().to_text()
        });
        let digits: Vec<usize> = text.char_indices().filter(|(_, c)| c.is_ascii_digit()).map(|(i, _)| i).collect();
        let i = digits[pos.index(digits.len())];
        let old = text.as_bytes()[i] - b'0';
        let new = (old + 1 + digit) % 10;
        let mut bad = text.clone();
        bad.replace_range(i..i + 1, &new.to_string());
        prop_assert!(crossprod::certificate::verify(&bad).is_err());
    }
}
