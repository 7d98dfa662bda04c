//! Properties of ramification data, the genus, the basis and the algebra of L
//! on seeded random towers.

mod common;

use common::{random_ratfun, random_validated};
use holodiff::boseck::{
    boundary_candidates, enumerate_basis_single_as, enumerate_basis_single_kummer, enumerate_basis_with, t_mu, GammaIndex,
};
use holodiff::json::{canonical, descriptor_to_value, parse_descriptor};
use holodiff::places::Place;
use holodiff::tower::{analyze, genus_from_analysis, genus_stepwise, relevant_places, track_place, StepKind, TowerDescriptor};
use holodiff::tower_algebra::{
    alg_mul, apply_automorphism, holomorphy_check, holomorphy_check_element, valuation, AlgebraElement, LevelKind,
};
use holodiff::Error;
use proptest::prelude::*;
use rand::Rng;

fn tower() -> impl Strategy<Value = TowerDescriptor> {
    any::<u64>().prop_filter_map("no validated tower for this seed", |s| random_validated(s, 1, 40).pop())
}

fn random_element(d: &TowerDescriptor, rng: &mut impl Rng) -> AlgebraElement {
    let k = d.field();
    let bounds = d.bounds();
    let terms = (0..rng.gen_range(1..=3))
        .map(|_| {
            let e: Vec<u32> = bounds.iter().map(|&b| rng.gen_range(0..b as u32)).collect();
            (e, random_ratfun(k, 2, rng))
        })
        .collect::<Vec<_>>();
    AlgebraElement::from_terms(d.height(), terms, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_count_is_genus_and_holomorphic(d in tower()) {
        let a = analyze(&d).unwrap();
        let g = genus_from_analysis(&d, &a).unwrap();
        let basis = enumerate_basis_with(&d, &a).unwrap();
        prop_assert_eq!(basis.len() as u64, g);
        for b in &basis {
            prop_assert!(holomorphy_check(&d, b).unwrap().holomorphic, "{}", b.pretty(d.field()));
        }
        for b in boundary_candidates(&d, &a).unwrap() {
            let r = holomorphy_check(&d, &b).unwrap();
            prop_assert!(r.failing().any(|(pl, _)| pl.is_infinite()), "{}", b.pretty(d.field()));
        }
    }

    #[test]
    fn t_vanishes_only_at_the_excluded_index(d in tower()) {
        let a = analyze(&d).unwrap();
        let gamma = GammaIndex::new(&d);
        for mu in gamma.full_box() {
            let t = t_mu(&a, &mu, d.field().p()).unwrap();
            prop_assert_eq!(t == 0, mu == gamma.excluded, "t^{:?} = {}", mu, t);
        }
    }

    #[test]
    fn profile_invariants(d in tower()) {
        let a = analyze(&d).unwrap();
        let p = d.field().p() as i64;
        for prof in &a.profiles {
            prop_assert_eq!(prof.e, prof.levels.iter().map(|l| l.e_step).product::<u64>());
            prop_assert_eq!(d.degree() % prof.e, 0);
            for l in &prof.levels {
                match l.kind {
                    LevelKind::Wild => {
                        prop_assert!(l.v % p != 0);
                        prop_assert_eq!(l.jump, Some(1 - l.v));
                        prop_assert!(1 - l.v >= 2);
                    }
                    LevelKind::Tame => prop_assert_eq!(l.jump, Some(1)),
                    LevelKind::Unramified => prop_assert_eq!(l.jump, None),
                }
            }
        }
    }

    #[test]
    fn stepwise_genus_agrees(d in tower()) {
        match genus_stepwise(&d) {
            Ok(steps) => {
                prop_assert_eq!(*steps.last().unwrap(), genus_from_analysis(&d, &analyze(&d).unwrap()).unwrap());
                if d.height() > 1 {
                    let below = d.truncate(d.height() - 1);
                    if let Ok(a) = analyze(&below) {
                        prop_assert_eq!(steps[d.height() - 2], genus_from_analysis(&below, &a).unwrap());
                    }
                }
            }
            Err(Error::SplittingUndetermined(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn algebra_is_commutative_and_associative(d in tower(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let k = d.field();
        let (a, b, c) = (random_element(&d, &mut rng), random_element(&d, &mut rng), random_element(&d, &mut rng));
        prop_assert_eq!(alg_mul(&d, &a, &b), alg_mul(&d, &b, &a));
        prop_assert_eq!(alg_mul(&d, &alg_mul(&d, &a, &b), &c), alg_mul(&d, &a, &alg_mul(&d, &b, &c)));
        let lhs = alg_mul(&d, &a, &b.add(&c, k));
        prop_assert_eq!(lhs, alg_mul(&d, &a, &b).add(&alg_mul(&d, &a, &c), k));
    }

    #[test]
    fn valuation_is_multiplicative_at_totally_ramified_places(d in tower(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let k = d.field();
        let a = random_element(&d, &mut rng);
        let b = random_element(&d, &mut rng);
        prop_assume!(!a.is_zero() && !b.is_zero());
        for pl in relevant_places(&d) {
            let tp = track_place(&d, &pl).unwrap();
            if tp.e_total() != d.degree() {
                continue;
            }
            if let (Ok(va), Ok(vb), Ok(vab)) = (valuation(&a, &tp, k), valuation(&b, &tp, k), valuation(&alg_mul(&d, &a, &b), &tp, k)) {
                prop_assert_eq!(va + vb, vab);
            }
        }
    }

    #[test]
    fn automorphisms_are_ring_maps_of_the_right_order(d in tower(), seed in any::<u64>()) {
        prop_assume!(common::is_abelian_plain(&d));
        let mut rng = common::rng(seed);
        let a = random_element(&d, &mut rng);
        let b = random_element(&d, &mut rng);
        for i in 0..d.height() {
            let mut h = vec![0u64; d.height()];
            h[i] = 1;
            let sa = apply_automorphism(&d, &a, &h).unwrap();
            let sb = apply_automorphism(&d, &b, &h).unwrap();
            prop_assert_eq!(apply_automorphism(&d, &alg_mul(&d, &a, &b), &h).unwrap(), alg_mul(&d, &sa, &sb));
            let mut x = a.clone();
            for _ in 0..d.step_degree(i + 1) {
                x = apply_automorphism(&d, &x, &h).unwrap();
            }
            prop_assert_eq!(x, a.clone());
        }
    }

    #[test]
    fn single_step_enumerators_agree(d in tower()) {
        let d = d.truncate(1);
        let a = analyze(&d).unwrap();
        let general = enumerate_basis_with(&d, &a).unwrap();
        let k = d.field();
        let c = d.step(1).c.as_ratfun().unwrap();
        let single = match d.step(1).kind {
            StepKind::ArtinSchreier => enumerate_basis_single_as(&c, k).unwrap(),
            StepKind::Kummer { n } => {
                prop_assume!(c.is_polynomial());
                enumerate_basis_single_kummer(c.num(), n, k).unwrap()
            }
        };
        prop_assert_eq!(general, single);
    }

    #[test]
    fn descriptors_round_trip(d in tower()) {
        let text = canonical(&descriptor_to_value(&d));
        let back = parse_descriptor(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(canonical(&descriptor_to_value(&back)), text);
    }

    #[test]
    fn dx_is_never_holomorphic(d in tower()) {
        let r = holomorphy_check_element(&d, &AlgebraElement::one(d.height())).unwrap();
        prop_assert!(r.failing().any(|(pl, _)| *pl == Place::Infinity));
    }
}
