use adelic_orbit::adelic::{points_equivalent, Equivalence, OmegaPoint, DEFAULT_REFINEMENT_CAP};
use adelic_orbit::dynamics::lattice::{ideal_leq, ideal_of_open, primitive_ideal};
use adelic_orbit::dynamics::{
    act, orbit_closure_contains, quasi_orbit, stabilizer, trivial_stabilizer_point, GroupElement, StabilizerDescription,
};
use adelic_orbit::numberfield::{NumberField, PrimeIdeal};
use adelic_orbit::primesets::{primes_up_to, PowerCofiniteOpen, PrimeSetExpr};
use adelic_orbit::sample::{self, SampleRng};
use proptest::prelude::*;
use rand::RngCore;
use std::collections::BTreeSet;

const CAP: usize = DEFAULT_REFINEMENT_CAP;

fn field_of(i: usize) -> NumberField {
    match i {
        0 => NumberField::rational(),
        1 => NumberField::imag_quadratic(-1).unwrap(),
        2 => NumberField::imag_quadratic(-5).unwrap(),
        _ => NumberField::imag_quadratic(-23).unwrap(),
    }
}

fn setup(fi: usize, seed: u64) -> (NumberField, SampleRng) {
    (field_of(fi), sample::rng(seed))
}

fn probe(field: &NumberField) -> Vec<PrimeIdeal> {
    primes_up_to(field, 1000).unwrap()
}

fn same_members(field: &NumberField, primes: &[PrimeIdeal], a: &PrimeSetExpr, b: &PrimeSetExpr) -> bool {
    primes.iter().all(|p| a.contains(field, p) == b.contains(field, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn boolean_laws(fi in 0usize..4, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let a = sample::prime_set(&field, &mut rng).unwrap();
        let b = sample::prime_set(&field, &mut rng).unwrap();
        let c = sample::prime_set(&field, &mut rng).unwrap();
        let eq = |x: &PrimeSetExpr, y: &PrimeSetExpr| x.set_eq(&field, y).unwrap();

        prop_assert!(eq(&a.clone().complement().complement(), &a));
        prop_assert!(eq(
            &a.clone().union(b.clone()).complement(),
            &a.clone().complement().intersect(b.clone().complement())
        ));
        prop_assert!(eq(
            &a.clone().intersect(b.clone().union(c.clone())),
            &a.clone().intersect(b.clone()).union(a.clone().intersect(c.clone()))
        ));
        prop_assert!(a.clone().intersect(a.clone().complement()).is_empty(&field).unwrap());
        prop_assert!(eq(&a.clone().union(a.clone().complement()), &PrimeSetExpr::All));
        prop_assert!(eq(&a.clone().union(b.clone()), &b.clone().union(a.clone())));
    }

    #[test]
    fn normal_form_agrees_with_the_expression_tree(fi in 0usize..4, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let a = sample::prime_set(&field, &mut rng).unwrap();
        let canon = a.canonical(&field).unwrap();
        prop_assert!(same_members(&field, &probe(&field), &a, &canon));
    }

    #[test]
    fn subset_is_a_partial_order(fi in 0usize..4, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let a = sample::prime_set(&field, &mut rng).unwrap();
        let b = sample::prime_set(&field, &mut rng).unwrap();
        let c = a.clone().intersect(b.clone());
        let sub = |x: &PrimeSetExpr, y: &PrimeSetExpr| x.is_subset(&field, y).unwrap();
        prop_assert!(sub(&a, &a));
        prop_assert!(sub(&c, &a) && sub(&c, &b));
        if sub(&a, &b) && sub(&b, &a) {
            prop_assert!(a.set_eq(&field, &b).unwrap());
        }
        if sub(&a, &b) {
            prop_assert!(sub(&c, &b));
            prop_assert!(probe(&field).iter().all(|p| !a.contains(&field, p) || b.contains(&field, p)));
        }
    }

    #[test]
    fn text_round_trip(fi in 0usize..4, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let a = sample::prime_set(&field, &mut rng).unwrap();
        let back: PrimeSetExpr = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        let canon = a.canonical(&field).unwrap();
        let reparsed: PrimeSetExpr = canon.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, canon);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_action_law(fi in 0usize..3, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let w = sample::point_with_zero_set(&field, &mut rng).unwrap();
        let g = sample::group_element(&field, &mut rng);
        let h = sample::group_element(&field, &mut rng);
        let lhs = act(&field, &g, &act(&field, &h, &w).unwrap()).unwrap();
        let rhs = act(&field, &g.compose(&field, &h), &w).unwrap();
        prop_assert_eq!(points_equivalent(&field, &lhs, &rhs, CAP).unwrap(), Equivalence::Yes);
        let id = act(&field, &GroupElement::identity(), &w).unwrap();
        prop_assert_eq!(points_equivalent(&field, &id, &w, CAP).unwrap(), Equivalence::Yes);
        let back = act(&field, &g.inverse(&field), &act(&field, &g, &w).unwrap()).unwrap();
        prop_assert_eq!(points_equivalent(&field, &back, &w, CAP).unwrap(), Equivalence::Yes);
    }

    #[test]
    fn closure_is_orbit_invariant(fi in 0usize..3, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let b = sample::point_with_zero_set(&field, &mut rng).unwrap();
        let t = sample::point_with_zero_set(&field, &mut rng).unwrap();
        let g = sample::group_element(&field, &mut rng);
        let gb = act(&field, &g, &b).unwrap();
        prop_assert!(quasi_orbit(&gb).set_eq(&field, &quasi_orbit(&b)).unwrap());
        prop_assert!(orbit_closure_contains(&field, &b, &gb).unwrap());
        prop_assert!(orbit_closure_contains(&field, &gb, &b).unwrap());
        prop_assert_eq!(
            orbit_closure_contains(&field, &b, &t).unwrap(),
            orbit_closure_contains(&field, &gb, &t).unwrap()
        );
        let contains = orbit_closure_contains(&field, &b, &t).unwrap();
        prop_assert_eq!(contains, quasi_orbit(&b).is_subset(&field, &quasi_orbit(&t)).unwrap());
    }

    #[test]
    fn point_json_round_trip(fi in 0usize..3, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let a = sample::prime_set(&field, &mut rng).unwrap();
        let points = [
            sample::point_with_zero_set(&field, &mut rng).unwrap(),
            sample::exact_point(&field, &mut rng).unwrap(),
            trivial_stabilizer_point(&field, &a).unwrap(),
        ];
        for w in points {
            let v = w.to_json();
            let back = OmegaPoint::from_json(&field, &v, "point").unwrap();
            prop_assert_eq!(back.to_json(), v);
            prop_assert_eq!(points_equivalent(&field, &back, &w, CAP).unwrap(), Equivalence::Yes);
        }
        let g = sample::group_element(&field, &mut rng);
        prop_assert_eq!(GroupElement::from_json(&field, &g.to_json(), "g").unwrap(), g);
    }

    #[test]
    fn stabilizer_of_translate_is_conjugate(fi in 0usize..3, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let w = if seed % 2 == 0 {
            sample::exact_point(&field, &mut rng).unwrap()
        } else {
            sample::point_with_zero_set(&field, &mut rng).unwrap()
        };
        let g = sample::group_element(&field, &mut rng);
        let s = stabilizer(&field, &w, CAP).unwrap();
        let sg = stabilizer(&field, &act(&field, &g, &w).unwrap(), CAP).unwrap();
        let unknown = |x: &StabilizerDescription| matches!(x, StabilizerDescription::Unknown { .. });
        if !unknown(&s) && !unknown(&sg) {
            prop_assert!(
                sg.equivalent(&field, &s.conjugate(&field, &g).unwrap()).unwrap(),
                "S(gw) = {} but g S(w) g^-1 = {}", sg.to_json(), s.conjugate(&field, &g).unwrap().to_json()
            );
        }
        // members of S(w), moved by conjugation, fix g·w
        for _ in 0..5 {
            let h = sample::group_element(&field, &mut rng);
            if s.contains(&field, &h).unwrap() == Some(true) {
                let moved = act(&field, &h, &w).unwrap();
                prop_assert_ne!(points_equivalent(&field, &moved, &w, CAP).unwrap(), Equivalence::No);
            }
        }
    }

    #[test]
    fn order_embedding(fi in 0usize..3, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let a = sample::prime_set(&field, &mut rng).unwrap();
        let b = sample::prime_set(&field, &mut rng).unwrap();
        let ia = primitive_ideal(&field, &a).unwrap();
        let ib = primitive_ideal(&field, &b).unwrap();
        prop_assert_eq!(ideal_leq(&field, &ia, &ib).unwrap(), a.is_subset(&field, &b).unwrap());
        let both = ideal_leq(&field, &ia, &ib).unwrap() && ideal_leq(&field, &ib, &ia).unwrap();
        prop_assert_eq!(both, a.set_eq(&field, &b).unwrap());
    }

    #[test]
    fn open_ideals_form_a_lattice(fi in 0usize..3, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let primes = sample::small_primes(&field).unwrap();
        let mut open = || {
            let n = rng.next_u64() % 3;
            let gens: Vec<BTreeSet<_>> = (0..n)
                .map(|_| {
                    let k = 1 + rng.next_u64() % 2;
                    (0..k).map(|_| primes[(rng.next_u64() % primes.len() as u64) as usize]).collect()
                })
                .collect();
            ideal_of_open(PowerCofiniteOpen::new(gens))
        };
        let (u, v) = (open(), open());
        let meet = u.meet(&v);
        let join = u.join(&v);
        prop_assert!(meet.leq(&u) && meet.leq(&v));
        prop_assert!(u.leq(&join) && v.leq(&join));
        let a = sample::prime_set(&field, &mut rng).unwrap();
        prop_assert_eq!(
            join.contains_point(&field, &a),
            u.contains_point(&field, &a) || v.contains_point(&field, &a)
        );
        prop_assert_eq!(
            meet.contains_point(&field, &a),
            u.contains_point(&field, &a) && v.contains_point(&field, &a)
        );
    }
}
