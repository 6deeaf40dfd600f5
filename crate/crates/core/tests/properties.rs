//! Randomized invariants.

use proptest::prelude::*;
use satake_core::cone::RationalCone;
use satake_core::exec::Exec;
use satake_core::fans::{build_fan_ft, extended_eval, BoundaryPoint, ExtendedValue};
use satake_core::linalg;
use satake_core::rational::{frac, rat, ExtRat, QVec, Rat};
use satake_core::rootsys::{ParabolicSubset, RootDatum};
use satake_core::satake::{apartment_point, map_boundary_point, weight_list_from_rep};
use satake_core::seminorms::{
    canonical_representative, classify_sequence, domination_check, eval_polynomial_j, exterior_invariant, in_window,
    monomial_action, monomials_up_to, sheared_monomial, DiagSeminorm, LogAffineSequence, MonomialElement,
    ValuedPolynomial,
};
use satake_core::weights::{highest_weight, weight_system, z_set};

fn q() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn ext() -> impl Strategy<Value = ExtRat> {
    prop_oneof![1 => Just(ExtRat::NegInf), 4 => q().prop_map(ExtRat::Finite)]
}

fn seminorm(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = DiagSeminorm> {
    dims.prop_flat_map(|n| prop::collection::vec(ext(), n))
        .prop_filter_map("non-zero", |e| DiagSeminorm::new(e).ok())
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn qvec_of(n: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec(q(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_in_window_and_idempotent(x in seminorm(1..=6)) {
        let c = canonical_representative(&x);
        prop_assert!(in_window(&c.seminorm));
        prop_assert_eq!(&canonical_representative(&c.seminorm).seminorm, &c.seminorm);
        for (i, &p) in c.perm.iter().enumerate() {
            prop_assert_eq!(&c.seminorm.exps[i], &x.exps[p].shift(&c.shift));
        }
    }

    #[test]
    fn classes_ignore_homothety(x in seminorm(1..=6), s in q()) {
        prop_assert_eq!(x.class(), x.shift(&s).class());
    }

    #[test]
    fn j_is_multiplicative_on_monomials(
        x in seminorm(3..=3),
        a in prop::collection::vec(0u32..4, 3),
        b in prop::collection::vec(0u32..4, 3),
    ) {
        let ab: Vec<u32> = a.iter().zip(&b).map(|(i, j)| i + j).collect();
        let j = |m: Vec<u32>| eval_polynomial_j(&x, &ValuedPolynomial::monomial(m)).unwrap();
        prop_assert_eq!(j(ab), &j(a) + &j(b));
    }

    #[test]
    fn exterior_invariants_under_monomials(
        (x, p) in seminorm(2..=6).prop_flat_map(|x| { let n = x.dim(); (Just(x), perm(n)) }),
        k in -3i64..=3,
    ) {
        let n = x.dim();
        let g = MonomialElement { perm: p, nu: vec![0; n] };
        let gx = monomial_action(&g, &x).unwrap();
        let shifted = monomial_action(&MonomialElement { perm: (0..n).collect(), nu: vec![k; n] }, &x).unwrap();
        for m in 1..=n {
            prop_assert_eq!(exterior_invariant(&gx, m).unwrap(), exterior_invariant(&x, m).unwrap());
            prop_assert_eq!(
                exterior_invariant(&shifted, m).unwrap(),
                exterior_invariant(&x, m).unwrap().shift(&rat(k * m as i64))
            );
        }
    }

    #[test]
    fn monomial_action_inverts(
        (x, p) in seminorm(2..=6).prop_flat_map(|x| { let n = x.dim(); (Just(x), perm(n)) }),
    ) {
        let n = x.dim();
        let mut inv = vec![0; n];
        for (i, &j) in p.iter().enumerate() {
            inv[j] = i;
        }
        let g = MonomialElement { perm: p, nu: vec![0; n] };
        let h = MonomialElement { perm: inv, nu: vec![0; n] };
        prop_assert_eq!(monomial_action(&h, &monomial_action(&g, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn sequence_limits_match_simulation(
        (a, b) in (2usize..=5).prop_flat_map(|n| (qvec_of(n), prop::collection::vec((-3i64..=3, 1i64..=2).prop_map(|(x, y)| frac(x, y)), n))),
    ) {
        let s = LogAffineSequence { a, b };
        let r = classify_sequence(&s).unwrap();
        let numeric = s.normalized_values(&rat(1_000_000));
        for (e, v) in r.limit.exps().iter().zip(&numeric) {
            prop_assert!((e.to_f64().exp2() - v).abs() <= 1e-6);
        }
        let top = s.b.iter().max().unwrap();
        for &i in &r.index_set {
            prop_assert_eq!(&s.b[i], top);
        }
    }

    #[test]
    fn sequence_limits_ignore_reparametrization(
        (a, b) in (2usize..=5).prop_flat_map(|n| (qvec_of(n), qvec_of(n))),
        s0 in q(), s1 in q(), k in 1i64..=5,
    ) {
        let base = classify_sequence(&LogAffineSequence { a: a.clone(), b: b.clone() }).unwrap();
        let moved = LogAffineSequence {
            a: a.iter().map(|x| x + &s0).collect(),
            b: b.iter().map(|x| x * rat(k) + &s1).collect(),
        };
        let r = classify_sequence(&moved).unwrap();
        prop_assert_eq!(r.index_set, base.index_set);
        prop_assert_eq!(r.limit, base.limit);
    }

    #[test]
    fn sheared_monomials_are_dominated(
        x in seminorm(2..=3),
        shear in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 3),
    ) {
        let z = sheared_monomial(&x, &shear);
        let samples: Vec<_> = monomials_up_to(x.dim(), 3).into_iter().map(|m| vec![(m, Rat::from_integer(1.into()))]).collect();
        let r = domination_check(&x, &z, &samples).unwrap();
        prop_assert!(r.ok());
        // z is multiplicative, so it agrees with j(x) on monomials.
        prop_assert_eq!(r.equalities, r.samples);
    }

    #[test]
    fn cone_representations_agree(gens in prop::collection::vec(qvec_of(3), 1..6)) {
        let c = RationalCone::from_v(3, &gens, &[]);
        let h = RationalCone::from_h(3, c.ineqs(), c.eqs());
        prop_assert_eq!(&h, &c);
        for g in &gens {
            prop_assert!(c.contains_point(g));
        }
        let p = c.relint_point();
        prop_assert_eq!(c.face_containing(&p), c.clone());
        for f in c.faces() {
            prop_assert!(f.is_face_of(&c));
            prop_assert!(c.contains(&f));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn weyl_group_preserves_roots(label in prop::sample::select(vec!["A2", "B2", "G2", "A3", "B3", "C3", "D4"]), idx in any::<prop::sample::Index>()) {
        let rd = RootDatum::new(label).unwrap();
        let w = &rd.weyl_elements()[idx.index(rd.weyl_order())];
        prop_assert!(rd.preserves_gram(w));
        for r in &rd.roots {
            prop_assert!(rd.is_root(&w.apply(r)));
        }
    }

    #[test]
    fn every_point_has_a_labelled_cone(u in qvec_of(2), t in 0u32..4) {
        let rd = RootDatum::new("A2").unwrap();
        let fan = build_fan_ft(&rd, ParabolicSubset(t), Exec::Sequential).unwrap();
        let u = fan.project(&u);
        let i = fan.smallest_cone_containing(&u).unwrap();
        prop_assert_eq!(fan.relevancy(i).len(), 1);
        prop_assert_eq!(fan.cones()[i].face_containing(&u), fan.cones()[i].clone());
    }

    #[test]
    fn interior_points_evaluate_to_finite_values(u in qvec_of(2), chi in prop::collection::vec(-3i64..=3, 2)) {
        let rd = RootDatum::new("A2").unwrap();
        let fan = build_fan_ft(&rd, ParabolicSubset::empty(), Exec::Sequential).unwrap();
        let chi: QVec = chi.into_iter().map(rat).collect();
        let x = BoundaryPoint { stratum: RationalCone::zero(2), rep: u.clone() };
        prop_assert_eq!(
            extended_eval(&rd, &fan, &chi, &x).unwrap(),
            ExtendedValue::Finite { exponent: rd.pair(&chi, &u) }
        );
    }

    #[test]
    fn boundary_map_on_open_stratum_is_the_embedding(u in qvec_of(2)) {
        let rd = RootDatum::new("B2").unwrap();
        let ws = weight_system(&rd, &highest_weight(&rd, &[1, 0]).unwrap()).unwrap();
        let wl = weight_list_from_rep(&rd, &ws).unwrap();
        let fan = build_fan_ft(&rd, z_set(&rd, &ws), Exec::Sequential).unwrap();
        let x = BoundaryPoint { stratum: RationalCone::zero(2), rep: u.clone() };
        prop_assert_eq!(map_boundary_point(&rd, &ws, &wl, &fan, &x).unwrap(), apartment_point(&rd, &wl, &u));
    }

    #[test]
    fn boundary_images_depend_on_rep_modulo_the_stratum(u in qvec_of(2), k in q(), idx in any::<prop::sample::Index>()) {
        let rd = RootDatum::new("A2").unwrap();
        let ws = weight_system(&rd, &highest_weight(&rd, &[1, 0]).unwrap()).unwrap();
        let wl = weight_list_from_rep(&rd, &ws).unwrap();
        let fan = build_fan_ft(&rd, z_set(&rd, &ws), Exec::Sequential).unwrap();
        let c = fan.cones()[idx.index(fan.cones().len())].clone();
        let shift = c.relint_point();
        let x = BoundaryPoint { stratum: c.clone(), rep: u.clone() };
        let y = BoundaryPoint { stratum: c, rep: linalg::axpy(&u, &k, &shift) };
        prop_assert_eq!(
            map_boundary_point(&rd, &ws, &wl, &fan, &x).unwrap(),
            map_boundary_point(&rd, &ws, &wl, &fan, &y).unwrap()
        );
        prop_assert_eq!(fan.canonical(&x), fan.canonical(&y));
    }
}
