//! Independent constructions checked against the library's main code paths.

use std::collections::{BTreeSet, HashMap};

use num_traits::Signed;
use satake_core::cone::RationalCone;
use satake_core::exec::Exec;
use satake_core::fans::{
    build_fan_ft, cone_ct_of_q, cone_ct_of_type_parabolic, hilbert_basis, is_t_relevant, smallest_t_relevant,
    weyl_cone,
};
use satake_core::linalg::{self, mat_vec, QMat};
use satake_core::rational::{qvec, rat, QVec};
use satake_core::rootsys::{ParabolicSubset, RootDatum};
use satake_core::weights::{highest_weight, saturate, weight_system};

const SMALL: [&str; 6] = ["A1", "A2", "A3", "B2", "B3", "G2"];

#[test]
fn weight_sets_match_root_string_closure() {
    for label in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
        let rd = RootDatum::new(label).unwrap();
        let mut hws: Vec<Vec<i64>> = vec![vec![0; rd.rank]];
        for i in 0..rd.rank {
            let mut v = vec![0; rd.rank];
            v[i] = 2;
            hws.push(v);
            for j in i..rd.rank {
                let mut v = vec![0; rd.rank];
                v[i] += 1;
                v[j] += 1;
                hws.push(v);
            }
        }
        for hw in hws {
            let l = highest_weight(&rd, &hw).unwrap();
            let ws = weight_system(&rd, &l).unwrap();
            assert_eq!(ws.weights, saturate(&rd, &l), "{label} {hw:?}");
        }
    }
}

#[test]
fn adjoint_weights_are_roots_and_zero() {
    for label in ["A2", "A3", "B2", "B3", "C3", "G2"] {
        let rd = RootDatum::new(label).unwrap();
        let theta = rd.positive.iter().max_by_key(|r| satake_core::rootsys::height(r)).unwrap().clone();
        let ws = weight_system(&rd, &theta).unwrap();
        let mut expected: BTreeSet<QVec> = rd.roots.iter().cloned().collect();
        expected.insert(vec![rat(0); rd.rank]);
        assert_eq!(ws.weights.iter().cloned().collect::<BTreeSet<_>>(), expected, "{label}");
    }
}

/// `C_t(P_t)` is the union of the chambers of the Borel subgroups inside
/// `P_t`, i.e. of `w·𝔠(B)` for `w ∈ W_t`.
#[test]
fn neighbourhood_is_union_of_chambers() {
    for label in SMALL {
        let rd = RootDatum::new(label).unwrap();
        let chamber = weyl_cone(&rd, ParabolicSubset::empty());
        for t in ParabolicSubset::all(rd.rank) {
            let gens: QMat = rd
                .weyl_elements()
                .iter()
                .filter(|w| w.word.iter().all(|&i| t.contains(i)))
                .flat_map(|w| chamber.transform(&w.matrix).gens().to_vec())
                .collect();
            let union = RationalCone::from_v(rd.rank, &gens, &[]);
            assert_eq!(cone_ct_of_type_parabolic(&rd, t, t).unwrap(), union, "{label} t={t}");
        }
    }
}

/// `C_t(Q)` is the smallest cone of `F_t` containing `𝔠(Q)`, for every `Q`,
/// relevant or not, and it only depends on the smallest relevant `Q' ⊇ Q`.
#[test]
fn ct_of_q_is_smallest_cone_over_weyl_cone() {
    for label in SMALL {
        let rd = RootDatum::new(label).unwrap();
        for t in ParabolicSubset::all(rd.rank) {
            let fan = build_fan_ft(&rd, t, Exec::Sequential).unwrap();
            for q in ParabolicSubset::all(rd.rank) {
                let u = fan.project(&weyl_cone(&rd, q).relint_point());
                let i = fan.smallest_cone_containing(&u).unwrap();
                let c = fan.restrict(&cone_ct_of_q(&rd, t, q)).unwrap();
                assert_eq!(fan.cones()[i], c, "{label} t={t} Q={q}");
                let hull = smallest_t_relevant(&rd, t, q);
                assert!(is_t_relevant(&rd, t, hull));
                assert_eq!(cone_ct_of_q(&rd, t, hull), cone_ct_of_q(&rd, t, q));
            }
        }
    }
}

#[test]
fn trivial_type_neighbourhoods_are_weyl_cones() {
    for label in SMALL {
        let rd = RootDatum::new(label).unwrap();
        for q in ParabolicSubset::all(rd.rank) {
            assert_eq!(cone_ct_of_q(&rd, ParabolicSubset::empty(), q), weyl_cone(&rd, q), "{label} Q={q}");
        }
    }
}

#[test]
fn fan_sizes_are_sums_over_relevant_cosets() {
    for label in SMALL {
        let rd = RootDatum::new(label).unwrap();
        let f = build_fan_ft(&rd, ParabolicSubset::empty(), Exec::Sequential).unwrap();
        assert_eq!(f.maximal().len(), rd.weyl_order(), "{label}");
        for t in ParabolicSubset::all(rd.rank) {
            let f = build_fan_ft(&rd, t, Exec::Sequential).unwrap();
            let expected: usize = ParabolicSubset::all(rd.rank)
                .filter(|&y| is_t_relevant(&rd, t, y))
                .map(|y| rd.weyl_order() / rd.parabolic_weyl_order(y))
                .sum();
            assert_eq!(f.cones().len(), expected, "{label} t={t}");
            assert_eq!(f.maximal().len(), rd.weyl_order() / rd.parabolic_weyl_order(t), "{label} t={t}");
        }
    }
}

#[test]
fn sequential_and_parallel_fans_agree() {
    for label in ["A3", "B3", "G2"] {
        let rd = RootDatum::new(label).unwrap();
        for t in ParabolicSubset::all(rd.rank) {
            let a = build_fan_ft(&rd, t, Exec::Sequential).unwrap();
            let b = build_fan_ft(&rd, t, Exec::Parallel).unwrap();
            assert_eq!(a.cones(), b.cones());
            assert_eq!(a.maximal_indices(), b.maximal_indices());
        }
    }
}

fn lattice_box(d: usize, k: i64) -> Vec<QVec> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| (-k..=k).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out.into_iter().map(|v| qvec(&v)).collect()
}

/// Checks the claimed Hilbert basis of `M = {χ : (χ|g) ≤ 0}` by brute force:
/// its elements lie in `M`, none is a sum of two non-zero points of `M`, and
/// every lattice point of `M` in a box is a sum of basis elements.
fn check_hilbert(gram: &QMat, c: &RationalCone, k: i64) {
    let basis = hilbert_basis(gram, c).unwrap();
    let d = c.ambient_dim();
    let fs: QMat = c.gens().iter().map(|g| mat_vec(gram, g)).collect();
    let in_m = |v: &QVec| fs.iter().all(|f| !linalg::dot(f, v).is_positive());
    let zero = vec![rat(0); d];
    let points: Vec<QVec> = lattice_box(d, k).into_iter().filter(|v| in_m(v) && *v != zero).collect();
    for h in &basis {
        assert!(in_m(h));
        assert!(
            !points.iter().any(|a| a != h && in_m(&linalg::sub(h, a)) && linalg::sub(h, a) != zero),
            "{h:?} decomposes"
        );
    }
    let mut memo: HashMap<QVec, bool> = HashMap::new();
    fn generated(v: &QVec, basis: &[QVec], in_m: &dyn Fn(&QVec) -> bool, memo: &mut HashMap<QVec, bool>) -> bool {
        if linalg::is_zero(v) {
            return true;
        }
        if let Some(&b) = memo.get(v) {
            return b;
        }
        let r = basis.iter().any(|h| {
            let w = linalg::sub(v, h);
            in_m(&w) && generated(&w, basis, in_m, memo)
        });
        memo.insert(v.clone(), r);
        r
    }
    for p in &points {
        assert!(generated(p, &basis, &in_m, &mut memo), "{p:?} not generated by {basis:?}");
    }
}

#[test]
fn hilbert_bases_of_chambers_and_neighbourhoods() {
    for label in ["A1", "A2", "B2", "G2", "A3", "B3"] {
        let rd = RootDatum::new(label).unwrap();
        let k = if rd.rank == 3 { 4 } else { 7 };
        for t in ParabolicSubset::all(rd.rank) {
            let c = cone_ct_of_type_parabolic(&rd, t, t).unwrap();
            if c.is_pointed() {
                check_hilbert(&rd.gram, &c, k);
            }
        }
    }
}

#[test]
fn hilbert_bases_of_random_plane_cones() {
    let gram = vec![qvec(&[1, 0]), qvec(&[0, 1])];
    let dirs = [[1, 0], [3, 1], [2, 1], [1, 1], [1, 2], [1, 3], [0, 1], [-1, 2], [-1, 1], [-2, 1], [-3, 1]];
    for (i, a) in dirs.iter().enumerate() {
        for b in &dirs[i + 1..] {
            let c = RationalCone::from_v(2, &[qvec(a), qvec(b)], &[]);
            check_hilbert(&gram, &c, 9);
        }
    }
}
