//! The weight embedding of an apartment into the apartment of `PGL_V`,
//! the comparison of the pulled-back target fan with `F_τ`, the monomial
//! formula for `ϑ_t`, and the extension of the embedding to boundary points.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::cone::RationalCone;
use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::fans::{build_fan_ft, random_points, BoundaryPoint, Fan};
use crate::linalg::{self, QMat};
use crate::rational::{rat, ExtRat, QVec, Rat};
use crate::rootsys::{ParabolicSubset, RootDatum};
use crate::seminorms::{classify_sequence, monomial_action, DiagSeminorm, LogAffineSequence, MonomialElement, SeminormClass};
use crate::weights::{is_faithful, z_set, WeightSystem};

/// The weights `λ_0..λ_d` of a representation, each once, by decreasing
/// height then decreasing lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightList {
    #[serde(with = "crate::rational::serde_qmat")]
    pub lambdas: QMat,
}

impl WeightList {
    pub fn d(&self) -> usize {
        self.lambdas.len() - 1
    }

    pub fn index_of(&self, mu: &[Rat]) -> Option<usize> {
        self.lambdas.iter().position(|l| l.as_slice() == mu)
    }
}

pub fn weight_list_from_rep(rd: &RootDatum, ws: &WeightSystem) -> Result<WeightList> {
    let wl = WeightList {
        lambdas: ws.weights.clone(),
    };
    for l in &wl.lambdas {
        for i in 0..rd.rank {
            if wl.index_of(&rd.reflect(i, l)).is_none() {
                return Err(Error::Internal("weight list is not Weyl-stable".into()));
            }
        }
    }
    Ok(wl)
}

/// Matrix of `ι : u ↦ (⟨λ_i, u⟩)_i` on simple-root coordinates.
pub fn embedding_matrix(rd: &RootDatum, wl: &WeightList) -> QMat {
    wl.lambdas.iter().map(|l| rd.functional(l)).collect()
}

pub fn weight_embedding(rd: &RootDatum, wl: &WeightList, u: &[Rat]) -> QVec {
    wl.lambdas.iter().map(|l| rd.pair(l, u)).collect()
}

/// Image of an apartment point in `X(V,k)`.
pub fn apartment_point(rd: &RootDatum, wl: &WeightList, u: &[Rat]) -> SeminormClass {
    DiagSeminorm::from_rats(&weight_embedding(rd, wl, u)).class()
}

/// A cone of the fan on the trace-zero hyperplane of `ℝ^{d+1}`, labelled by
/// the set of coordinates that are maximal on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetCone {
    pub argmax: Vec<usize>,
    pub cone: RationalCone,
}

/// The fan of all faces of `C_i = {r_i ≥ r_j for all j}`, `0 ≤ i ≤ d`, on
/// `{Σ r_i = 0}` (logarithmic coordinates).
pub fn standard_fan_on_target(d: usize) -> Result<Vec<TargetCone>> {
    if d == 0 {
        return domain("the target needs d ≥ 1");
    }
    let n = d + 1;
    let e = |i: usize, j: usize| -> QVec {
        let mut v = vec![rat(0); n];
        v[i] = rat(1);
        v[j] = rat(-1);
        v
    };
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let s0 = s[0];
        let mut eqs: QMat = s[1..].iter().map(|&i| e(i, s0)).collect();
        eqs.push(vec![rat(1); n]);
        let ineqs: QMat = (0..n).filter(|i| !s.contains(i)).map(|j| e(j, s0)).collect();
        out.push(TargetCone {
            argmax: s,
            cone: RationalCone::from_h(n, &ineqs, &eqs),
        });
    }
    out.sort_by_key(|c| (c.argmax.len(), c.argmax.clone()));
    Ok(out)
}

/// `ι^{-1}` of the cone where the coordinates in `argmax` are maximal.
pub fn pullback_cone(rd: &RootDatum, wl: &WeightList, argmax: &[usize]) -> RationalCone {
    let s0 = &wl.lambdas[argmax[0]];
    let eqs: QMat = argmax[1..]
        .iter()
        .map(|&i| rd.functional(&linalg::sub(&wl.lambdas[i], s0)))
        .collect();
    let ineqs: QMat = (0..wl.lambdas.len())
        .filter(|i| !argmax.contains(i))
        .map(|j| rd.functional(&linalg::sub(&wl.lambdas[j], s0)))
        .collect();
    RationalCone::from_h(rd.rank, &ineqs, &eqs)
}

#[derive(Clone, Debug, Serialize)]
pub struct PreimageEntry {
    pub weight_index: usize,
    #[serde(with = "crate::rational::serde_qvec")]
    pub weight: QVec,
    pub full_dimensional: bool,
    /// Index of the equal cone of `F_τ`.
    pub matched: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FanComparisonReport {
    pub tau: ParabolicSubset,
    pub preimages: Vec<PreimageEntry>,
    pub maximal_equal: bool,
    pub all_cones_equal: bool,
    pub counterexamples: Vec<String>,
}

impl FanComparisonReport {
    pub fn verdict(&self) -> bool {
        self.maximal_equal && self.all_cones_equal && self.counterexamples.is_empty()
    }
}

/// Pulls back the target fan along `ι` and compares it with `F_τ`.
pub fn pullback_fan_compare(rd: &RootDatum, ws: &WeightSystem, wl: &WeightList, exec: Exec) -> Result<FanComparisonReport> {
    if !is_faithful(rd, ws) {
        return domain("the representation is not faithful on every simple factor");
    }
    let tau = z_set(rd, ws);
    let fan = build_fan_ft(rd, tau, exec)?;
    let target = standard_fan_on_target(wl.d())?;
    let pulled: Vec<RationalCone> = exec.map(&target, |c| pullback_cone(rd, wl, &c.argmax));
    let mut preimages = Vec::new();
    let mut counterexamples = Vec::new();
    for (c, p) in target.iter().zip(&pulled) {
        if c.argmax.len() != 1 {
            continue;
        }
        let full = p.is_full_dimensional();
        let matched = fan.index_of(p);
        if full && !fan.maximal_indices().contains(&matched.unwrap_or(usize::MAX)) {
            counterexamples.push(format!("preimage of C_{} is not a maximal cone of F_tau", c.argmax[0]));
        }
        preimages.push(PreimageEntry {
            weight_index: c.argmax[0],
            weight: wl.lambdas[c.argmax[0]].clone(),
            full_dimensional: full,
            matched,
        });
    }
    let max_pulled: BTreeSet<&RationalCone> = preimages
        .iter()
        .filter(|p| p.full_dimensional)
        .map(|p| &pulled[target.iter().position(|c| c.argmax == [p.weight_index]).unwrap()])
        .collect();
    let max_fan: BTreeSet<&RationalCone> = fan.maximal().into_iter().collect();
    let maximal_equal = max_pulled == max_fan;
    if !maximal_equal {
        counterexamples.push("maximal cones differ".into());
    }
    let all_pulled: BTreeSet<&RationalCone> = pulled.iter().collect();
    let all_fan: BTreeSet<&RationalCone> = fan.cones().iter().collect();
    let all_cones_equal = all_pulled == all_fan;
    if !all_cones_equal {
        counterexamples.push(format!(
            "pulled-back fan has {} cones, F_tau has {}",
            all_pulled.len(),
            all_fan.len()
        ));
    }
    Ok(FanComparisonReport {
        tau,
        preimages,
        maximal_equal,
        all_cones_equal,
        counterexamples,
    })
}

/// A monomial `∏ X_α^{ν(α)}` over roots `α`, with `|a_ν| = q^{val}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTerm {
    pub powers: Vec<(QVec, u32)>,
    pub val: ExtRat,
}

/// `Ψ = Φ(rad^u(P^op))` for the standard parabolic of type `t`.
pub fn opposite_radical_roots(rd: &RootDatum, t: ParabolicSubset) -> Vec<QVec> {
    rd.positive
        .iter()
        .filter(|b| !crate::rootsys::support_within(b, t))
        .map(|b| linalg::neg(b))
        .collect()
}

/// `ϑ_t(u)(Σ a_ν X^ν) = max_ν |a_ν| ∏_α ⟨u, α⟩^{ν(α)}` in exponent form,
/// for the standard parabolic `p` of type `t`.
pub fn theta_monomial(rd: &RootDatum, t: ParabolicSubset, p: ParabolicSubset, u: &[Rat], poly: &[ThetaTerm]) -> Result<ExtRat> {
    if p != t {
        return domain(format!("parabolic {p} is not of type {t}"));
    }
    let psi = opposite_radical_roots(rd, t);
    let mut best = ExtRat::NegInf;
    for term in poly {
        let mut v = term.val.clone();
        for (alpha, k) in &term.powers {
            if !psi.contains(alpha) {
                return domain("variable is not a root of the opposite unipotent radical");
            }
            v = v.shift(&(rd.pair(alpha, u) * rat(*k as i64)));
        }
        best = best.max(v);
    }
    Ok(best)
}

fn check_target_fan(rd: &RootDatum, ws: &WeightSystem, fan: &Fan) -> Result<()> {
    if fan.t != z_set(rd, ws) || fan.is_degenerate() {
        return domain("boundary points must come from the non-degenerate fan F_tau");
    }
    Ok(())
}

/// Image of a boundary point of `F_τ` using the direction `c`, which must lie
/// in the relative interior of the stratum cone.
pub fn map_boundary_point_along(
    rd: &RootDatum,
    ws: &WeightSystem,
    wl: &WeightList,
    fan: &Fan,
    x: &BoundaryPoint,
    c: &[Rat],
) -> Result<SeminormClass> {
    check_target_fan(rd, ws, fan)?;
    if fan.index_of(&x.stratum).is_none() {
        return domain("stratum cone is not a cone of F_tau");
    }
    if !x.stratum.contains_point(c) || x.stratum.face_containing(c) != x.stratum {
        return domain("direction is not in the relative interior of the stratum");
    }
    let s = LogAffineSequence {
        a: weight_embedding(rd, wl, &x.rep),
        b: weight_embedding(rd, wl, c),
    };
    Ok(classify_sequence(&s)?.limit)
}

/// Limit of `ι(u + n·c)` with `c` the sum of the stratum's generators.
pub fn map_boundary_point(rd: &RootDatum, ws: &WeightSystem, wl: &WeightList, fan: &Fan, x: &BoundaryPoint) -> Result<SeminormClass> {
    map_boundary_point_along(rd, ws, wl, fan, x, &x.stratum.relint_point())
}

/// Three relative-interior directions of a cone.
pub fn interior_directions(c: &RationalCone) -> Vec<QVec> {
    let k = c.gens().len();
    let weighted = |f: &dyn Fn(usize) -> i64| {
        c.gens()
            .iter()
            .enumerate()
            .fold(vec![rat(0); c.ambient_dim()], |acc, (i, g)| linalg::axpy(&acc, &rat(f(i)), g))
    };
    vec![
        c.relint_point(),
        weighted(&|i| i as i64 + 1),
        weighted(&|i| (k - i) as i64 * 3 + 1),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub points: usize,
    pub strata: usize,
    pub collisions: Vec<String>,
    /// Strata whose image depends on the interior direction.
    pub direction_dependent: Vec<usize>,
    /// The kernel of the image depends only on the stratum, and distinct
    /// strata have distinct kernels.
    pub kernels_by_stratum_ok: bool,
}

impl InjectivityReport {
    pub fn ok(&self) -> bool {
        self.collisions.is_empty() && self.direction_dependent.is_empty() && self.kernels_by_stratum_ok
    }
}

/// Maps the base point of every stratum, two random points of every
/// stratum, and `interior` random apartment points, and checks the images
/// are pairwise distinct.
pub fn injectivity_probe(
    rd: &RootDatum,
    ws: &WeightSystem,
    wl: &WeightList,
    interior: usize,
    seed: u64,
    exec: Exec,
) -> Result<InjectivityReport> {
    let tau = z_set(rd, ws);
    let fan = build_fan_ft(rd, tau, exec)?;
    check_target_fan(rd, ws, &fan)?;
    let n = fan.cones().len();
    let extra = random_points(rd.rank, 2 * n + interior, seed);
    let origin = RationalCone::zero(rd.rank);
    let mut pts: Vec<BoundaryPoint> = Vec::new();
    for (i, c) in fan.cones().iter().enumerate() {
        pts.push(BoundaryPoint {
            stratum: c.clone(),
            rep: vec![rat(0); rd.rank],
        });
        for r in &extra[2 * i..2 * i + 2] {
            pts.push(BoundaryPoint {
                stratum: c.clone(),
                rep: r.clone(),
            });
        }
    }
    for r in &extra[2 * n..] {
        pts.push(BoundaryPoint {
            stratum: origin.clone(),
            rep: r.clone(),
        });
    }
    let mut seen = BTreeSet::new();
    let pts: Vec<BoundaryPoint> = pts
        .into_iter()
        .map(|p| fan.canonical(&p))
        .filter(|p| seen.insert((p.stratum.clone(), p.rep.clone())))
        .collect();
    let images: Vec<Result<SeminormClass>> = exec.map(&pts, |p| map_boundary_point(rd, ws, wl, &fan, p));
    let mut by_image: HashMap<SeminormClass, usize> = HashMap::new();
    let mut collisions = Vec::new();
    let mut kernels: HashMap<usize, BTreeSet<Vec<usize>>> = HashMap::new();
    for (i, img) in images.into_iter().enumerate() {
        let img = img?;
        kernels
            .entry(fan.index_of(&pts[i].stratum).unwrap())
            .or_default()
            .insert(img.0.kernel());
        if let Some(&j) = by_image.get(&img) {
            collisions.push(format!("points {j} and {i} have the same image"));
        } else {
            by_image.insert(img, i);
        }
    }
    let kernel_sets: Vec<&BTreeSet<Vec<usize>>> = kernels.values().collect();
    let distinct: BTreeSet<&Vec<usize>> = kernel_sets.iter().filter_map(|s| s.iter().next()).collect();
    let kernels_by_stratum_ok = kernel_sets.iter().all(|s| s.len() == 1) && distinct.len() == kernel_sets.len();
    let direction_dependent: Vec<usize> = (0..n)
        .filter(|&i| {
            let x = BoundaryPoint {
                stratum: fan.cones()[i].clone(),
                rep: extra[2 * i].clone(),
            };
            let imgs: BTreeSet<Option<SeminormClass>> = interior_directions(&x.stratum)
                .iter()
                .map(|c| map_boundary_point_along(rd, ws, wl, &fan, &x, c).ok())
                .collect();
            imgs.len() != 1 || imgs.contains(&None)
        })
        .collect();
    Ok(InjectivityReport {
        points: pts.len(),
        strata: n,
        collisions,
        direction_dependent,
        kernels_by_stratum_ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ToralReport {
    pub origin_to_gauss: bool,
    pub additive: bool,
    pub linear_part_rank: usize,
    pub weyl_equivariant: bool,
}

impl ToralReport {
    pub fn ok(&self, rank: usize) -> bool {
        self.origin_to_gauss && self.additive && self.weyl_equivariant && self.linear_part_rank == rank
    }
}

/// The embedding is affine with linear part `ι`, sends `o` to the Gauss
/// point, and intertwines each Weyl element with the permutation it induces
/// on the weights.
pub fn toral_image_check(rd: &RootDatum, wl: &WeightList, samples: usize, seed: u64) -> ToralReport {
    let n = wl.lambdas.len();
    let zero = vec![rat(0); rd.rank];
    let origin_to_gauss = apartment_point(rd, wl, &zero) == DiagSeminorm::gauss(n).class();
    let pts = random_points(rd.rank, samples, seed);
    let m = embedding_matrix(rd, wl);
    let additive = pts.windows(2).all(|w| {
        weight_embedding(rd, wl, &linalg::add(&w[0], &w[1]))
            == linalg::add(&weight_embedding(rd, wl, &w[0]), &weight_embedding(rd, wl, &w[1]))
    }) && pts.iter().all(|p| linalg::mat_vec(&m, p) == weight_embedding(rd, wl, p));
    let weyl_equivariant = rd.weyl_elements().iter().all(|w| {
        let perm: Option<Vec<usize>> = wl.lambdas.iter().map(|l| wl.index_of(&w.apply(l))).collect();
        let Some(perm) = perm else { return false };
        let g = MonomialElement { perm, nu: vec![0; n] };
        pts.iter().take(10).all(|u| {
            let lhs = DiagSeminorm::from_rats(&weight_embedding(rd, wl, &w.apply(u)));
            monomial_action(&g, &DiagSeminorm::from_rats(&weight_embedding(rd, wl, u))).as_ref() == Ok(&lhs)
        })
    });
    ToralReport {
        origin_to_gauss,
        additive,
        linear_part_rank: linalg::rank(&m, rd.rank),
        weyl_equivariant,
    }
}
