//! Weyl cones, the cones `C_t(Q)`, `t`-relevancy, the complete fans `F_t`,
//! compactified cones and the extended evaluation of characters on their
//! boundary points.
//!
//! Points `u` of the apartment and characters `χ` are both written in
//! simple-root coordinates; they pair through the invariant scalar product.
//! Everything is additive: the condition `⟨α, z⟩ ≤ 1` on `Λ(S)` reads
//! `(α | u) ≤ 0`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::{ConeJson, RationalCone};
use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::linalg::{self, dot, mat_vec, primitive, project_out_metric, QMat};
use crate::rational::{frac, QVec, Rat};
use crate::rootsys::{is_nonneg, ParabolicSubset, RootDatum, WeylElement};

/// `𝔠(P_Y) = {u : (α|u) ≥ 0 for every root α of P_Y}`.
pub fn weyl_cone(rd: &RootDatum, q: ParabolicSubset) -> RationalCone {
    let ineqs: QMat = rd
        .parabolic_roots(q)
        .iter()
        .map(|a| linalg::neg(&rd.functional(a)))
        .collect();
    RationalCone::from_h(rd.rank, &ineqs, &[])
}

/// `C_t(P_t)` for the standard parabolic of type `t`.
fn ct_standard(rd: &RootDatum, t: ParabolicSubset) -> RationalCone {
    let ineqs: QMat = rd
        .positive
        .iter()
        .filter(|b| !crate::rootsys::support_within(b, t))
        .map(|b| linalg::neg(&rd.functional(b)))
        .collect();
    RationalCone::from_h(rd.rank, &ineqs, &[])
}

/// `C_t(P)` for a standard parabolic `P` of type `t`:
/// `{u : (α|u) ≤ 0 for α ∈ Φ(rad^u(P^op))}`.
pub fn cone_ct_of_type_parabolic(
    rd: &RootDatum,
    t: ParabolicSubset,
    p: ParabolicSubset,
) -> Result<RationalCone> {
    if p != t {
        return domain(format!("parabolic {p} is not of type {t}"));
    }
    Ok(ct_standard(rd, t))
}

/// The smallest cone of `F_t` containing `𝔠(Q)`, for `Q` standard.
pub fn cone_ct_of_q(rd: &RootDatum, t: ParabolicSubset, q: ParabolicSubset) -> RationalCone {
    let base = ct_standard(rd, t);
    let eqs: QMat = rd
        .positive
        .iter()
        .filter(|b| crate::rootsys::support_within(b, q) && !crate::rootsys::support_within(b, t))
        .map(|b| rd.functional(b))
        .collect();
    let mut all_eqs = base.eqs().to_vec();
    all_eqs.extend(eqs);
    RationalCone::from_h(rd.rank, base.ineqs(), &all_eqs)
}

/// `C_t(wQ) = w·C_t(Q)`.
pub fn cone_ct_of_q_at(
    rd: &RootDatum,
    t: ParabolicSubset,
    w: &WeylElement,
    q: ParabolicSubset,
) -> RationalCone {
    cone_ct_of_q(rd, t, q).transform(&w.matrix)
}

/// Union of the components of `Y_Q` that meet `Δ − Y_t`.
pub fn tilde_y(rd: &RootDatum, t: ParabolicSubset, q: ParabolicSubset) -> ParabolicSubset {
    let outside = ParabolicSubset::full(rd.rank).minus(t);
    rd.components(q)
        .into_iter()
        .filter(|c| !c.intersect(outside).is_empty())
        .fold(ParabolicSubset::empty(), ParabolicSubset::union)
}

/// Roots of `Y_t` orthogonal to every component of `Y_Q` meeting `Δ − Y_t`.
fn orthogonal_type_roots(rd: &RootDatum, t: ParabolicSubset, q: ParabolicSubset) -> ParabolicSubset {
    let ty = tilde_y(rd, t, q);
    ParabolicSubset::from_nodes(
        &t.nodes()
            .into_iter()
            .filter(|&i| rd.orthogonal_to_set(i, ty))
            .collect::<Vec<_>>(),
    )
}

pub fn is_t_relevant(rd: &RootDatum, t: ParabolicSubset, q: ParabolicSubset) -> bool {
    orthogonal_type_roots(rd, t, q).is_subset(q)
}

pub fn smallest_t_relevant(rd: &RootDatum, t: ParabolicSubset, q: ParabolicSubset) -> ParabolicSubset {
    q.union(orthogonal_type_roots(rd, t, q))
}

/// Nodes of the Dynkin components entirely contained in `t`.
pub fn degenerate_part(rd: &RootDatum, t: ParabolicSubset) -> ParabolicSubset {
    rd.components(ParabolicSubset::full(rd.rank))
        .into_iter()
        .filter(|c| c.is_subset(t))
        .fold(ParabolicSubset::empty(), ParabolicSubset::union)
}

pub fn is_degenerate(rd: &RootDatum, t: ParabolicSubset) -> bool {
    !degenerate_part(rd, t).is_empty()
}

/// Inclusions between `𝔠(Q)`, `C_t(Q)` and the cones attached to `Q` by the
/// fans of larger types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConeChain {
    pub relevant: bool,
    /// Smallest `t`-relevant standard parabolic containing `Q`.
    pub hull: ParabolicSubset,
    /// `𝔠(Q) ⊆ C_t(Q)`.
    pub weyl_in_ct: bool,
    /// `C_t(Q) ⊆ C_{t(Q)}(Q)` with `t(Q)` the type of `Q` itself.
    pub ct_in_own_type: bool,
    /// `C_t(Q) ⊆ C_{t'}(Q)` with `t'` the type of the hull.
    pub ct_in_hull_type: bool,
}

impl std::fmt::Display for ConeChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "relevant={} hull={} c(Q)⊆C_t(Q)={} C_t(Q)⊆C_t(Q)(Q)={} C_t(Q)⊆C_t'(Q)={}",
            self.relevant, self.hull, self.weyl_in_ct, self.ct_in_own_type, self.ct_in_hull_type
        )
    }
}

pub fn cone_chain(rd: &RootDatum, t: ParabolicSubset, q: ParabolicSubset) -> ConeChain {
    let wc = weyl_cone(rd, q);
    let mid = cone_ct_of_q(rd, t, q);
    let hull = smallest_t_relevant(rd, t, q);
    ConeChain {
        relevant: hull == q,
        hull,
        weyl_in_ct: mid.contains(&wc),
        ct_in_own_type: cone_ct_of_q(rd, q, q).contains(&mid),
        ct_in_hull_type: cone_ct_of_q(rd, hull, q).contains(&mid),
    }
}

/// `𝔠(Q) ⊆ C_t(Q) ⊆ C_{t'}(Q)`, `t'` the type of the smallest `t`-relevant
/// parabolic containing `Q` (the type of `Q` when `Q` is `t`-relevant).
pub fn check_cone_chain(rd: &RootDatum, t: ParabolicSubset, q: ParabolicSubset) -> bool {
    let c = cone_chain(rd, t, q);
    c.weyl_in_ct && c.ct_in_hull_type
}

/// Minimal-length representatives of `W / W_Y`.
pub fn coset_representatives(rd: &RootDatum, y: ParabolicSubset) -> Vec<&WeylElement> {
    rd.weyl_elements()
        .iter()
        .filter(|w| y.nodes().into_iter().all(|i| is_nonneg(&w.apply(&rd.simple_roots[i]))))
        .collect()
}

/// A parabolic `wP_Y` containing `S`, recorded by its standard type `Y` and
/// a minimal coset representative `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicLabel {
    pub y: ParabolicSubset,
    /// 1-based reduced word.
    pub word: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Fan {
    pub label: String,
    pub t: ParabolicSubset,
    pub rank: usize,
    /// Simple-root coordinates surviving the quotient by the degenerate part.
    pub kept: Vec<usize>,
    gram: QMat,
    cones: Vec<RationalCone>,
    maximal: Vec<usize>,
    relevancy: Vec<Vec<ParabolicLabel>>,
    index: HashMap<RationalCone, usize>,
}

impl Fan {
    pub fn ambient_dim(&self) -> usize {
        self.kept.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.kept.len() < self.rank
    }

    /// Invariant scalar product on the quotient coordinates.
    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn cones(&self) -> &[RationalCone] {
        &self.cones
    }

    pub fn maximal(&self) -> Vec<&RationalCone> {
        self.maximal.iter().map(|&i| &self.cones[i]).collect()
    }

    pub fn maximal_indices(&self) -> &[usize] {
        &self.maximal
    }

    pub fn index_of(&self, c: &RationalCone) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// The relevant parabolics whose cone is cone `i`; exactly one when the
    /// cone/relevancy correspondence holds.
    pub fn relevancy(&self, i: usize) -> &[ParabolicLabel] {
        &self.relevancy[i]
    }

    pub fn relevancy_is_bijective(&self) -> bool {
        self.relevancy.iter().all(|r| r.len() == 1)
    }

    pub fn cones_by_dim(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for c in &self.cones {
            *m.entry(c.dimension()).or_insert(0) += 1;
        }
        m
    }

    /// Image of a full-coordinate vector in the quotient coordinates.
    pub fn project(&self, v: &[Rat]) -> QVec {
        self.kept.iter().map(|&i| v[i].clone()).collect()
    }

    /// Restriction of a full-space cone whose lineality contains the
    /// quotiented directions.
    pub fn restrict(&self, c: &RationalCone) -> Result<RationalCone> {
        c.restrict_coords(&self.kept)
    }

    /// Functional on the quotient coordinates for a character `χ` in full
    /// coordinates; `χ` must vanish on the quotiented directions.
    pub fn character_functional(&self, rd: &RootDatum, chi: &[Rat]) -> Result<QVec> {
        if chi.len() != rd.rank {
            return domain(format!("character has length {}, expected {}", chi.len(), rd.rank));
        }
        let f = rd.functional(chi);
        let dropped = (0..rd.rank).filter(|i| !self.kept.contains(i));
        for i in dropped {
            if !f[i].is_zero() {
                return domain("character does not factor through the quotient");
            }
        }
        Ok(self.project(&f))
    }

    /// Index of the smallest cone containing `u`.
    pub fn smallest_cone_containing(&self, u: &[Rat]) -> Option<usize> {
        (0..self.cones.len())
            .filter(|&i| self.cones[i].contains_point(u))
            .min_by_key(|&i| self.cones[i].dimension())
    }

    pub fn check_axioms(&self, samples: usize, seed: u64, exec: Exec) -> FanAxiomReport {
        let n = self.cones.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let bad_pairs: Vec<(usize, usize)> = exec
            .map(&pairs, |&(i, j)| (!self.cones[i].meets_properly(&self.cones[j])).then_some((i, j)))
            .into_iter()
            .flatten()
            .collect();
        let points = random_points(self.ambient_dim(), samples, seed);
        let uncovered: Vec<QVec> = exec
            .map(&points, |p| {
                (!self.maximal.iter().any(|&m| self.cones[m].contains_point(p))).then(|| p.clone())
            })
            .into_iter()
            .flatten()
            .collect();
        let faces_closed = self.cones.iter().all(|c| c.faces().iter().all(|f| self.index.contains_key(f)));
        // In a complete fan every codimension-one cone bounds exactly two maximal cones.
        let d = self.ambient_dim();
        let walls_ok = d == 0
            || self
                .cones
                .iter()
                .filter(|c| c.dimension() + 1 == d)
                .all(|w| self.maximal.iter().filter(|&&m| w.is_face_of(&self.cones[m])).count() == 2);
        let pure = self.maximal.iter().all(|&m| self.cones[m].dimension() == d);
        FanAxiomReport {
            num_cones: n,
            pairs_checked: pairs.len(),
            bad_pairs,
            samples,
            uncovered,
            faces_closed,
            walls_ok: walls_ok && pure,
        }
    }

    pub fn report(&self) -> FanReport {
        FanReport {
            root_system: self.label.clone(),
            type_nodes: self.t,
            degenerate: self.is_degenerate(),
            quotient_coordinates: self.kept.iter().map(|i| i + 1).collect(),
            num_cones: self.cones.len(),
            num_maximal: self.maximal.len(),
            cones_by_dim: self.cones_by_dim(),
            cones: self
                .cones
                .iter()
                .enumerate()
                .map(|(i, c)| FanCone {
                    dim: c.dimension(),
                    maximal: self.maximal.contains(&i),
                    cone: c.to_json(),
                    relevant_parabolic: self.relevancy[i].first().cloned(),
                })
                .collect(),
            axioms: None,
        }
    }

    /// Canonical form of a boundary point: the residual vector is projected
    /// orthogonally (for the invariant product) off the span of the stratum.
    pub fn canonical(&self, x: &BoundaryPoint) -> BoundaryPoint {
        let mut span = x.stratum.lineality().to_vec();
        span.extend(x.stratum.gens().iter().cloned());
        BoundaryPoint {
            stratum: x.stratum.clone(),
            rep: project_out_metric(&self.gram, &span, &x.rep),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FanAxiomReport {
    pub num_cones: usize,
    pub pairs_checked: usize,
    pub bad_pairs: Vec<(usize, usize)>,
    pub samples: usize,
    #[serde(with = "crate::rational::serde_qmat")]
    pub uncovered: QMat,
    pub faces_closed: bool,
    pub walls_ok: bool,
}

impl FanAxiomReport {
    pub fn ok(&self) -> bool {
        self.bad_pairs.is_empty() && self.uncovered.is_empty() && self.faces_closed && self.walls_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FanCone {
    pub dim: usize,
    pub maximal: bool,
    #[serde(flatten)]
    pub cone: ConeJson,
    pub relevant_parabolic: Option<ParabolicLabel>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FanReport {
    pub root_system: String,
    #[serde(rename = "type")]
    pub type_nodes: ParabolicSubset,
    pub degenerate: bool,
    pub quotient_coordinates: Vec<usize>,
    pub num_cones: usize,
    pub num_maximal: usize,
    pub cones_by_dim: BTreeMap<usize, usize>,
    pub cones: Vec<FanCone>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<FanAxiomReport>,
}

/// Seeded random rational points with numerators in `-30..=30` and
/// denominators in `1..=6`.
pub fn random_points(dim: usize, n: usize, seed: u64) -> Vec<QVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| frac(rng.random_range(-30..=30), rng.random_range(1..=6)))
                .collect()
        })
        .collect()
}

/// Builds `F_t`: the cones `C_t(wP_t)` and all their faces, on the quotient
/// by the Dynkin components contained in `t`, each cone labelled by the
/// `t`-relevant parabolic defining it.
pub fn build_fan_ft(rd: &RootDatum, t: ParabolicSubset, exec: Exec) -> Result<Fan> {
    let deg = degenerate_part(rd, t);
    let kept: Vec<usize> = (0..rd.rank).filter(|&i| !deg.contains(i)).collect();
    let gram: QMat = kept
        .iter()
        .map(|&i| kept.iter().map(|&j| rd.gram[i][j].clone()).collect())
        .collect();
    let restrict = |c: RationalCone| c.restrict_coords(&kept);

    let base = ct_standard(rd, t);
    let reps = coset_representatives(rd, t);
    let maximal: Vec<RationalCone> = exec
        .map(&reps, |w| restrict(base.transform(&w.matrix)))
        .into_iter()
        .collect::<Result<_>>()?;
    let maximal: BTreeSet<RationalCone> = maximal.into_iter().collect();
    let mut all: BTreeSet<RationalCone> = BTreeSet::new();
    let maximal_list: Vec<RationalCone> = maximal.iter().cloned().collect();
    for faces in exec.map(&maximal_list, |c| c.faces()) {
        all.extend(faces);
    }
    let mut cones: Vec<RationalCone> = all.into_iter().collect();
    cones.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then_with(|| a.cmp(b)));
    let index: HashMap<RationalCone, usize> =
        cones.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let maximal_idx: Vec<usize> = maximal.iter().map(|c| index[c]).collect();

    let labelled: Vec<(ParabolicSubset, &WeylElement)> = ParabolicSubset::all(rd.rank)
        .filter(|&y| is_t_relevant(rd, t, y))
        .flat_map(|y| coset_representatives(rd, y).into_iter().map(move |w| (y, w)))
        .collect();
    let std_cones: HashMap<ParabolicSubset, RationalCone> = ParabolicSubset::all(rd.rank)
        .filter(|&y| is_t_relevant(rd, t, y))
        .map(|y| (y, cone_ct_of_q(rd, t, y)))
        .collect();
    let images: Vec<Result<RationalCone>> =
        exec.map(&labelled, |(y, w)| restrict(std_cones[y].transform(&w.matrix)));
    let mut relevancy: Vec<Vec<ParabolicLabel>> = vec![Vec::new(); cones.len()];
    for ((y, w), img) in labelled.iter().zip(images) {
        let img = img?;
        let Some(&i) = index.get(&img) else {
            return Err(Error::Internal(format!(
                "cone of relevant parabolic {y} (word {:?}) is not in the fan",
                w.word
            )));
        };
        relevancy[i].push(ParabolicLabel {
            y: *y,
            word: w.word.iter().map(|i| i + 1).collect(),
        });
    }
    Ok(Fan {
        label: rd.label.clone(),
        t,
        rank: rd.rank,
        kept,
        gram,
        cones,
        maximal: maximal_idx,
        relevancy,
        index,
    })
}

/// Hilbert basis of `M = {χ : (χ|u) ≤ 0 on the cone}` in the lattice `ℤ^d`
/// of simple-root coordinates, for the scalar product `gram`.
pub fn hilbert_basis(gram: &QMat, c: &RationalCone) -> Result<Vec<QVec>> {
    let d = c.ambient_dim();
    if !c.is_pointed() || !c.is_full_dimensional() {
        return domain("compactification needs a strictly convex, full-dimensional cone");
    }
    let cons: QMat = c.gens().iter().map(|g| mat_vec(gram, g)).collect();
    let m = RationalCone::from_h(d, &cons, &[]);
    let center = mat_vec(gram, &c.relint_point());
    let deg = |x: &QVec| -dot(x, &center);
    let rays: Vec<QVec> = m.gens().iter().map(|r| primitive(r)).collect();
    let bound: Rat = rays.iter().map(&deg).fold(Rat::zero(), |a, b| a + b);
    let mut lo = vec![Rat::zero(); d];
    let mut hi = vec![Rat::zero(); d];
    for r in &rays {
        let v = linalg::scale(r, &(bound.clone() / deg(r)));
        for i in 0..d {
            if v[i] < lo[i] {
                lo[i] = v[i].clone();
            }
            if v[i] > hi[i] {
                hi[i] = v[i].clone();
            }
        }
    }
    let lo: Vec<i64> = lo.iter().map(|x| i64::try_from(x.floor().to_integer()).unwrap()).collect();
    let hi: Vec<i64> = hi.iter().map(|x| i64::try_from(x.ceil().to_integer()).unwrap()).collect();
    let mut candidates: Vec<(Rat, QVec)> = Vec::new();
    let mut cur = lo.clone();
    loop {
        let v: QVec = cur.iter().map(|&x| Rat::from_integer(x.into())).collect();
        let dv = deg(&v);
        if dv.is_positive() && dv <= bound && m.contains_point(&v) {
            candidates.push((dv, v));
        }
        let mut k = 0;
        loop {
            if k == d {
                break;
            }
            cur[k] += 1;
            if cur[k] <= hi[k] {
                break;
            }
            cur[k] = lo[k];
            k += 1;
        }
        if k == d {
            break;
        }
    }
    candidates.sort();
    let mut basis: Vec<QVec> = Vec::new();
    for (i, (dv, v)) in candidates.iter().enumerate() {
        let reducible = candidates[..i]
            .iter()
            .any(|(dy, y)| dy < dv && m.contains_point(&linalg::sub(v, y)));
        if !reducible {
            basis.push(v.clone());
        }
    }
    Ok(basis)
}

#[derive(Clone, Debug)]
pub struct FaceStratum {
    pub face: RationalCone,
    /// Hilbert basis elements not identically 0 on the face: they vanish on
    /// the stratum.
    pub vanishing: Vec<usize>,
    /// Hilbert basis elements vanishing on the face: finite and non-zero on
    /// the stratum.
    pub finite: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CompactifiedCone {
    pub cone: RationalCone,
    pub monoid_basis: Vec<QVec>,
    pub faces: Vec<FaceStratum>,
}

pub fn compactify_cone(gram: &QMat, c: &RationalCone) -> Result<CompactifiedCone> {
    let monoid_basis = hilbert_basis(gram, c)?;
    let faces = c
        .faces()
        .into_iter()
        .map(|face| {
            let (finite, vanishing): (Vec<usize>, Vec<usize>) = (0..monoid_basis.len()).partition(|&i| {
                let f = mat_vec(gram, &monoid_basis[i]);
                face.gens().iter().all(|g| dot(&f, g).is_zero())
            });
            FaceStratum {
                face,
                vanishing,
                finite,
            }
        })
        .collect();
    Ok(CompactifiedCone {
        cone: c.clone(),
        monoid_basis,
        faces,
    })
}

/// A point of the compactified apartment: the stratum of a cone `D ∈ F_t`
/// and a residual vector meaningful modulo `span(D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub stratum: RationalCone,
    pub rep: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum ExtendedValue {
    Zero,
    Finite {
        #[serde(with = "crate::rational::serde_q")]
        exponent: Rat,
    },
    Infinite,
}

/// Value of the character `χ` (full coordinates) at a boundary point, in
/// exponent form: `0`, `q^e`, or `∞`.
pub fn extended_eval(rd: &RootDatum, fan: &Fan, chi: &[Rat], x: &BoundaryPoint) -> Result<ExtendedValue> {
    if fan.index_of(&x.stratum).is_none() {
        return domain("stratum cone is not a cone of the fan");
    }
    if x.rep.len() != fan.ambient_dim() {
        return domain("residual vector has the wrong dimension");
    }
    let f = fan.character_functional(rd, chi)?;
    if x.stratum.lineality().iter().any(|l| !dot(&f, l).is_zero()) {
        return Ok(ExtendedValue::Infinite);
    }
    let signs: Vec<i8> = x.stratum.gens().iter().map(|g| linalg::sign(&dot(&f, g))).collect();
    Ok(if signs.iter().all(|&s| s == 0) {
        ExtendedValue::Finite {
            exponent: dot(&f, &x.rep),
        }
    } else if signs.iter().all(|&s| s <= 0) {
        ExtendedValue::Zero
    } else {
        ExtendedValue::Infinite
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    fn a2() -> RootDatum {
        RootDatum::new("A2").unwrap()
    }

    fn ps(nodes: &[usize]) -> ParabolicSubset {
        ParabolicSubset::from_nodes(nodes)
    }

    #[test]
    fn weyl_cones_a2() {
        let rd = a2();
        let b = weyl_cone(&rd, ps(&[]));
        assert_eq!(b.ineqs().len(), 2);
        assert_eq!(b.dimension(), 2);
        assert_eq!(weyl_cone(&rd, ps(&[0, 1])), RationalCone::zero(2));
        let ray = weyl_cone(&rd, ps(&[0]));
        assert_eq!(ray.dimension(), 1);
        assert_eq!(ray.gens().len(), 1);
        assert!(rd.pair(&qvec(&[1, 0]), &ray.gens()[0]).is_zero());
        assert!(rd.pair(&qvec(&[0, 1]), &ray.gens()[0]).is_positive());
    }

    #[test]
    fn neighbourhood_cone_a2() {
        let rd = a2();
        let t = ps(&[1]);
        let c = cone_ct_of_type_parabolic(&rd, t, t).unwrap();
        let expected = RationalCone::from_h(
            2,
            &[linalg::neg(&rd.functional(&qvec(&[1, 0]))), linalg::neg(&rd.functional(&qvec(&[1, 1])))],
            &[],
        );
        assert_eq!(c, expected);
        assert!(cone_ct_of_type_parabolic(&rd, t, ps(&[0])).is_err());
        assert_eq!(cone_ct_of_type_parabolic(&rd, ps(&[0, 1]), ps(&[0, 1])).unwrap().dimension(), 2);
        assert_eq!(cone_ct_of_type_parabolic(&rd, ps(&[0, 1]), ps(&[0, 1])).unwrap().lineality().len(), 2);
    }

    #[test]
    fn cone_chain_a2() {
        let rd = a2();
        let c = cone_chain(&rd, ps(&[1]), ps(&[]));
        assert!(!c.relevant);
        assert_eq!(c.hull, ps(&[1]));
        assert!(c.weyl_in_ct && !c.ct_in_own_type && c.ct_in_hull_type);
        assert!(check_cone_chain(&rd, ps(&[1]), ps(&[])));
        let c = cone_chain(&rd, ps(&[1]), ps(&[0]));
        assert!(c.relevant && c.ct_in_own_type);
    }

    #[test]
    fn relevancy_a2() {
        let rd = a2();
        let t = ps(&[1]);
        assert!(!is_t_relevant(&rd, t, ps(&[])));
        assert!(is_t_relevant(&rd, t, ps(&[1])));
        assert!(is_t_relevant(&rd, t, ps(&[0])));
        assert_eq!(smallest_t_relevant(&rd, t, ps(&[])), ps(&[1]));
        assert_eq!(smallest_t_relevant(&rd, t, ps(&[0])), ps(&[0]));
        for y in ParabolicSubset::all(2) {
            assert!(is_t_relevant(&rd, ps(&[]), y));
        }
    }

    #[test]
    fn ct_of_q_faces() {
        let rd = a2();
        let t = ps(&[1]);
        assert_eq!(cone_ct_of_q(&rd, t, ps(&[])), ct_standard(&rd, t));
        let ray = cone_ct_of_q(&rd, t, ps(&[0]));
        assert_eq!(ray.dimension(), 1);
        assert!(ray.is_face_of(&ct_standard(&rd, t)));
        for y in ParabolicSubset::all(2) {
            assert_eq!(cone_ct_of_q(&rd, ps(&[]), y), weyl_cone(&rd, y));
        }
    }

    #[test]
    fn fan_counts_a2() {
        let rd = a2();
        let f = build_fan_ft(&rd, ps(&[]), Exec::Sequential).unwrap();
        assert_eq!(f.cones().len(), 13);
        assert_eq!(f.maximal().len(), 6);
        assert!(f.relevancy_is_bijective());
        let g = build_fan_ft(&rd, ps(&[1]), Exec::Sequential).unwrap();
        assert_eq!(g.cones().len(), 7);
        assert_eq!(g.maximal().len(), 3);
        assert!(g.relevancy_is_bijective());
        assert!(g.check_axioms(200, 1, Exec::Sequential).ok());
    }

    #[test]
    fn degenerate_a1() {
        let rd = RootDatum::new("A1").unwrap();
        let f = build_fan_ft(&rd, ps(&[0]), Exec::Sequential).unwrap();
        assert_eq!(f.ambient_dim(), 0);
        assert_eq!(f.cones().len(), 1);
        assert!(f.check_axioms(10, 0, Exec::Sequential).ok());
    }

    #[test]
    fn hilbert_basis_of_chamber() {
        let rd = a2();
        let c = weyl_cone(&rd, ps(&[]));
        let cc = compactify_cone(&rd.gram, &c).unwrap();
        let mut hb = cc.monoid_basis.clone();
        hb.sort();
        assert_eq!(hb, vec![qvec(&[-1, 0]), qvec(&[0, -1])]);
        assert_eq!(cc.faces.len(), 4);
        assert!(compactify_cone(&rd.gram, &weyl_cone(&rd, ps(&[0]))).is_err());
    }

    #[test]
    fn ray_in_rank_one() {
        let rd = RootDatum::new("A1").unwrap();
        let c = weyl_cone(&rd, ps(&[]));
        let cc = compactify_cone(&rd.gram, &c).unwrap();
        assert_eq!(cc.monoid_basis, vec![qvec(&[-1])]);
        assert_eq!(cc.faces.len(), 2);
    }

    #[test]
    fn extended_values() {
        let rd = a2();
        let t = ps(&[1]);
        let fan = build_fan_ft(&rd, t, Exec::Sequential).unwrap();
        let d = ct_standard(&rd, t);
        let x = BoundaryPoint {
            stratum: d,
            rep: qvec(&[0, 0]),
        };
        assert_eq!(extended_eval(&rd, &fan, &qvec(&[1, 0]), &x).unwrap(), ExtendedValue::Infinite);
        assert_eq!(extended_eval(&rd, &fan, &qvec(&[-1, 0]), &x).unwrap(), ExtendedValue::Zero);
        let o = BoundaryPoint {
            stratum: RationalCone::zero(2),
            rep: qvec(&[1, 2]),
        };
        assert_eq!(
            extended_eval(&rd, &fan, &qvec(&[1, 0]), &o).unwrap(),
            ExtendedValue::Finite {
                exponent: rd.pair(&qvec(&[1, 0]), &qvec(&[1, 2]))
            }
        );
        let stray = BoundaryPoint {
            stratum: weyl_cone(&rd, ps(&[])),
            rep: qvec(&[0, 0]),
        };
        assert!(extended_eval(&rd, &fan, &qvec(&[1, 0]), &stray).is_err());
    }
}
