//! Rational polyhedral cones with exact H/V conversion by the double
//! description method.
//!
//! A cone is `{u : f·u ≤ 0 (f ∈ ineqs), e·u = 0 (e ∈ eqs)}` and equally
//! `lineality + cone(gens)`. Both forms are kept in a canonical shape so
//! that structural equality is set equality.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, axpy, dot, mat_vec, neg, primitive, project_out, rank, span_basis, QMat};
use crate::rational::{unit, zeros, QVec, Rat};

#[derive(Clone, Debug)]
pub struct RationalCone {
    dim: usize,
    ineqs: QMat,
    eqs: QMat,
    gens: QMat,
    lineality: QMat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new() -> Self {
        Bits(Vec::new())
    }

    fn set(&mut self, i: usize) {
        let w = i / 64;
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, a)| a & !o.0.get(i).copied().unwrap_or(0) == 0)
    }
}

/// Double description of `{u : c·u ≤ 0 for c ∈ constraints}`: returns a
/// lineality basis and the extreme rays modulo lineality.
fn double_description(dim: usize, constraints: &[QVec]) -> (QMat, QMat) {
    let mut lin: QMat = (0..dim).map(|i| unit(dim, i)).collect();
    let mut rays: Vec<(QVec, Bits)> = Vec::new();
    for (k, f) in constraints.iter().enumerate() {
        if let Some(p) = lin.iter().position(|l| !dot(f, l).is_zero()) {
            let mut l = lin.remove(p);
            let mut fl = dot(f, &l);
            if fl.is_positive() {
                l = neg(&l);
                fl = -fl;
            }
            for m in lin.iter_mut() {
                let c = dot(f, m) / &fl;
                if !c.is_zero() {
                    *m = axpy(m, &-c, &l);
                }
            }
            for (r, z) in rays.iter_mut() {
                let c = dot(f, r) / &fl;
                if !c.is_zero() {
                    *r = primitive(&axpy(r, &-c, &l));
                }
                z.set(k);
            }
            let mut z = Bits::new();
            for j in 0..k {
                z.set(j);
            }
            rays.push((primitive(&l), z));
            continue;
        }
        let vals: Vec<Rat> = rays.iter().map(|(r, _)| dot(f, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (i, (_, z)) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    z.set(k);
                }
            }
            continue;
        }
        let negs: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<(QVec, Bits)> = Vec::new();
        for (i, (r, z)) in rays.iter().enumerate() {
            if vals[i].is_zero() {
                let mut z = z.clone();
                z.set(k);
                next.push((r.clone(), z));
            } else if vals[i].is_negative() {
                next.push((r.clone(), z.clone()));
            }
        }
        for &p in &pos {
            for &n in &negs {
                let common = rays[p].1.and(&rays[n].1);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, (_, z))| i == p || i == n || !common.subset_of(z));
                if !adjacent {
                    continue;
                }
                let v = axpy(&linalg::scale(&rays[n].0, &vals[p]), &-vals[n].clone(), &rays[p].0);
                let mut z = common;
                z.set(k);
                next.push((primitive(&v), z));
            }
        }
        rays = next;
    }
    (lin, rays.into_iter().map(|(r, _)| r).collect())
}

/// Canonical lineality basis and rays: RREF lineality, rays projected to its
/// orthogonal complement, primitive, deduplicated and sorted.
fn canonical_v(dim: usize, lin: &[QVec], rays: &[QVec]) -> (QMat, QMat) {
    let lin = span_basis(lin, dim);
    let mut out: QMat = rays
        .iter()
        .map(|r| primitive(&project_out(&lin, r)))
        .filter(|r| !linalg::is_zero(r))
        .collect();
    out.sort();
    out.dedup();
    (lin, out)
}

impl RationalCone {
    /// Cone `{u : f·u ≤ 0, e·u = 0}`.
    pub fn from_h(dim: usize, ineqs: &[QVec], eqs: &[QVec]) -> Self {
        let (lineality, gens) = Self::h_to_v(dim, ineqs, eqs);
        let (eqs, ineqs) = Self::v_to_h(dim, &lineality, &gens);
        RationalCone {
            dim,
            ineqs,
            eqs,
            gens,
            lineality,
        }
    }

    /// Cone `span(lineality) + cone(gens)`.
    pub fn from_v(dim: usize, gens: &[QVec], lineality: &[QVec]) -> Self {
        let (eqs, ineqs) = Self::v_to_h(dim, lineality, gens);
        Self::from_h(dim, &ineqs, &eqs)
    }

    /// Only the V-form; the H-form fields are left empty. Used for the cheap
    /// structural comparisons in fan checks.
    fn v_only(dim: usize, ineqs: &[QVec], eqs: &[QVec]) -> Self {
        let (lineality, gens) = Self::h_to_v(dim, ineqs, eqs);
        RationalCone {
            dim,
            ineqs: Vec::new(),
            eqs: Vec::new(),
            gens,
            lineality,
        }
    }

    fn h_to_v(dim: usize, ineqs: &[QVec], eqs: &[QVec]) -> (QMat, QMat) {
        let mut cons: QMat = ineqs.to_vec();
        for e in eqs {
            cons.push(e.clone());
            cons.push(neg(e));
        }
        let (lin, rays) = double_description(dim, &cons);
        canonical_v(dim, &lin, &rays)
    }

    /// Returns (equations, facet normals) of the cone generated by the input.
    fn v_to_h(dim: usize, lineality: &[QVec], gens: &[QVec]) -> (QMat, QMat) {
        let mut cons: QMat = gens.to_vec();
        for l in lineality {
            cons.push(l.clone());
            cons.push(neg(l));
        }
        let (dlin, drays) = double_description(dim, &cons);
        canonical_v(dim, &dlin, &drays)
    }

    pub fn whole(dim: usize) -> Self {
        Self::from_h(dim, &[], &[])
    }

    pub fn zero(dim: usize) -> Self {
        let eqs: QMat = (0..dim).map(|i| unit(dim, i)).collect();
        Self::from_h(dim, &[], &eqs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn ineqs(&self) -> &[QVec] {
        &self.ineqs
    }

    pub fn eqs(&self) -> &[QVec] {
        &self.eqs
    }

    pub fn gens(&self) -> &[QVec] {
        &self.gens
    }

    pub fn lineality(&self) -> &[QVec] {
        &self.lineality
    }

    pub fn dimension(&self) -> usize {
        let mut rows = self.lineality.clone();
        rows.extend(self.gens.iter().cloned());
        rank(&rows, self.dim)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension() == self.dim
    }

    pub fn contains_point(&self, u: &[Rat]) -> bool {
        self.eqs.iter().all(|e| dot(e, u).is_zero())
            && self.ineqs.iter().all(|f| !dot(f, u).is_positive())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &RationalCone) -> bool {
        other.gens.iter().all(|g| self.contains_point(g))
            && other
                .lineality
                .iter()
                .all(|l| self.contains_point(l) && self.contains_point(&neg(l)))
    }

    pub fn intersect(&self, other: &RationalCone) -> RationalCone {
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().cloned());
        let mut eqs = self.eqs.clone();
        eqs.extend(other.eqs.iter().cloned());
        Self::from_h(self.dim, &ineqs, &eqs)
    }

    /// Point in the relative interior: the sum of the extreme rays.
    pub fn relint_point(&self) -> QVec {
        self.gens
            .iter()
            .fold(zeros(self.dim), |acc, g| linalg::add(&acc, g))
    }

    /// Facets of `self` vanishing at `u` (assumed to lie in the cone).
    fn tight_at(&self, u: &[Rat]) -> Vec<&QVec> {
        self.ineqs.iter().filter(|f| dot(f, u).is_zero()).collect()
    }

    /// Smallest face of `self` containing the point `u` (which must lie in it).
    pub fn face_containing(&self, u: &[Rat]) -> RationalCone {
        let tight: QMat = self.tight_at(u).into_iter().cloned().collect();
        self.face_cut(&tight)
    }

    fn face_cut(&self, tight: &[QVec]) -> RationalCone {
        let mut eqs = self.eqs.clone();
        eqs.extend(tight.iter().cloned());
        Self::from_h(self.dim, &self.ineqs, &eqs)
    }

    /// V-form key of the smallest face containing `u`, computed from the
    /// extreme rays without a conversion.
    fn face_key_containing(&self, u: &[Rat]) -> (QMat, QMat) {
        let tight = self.tight_at(u);
        let gens = self
            .gens
            .iter()
            .filter(|g| tight.iter().all(|f| dot(f, g).is_zero()))
            .cloned()
            .collect();
        (self.lineality.clone(), gens)
    }

    /// Whether `self` is a face of `c`.
    pub fn is_face_of(&self, c: &RationalCone) -> bool {
        c.contains(self) && {
            let (lin, gens) = c.face_key_containing(&self.relint_point());
            lin == self.lineality && gens == self.gens
        }
    }

    /// Whether `self ∩ other` is a face of both.
    pub fn meets_properly(&self, other: &RationalCone) -> bool {
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().cloned());
        let mut eqs = self.eqs.clone();
        eqs.extend(other.eqs.iter().cloned());
        let meet = Self::v_only(self.dim, &ineqs, &eqs);
        let x = meet.relint_point();
        [self, other].into_iter().all(|c| {
            let (lin, gens) = c.face_key_containing(&x);
            lin == meet.lineality && gens == meet.gens
        })
    }

    /// All faces, including `self`, sorted by dimension then canonically.
    pub fn faces(&self) -> Vec<RationalCone> {
        let mut out = vec![self.clone()];
        let mut head = 0;
        while head < out.len() {
            let f = out[head].clone();
            for n in f.ineqs.clone() {
                let g = f.face_cut(&[n]);
                if !out.contains(&g) {
                    out.push(g);
                }
            }
            head += 1;
        }
        out.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then_with(|| a.cmp(b)));
        out
    }

    /// Image under the invertible linear map `m`.
    pub fn transform(&self, m: &[QVec]) -> RationalCone {
        let gens: QMat = self.gens.iter().map(|g| mat_vec(m, g)).collect();
        let lin: QMat = self.lineality.iter().map(|l| mat_vec(m, l)).collect();
        Self::from_v(self.dim, &gens, &lin)
    }

    /// Restriction to the coordinates in `keep`, assuming the cone is a
    /// product of its trace on those coordinates with the full space on the
    /// others.
    pub fn restrict_coords(&self, keep: &[usize]) -> Result<RationalCone> {
        let pick = |v: &QVec| -> QVec { keep.iter().map(|&i| v[i].clone()).collect() };
        let dropped: Vec<usize> = (0..self.dim).filter(|i| !keep.contains(i)).collect();
        for f in self.ineqs.iter().chain(&self.eqs) {
            if dropped.iter().any(|&i| !f[i].is_zero()) {
                return Err(Error::Internal(
                    "cone depends on quotiented coordinates".into(),
                ));
            }
        }
        let ineqs: QMat = self.ineqs.iter().map(pick).collect();
        let eqs: QMat = self.eqs.iter().map(pick).collect();
        Ok(Self::from_h(keep.len(), &ineqs, &eqs))
    }

    fn key(&self) -> (&QMat, &QMat) {
        (&self.lineality, &self.gens)
    }

    pub fn to_json(&self) -> ConeJson {
        ConeJson {
            ineqs: self.ineqs.clone(),
            eqs: self.eqs.clone(),
            gens: self.gens.clone(),
            lineality: self.lineality.clone(),
        }
    }

    pub fn from_json(dim: usize, j: &ConeJson) -> Result<Self> {
        let ok = |m: &QMat| m.iter().all(|v| v.len() == dim);
        if !(ok(&j.ineqs) && ok(&j.eqs)) {
            return Err(Error::Parse(format!("cone rows must have length {dim}")));
        }
        Ok(Self::from_h(dim, &j.ineqs, &j.eqs))
    }
}

impl PartialEq for RationalCone {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.key() == other.key()
    }
}

impl Eq for RationalCone {}

impl Hash for RationalCone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.key().hash(state);
    }
}

impl PartialOrd for RationalCone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalCone {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.key().cmp(&other.key()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeJson {
    #[serde(with = "crate::rational::serde_qmat")]
    pub ineqs: QMat,
    #[serde(with = "crate::rational::serde_qmat", default)]
    pub eqs: QMat,
    #[serde(with = "crate::rational::serde_qmat", default)]
    pub gens: QMat,
    #[serde(with = "crate::rational::serde_qmat", default)]
    pub lineality: QMat,
}
