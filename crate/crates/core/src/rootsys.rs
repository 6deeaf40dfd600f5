//! Root systems of split semisimple groups: roots, Weyl group, bases and
//! parabolic subsets, all in simple-root coordinates with an exact
//! W-invariant scalar product.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, dot, mat_mul, mat_vec, QMat};
use crate::rational::{rat, unit, QVec, Rat};

pub const SUPPORTED: [&str; 9] = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"];

/// A subset of the Dynkin nodes, i.e. of the simple roots. Bit `i` is node `i`
/// (0-based); the textual and JSON forms are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParabolicSubset(pub u32);

impl ParabolicSubset {
    pub fn empty() -> Self {
        ParabolicSubset(0)
    }

    pub fn full(rank: usize) -> Self {
        ParabolicSubset((1u32 << rank) - 1)
    }

    pub fn from_nodes(nodes: &[usize]) -> Self {
        ParabolicSubset(nodes.iter().fold(0, |m, &i| m | (1 << i)))
    }

    /// Parses a comma-separated list of 1-based node indices; `""` is empty.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let mut bits = 0u32;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let i: usize = part
                .parse()
                .map_err(|_| Error::Config(format!("bad node index {part:?}")))?;
            if i == 0 || i > rank {
                return Err(Error::Config(format!(
                    "node index {i} out of range 1..={rank}"
                )));
            }
            bits |= 1 << (i - 1);
        }
        Ok(ParabolicSubset(bits))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        ParabolicSubset(self.0 | 1 << i)
    }

    pub fn union(self, o: Self) -> Self {
        ParabolicSubset(self.0 | o.0)
    }

    pub fn intersect(self, o: Self) -> Self {
        ParabolicSubset(self.0 & o.0)
    }

    pub fn minus(self, o: Self) -> Self {
        ParabolicSubset(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn nodes(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    /// 1-based node list.
    pub fn to_indices(self) -> Vec<usize> {
        self.nodes().into_iter().map(|i| i + 1).collect()
    }

    pub fn all(rank: usize) -> impl Iterator<Item = ParabolicSubset> {
        (0u32..1 << rank).map(ParabolicSubset)
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for ParabolicSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_indices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParabolicSubset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.iter().any(|&i| i == 0 || i > 32) {
            return Err(serde::de::Error::custom("node indices are 1-based"));
        }
        Ok(ParabolicSubset::from_nodes(
            &v.into_iter().map(|i| i - 1).collect::<Vec<_>>(),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Reduced word; the element is `s_{word[0]} s_{word[1]} ⋯` (0-based nodes).
    pub word: Vec<usize>,
    /// Action on simple-root coordinates (column vectors).
    pub matrix: QMat,
}

impl WeylElement {
    pub fn apply(&self, v: &[Rat]) -> QVec {
        mat_vec(&self.matrix, v)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub label: String,
    pub rank: usize,
    /// `cartan[i][j] = ⟨α_i, α_j^∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    pub gram: QMat,
    pub simple_roots: Vec<QVec>,
    /// All roots, positive ones first, each block sorted by height then lexicographically.
    pub roots: Vec<QVec>,
    pub positive: Vec<QVec>,
    weyl: Vec<WeylElement>,
    root_index: HashMap<QVec, usize>,
}

fn cartan_for(label: &str) -> Option<Vec<Vec<i64>>> {
    let a = |n: usize| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    };
    Some(match label {
        "A1" => a(1),
        "A2" => a(2),
        "A3" => a(3),
        "A4" => a(4),
        "B2" => vec![vec![2, -2], vec![-1, 2]],
        "B3" => vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
        "C3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
        "D4" => vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ],
        "G2" => vec![vec![2, -1], vec![-3, 2]],
        _ => return None,
    })
}

/// Squared root lengths `d_i` with `C[i][j]·d_j = C[j][i]·d_i`, the shortest
/// root of each component having length² 2.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<Rat> {
    let n = cartan.len();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut comp = vec![start];
        d[start] = Some(Rat::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if j != i && cartan[i][j] != 0 && d[j].is_none() {
                    let di = d[i].clone().unwrap();
                    d[j] = Some(di * rat(cartan[j][i]) / rat(cartan[i][j]));
                    comp.push(j);
                    queue.push_back(j);
                }
            }
        }
        let min = comp.iter().map(|&i| d[i].clone().unwrap()).min().unwrap();
        for &i in &comp {
            d[i] = Some(d[i].clone().unwrap() * rat(2) / &min);
        }
    }
    d.into_iter().map(Option::unwrap).collect()
}

impl RootDatum {
    pub fn new(label: &str) -> Result<Self> {
        let cartan = cartan_for(label).ok_or_else(|| {
            Error::Config(format!(
                "unsupported root system {label:?} (supported: {})",
                SUPPORTED.join(", ")
            ))
        })?;
        Ok(Self::from_cartan(label, cartan))
    }

    fn from_cartan(label: &str, cartan: Vec<Vec<i64>>) -> Self {
        let rank = cartan.len();
        let d = symmetrizer(&cartan);
        let gram: QMat = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| rat(cartan[i][j]) * &d[j] / rat(2))
                    .collect()
            })
            .collect();
        let simple_roots: Vec<QVec> = (0..rank).map(|i| unit(rank, i)).collect();
        let mut rd = RootDatum {
            label: label.to_string(),
            rank,
            cartan,
            gram,
            simple_roots,
            roots: Vec::new(),
            positive: Vec::new(),
            weyl: Vec::new(),
            root_index: HashMap::new(),
        };
        rd.enumerate_roots();
        rd.enumerate_weyl();
        rd
    }

    fn enumerate_roots(&mut self) {
        let mut seen: Vec<QVec> = self.simple_roots.clone();
        let mut queue: VecDeque<QVec> = seen.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            for i in 0..self.rank {
                let s = self.reflect(i, &r);
                if !seen.contains(&s) {
                    seen.push(s.clone());
                    queue.push_back(s);
                }
            }
        }
        let mut pos: Vec<QVec> = seen.iter().filter(|r| is_nonneg(r)).cloned().collect();
        pos.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        let neg: Vec<QVec> = pos.iter().map(|r| linalg::neg(r)).collect();
        self.roots = pos.iter().chain(&neg).cloned().collect();
        self.positive = pos;
        self.root_index = self
            .roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
    }

    fn enumerate_weyl(&mut self) {
        let id = linalg::identity(self.rank);
        let gens: Vec<QMat> = (0..self.rank).map(|i| self.reflection_matrix(i)).collect();
        let mut elems = vec![WeylElement {
            word: Vec::new(),
            matrix: id.clone(),
        }];
        let mut seen: HashMap<QMat, usize> = HashMap::from([(id, 0)]);
        let mut head = 0;
        while head < elems.len() {
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(g, &elems[head].matrix);
                if seen.contains_key(&m) {
                    continue;
                }
                let mut word = vec![i];
                word.extend(&elems[head].word);
                seen.insert(m.clone(), elems.len());
                elems.push(WeylElement { word, matrix: m });
            }
            head += 1;
        }
        self.weyl = elems;
    }

    /// `⟨v, α_i^∨⟩` for `v` in simple-root coordinates.
    pub fn coroot_pairing(&self, v: &[Rat], i: usize) -> Rat {
        v.iter()
            .enumerate()
            .fold(Rat::zero(), |acc, (j, x)| acc + x * rat(self.cartan[j][i]))
    }

    pub fn reflect(&self, i: usize, v: &[Rat]) -> QVec {
        let mut out = v.to_vec();
        out[i] -= self.coroot_pairing(v, i);
        out
    }

    /// Reflection in an arbitrary root `beta`.
    pub fn reflect_root(&self, beta: &[Rat], v: &[Rat]) -> QVec {
        let k = rat(2) * self.pair(v, beta) / self.pair(beta, beta);
        linalg::axpy(v, &-k, beta)
    }

    fn reflection_matrix(&self, i: usize) -> QMat {
        (0..self.rank)
            .map(|r| {
                (0..self.rank)
                    .map(|c| {
                        let mut x = if r == c { Rat::one() } else { Rat::zero() };
                        if r == i {
                            x -= rat(self.cartan[c][i]);
                        }
                        x
                    })
                    .collect()
            })
            .collect()
    }

    /// The invariant scalar product `(a | b)`.
    pub fn pair(&self, a: &[Rat], b: &[Rat]) -> Rat {
        dot(a, &mat_vec(&self.gram, b))
    }

    /// Coefficient vector `f` with `f·u = (chi | u)`.
    pub fn functional(&self, chi: &[Rat]) -> QVec {
        mat_vec(&self.gram, chi)
    }

    pub fn weyl_elements(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn longest_element(&self) -> &WeylElement {
        self.weyl.iter().max_by_key(|w| w.len()).unwrap()
    }

    pub fn weyl_element(&self, word: &[usize]) -> WeylElement {
        let mut m = linalg::identity(self.rank);
        for &i in word.iter().rev() {
            m = mat_mul(&self.reflection_matrix(i), &m);
        }
        WeylElement {
            word: word.to_vec(),
            matrix: m,
        }
    }

    pub fn all_bases(&self) -> Vec<(WeylElement, Vec<QVec>)> {
        self.weyl
            .iter()
            .map(|w| {
                let basis = self.simple_roots.iter().map(|a| w.apply(a)).collect();
                (w.clone(), basis)
            })
            .collect()
    }

    pub fn is_root(&self, v: &[Rat]) -> bool {
        self.root_index.contains_key(v)
    }

    pub fn root_index(&self, v: &[Rat]) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    /// Roots in the span of the simple roots in `y`.
    pub fn levi_roots(&self, y: ParabolicSubset) -> Vec<QVec> {
        self.roots
            .iter()
            .filter(|r| support_within(r, y))
            .cloned()
            .collect()
    }

    /// `(Φ(L_Q), Φ(rad^u Q), Φ(rad^u Q^op))` for the standard parabolic of `y`.
    pub fn levi_and_radical_roots(&self, y: ParabolicSubset) -> (Vec<QVec>, Vec<QVec>, Vec<QVec>) {
        let levi = self.levi_roots(y);
        let rad: Vec<QVec> = self
            .positive
            .iter()
            .filter(|r| !support_within(r, y))
            .cloned()
            .collect();
        let rad_op = rad.iter().map(|r| linalg::neg(r)).collect();
        (levi, rad, rad_op)
    }

    /// Roots of the standard parabolic `P_Y`: `Φ⁺ ∪ Φ(L_Y)`.
    pub fn parabolic_roots(&self, y: ParabolicSubset) -> Vec<QVec> {
        self.roots
            .iter()
            .filter(|r| is_nonneg(r) || support_within(r, y))
            .cloned()
            .collect()
    }

    pub fn fundamental_weights(&self) -> Vec<QVec> {
        let c: QMat = self
            .cartan
            .iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect();
        linalg::inverse(&c).expect("Cartan matrix is invertible")
    }

    /// Converts fundamental-weight coordinates to simple-root coordinates.
    pub fn weight_from_fundamental(&self, coords: &[Rat]) -> QVec {
        let om = self.fundamental_weights();
        let mut v = vec![Rat::zero(); self.rank];
        for (c, w) in coords.iter().zip(&om) {
            v = linalg::axpy(&v, c, w);
        }
        v
    }

    /// Fundamental-weight coordinates `(⟨v, α_i^∨⟩)_i`.
    pub fn fundamental_coords(&self, v: &[Rat]) -> QVec {
        (0..self.rank).map(|i| self.coroot_pairing(v, i)).collect()
    }

    pub fn rho(&self) -> QVec {
        self.weight_from_fundamental(&vec![Rat::one(); self.rank])
    }

    pub fn is_dominant(&self, v: &[Rat]) -> bool {
        (0..self.rank).all(|i| !self.coroot_pairing(v, i).is_negative())
    }

    pub fn nodes_orthogonal(&self, i: usize, j: usize) -> bool {
        self.gram[i][j].is_zero()
    }

    /// Connected components of the Dynkin subdiagram on `y`.
    pub fn components(&self, y: ParabolicSubset) -> Vec<ParabolicSubset> {
        let mut left = y;
        let mut out = Vec::new();
        while let Some(&start) = left.nodes().first() {
            let mut comp = ParabolicSubset::empty().insert(start);
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in left.nodes() {
                    if !comp.contains(j) && !self.nodes_orthogonal(i, j) {
                        comp = comp.insert(j);
                        queue.push_back(j);
                    }
                }
            }
            left = left.minus(comp);
            out.push(comp);
        }
        out
    }

    /// `α_i ⊥ α_j` for every `j ∈ y`.
    pub fn orthogonal_to_set(&self, i: usize, y: ParabolicSubset) -> bool {
        y.nodes().into_iter().all(|j| self.nodes_orthogonal(i, j))
    }

    /// Order of the parabolic subgroup `W_Y`.
    pub fn parabolic_weyl_order(&self, y: ParabolicSubset) -> usize {
        self.weyl
            .iter()
            .filter(|w| w.word.iter().all(|&i| y.contains(i)))
            .count()
    }

    /// Matrix of `w` written in the weight lattice action; identical to the
    /// root action because everything lives in simple-root coordinates.
    pub fn preserves_gram(&self, w: &WeylElement) -> bool {
        let wt = linalg::transpose(&w.matrix);
        mat_mul(&mat_mul(&wt, &self.gram), &w.matrix) == self.gram
    }

    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson {
            label: self.label.clone(),
            cartan: self.cartan.clone(),
            roots: self.roots.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootDatumJson {
    pub label: String,
    pub cartan: Vec<Vec<i64>>,
    #[serde(with = "crate::rational::serde_qmat")]
    pub roots: Vec<QVec>,
}

pub fn height(v: &[Rat]) -> Rat {
    v.iter().fold(Rat::zero(), |a, x| a + x)
}

pub fn is_nonneg(v: &[Rat]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

/// Every non-zero coordinate of `v` lies in `y`.
pub fn support_within(v: &[Rat], y: ParabolicSubset) -> bool {
    v.iter().enumerate().all(|(i, x)| x.is_zero() || y.contains(i))
}

/// Indices of strictly positive coordinates.
pub fn positive_support(v: &[Rat]) -> ParabolicSubset {
    ParabolicSubset(
        v.iter()
            .enumerate()
            .filter(|(_, x)| x.is_positive())
            .fold(0, |m, (i, _)| m | 1 << i),
    )
}
