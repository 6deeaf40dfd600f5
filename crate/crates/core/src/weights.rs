//! Weight systems of irreducible representations, supports, admissible
//! subsets of simple roots and the cones `C_Y` they define.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cone::RationalCone;
use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::fans::{build_fan_ft, cone_ct_of_q, coset_representatives, is_t_relevant, Fan};
use crate::linalg::{self, QMat};
use crate::rational::{rat, QVec, Rat};
use crate::rootsys::{height, is_nonneg, positive_support, ParabolicSubset, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    /// Highest weight `λ0(Δ)` in simple-root coordinates.
    pub highest: QVec,
    /// All weights, without multiplicities, by decreasing height then
    /// decreasing lexicographic order.
    pub weights: Vec<QVec>,
}

impl WeightSystem {
    pub fn contains(&self, mu: &[Rat]) -> bool {
        self.weights.iter().any(|w| w.as_slice() == mu)
    }
}

pub fn sort_weights(ws: &mut [QVec]) {
    ws.sort_by(|a, b| height(b).cmp(&height(a)).then_with(|| b.cmp(a)));
}

/// Highest weight given by integer coordinates in the fundamental weights.
pub fn highest_weight(rd: &RootDatum, fundamental: &[i64]) -> Result<QVec> {
    if fundamental.len() != rd.rank {
        return Err(Error::Config(format!(
            "highest weight needs {} coordinates, got {}",
            rd.rank,
            fundamental.len()
        )));
    }
    if fundamental.iter().any(|&c| c < 0) {
        return domain("highest weight is not dominant");
    }
    let c: QVec = fundamental.iter().map(|&x| rat(x)).collect();
    Ok(rd.weight_from_fundamental(&c))
}

/// The characteristic-zero weight set of the irreducible representation
/// with highest weight `lambda`: the W-orbits of the dominant weights `μ`
/// with `λ − μ ∈ ℤ≥0 Δ`.
pub fn weight_system(rd: &RootDatum, lambda: &[Rat]) -> Result<WeightSystem> {
    let fc = rd.fundamental_coords(lambda);
    if fc.iter().any(|x| !x.is_integer()) {
        return domain("highest weight is not integral");
    }
    if !rd.is_dominant(lambda) {
        return domain("highest weight is not dominant");
    }
    let lowest = rd.longest_element().apply(lambda);
    let span: Vec<i64> = linalg::sub(lambda, &lowest)
        .iter()
        .map(|x| i64::try_from(x.to_integer()).expect("small weight"))
        .collect();
    let mut dominant = Vec::new();
    let mut n = vec![0i64; rd.rank];
    loop {
        let mu: QVec = lambda.iter().zip(&n).map(|(l, &k)| l - rat(k)).collect();
        if rd.is_dominant(&mu) {
            dominant.push(mu);
        }
        let mut k = 0;
        while k < rd.rank {
            n[k] += 1;
            if n[k] <= span[k] {
                break;
            }
            n[k] = 0;
            k += 1;
        }
        if k == rd.rank {
            break;
        }
    }
    let mut all: BTreeSet<QVec> = BTreeSet::new();
    for mu in &dominant {
        for w in rd.weyl_elements() {
            all.insert(w.apply(mu));
        }
    }
    let mut weights: Vec<QVec> = all.into_iter().collect();
    sort_weights(&mut weights);
    Ok(WeightSystem {
        highest: lambda.to_vec(),
        weights,
    })
}

/// Closure of `{λ}` under all root strings: an independent construction of
/// the same weight set.
pub fn saturate(rd: &RootDatum, lambda: &[Rat]) -> Vec<QVec> {
    let mut seen: HashSet<QVec> = HashSet::from([lambda.to_vec()]);
    let mut queue = VecDeque::from([lambda.to_vec()]);
    while let Some(mu) = queue.pop_front() {
        for a in &rd.positive {
            let k = rat(2) * rd.pair(&mu, a) / rd.pair(a, a);
            let k = i64::try_from(k.to_integer()).unwrap();
            let steps: Box<dyn Iterator<Item = i64>> = if k >= 0 {
                Box::new(1..=k)
            } else {
                Box::new((k..=-1).rev())
            };
            for i in steps {
                let nu = linalg::axpy(&mu, &rat(-i), a);
                if seen.insert(nu.clone()) {
                    queue.push_back(nu);
                }
            }
        }
    }
    let mut out: Vec<QVec> = seen.into_iter().collect();
    sort_weights(&mut out);
    out
}

/// `[λ0 − μ]`: simple roots with positive coefficient in `λ0 − μ`.
pub fn support(hw: &[Rat], mu: &[Rat]) -> Result<ParabolicSubset> {
    let diff = linalg::sub(hw, mu);
    if diff.iter().any(|x| x.is_negative() || !x.is_integer()) {
        return domain("weight is not below the highest weight");
    }
    Ok(positive_support(&diff))
}

/// `w(λ0(Δ))`, the highest weight for the basis `w(Δ)`, cross-checked
/// against the unique maximal element for the order defined by `w(Δ)`.
pub fn highest_weight_wrt_basis(rd: &RootDatum, ws: &WeightSystem, word: &[usize]) -> Result<QVec> {
    let w = rd.weyl_element(word);
    let image = w.apply(&ws.highest);
    let winv = linalg::inverse(&w.matrix).expect("Weyl elements are invertible");
    let maximal: Vec<&QVec> = ws
        .weights
        .iter()
        .filter(|mu| {
            ws.weights
                .iter()
                .all(|nu| is_nonneg(&linalg::mat_vec(&winv, &linalg::sub(mu, nu))))
        })
        .collect();
    match maximal.as_slice() {
        [m] if **m == image => Ok(image),
        _ => Err(Error::Internal(format!(
            "no unique highest weight for the basis of word {word:?}"
        ))),
    }
}

/// `Z = {α ∈ Δ : (λ0 | α) = 0}`.
pub fn z_set(rd: &RootDatum, ws: &WeightSystem) -> ParabolicSubset {
    ParabolicSubset::from_nodes(
        &(0..rd.rank)
            .filter(|&i| rd.pair(&ws.highest, &rd.simple_roots[i]).is_zero())
            .collect::<Vec<_>>(),
    )
}

fn graph_connected(rd: &RootDatum, ws: &WeightSystem, y: ParabolicSubset) -> bool {
    let mut reached = ParabolicSubset::empty();
    let mut queue: VecDeque<usize> = y
        .nodes()
        .into_iter()
        .filter(|&i| !rd.pair(&ws.highest, &rd.simple_roots[i]).is_zero())
        .collect();
    for &i in &queue {
        reached = reached.insert(i);
    }
    while let Some(i) = queue.pop_front() {
        for j in y.nodes() {
            if !reached.contains(j) && !rd.nodes_orthogonal(i, j) {
                reached = reached.insert(j);
                queue.push_back(j);
            }
        }
    }
    reached == y
}

fn components_meet_complement(rd: &RootDatum, ws: &WeightSystem, y: ParabolicSubset) -> bool {
    let z = z_set(rd, ws);
    rd.components(y).into_iter().all(|c| !c.is_subset(z))
}

/// Whether `Y ⊔ {λ0}` is connected for the graph with an edge between two
/// vertices when their scalar product is non-zero. Cross-checked against
/// "every component of `Y` meets `Δ − Z`".
pub fn is_admissible_graph(rd: &RootDatum, ws: &WeightSystem, y: ParabolicSubset) -> Result<bool> {
    let a = graph_connected(rd, ws, y);
    let b = components_meet_complement(rd, ws, y);
    if a != b {
        return Err(Error::Internal(format!(
            "admissibility criteria disagree on {y}"
        )));
    }
    Ok(a)
}

/// Searches the weight system for a weight `μ` with `[λ0 − μ] = Y`.
pub fn is_admissible_support(ws: &WeightSystem, y: ParabolicSubset) -> (bool, Option<QVec>) {
    let witness = ws
        .weights
        .iter()
        .find(|mu| support(&ws.highest, mu).map(|s| s == y).unwrap_or(false))
        .cloned();
    (witness.is_some(), witness)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionWitness {
    /// Simple roots in the order they are applied (1-based).
    pub sequence: Vec<usize>,
    /// Weight after each reflection.
    #[serde(with = "crate::rational::serde_qmat")]
    pub steps: QMat,
    #[serde(with = "crate::rational::serde_qvec")]
    pub weight: QVec,
}

/// Builds a weight of support `Y` by reflecting `λ0` successively in the
/// roots of each component of `Y`, starting at a root not orthogonal to
/// `λ0` and always continuing with a neighbour of the roots already used.
/// The support is checked after every step.
pub fn reflection_witness(rd: &RootDatum, ws: &WeightSystem, y: ParabolicSubset) -> Result<ReflectionWitness> {
    if !is_admissible_graph(rd, ws, y)? {
        return domain(format!("{y} is not admissible"));
    }
    let mut order = Vec::new();
    for comp in rd.components(y) {
        let start = comp
            .nodes()
            .into_iter()
            .find(|&i| !rd.pair(&ws.highest, &rd.simple_roots[i]).is_zero())
            .expect("admissible components meet the complement of Z");
        let mut done = ParabolicSubset::empty().insert(start);
        let mut queue = VecDeque::from([start]);
        order.push(start);
        while let Some(i) = queue.pop_front() {
            for j in comp.nodes() {
                if !done.contains(j) && !rd.nodes_orthogonal(i, j) {
                    done = done.insert(j);
                    order.push(j);
                    queue.push_back(j);
                }
            }
        }
    }
    let mut mu = ws.highest.clone();
    let mut steps = Vec::new();
    let mut prefix = ParabolicSubset::empty();
    for &b in &order {
        mu = rd.reflect(b, &mu);
        prefix = prefix.insert(b);
        if support(&ws.highest, &mu)? != prefix || !ws.contains(&mu) {
            return Err(Error::Internal(format!(
                "support after reflecting in node {} is not the processed prefix",
                b + 1
            )));
        }
        steps.push(mu.clone());
    }
    Ok(ReflectionWitness {
        sequence: order.iter().map(|i| i + 1).collect(),
        steps,
        weight: mu,
    })
}

/// `Y* = {α ∈ Δ : (α | λ0) = 0 and α ⊥ Y}`.
pub fn y_star(rd: &RootDatum, ws: &WeightSystem, y: ParabolicSubset) -> ParabolicSubset {
    let z = z_set(rd, ws);
    ParabolicSubset::from_nodes(
        &z.nodes()
            .into_iter()
            .filter(|&i| !y.contains(i) && rd.orthogonal_to_set(i, y))
            .collect::<Vec<_>>(),
    )
}

/// `C_Y = {u : (α|u) = 0 for α ∈ Y, (λ0 − λ | u) ≥ 0 for every weight λ
/// with [λ0 − λ] ⊄ Y}`.
pub fn cone_cy(rd: &RootDatum, ws: &WeightSystem, y: ParabolicSubset) -> RationalCone {
    let eqs: QMat = y.nodes().into_iter().map(|i| rd.functional(&rd.simple_roots[i])).collect();
    let ineqs: QMat = ws
        .weights
        .iter()
        .filter(|mu| !positive_support(&linalg::sub(&ws.highest, mu)).is_subset(y))
        .map(|mu| linalg::neg(&rd.functional(&linalg::sub(&ws.highest, mu))))
        .collect();
    RationalCone::from_h(rd.rank, &ineqs, &eqs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RepTypes {
    pub tau: ParabolicSubset,
    pub t_rho: ParabolicSubset,
    pub t_rho_check: ParabolicSubset,
}

/// Type `τ` (the parabolic `P_Z`), and the types attached to the highest
/// weight lines of the representation and of its dual (`−w0 λ0`).
pub fn rep_types(rd: &RootDatum, ws: &WeightSystem) -> RepTypes {
    let z = z_set(rd, ws);
    let dual = linalg::neg(&rd.longest_element().apply(&ws.highest));
    let dual_ws = WeightSystem {
        highest: dual,
        weights: Vec::new(),
    };
    RepTypes {
        tau: z,
        t_rho: z,
        t_rho_check: z_set(rd, &dual_ws),
    }
}

/// The highest weight is non-orthogonal to some simple root of every Dynkin
/// component, i.e. `τ` is non-degenerate.
pub fn is_faithful(rd: &RootDatum, ws: &WeightSystem) -> bool {
    let z = z_set(rd, ws);
    rd.components(ParabolicSubset::full(rd.rank))
        .into_iter()
        .all(|c| !c.is_subset(z))
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleEntry {
    pub y: ParabolicSubset,
    pub admissible: bool,
    #[serde(serialize_with = "serialize_opt_qvec")]
    pub witness: Option<QVec>,
    pub y_star: ParabolicSubset,
    pub cone_matches: bool,
}

fn serialize_opt_qvec<S: serde::Serializer>(v: &Option<QVec>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.iter().map(ToString::to_string).collect::<Vec<_>>()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CyComparison {
    pub types: RepTypes,
    pub faithful: bool,
    pub entries: Vec<AdmissibleEntry>,
    /// `Y ↦ Y ∪ Y*` is a bijection onto the `τ`-relevant subsets.
    pub bijection_ok: bool,
    /// The W-translates of the cones `C_Y` are exactly the cones of `F_τ`.
    pub fan_equal: bool,
    pub counterexamples: Vec<String>,
}

impl CyComparison {
    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn cone_set_of(rd: &RootDatum, fan: &Fan, cones: &[(ParabolicSubset, RationalCone)]) -> Result<BTreeSet<RationalCone>> {
    let mut out = BTreeSet::new();
    for (y, c) in cones {
        for w in coset_representatives(rd, *y) {
            out.insert(fan.restrict(&c.transform(&w.matrix))?);
        }
    }
    Ok(out)
}

/// Compares the cones `C_Y` with the cones `C_τ(P_Y)` of `F_τ` for every
/// admissible `Y`, checks the bijection `Y ↦ Y ∪ Y*` onto `τ`-relevant
/// subsets, and compares the fans they generate.
pub fn compare_cy_fan_with_ft(rd: &RootDatum, ws: &WeightSystem, exec: Exec) -> Result<CyComparison> {
    let types = rep_types(rd, ws);
    let tau = types.tau;
    let mut entries = Vec::new();
    let mut counterexamples = Vec::new();
    let mut images = BTreeSet::new();
    let mut admissible_cones = Vec::new();
    for y in ParabolicSubset::all(rd.rank) {
        let admissible = is_admissible_graph(rd, ws, y)?;
        let (by_support, witness) = is_admissible_support(ws, y);
        if admissible != by_support {
            counterexamples.push(format!("graph and support criteria disagree on {y}"));
        }
        let ys = y_star(rd, ws, y);
        let mut cone_matches = true;
        if admissible {
            let cy = cone_cy(rd, ws, y);
            cone_matches = cy == cone_ct_of_q(rd, tau, y);
            if !cone_matches {
                counterexamples.push(format!("C_Y differs from C_tau(P_Y) for Y = {y}"));
            }
            if !images.insert(y.union(ys)) {
                counterexamples.push(format!("Y ∪ Y* = {} is hit twice", y.union(ys)));
            }
            admissible_cones.push((y, cy));
        }
        entries.push(AdmissibleEntry {
            y,
            admissible,
            witness,
            y_star: ys,
            cone_matches,
        });
    }
    let relevant: BTreeSet<ParabolicSubset> = ParabolicSubset::all(rd.rank)
        .filter(|&y| is_t_relevant(rd, tau, y))
        .collect();
    let bijection_ok = images == relevant;
    if !bijection_ok {
        counterexamples.push("Y ↦ Y ∪ Y* is not onto the tau-relevant subsets".into());
    }
    let fan = build_fan_ft(rd, tau, exec)?;
    let from_weights = cone_set_of(rd, &fan, &admissible_cones)?;
    let fan_cones: BTreeSet<RationalCone> = fan.cones().iter().cloned().collect();
    let fan_equal = from_weights == fan_cones;
    if !fan_equal {
        counterexamples.push("the W-translates of the cones C_Y differ from F_tau".into());
    }
    Ok(CyComparison {
        types,
        faithful: is_faithful(rd, ws),
        entries,
        bijection_ok,
        fan_equal,
        counterexamples,
    })
}

/// Types other than `fan.t` whose fan has exactly the same cones.
pub fn other_types_with_fan(rd: &RootDatum, fan: &Fan) -> Vec<ParabolicSubset> {
    let cones: BTreeSet<&RationalCone> = fan.cones().iter().collect();
    ParabolicSubset::all(rd.rank)
        .filter(|&t| t != fan.t)
        .filter(|&t| {
            build_fan_ft(rd, t, Exec::Sequential)
                .map(|f| f.kept == fan.kept && f.cones().iter().collect::<BTreeSet<_>>() == cones)
                .unwrap_or(false)
        })
        .collect()
}
