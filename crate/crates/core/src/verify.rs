//! The acceptance suite: ten exact (or tolerance-tagged) checks of the fan,
//! weight, seminorm and embedding machinery over a fixed sweep of small
//! root systems.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fans::{build_fan_ft, cone_chain, cone_ct_of_q, is_t_relevant, weyl_cone};
use crate::rational::{frac, rat, ExtRat, Rat};
use crate::rootsys::{ParabolicSubset, RootDatum};
use crate::satake::{injectivity_probe, pullback_fan_compare, weight_list_from_rep, WeightList};
use crate::seminorms::{
    canonical_representative, classify_sequence, domination_check, exterior_invariant, in_window,
    monomial_action, monomials_up_to, sheared_monomial, DiagSeminorm, LogAffineSequence, MonomialElement,
    Polynomial,
};
use crate::weights::{
    compare_cy_fan_with_ft, highest_weight, is_admissible_graph, is_admissible_support, other_types_with_fan,
    reflection_witness, saturate, support, weight_system, WeightSystem,
};

pub const SWEEP: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"];

pub const CRITERIA: [&str; 10] = [
    "fan-axioms",
    "relevancy-bijection",
    "admissibility",
    "fan-comparison",
    "pullback-fan",
    "sequence-limits",
    "representatives",
    "domination",
    "injectivity",
    "cone-chain",
];

/// Criteria that accept an injected fault, used as negative controls.
pub const FAULTABLE: [&str; 3] = ["pullback-fan", "sequence-limits", "cone-chain"];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub exec: Exec,
    pub fault: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 20240601,
            exec: Exec::default(),
            fault: None,
        }
    }
}

impl SuiteConfig {
    fn faulty(&self, id: &str) -> bool {
        self.fault.as_deref() == Some(id)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: String,
    pub passed: bool,
    pub checks: usize,
    pub summary: String,
    pub counterexamples: Vec<String>,
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {}: {} ({} checks)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.summary,
            self.checks
        )
    }

    pub fn timed_line(&self) -> String {
        format!("{} in {:.2}s", self.line(), self.seconds)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub parallel: bool,
    pub results: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

struct Outcome {
    checks: usize,
    summary: String,
    counterexamples: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            checks: 0,
            summary: String::new(),
            counterexamples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.counterexamples.push(what());
        }
    }
}

fn datum(label: &str) -> RootDatum {
    RootDatum::new(label).expect("swept labels are supported")
}

/// Highest weights of the sweep: every fundamental weight and `ρ`.
fn sweep_weights(rd: &RootDatum) -> Vec<(String, WeightSystem)> {
    let mut out: Vec<(String, Vec<i64>)> = (0..rd.rank)
        .map(|i| {
            let mut v = vec![0; rd.rank];
            v[i] = 1;
            (format!("omega{}", i + 1), v)
        })
        .collect();
    out.push(("rho".into(), vec![1; rd.rank]));
    out.into_iter()
        .map(|(name, v)| {
            let hw = highest_weight(rd, &v).expect("dominant");
            (name, weight_system(rd, &hw).expect("integral dominant"))
        })
        .collect()
}

fn rep(label: &str, hw: &[i64]) -> Result<(RootDatum, WeightSystem, WeightList)> {
    let rd = RootDatum::new(label)?;
    let ws = weight_system(&rd, &highest_weight(&rd, hw)?)?;
    let wl = weight_list_from_rep(&rd, &ws)?;
    Ok((rd, ws, wl))
}

fn fan_axioms(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (mut fans, mut pairs, mut samples) = (0, 0, 0);
    for label in SWEEP {
        let rd = datum(label);
        for t in ParabolicSubset::all(rd.rank) {
            let fan = build_fan_ft(&rd, t, cfg.exec)?;
            let r = fan.check_axioms(1000, cfg.seed, cfg.exec);
            fans += 1;
            pairs += r.pairs_checked;
            samples += r.samples;
            o.check(r.ok(), || {
                format!(
                    "{label} t={t}: {} bad pairs, {} uncovered, faces closed {}, walls {}",
                    r.bad_pairs.len(),
                    r.uncovered.len(),
                    r.faces_closed,
                    r.walls_ok
                )
            });
        }
    }
    o.summary = format!("{fans} fans, {pairs} cone pairs, {samples} sample points");
    Ok(o)
}

fn relevancy_bijection(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut fans = 0;
    for label in SWEEP {
        let rd = datum(label);
        let chamber = weyl_cone(&rd, ParabolicSubset::empty());
        let faces = chamber.faces();
        for t in ParabolicSubset::all(rd.rank) {
            let fan = build_fan_ft(&rd, t, cfg.exec)?;
            fans += 1;
            let hit: BTreeSet<usize> = faces
                .iter()
                .filter_map(|f| fan.smallest_cone_containing(&fan.project(&f.relint_point())))
                .collect();
            let relevant: Vec<ParabolicSubset> =
                ParabolicSubset::all(rd.rank).filter(|&y| is_t_relevant(&rd, t, y)).collect();
            o.check(hit.len() == relevant.len(), || {
                format!("{label} t={t}: {} cones meet the chamber, {} relevant parabolics", hit.len(), relevant.len())
            });
            let expected: BTreeSet<usize> = relevant
                .iter()
                .filter_map(|&y| fan.restrict(&cone_ct_of_q(&rd, t, y)).ok().and_then(|c| fan.index_of(&c)))
                .collect();
            o.check(hit == expected, || format!("{label} t={t}: chamber cones are not the relevant cones"));
            let total: usize = relevant
                .iter()
                .map(|&y| rd.weyl_order() / rd.parabolic_weyl_order(y))
                .sum();
            o.check(fan.relevancy_is_bijective() && total == fan.cones().len(), || {
                format!("{label} t={t}: {total} relevant parabolics for {} cones", fan.cones().len())
            });
        }
    }
    let rd = datum("A2");
    let fan = build_fan_ft(&rd, ParabolicSubset::from_nodes(&[1]), cfg.exec)?;
    o.check(fan.cones().len() == 7 && fan.maximal().len() == 3, || {
        format!("A2 t={{2}}: {} cones, {} maximal", fan.cones().len(), fan.maximal().len())
    });
    o.summary = format!("{fans} fans; A2 t={{2}} has 7 cones, 3 maximal");
    Ok(o)
}

fn admissibility(_cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut witnesses = 0;
    for label in SWEEP {
        let rd = datum(label);
        for (name, ws) in sweep_weights(&rd) {
            o.check(saturate(&rd, &ws.highest) == ws.weights, || {
                format!("{label} {name}: weight set differs from the root-string closure")
            });
            for y in ParabolicSubset::all(rd.rank) {
                let graph = is_admissible_graph(&rd, &ws, y)?;
                let (by_support, _) = is_admissible_support(&ws, y);
                o.check(graph == by_support, || format!("{label} {name} Y={y}: graph {graph}, support {by_support}"));
                if graph {
                    let w = reflection_witness(&rd, &ws, y);
                    let ok = w
                        .as_ref()
                        .map(|w| support(&ws.highest, &w.weight).ok() == Some(y))
                        .unwrap_or(false);
                    witnesses += 1;
                    o.check(ok, || format!("{label} {name} Y={y}: witness failed: {w:?}"));
                }
            }
        }
    }
    o.summary = format!("graph and support criteria agree; {witnesses} reflection witnesses validated");
    Ok(o)
}

fn fan_comparison(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (mut cones, mut uniq) = (0, 0);
    for label in SWEEP {
        let rd = datum(label);
        for (name, ws) in sweep_weights(&rd) {
            let r = compare_cy_fan_with_ft(&rd, &ws, cfg.exec)?;
            cones += r.entries.iter().filter(|e| e.admissible).count();
            o.check(r.ok() && r.bijection_ok && r.fan_equal, || {
                format!("{label} {name}: {:?}", r.counterexamples)
            });
            if rd.rank <= 2 {
                let fan = build_fan_ft(&rd, r.types.tau, cfg.exec)?;
                let others = other_types_with_fan(&rd, &fan);
                uniq += 1;
                o.check(others.is_empty(), || format!("{label} {name}: types {others:?} give the same fan"));
            }
        }
    }
    o.summary = format!(
        "{cones} cones C_Y equal to C_tau(P_Y), Y -> Y u Y* bijective, fans equal; type unique in {uniq} rank <= 2 cases"
    );
    Ok(o)
}

fn pullback_fan(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::new();
    let cases: [(&str, &[i64]); 5] = [("A1", &[1]), ("A2", &[1, 0]), ("A2", &[1, 1]), ("B2", &[1, 0]), ("B2", &[0, 1])];
    for (label, hw) in cases {
        let (rd, ws, mut wl) = rep(label, hw)?;
        if cfg.faulty("pullback-fan") {
            wl.lambdas.pop();
        }
        let r = pullback_fan_compare(&rd, &ws, &wl, cfg.exec)?;
        o.check(r.verdict(), || format!("{label} {hw:?}: {:?}", r.counterexamples));
    }
    o.summary = "pulled-back target fan equals F_tau for A1, A2 (standard, adjoint), B2 (omega1, omega2)".into();
    Ok(o)
}

fn random_exps(rng: &mut ChaCha8Rng, n: usize, allow_zero: bool) -> Vec<ExtRat> {
    loop {
        let v: Vec<ExtRat> = (0..n)
            .map(|_| {
                if allow_zero && rng.random_range(0..5) == 0 {
                    ExtRat::NegInf
                } else {
                    ExtRat::Finite(frac(rng.random_range(-12..=12), rng.random_range(1..=4)))
                }
            })
            .collect();
        if v.iter().any(ExtRat::is_finite) {
            return v;
        }
    }
}

fn sequence_limits(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5e9);
    let n = rat(1_000_000);
    let mut worst = 0.0f64;
    for case in 0..100 {
        let dim = rng.random_range(2..=5);
        let a: Vec<Rat> = (0..dim).map(|_| frac(rng.random_range(-10..=10), rng.random_range(1..=3))).collect();
        let b: Vec<Rat> = (0..dim).map(|_| frac(rng.random_range(-2..=2), rng.random_range(1..=2))).collect();
        let s = LogAffineSequence { a, b };
        let r = classify_sequence(&s)?;
        let mut limit: Vec<f64> = r.limit.exps().iter().map(|e| e.to_f64().exp2()).collect();
        if cfg.faulty("sequence-limits") {
            limit.reverse();
        }
        let numeric = s.normalized_values(&n);
        let err = limit.iter().zip(&numeric).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        worst = worst.max(err);
        o.check(err <= 1e-6, || format!("case {case}: {s:?} limit {limit:?} numeric {numeric:?}"));
    }
    o.summary = format!("100 log-affine sequences, max deviation {worst:.1e} at n = 10^6 (tolerance 1e-6)");
    Ok(o)
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.random_range(0..=i));
    }
    p
}

fn representatives(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x7e9);
    for case in 0..1000 {
        let dim = rng.random_range(2..=5);
        let x = DiagSeminorm::new(random_exps(&mut rng, dim, true))?;
        let c = canonical_representative(&x).seminorm;
        o.check(in_window(&c), || format!("case {case}: {c:?} not in the window"));
        o.check(canonical_representative(&c).seminorm == c, || format!("case {case}: not idempotent"));
        let g = MonomialElement {
            perm: random_perm(&mut rng, dim),
            nu: vec![rng.random_range(-3..=3); dim],
        };
        let moved = monomial_action(&g, &x)?;
        o.check(canonical_representative(&moved).seminorm == c, || {
            format!("case {case}: permutation and integral homothety change the representative")
        });
    }
    for case in 0..200 {
        let dim = rng.random_range(2..=5);
        let x = DiagSeminorm::new(random_exps(&mut rng, dim, true))?;
        let g = MonomialElement {
            perm: random_perm(&mut rng, dim),
            nu: vec![0; dim],
        };
        let gx = monomial_action(&g, &x)?;
        for m in 1..=dim {
            o.check(exterior_invariant(&gx, m)? == exterior_invariant(&x, m)?, || {
                format!("case {case}: exterior power {m} not invariant")
            });
        }
    }
    o.summary = "1000 representatives in the window and idempotent; exterior invariants fixed by 200 unit monomials".into();
    Ok(o)
}

fn domination(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xd0);
    let (mut samples, mut equal) = (0, 0);
    for case in 0..100 {
        let dim = rng.random_range(2..=3);
        let x = DiagSeminorm::new(random_exps(&mut rng, dim, true))?;
        let shear: Vec<Vec<i64>> = (0..dim).map(|_| (0..dim).map(|_| rng.random_range(-3..=3)).collect()).collect();
        let z = sheared_monomial(&x, &shear);
        let monos = monomials_up_to(dim, 3);
        let mut polys: Vec<Polynomial> = monos.iter().map(|m| vec![(m.clone(), Rat::one())]).collect();
        for _ in 0..10 {
            let k = rng.random_range(2..=3);
            polys.push(
                (0..k)
                    .map(|_| (monos[rng.random_range(0..monos.len())].clone(), rat(rng.random_range(1..=8))))
                    .collect(),
            );
        }
        let r = domination_check(&x, &z, &polys)?;
        samples += r.samples;
        equal += r.equalities;
        o.check(r.ok(), || format!("case {case}: z exceeds j(tau(z)) on samples {:?}", r.violations));
    }
    o.summary = format!("100 sheared monomial seminorms, {samples} polynomials, {equal} with equality");
    Ok(o)
}

fn injectivity(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut points = 0;
    for (label, hw) in [("A2", vec![1, 0]), ("B2", vec![1, 0])] {
        let (rd, ws, wl) = rep(label, &hw)?;
        let r = injectivity_probe(&rd, &ws, &wl, 50, cfg.seed, cfg.exec)?;
        points += r.points;
        o.check(r.ok(), || format!("{label} {hw:?}: {r:?}"));
    }
    o.summary = format!("{points} boundary and interior points with distinct images; 3 directions per stratum agree");
    Ok(o)
}

fn cone_chains(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (mut relevant, mut literal_fail) = (0, 0);
    for label in SWEEP {
        let rd = datum(label);
        let pairs: Vec<(ParabolicSubset, ParabolicSubset)> = ParabolicSubset::all(rd.rank)
            .flat_map(|t| ParabolicSubset::all(rd.rank).map(move |q| (t, q)))
            .collect();
        for ((t, q), c) in pairs.iter().zip(cfg.exec.map(&pairs, |&(t, q)| cone_chain(&rd, t, q))) {
            relevant += usize::from(c.relevant);
            literal_fail += usize::from(!c.ct_in_own_type);
            let top = if cfg.faulty("cone-chain") { c.ct_in_own_type } else { c.ct_in_hull_type };
            o.check(c.weyl_in_ct && top, || format!("{label} t={t} Q={q}: {c}"));
            if c.relevant {
                o.check(c.ct_in_own_type, || format!("{label} t={t} Q={q}: relevant but {c}"));
            }
        }
    }
    o.summary = format!(
        "c(Q) in C_t(Q) in C_t'(Q), t' the type of the smallest t-relevant parabolic over Q; \
         literal t(Q) holds on all {relevant} relevant triples, fails on {literal_fail} non-relevant ones"
    );
    Ok(o)
}

pub fn run_criterion(id: &str, cfg: &SuiteConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let o = match id {
        "fan-axioms" => fan_axioms(cfg),
        "relevancy-bijection" => relevancy_bijection(cfg),
        "admissibility" => admissibility(cfg),
        "fan-comparison" => fan_comparison(cfg),
        "pullback-fan" => pullback_fan(cfg),
        "sequence-limits" => sequence_limits(cfg),
        "representatives" => representatives(cfg),
        "domination" => domination(cfg),
        "injectivity" => injectivity(cfg),
        "cone-chain" => cone_chains(cfg),
        other => return Err(Error::Config(format!("unknown criterion {other:?}"))),
    };
    let (passed, checks, summary, counterexamples) = match o {
        Ok(o) => (o.counterexamples.is_empty(), o.checks, o.summary, o.counterexamples),
        Err(e) => (false, 0, format!("aborted: {e}"), vec![e.to_string()]),
    };
    Ok(CriterionResult {
        id: id.to_string(),
        passed,
        checks,
        summary,
        counterexamples,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Runs the selected criteria (all when `only` is empty) in the fixed order.
pub fn run_suite(only: &[String], cfg: &SuiteConfig) -> Result<SuiteReport> {
    for id in only {
        if !CRITERIA.contains(&id.as_str()) {
            return Err(Error::Config(format!(
                "unknown criterion {id:?}; expected one of {}",
                CRITERIA.join(", ")
            )));
        }
    }
    if let Some(f) = &cfg.fault {
        if !FAULTABLE.contains(&f.as_str()) {
            return Err(Error::Config(format!(
                "no fault can be injected into {f:?}; expected one of {}",
                FAULTABLE.join(", ")
            )));
        }
    }
    let results = CRITERIA
        .iter()
        .filter(|id| only.is_empty() || only.iter().any(|o| o == *id))
        .map(|id| run_criterion(id, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        seed: cfg.seed,
        parallel: cfg.exec == Exec::Parallel && Exec::is_parallel_available(),
        results,
    })
}
