use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use satake_core::cone::ConeJson;
use satake_core::exec::{configure_threads, Exec};
use satake_core::fans::{build_fan_ft, cone_chain, cone_ct_of_q, smallest_t_relevant, ConeChain};
use satake_core::rational::{parse_rat, ExtRat, QVec};
use satake_core::satake::{
    apartment_point, embedding_matrix, injectivity_probe, pullback_fan_compare, weight_list_from_rep,
    weight_embedding, InjectivityReport, PreimageEntry,
};
use satake_core::seminorms::{
    canonical_representative, classify_sequence, exterior_invariant, kernel_and_stratum, stabilizer_description,
    CanonicalForm, DiagSeminorm, LogAffineSequence, SeminormClass, StabilizerDescription, Stratum,
};
use satake_core::verify::{run_suite, SuiteConfig};
use satake_core::weights::{
    cone_cy, compare_cy_fan_with_ft, highest_weight, highest_weight_wrt_basis, reflection_witness, support,
    weight_system, RepTypes, WeightSystem,
};
use satake_core::{Error, ParabolicSubset, RootDatum};

#[derive(Parser)]
#[command(name = "satake-fans", version, about = "Fans, admissible sets and seminorm models of compactified apartments")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the fan F_t and check the fan axioms.
    Fan {
        #[arg(long, short)]
        root_system: String,
        /// Comma-separated 1-based nodes of the type t.
        #[arg(long = "type", default_value = "")]
        type_nodes: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
    },
    /// Relevancy, cones C_t(Q) and cone inclusions for standard parabolics.
    Relevant {
        #[arg(long, short)]
        root_system: String,
        #[arg(long = "type", default_value = "")]
        type_nodes: String,
        /// Restrict to one standard parabolic, given by its Levi nodes.
        #[arg(long)]
        parabolic: Option<String>,
    },
    /// Admissible subsets of a highest weight and the cones C_Y.
    Admissible {
        #[arg(long, short)]
        root_system: String,
        /// Coordinates in the fundamental weights, comma-separated.
        #[arg(long)]
        highest_weight: String,
    },
    /// Weight system of an irreducible representation.
    Weights {
        #[arg(long, short)]
        root_system: String,
        #[arg(long)]
        highest_weight: String,
        /// Also report the highest weight for the basis w(Δ), w given by a
        /// word in 1-based simple reflections.
        #[arg(long)]
        basis_word: Option<String>,
    },
    /// Weight embedding, pulled-back fan and injectivity probe.
    Embed {
        #[arg(long, short)]
        root_system: String,
        #[arg(long)]
        highest_weight: String,
        /// Apartment point in simple-root coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Number of random interior points for the injectivity probe.
        #[arg(long)]
        probe: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Limit of a log-affine sequence of seminorms.
    ClassifySeq {
        /// JSON file `{"a": [...], "b": [...]}`; `-` reads stdin.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Stratum, canonical representative, invariants and stabilizer of a
    /// diagonal seminorm.
    Seminorm {
        /// JSON file `{"exps": [...], "q": 2}`; `-` reads stdin.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Comma-separated exponents, `-inf` for zero.
        #[arg(long, allow_hyphen_values = true)]
        exps: Option<String>,
    },
    /// Run the acceptance suite.
    Verify {
        /// Comma-separated criterion ids.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
        /// Deliberately break one criterion, as a negative control.
        #[arg(long)]
        inject_fault: Option<String>,
    },
}

struct Output {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

fn emit<T: Serialize>(value: &T, text: String, ok: bool) -> Result<Output, Error> {
    let json = serde_json::to_value(value).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(Output { text, json, ok })
}

fn datum(label: &str) -> Result<RootDatum, Error> {
    RootDatum::new(label)
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Result<T, Error>) -> Result<Vec<T>, Error> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(f).collect()
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Error> {
    parse_list(s, |p| p.parse().map_err(|_| Error::Parse(format!("not an integer: {p:?}"))))
}

fn parse_qvec(s: &str) -> Result<QVec, Error> {
    parse_list(s, parse_rat)
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Config(e.to_string()))?;
    } else {
        s = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn parse_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T, Error> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

fn rep(label: &str, hw: &str) -> Result<(RootDatum, WeightSystem), Error> {
    let rd = datum(label)?;
    let ws = weight_system(&rd, &highest_weight(&rd, &parse_ints(hw)?)?)?;
    Ok((rd, ws))
}

fn fmt_vec(v: &[satake_core::Rat]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn cmd_fan(root_system: &str, type_nodes: &str, samples: usize, seed: u64, sequential: bool) -> Result<Output, Error> {
    let rd = datum(root_system)?;
    let t = ParabolicSubset::parse(type_nodes, rd.rank)?;
    let fan = build_fan_ft(&rd, t, exec(sequential))?;
    let axioms = fan.check_axioms(samples, seed, exec(sequential));
    let ok = axioms.ok() && fan.relevancy_is_bijective();
    let mut report = fan.report();
    report.axioms = Some(axioms);
    if fan.is_degenerate() {
        eprintln!(
            "warning: type {t} contains a whole Dynkin component; the fan lives on the quotient coordinates {:?}",
            report.quotient_coordinates
        );
    }
    let mut text = format!(
        "{} t={t}: {} cones, {} maximal\n",
        rd.label,
        fan.cones().len(),
        fan.maximal().len()
    );
    for (d, n) in fan.cones_by_dim() {
        text += &format!("  dim {d}: {n}\n");
    }
    for (i, c) in fan.cones().iter().enumerate() {
        let label = fan
            .relevancy(i)
            .first()
            .map(|l| format!("Y={} w={:?}", l.y, l.word))
            .unwrap_or_default();
        let gens: Vec<String> = c.gens().iter().map(|g| fmt_vec(g)).collect();
        text += &format!("  cone {i:>3} dim {} gens [{}] {label}\n", c.dimension(), gens.join(" "));
    }
    text += &format!("fan axioms: {}\n", if ok { "ok" } else { "FAILED" });
    emit(&report, text, ok)
}

#[derive(Serialize)]
struct RelevantEntry {
    parabolic: ParabolicSubset,
    relevant: bool,
    smallest_relevant: ParabolicSubset,
    cone: ConeJson,
    chain: ConeChain,
}

#[derive(Serialize)]
struct RelevantReport {
    root_system: String,
    #[serde(rename = "type")]
    type_nodes: ParabolicSubset,
    parabolics: Vec<RelevantEntry>,
}

fn cmd_relevant(root_system: &str, type_nodes: &str, parabolic: Option<&str>) -> Result<Output, Error> {
    let rd = datum(root_system)?;
    let t = ParabolicSubset::parse(type_nodes, rd.rank)?;
    let qs: Vec<ParabolicSubset> = match parabolic {
        Some(p) => vec![ParabolicSubset::parse(p, rd.rank)?],
        None => ParabolicSubset::all(rd.rank).collect(),
    };
    let mut text = format!("{} t={t}\n", rd.label);
    let parabolics: Vec<RelevantEntry> = qs
        .into_iter()
        .map(|q| {
            let chain = cone_chain(&rd, t, q);
            let cone = cone_ct_of_q(&rd, t, q);
            text += &format!(
                "  Q={q}: relevant {}, smallest relevant {}, dim C_t(Q) {}, chain {}\n",
                chain.relevant,
                chain.hull,
                cone.dimension(),
                chain.weyl_in_ct && chain.ct_in_hull_type
            );
            RelevantEntry {
                parabolic: q,
                relevant: chain.relevant,
                smallest_relevant: smallest_t_relevant(&rd, t, q),
                cone: cone.to_json(),
                chain,
            }
        })
        .collect();
    emit(
        &RelevantReport {
            root_system: rd.label.clone(),
            type_nodes: t,
            parabolics,
        },
        text,
        true,
    )
}

#[derive(Serialize)]
struct AdmissibleEntry {
    y: ParabolicSubset,
    admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_weight: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reflection_sequence: Option<Vec<usize>>,
    y_star: ParabolicSubset,
    #[serde(skip_serializing_if = "Option::is_none")]
    cone: Option<ConeJson>,
    cone_matches: bool,
}

#[derive(Serialize)]
struct AdmissibleReport {
    root_system: String,
    highest_weight: Vec<String>,
    types: RepTypes,
    faithful: bool,
    subsets: Vec<AdmissibleEntry>,
    bijection_ok: bool,
    fan_equal: bool,
    counterexamples: Vec<String>,
}

fn strings(v: &[satake_core::Rat]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn cmd_admissible(root_system: &str, hw: &str) -> Result<Output, Error> {
    let (rd, ws) = rep(root_system, hw)?;
    let cmp = compare_cy_fan_with_ft(&rd, &ws, Exec::Parallel)?;
    let mut text = format!(
        "{} highest weight {}: Z = tau = {}, dual type {}\n",
        rd.label,
        fmt_vec(&ws.highest),
        cmp.types.tau,
        cmp.types.t_rho_check
    );
    let mut subsets = Vec::new();
    for e in &cmp.entries {
        let witness = if e.admissible { Some(reflection_witness(&rd, &ws, e.y)?) } else { None };
        text += &format!(
            "  Y={}: {}{}\n",
            e.y,
            if e.admissible { "admissible" } else { "not admissible" },
            witness
                .as_ref()
                .map(|w| format!(", reflections {:?}, Y*={}, C_Y = C_tau(P_Y): {}", w.sequence, e.y_star, e.cone_matches))
                .unwrap_or_default()
        );
        subsets.push(AdmissibleEntry {
            y: e.y,
            admissible: e.admissible,
            witness_weight: e.witness.as_ref().map(|w| strings(w)),
            reflection_sequence: witness.map(|w| w.sequence),
            y_star: e.y_star,
            cone: e.admissible.then(|| cone_cy(&rd, &ws, e.y).to_json()),
            cone_matches: e.cone_matches,
        });
    }
    text += &format!(
        "bijection onto tau-relevant subsets: {}; fans equal: {}\n",
        cmp.bijection_ok, cmp.fan_equal
    );
    let ok = cmp.ok();
    emit(
        &AdmissibleReport {
            root_system: rd.label.clone(),
            highest_weight: strings(&ws.highest),
            types: cmp.types,
            faithful: cmp.faithful,
            subsets,
            bijection_ok: cmp.bijection_ok,
            fan_equal: cmp.fan_equal,
            counterexamples: cmp.counterexamples,
        },
        text,
        ok,
    )
}

#[derive(Serialize)]
struct WeightEntry {
    simple_root_coords: Vec<String>,
    fundamental_coords: Vec<String>,
    support: ParabolicSubset,
}

#[derive(Serialize)]
struct WeightsReport {
    root_system: String,
    highest_weight: Vec<String>,
    count: usize,
    weights: Vec<WeightEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis_highest_weight: Option<Vec<String>>,
}

fn cmd_weights(root_system: &str, hw: &str, basis_word: Option<&str>) -> Result<Output, Error> {
    let (rd, ws) = rep(root_system, hw)?;
    let mut text = format!("{} highest weight {}: {} weights\n", rd.label, fmt_vec(&ws.highest), ws.weights.len());
    let weights: Vec<WeightEntry> = ws
        .weights
        .iter()
        .map(|w| {
            let f = rd.fundamental_coords(w);
            let s = support(&ws.highest, w)?;
            text += &format!("  {} = {} in fundamental weights, support {s}\n", fmt_vec(w), fmt_vec(&f));
            Ok(WeightEntry {
                simple_root_coords: strings(w),
                fundamental_coords: strings(&f),
                support: s,
            })
        })
        .collect::<Result<_, Error>>()?;
    let basis_highest_weight = match basis_word {
        Some(word) => {
            let word: Vec<usize> = parse_ints(word)?
                .into_iter()
                .map(|i| {
                    usize::try_from(i)
                        .ok()
                        .filter(|&i| i >= 1 && i <= rd.rank)
                        .map(|i| i - 1)
                        .ok_or_else(|| Error::Config(format!("reflection index {i} out of range")))
                })
                .collect::<Result<_, _>>()?;
            let h = highest_weight_wrt_basis(&rd, &ws, &word)?;
            text += &format!("highest weight for the basis w(Δ): {}\n", fmt_vec(&h));
            Some(strings(&h))
        }
        None => None,
    };
    emit(
        &WeightsReport {
            root_system: rd.label.clone(),
            highest_weight: strings(&ws.highest),
            count: weights.len(),
            weights,
            basis_highest_weight,
        },
        text,
        true,
    )
}

#[derive(Serialize)]
struct EmbedReport {
    weights: Vec<Vec<String>>,
    matrix: Vec<Vec<String>>,
    fan_match: bool,
    preimages: Vec<PreimageEntry>,
    counterexamples: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    image: Option<SeminormClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    injectivity: Option<InjectivityReport>,
}

fn cmd_embed(root_system: &str, hw: &str, point: Option<&str>, probe: Option<usize>, seed: u64) -> Result<Output, Error> {
    let (rd, ws) = rep(root_system, hw)?;
    let wl = weight_list_from_rep(&rd, &ws)?;
    let cmp = pullback_fan_compare(&rd, &ws, &wl, Exec::Parallel)?;
    let mut text = format!(
        "{} highest weight {}: d = {}, tau = {}\n",
        rd.label,
        fmt_vec(&ws.highest),
        wl.d(),
        cmp.tau
    );
    for p in &cmp.preimages {
        text += &format!(
            "  weight {}: {}\n",
            fmt_vec(&p.weight),
            match (p.full_dimensional, p.matched) {
                (false, _) => "preimage has empty interior".to_string(),
                (true, Some(i)) => format!("preimage is cone {i} of F_tau"),
                (true, None) => "preimage is not a cone of F_tau".to_string(),
            }
        );
    }
    text += &format!("pulled-back fan equals F_tau: {}\n", cmp.verdict());
    let image = match point {
        Some(p) => {
            let u = parse_qvec(p)?;
            if u.len() != rd.rank {
                return Err(Error::Config(format!("point needs {} coordinates", rd.rank)));
            }
            let img = apartment_point(&rd, &wl, &u);
            text += &format!("image of {}: {}\n", fmt_vec(&u), fmt_vec(&weight_embedding(&rd, &wl, &u)));
            Some(img)
        }
        None => None,
    };
    let injectivity = match probe {
        Some(n) => {
            let r = injectivity_probe(&rd, &ws, &wl, n, seed, Exec::Parallel)?;
            text += &format!(
                "injectivity: {} points over {} strata, {} collisions\n",
                r.points,
                r.strata,
                r.collisions.len()
            );
            Some(r)
        }
        None => None,
    };
    let ok = cmp.verdict() && injectivity.as_ref().is_none_or(InjectivityReport::ok);
    emit(
        &EmbedReport {
            weights: wl.lambdas.iter().map(|l| strings(l)).collect(),
            matrix: embedding_matrix(&rd, &wl).iter().map(|r| strings(r)).collect(),
            fan_match: cmp.verdict(),
            preimages: cmp.preimages,
            counterexamples: cmp.counterexamples,
            image,
            injectivity,
        },
        text,
        ok,
    )
}

fn fmt_exps(e: &[ExtRat]) -> String {
    let parts: Vec<String> = e.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn cmd_classify_seq(input: Option<&PathBuf>, a: Option<&str>, b: Option<&str>) -> Result<Output, Error> {
    let seq: LogAffineSequence = match (input, a, b) {
        (Some(path), None, None) => parse_json(&read_input(path)?)?,
        (None, Some(a), Some(b)) => LogAffineSequence {
            a: parse_qvec(a)?,
            b: parse_qvec(b)?,
        },
        _ => return Err(Error::Config("give either --input or both --a and --b".into())),
    };
    let r = classify_sequence(&seq)?;
    let text = format!(
        "permutation {:?}\nindex set at infinity {:?}\nlimit {}\n",
        r.permutation,
        r.index_set,
        fmt_exps(r.limit.exps())
    );
    emit(&r, text, true)
}

#[derive(Deserialize)]
struct SeminormInput {
    #[serde(with = "satake_core::rational::serde_extvec")]
    exps: Vec<ExtRat>,
    q: Option<f64>,
}

#[derive(Serialize)]
struct SeminormReport {
    seminorm: DiagSeminorm,
    q: f64,
    values: Vec<f64>,
    class: SeminormClass,
    stratum: Stratum,
    canonical: CanonicalForm,
    exterior_invariants: Vec<String>,
    stabilizer: StabilizerDescription,
}

fn cmd_seminorm(input: Option<&PathBuf>, exps: Option<&str>) -> Result<Output, Error> {
    let inp: SeminormInput = match (input, exps) {
        (Some(path), None) => parse_json(&read_input(path)?)?,
        (None, Some(e)) => SeminormInput {
            exps: parse_list(e, ExtRat::parse)?,
            q: None,
        },
        _ => return Err(Error::Config("give either --input or --exps".into())),
    };
    let q = inp.q.unwrap_or(2.0);
    if !q.is_finite() || q <= 1.0 {
        return Err(Error::Config("q must be greater than 1".into()));
    }
    let x = DiagSeminorm::new(inp.exps)?;
    let exterior = (1..=x.dim())
        .map(|m| exterior_invariant(&x, m).map(|v| v.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let report = SeminormReport {
        values: x.exps.iter().map(|e| q.powf(e.to_f64())).collect(),
        q,
        class: x.class(),
        stratum: kernel_and_stratum(&x),
        canonical: canonical_representative(&x),
        exterior_invariants: exterior,
        stabilizer: stabilizer_description(&x),
        seminorm: x,
    };
    let text = format!(
        "seminorm {}\nclass {}\nstratum: {}\ncanonical representative {} (permutation {:?}, shift {})\nexterior invariants {:?}\nstabilizer: {}{}\n",
        fmt_exps(&report.seminorm.exps),
        fmt_exps(report.class.exps()),
        report.stratum.label,
        fmt_exps(&report.canonical.seminorm.exps),
        report.canonical.perm,
        report.canonical.shift,
        report.exterior_invariants,
        report.stabilizer.block_shape,
        if report.stabilizer.is_vertex { " (vertex)" } else { "" }
    );
    emit(&report, text, true)
}

fn cmd_verify(only: Option<&str>, seed: u64, sequential: bool, fault: Option<String>) -> Result<Output, Error> {
    let only: Vec<String> = only
        .map(|s| s.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect())
        .unwrap_or_default();
    let cfg = SuiteConfig {
        seed,
        exec: exec(sequential),
        fault,
    };
    let report = run_suite(&only, &cfg)?;
    let mut text = String::new();
    for r in &report.results {
        text += &r.line();
        text.push('\n');
        for c in r.counterexamples.iter().take(5) {
            text += &format!("    counterexample: {c}\n");
        }
    }
    let ok = report.passed();
    text += &format!(
        "{} of {} criteria passed\n",
        report.results.iter().filter(|r| r.passed).count(),
        report.results.len()
    );
    emit(&report, text, ok)
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Fan {
            root_system,
            type_nodes,
            samples,
            seed,
            sequential,
        } => cmd_fan(root_system, type_nodes, *samples, *seed, *sequential),
        Command::Relevant {
            root_system,
            type_nodes,
            parabolic,
        } => cmd_relevant(root_system, type_nodes, parabolic.as_deref()),
        Command::Admissible {
            root_system,
            highest_weight,
        } => cmd_admissible(root_system, highest_weight),
        Command::Weights {
            root_system,
            highest_weight,
            basis_word,
        } => cmd_weights(root_system, highest_weight, basis_word.as_deref()),
        Command::Embed {
            root_system,
            highest_weight,
            point,
            probe,
            seed,
        } => cmd_embed(root_system, highest_weight, point.as_deref(), *probe, *seed),
        Command::ClassifySeq { input, a, b } => cmd_classify_seq(input.as_ref(), a.as_deref(), b.as_deref()),
        Command::Seminorm { input, exps } => cmd_seminorm(input.as_ref(), exps.as_deref()),
        Command::Verify {
            only,
            seed,
            sequential,
            inject_fault,
        } => cmd_verify(only.as_deref(), *seed, *sequential, inject_fault.clone()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::Internal(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            };
        }
    };
    let body = if cli.json {
        let mut s = serde_json::to_string_pretty(&out.json).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        out.text
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
