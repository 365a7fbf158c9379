use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use pconn::colorers::{
    color_2connected_3, color_3ec, color_diam3_with, strong_2_coloring_bipartite, ColorError, Diam3Options,
};
use pconn::io::{self, ParseError};
use pconn::lab::{self, BlockKind, GadgetSpec, LabError, Refutation};
use pconn::proper::{self, Connectivity, StrongCheck};
use pconn::solver::{self, SearchBudget, SolverError};
use pconn::{EdgeColoring, Graph};

use crate::report::{InputHash, RunReport, INCONCLUSIVE, INPUT_ERROR, PROPERTY_FAILED, SUCCESS};
use crate::{Cli, Command, GenWhat, Method, Variant};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("gadget spec: {0}")]
    Spec(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        INPUT_ERROR
    }
}

pub struct Outcome {
    pub report: RunReport,
    /// Human-readable result, printed without `--json`.
    pub summary: String,
    /// Printed to stderr whatever the output mode.
    pub alerts: Vec<String>,
}

struct Run<'a> {
    cli: &'a Cli,
    inputs: Vec<InputHash>,
}

impl Run<'_> {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        self.inputs.push(InputHash::of(path, &bytes));
        String::from_utf8(bytes).map_err(|_| CliError::Parse {
            path: path.into(),
            source: ParseError::Line { line: 1, msg: "file is not UTF-8".into() },
        })
    }

    fn graph(&mut self, path: &Path) -> Result<Graph, CliError> {
        let text = self.read(path)?;
        io::parse_graph(&text, self.cli.format).map_err(|source| CliError::Parse { path: path.into(), source })
    }

    fn coloring(&mut self, path: &Path, g: &Graph) -> Result<EdgeColoring, CliError> {
        let text = self.read(path)?;
        io::parse_coloring_json(&text, g).map_err(|source| CliError::Parse { path: path.into(), source })
    }

    fn budget(&self) -> SearchBudget {
        self.cli.budget_nodes.map_or(SearchBudget::unbounded(), SearchBudget::nodes)
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Partial result of a subcommand, before the shared report fields.
struct Done {
    exit_code: u8,
    result: Value,
    evidence: Vec<String>,
    summary: String,
    alerts: Vec<String>,
}

impl Done {
    fn new(exit_code: u8, result: Value, evidence: Vec<String>, summary: String) -> Done {
        Done { exit_code, result, evidence, summary, alerts: Vec::new() }
    }
}

pub fn run(cli: &Cli, argv: Vec<String>) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut r = Run { cli, inputs: Vec::new() };
    let done = match &cli.command {
        Command::Exact { graph, kmax, strong } => exact(&mut r, graph, *kmax, *strong)?,
        Command::Sample { graph, k, trials } => sample(&mut r, graph, *k, *trials)?,
        Command::Color { graph, method, explain, output } => {
            color(&mut r, graph, *method, *explain, output.as_deref())?
        }
        Command::Verify { graph, coloring, strong } => verify(&mut r, graph, coloring, *strong)?,
        Command::Gen { what: GenWhat::Counterexample { variant, scale, output, spec } } => {
            gen(&mut r, *variant, *scale, output, spec)?
        }
        Command::Refute { graph, spec, trials, coloring, report } => {
            let done = refute(&mut r, graph, spec, *trials, coloring.as_deref())?;
            let outcome = finish(cli, argv, r.inputs, done, start);
            if let Some(path) = report {
                write(path, &(outcome.report.to_json() + "\n"))?;
            }
            return Ok(outcome);
        }
    };
    Ok(finish(cli, argv, r.inputs, done, start))
}

fn finish(cli: &Cli, command: Vec<String>, inputs: Vec<InputHash>, done: Done, start: Instant) -> Outcome {
    let report = RunReport {
        tool: "pc",
        version: env!("CARGO_PKG_VERSION"),
        command,
        inputs,
        seed: cli.seed,
        exit_code: done.exit_code,
        result: done.result,
        evidence: done.evidence,
        wall_time_ms: (!cli.deterministic).then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    Outcome { report, summary: done.summary, alerts: done.alerts }
}

fn exact(r: &mut Run, path: &Path, kmax: u8, strong: bool) -> Result<Done, CliError> {
    let g = r.graph(path)?;
    let res = solver::pc_exact(&g, kmax, strong, r.budget()).map_err(solver_error)?;
    let coloring = res.coloring.as_ref().map(|c| c.to_json(&g));
    let result = json!({
        "value": res.value,
        "lower_bound": res.lower_bound,
        "upper_bound": res.upper_bound,
        "strong": strong,
        "coloring": coloring,
        "nodes": res.stats.nodes,
        "leaves": res.stats.leaves,
    });
    let evidence = vec![serde_json::to_value(res.evidence).expect("serializable").as_str().unwrap_or("").to_string()];
    let what = if strong { "strong pc" } else { "pc" };
    let (code, summary) = match res.value {
        Some(v) => (SUCCESS, format!("{what} = {v} ({} search nodes)", res.stats.nodes)),
        None if res.lower_bound > kmax => {
            (PROPERTY_FAILED, format!("{what} > {kmax}: no coloring with at most {kmax} colors"))
        }
        None => (
            INCONCLUSIVE,
            format!(
                "inconclusive: {what} >= {}{}",
                res.lower_bound,
                res.upper_bound.map(|u| format!(", <= {u}")).unwrap_or_default()
            ),
        ),
    };
    Ok(Done::new(code, result, evidence, summary))
}

fn solver_error(e: SolverError) -> CliError {
    CliError::Precondition(e.to_string())
}

fn sample(r: &mut Run, path: &Path, k: u8, trials: u64) -> Result<Done, CliError> {
    let g = r.graph(path)?;
    let rep = solver::sample_refute(&g, k, trials, r.cli.seed, r.cli.jobs).map_err(solver_error)?;
    let failures: Vec<Value> = rep.failures.iter().map(|f| json!({ "trial": f.trial, "pair": f.pair })).collect();
    let unconfirmed: Vec<Value> = rep.unconfirmed.iter().map(|f| json!({ "trial": f.trial, "pair": f.pair })).collect();
    let first_success = rep.successes.first().map(|(t, c)| json!({ "trial": t, "coloring": c.to_json(&g) }));
    let result = json!({
        "k": k,
        "trials": trials,
        "failed": rep.failures.len(),
        "proper_connected": rep.successes.len(),
        "failures": failures,
        "unconfirmed": unconfirmed,
        "first_success": first_success,
    });
    let summary = format!(
        "{trials} random {k}-colorings: {} proper connected, {} fail (each failing pair confirmed){}",
        rep.successes.len(),
        rep.failures.len(),
        if rep.unconfirmed.is_empty() { String::new() } else { format!(", {} UNCONFIRMED", rep.unconfirmed.len()) }
    );
    let code = if rep.unconfirmed.is_empty() { SUCCESS } else { PROPERTY_FAILED };
    Ok(Done::new(code, result, vec!["sampled".into(), "matching-confirmed".into()], summary))
}

fn is_precondition(e: &ColorError) -> bool {
    matches!(
        e,
        ColorError::Disconnected
            | ColorError::TooSmall
            | ColorError::NotTwoConnected
            | ColorError::Complete
            | ColorError::EdgeConnectivityTooLow(_)
            | ColorError::WrongDiameter(_)
            | ColorError::NotBipartite(_)
            | ColorError::Bridge(..)
    )
}

fn color(r: &mut Run, path: &Path, method: Method, explain: bool, output: Option<&Path>) -> Result<Done, CliError> {
    let g = r.graph(path)?;
    let mut explanation = Value::Null;
    let built = match method {
        Method::Diam3 => color_diam3_with(&g, Diam3Options::default()).map(|res| {
            explanation = serde_json::to_value(&res.decomposition).expect("serializable");
            res.coloring
        }),
        Method::ThreeEc => color_3ec(&g),
        Method::Bipartite => strong_2_coloring_bipartite(&g),
        Method::TwoConn => color_2connected_3(&g),
    };
    let c = match built {
        Ok(c) => c,
        Err(e) if is_precondition(&e) => return Err(CliError::Precondition(e.to_string())),
        Err(e) => {
            let result = json!({ "method": format!("{method:?}"), "error": e.to_string() });
            return Ok(Done::new(PROPERTY_FAILED, result, vec![], format!("construction failed: {e}")));
        }
    };
    // checked again here, independently of the colorer's own verification
    let connected = proper::is_proper_connected(&g, &c).expect("coloring fits the graph");
    let strong = match method {
        Method::Diam3 => None,
        _ => Some(proper::has_strong_property(&g, &c).expect("coloring fits the graph").is_strong()),
    };
    let verified = connected.is_connected() && strong != Some(false);
    if let Some(out) = output {
        write(out, &(io::write_coloring_json(&g, &c) + "\n"))?;
    }
    let mut result = json!({
        "method": format!("{method:?}"),
        "colors_used": c.used_colors(),
        "proper_connected": connected.is_connected(),
        "failing_pair": connected.failing_pair(),
        "strong": strong,
        "coloring": c.to_json(&g),
    });
    if explain {
        result["explanation"] = explanation;
    }
    let summary = format!(
        "{} colors, {}{}",
        c.used_colors(),
        if verified { "verified proper connected" } else { "NOT verified" },
        match strong {
            Some(true) => " with the strong property",
            Some(false) => ", strong property fails",
            None => "",
        }
    );
    let evidence = vec!["constructive".into(), "verified".into()];
    Ok(Done::new(if verified { SUCCESS } else { PROPERTY_FAILED }, result, evidence, summary))
}

fn verify(r: &mut Run, path: &Path, coloring: &Path, strong: bool) -> Result<Done, CliError> {
    let g = r.graph(path)?;
    let c = r.coloring(coloring, &g)?;
    let connected = proper::is_proper_connected(&g, &c).map_err(|e| CliError::Precondition(e.to_string()))?;
    if let Connectivity::Fails(u, v) = connected {
        let result = json!({ "proper_connected": false, "failing_pair": [u, v] });
        let summary = format!("not proper connected: no proper path between {u} and {v}");
        return Ok(Done::new(PROPERTY_FAILED, result, vec!["exact".into()], summary));
    }
    if !strong {
        let result = json!({ "proper_connected": true });
        return Ok(Done::new(SUCCESS, result, vec!["exact".into()], "proper connected".into()));
    }
    match proper::has_strong_property(&g, &c).map_err(|e| CliError::Precondition(e.to_string()))? {
        StrongCheck::Strong(witnesses) => {
            let map: serde_json::Map<String, Value> = witnesses
                .iter()
                .map(|((u, v), w)| (format!("{u}-{v}"), serde_json::to_value(w).expect("serializable")))
                .collect();
            let bad = witnesses.values().filter(|w| w.verify(&g, &c).is_err()).count();
            let result = json!({ "proper_connected": true, "strong": bad == 0, "witnesses": map });
            let summary = if bad == 0 {
                format!("proper connected and strong ({} pair witnesses checked)", witnesses.len())
            } else {
                format!("{bad} strong witnesses failed their own check")
            };
            let code = if bad == 0 { SUCCESS } else { PROPERTY_FAILED };
            Ok(Done::new(code, result, vec!["exact".into(), "certificates".into()], summary))
        }
        StrongCheck::Fails(u, v) => {
            let result = json!({ "proper_connected": true, "strong": false, "failing_pair": [u, v] });
            let summary = format!("proper connected but not strong: pair {u}-{v} has no witness");
            Ok(Done::new(PROPERTY_FAILED, result, vec!["exact".into()], summary))
        }
    }
}

fn gen(r: &mut Run, variant: Variant, scale: usize, output: &Path, spec_path: &Path) -> Result<Done, CliError> {
    let kind = match variant {
        Variant::K33 => BlockKind::K33,
        Variant::Mini => BlockKind::MiniPath,
    };
    let (g, spec) = lab::build_counterexample(kind, scale).map_err(|e| CliError::Precondition(e.to_string()))?;
    let graph_text = io::write_graph(&g, r.cli.format);
    let spec_text = io::write_gadget_spec(&spec) + "\n";
    write(output, &graph_text)?;
    write(spec_path, &spec_text)?;
    let structure = lab::verify_gadget_structure(&g, &spec);
    let result = json!({
        "variant": kind,
        "scale": scale,
        "n": g.n(),
        "m": g.m(),
        "outputs": [InputHash::of(output, graph_text.as_bytes()), InputHash::of(spec_path, spec_text.as_bytes())],
        "structure": structure,
    });
    let failed: Vec<&str> = structure.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let summary = format!(
        "{kind:?} scale {scale}: {} vertices, {} edges; structure checks {}",
        g.n(),
        g.m(),
        if failed.is_empty() { "all pass".to_string() } else { format!("failing: {}", failed.join(", ")) }
    );
    Ok(Done::new(SUCCESS, result, vec!["construction".into(), "structure-checked".into()], summary))
}

fn read_spec(r: &mut Run, path: &Path, g: &Graph) -> Result<GadgetSpec, CliError> {
    let text = r.read(path)?;
    let spec = io::parse_gadget_spec(&text).map_err(|source| CliError::Parse { path: path.into(), source })?;
    if let Some(v) = io::spec_out_of_range(&spec, g.n()) {
        return Err(CliError::Spec(format!("vertex {v} is not in the graph ({} vertices)", g.n())));
    }
    if spec.gadgets.len() != 3 {
        return Err(CliError::Spec(format!("expected 3 gadget pairs, found {}", spec.gadgets.len())));
    }
    Ok(spec)
}

/// Refutes one coloring; `Err` carries the alert for an undefeated one.
fn refute_one(g: &Graph, spec: &GadgetSpec, c: &EdgeColoring, label: &str) -> Result<Value, CliError> {
    let outcome = lab::refute_2_coloring(g, spec, c).map_err(|e| match e {
        LabError::NotTwoColoring(_) | LabError::Coloring(_) => CliError::Precondition(e.to_string()),
        other => CliError::Spec(other.to_string()),
    })?;
    Ok(match outcome {
        Refutation::Refuted(w) => {
            // independent of the refuter: plain path search on the pair
            let verified = proper::proper_path_exists(g, c, w.pair.0, w.pair.1).is_none();
            json!({ "label": label, "outcome": "refuted", "verified": verified, "witness": w })
        }
        Refutation::Undefeated { pairs_verified } => json!({
            "label": label,
            "outcome": "undefeated",
            "pairs_verified": pairs_verified,
            "coloring": c.to_json(g),
        }),
    })
}

fn refute(r: &mut Run, path: &Path, spec_path: &Path, trials: u64, coloring: Option<&Path>) -> Result<Done, CliError> {
    let g = r.graph(path)?;
    let spec = read_spec(r, spec_path, &g)?;
    let structure = lab::verify_gadget_structure(&g, &spec);
    let entries: Vec<Value> = match coloring {
        Some(cpath) => {
            let c = r.coloring(cpath, &g)?;
            vec![refute_one(&g, &spec, &c, &cpath.display().to_string())?]
        }
        None => {
            let jobs = r.cli.jobs.max(1) as u64;
            let seed = r.cli.seed;
            let chunk = trials.div_ceil(jobs).max(1);
            let (g, spec) = (&g, &spec);
            let parts: Vec<Result<Vec<Value>, CliError>> = std::thread::scope(|s| {
                let handles: Vec<_> = (0..jobs)
                    .map(|j| (j * chunk, ((j + 1) * chunk).min(trials)))
                    .filter(|(lo, hi)| lo < hi)
                    .map(|(lo, hi)| {
                        s.spawn(move || {
                            (lo..hi)
                                .map(|t| {
                                    let c = solver::random_coloring(g, 2, &mut solver::trial_rng(seed, t));
                                    let mut v = refute_one(g, spec, &c, &format!("trial {t}"))?;
                                    v["trial"] = json!(t);
                                    Ok(v)
                                })
                                .collect()
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            });
            // chunks are in trial order, so the log does not depend on --jobs
            let mut all = Vec::new();
            for p in parts {
                all.extend(p?);
            }
            all
        }
    };
    let refuted = entries.iter().filter(|e| e["outcome"] == "refuted").count();
    let verified = entries.iter().filter(|e| e["verified"] == true).count();
    let undefeated: Vec<&Value> = entries.iter().filter(|e| e["outcome"] == "undefeated").collect();
    let alerts: Vec<String> = undefeated
        .iter()
        .map(|e| format!("REFUTATION FAILED: {} is proper connected with 2 colors", e["label"].as_str().unwrap_or("?")))
        .collect();
    let ok = undefeated.is_empty() && verified == refuted;
    let result = json!({
        "colorings": entries.len(),
        "refuted": refuted,
        "witnesses_verified": verified,
        "undefeated": undefeated.len(),
        "structure": structure,
        "entries": entries,
    });
    let summary = format!(
        "{} 2-colorings: {refuted} refuted, {verified} witnesses re-verified, {} undefeated",
        entries.len(),
        undefeated.len()
    );
    let mut done = Done::new(
        if ok { SUCCESS } else { PROPERTY_FAILED },
        result,
        vec!["sampled".into(), "verified-witness".into()],
        summary,
    );
    done.alerts = alerts;
    Ok(done)
}
