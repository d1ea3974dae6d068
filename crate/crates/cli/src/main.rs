use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hopset_core::approx::{apx_undirected_hopset, sample_hierarchy, tz_emulator};
use hopset_core::audit::{hop_diameter, potential_audit, reach_hop_diameter, HopMode, HopsetReport, SensitivitySummary};
use hopset_core::constructions::{folklore_hopset, greedy_di_shortcut, greedy_hopset, undirected_shortcut_set};
use hopset_core::dp::{additive_error, attributes_to_text, hopset_asrq, parse_attributes, true_range_sums, AsrqOptions};
use hopset_core::generate::{path_graph, random_attributes, random_dag, random_graph};
use hopset_core::lowerbound::{gen_perfect_paths, lift_instance, verify_perfect, Sidecar};
use hopset_core::{Error, Graph, Hopset, HopsetKind, RoutingOracle};

#[derive(Parser)]
#[command(name = "hopset", version, about = "Build and audit low-sensitivity hopsets and shortcut sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate graphs, layered instances and edge attributes.
    Gen(GenArgs),
    /// Build a hopset or shortcut set and write it as JSON lines.
    Build(BuildArgs),
    /// Audit a hopset against its graph.
    Audit(AuditArgs),
    /// Answer all-pairs range queries privately and report the error.
    Dp(DpArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum GenKind {
    Random,
    Dag,
    Path,
    Layered,
    Attrs,
}

#[derive(Args, Serialize)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Edge count; defaults to `3n` (random) or `2n` (dag).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    directed: bool,
    #[arg(long, default_value_t = 10)]
    max_weight: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    per_layer: usize,
    #[arg(long, default_value_t = 8)]
    layers: usize,
    #[arg(long, default_value_t = 2)]
    x: usize,
    /// Graph that `attrs` generates attributes for.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    max_value: u64,
    #[arg(long, short)]
    out: PathBuf,
    /// Layered only: where to write the paths and middle edges.
    #[arg(long)]
    sidecar: Option<PathBuf>,
    /// Layered only: where to write the split graph.
    #[arg(long)]
    lifted: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Construction {
    Greedy,
    DiShortcut,
    UndirectedShortcut,
    Folklore,
    Apx,
    TzEmulator,
}

#[derive(Args, Serialize)]
struct BuildArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    construction: Construction,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hierarchy depth for `apx` and `tz-emulator`.
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, short)]
    out: PathBuf,
    /// Optional JSON report of the construction.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum HopAudit {
    Exact,
    Stretch,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum KindArg {
    ExactHopset,
    ShortcutSet,
    ApproxHopset,
    Emulator,
}

#[derive(Args, Serialize)]
struct AuditArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    hopset: PathBuf,
    /// Overrides the kind inferred from the construction name.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long)]
    sensitivity: bool,
    #[arg(long, value_enum)]
    hop_diameter: Option<HopAudit>,
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    #[arg(long)]
    reachability: bool,
    /// Sidecar of a layered instance; the graph must be its split graph.
    #[arg(long)]
    potential: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    sample_seed: u64,
    /// JSON report path; stdout when omitted.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct DpArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    attrs: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Runs seeds `seed .. seed + trials`.
    #[arg(long, default_value_t = 1)]
    trials: u64,
    /// Sensitivity term of the hopset noise scale; defaults to the measured value.
    #[arg(long)]
    scale_term: Option<f64>,
    #[arg(long)]
    errors: PathBuf,
    #[arg(long)]
    accounting: PathBuf,
}

enum Failure {
    Usage(String),
    Audit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::HopBoundUnmet { .. } | Error::InvalidSpan { .. } | Error::MissingSpan { .. } | Error::ScaleViolation { .. } => {
                Failure::Audit(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn gen(a: &GenArgs) -> Outcome {
    match a.kind {
        GenKind::Random => {
            let m = a.m.unwrap_or(3 * a.n);
            write(&a.out, &random_graph(a.n, m, a.directed, a.max_weight, a.seed)?.to_edge_list())
        }
        GenKind::Dag => {
            let m = a.m.unwrap_or(2 * a.n);
            write(&a.out, &random_dag(a.n, m, a.max_weight, a.seed)?.to_edge_list())
        }
        GenKind::Path => write(&a.out, &path_graph(a.n, a.directed).to_edge_list()),
        GenKind::Layered => {
            let inst = gen_perfect_paths(a.per_layer, a.layers, a.x)?;
            let report = verify_perfect(&inst);
            if !report.passes() {
                return Err(Failure::Audit(format!("generated instance is not perfect: {report:?}")));
            }
            write(&a.out, &inst.graph.to_edge_list())?;
            let lifted = lift_instance(&inst);
            if let Some(p) = &a.lifted {
                write(p, &lifted.split.graph.to_edge_list())?;
            }
            if let Some(p) = &a.sidecar {
                let side = Sidecar::new(&inst, &lifted);
                write(p, &serde_json::to_string_pretty(&side).expect("sidecar serializes"))?;
            }
            Ok(())
        }
        GenKind::Attrs => {
            let path = a.graph.as_ref().ok_or_else(|| Failure::Usage("gen attrs needs --graph".into()))?;
            let g = load_graph(path)?;
            write(&a.out, &attributes_to_text(&g, &random_attributes(g.m(), a.max_value, a.seed)))
        }
    }
}

fn construct(g: &Graph, c: Construction, seed: u64, k: usize) -> Result<(Hopset, Value), Failure> {
    let oracle = || RoutingOracle::build(g, seed);
    Ok(match c {
        Construction::Greedy => {
            let o = oracle()?;
            let (h, trace) = greedy_hopset(&o)?;
            let extra = json!({
                "iterations": trace.iterations(),
                "pieces": trace.pieces,
                "shadows": trace.shadow_stats(&o),
                "repeat_touches": trace.repeat_touches,
                "potentials_nonincreasing": trace.potentials_nonincreasing(),
            });
            (h, extra)
        }
        Construction::DiShortcut => (greedy_di_shortcut(g, seed)?, Value::Null),
        Construction::UndirectedShortcut => (undirected_shortcut_set(&oracle()?)?, Value::Null),
        Construction::Folklore => (folklore_hopset(&oracle()?, seed), Value::Null),
        Construction::Apx | Construction::TzEmulator => {
            let o = oracle()?;
            let (hier, idx) = sample_hierarchy(&o, k, seed)?;
            let extra = json!({ "hierarchy_seed": hier.seed, "attempts": hier.attempts, "max_bunch": idx.max_bunch() });
            let h = match c {
                Construction::Apx => apx_undirected_hopset(&o, &hier, &idx)?,
                _ => tz_emulator(&o, &hier, &idx),
            };
            (h, extra)
        }
    })
}

fn build(a: &BuildArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let start = Instant::now();
    let (h, extra) = construct(&g, a.construction, a.seed, a.k)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    write(&a.out, &h.to_jsonl())?;
    if let Some(p) = &a.report {
        let mut r = HopsetReport::new(&g, &h);
        r.runtime_ms = elapsed;
        r.config = json!({ "command": "build", "args": a });
        if let Value::Object(m) = extra {
            r.extra = m;
        }
        write(p, &r.to_json())?;
    }
    eprintln!("{}: {} edges in {elapsed:.1} ms", h.construction, h.len());
    Ok(())
}

fn infer_kind(construction: &str) -> HopsetKind {
    match construction {
        "di-shortcut" | "undirected-shortcut" => HopsetKind::ShortcutSet,
        "apx" => HopsetKind::ApproxHopset,
        "tz-emulator" => HopsetKind::Emulator,
        _ => HopsetKind::ExactHopset,
    }
}

fn audit(a: &AuditArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let text = read(&a.hopset)?;
    let probe = Hopset::from_jsonl(&text, HopsetKind::ExactHopset, g.is_directed())?;
    let kind = match a.kind {
        Some(KindArg::ExactHopset) => HopsetKind::ExactHopset,
        Some(KindArg::ShortcutSet) => HopsetKind::ShortcutSet,
        Some(KindArg::ApproxHopset) => HopsetKind::ApproxHopset,
        Some(KindArg::Emulator) => HopsetKind::Emulator,
        None => infer_kind(&probe.construction),
    };
    let h = Hopset::from_jsonl(&text, kind, g.is_directed())?;
    h.validate(&g)?;

    let start = Instant::now();
    let mut r = HopsetReport::new(&g, &h);
    if a.sensitivity {
        r.sensitivity = Some(SensitivitySummary::compute(&g, &h)?);
    }
    match a.hop_diameter {
        Some(HopAudit::Exact) => r.beta_exact = Some(hop_diameter(&g, &h, HopMode::Exact, a.sample_seed)?),
        Some(HopAudit::Stretch) => {
            r.beta_stretch = Some(hop_diameter(&g, &h, HopMode::stretch(a.eps), a.sample_seed)?)
        }
        None => {}
    }
    if a.reachability {
        r.reachability = Some(reach_hop_diameter(&g, &h));
    }
    if let Some(p) = &a.potential {
        let side: Sidecar = serde_json::from_str(&read(p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        let mask = side.t_mask(&g)?;
        r.potential = Some(potential_audit(&g, &mask, &side.lifted_paths, &h, side.layers)?);
    }
    r.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    r.config = json!({ "command": "audit", "args": a });

    match &a.json {
        Some(p) => write(p, &r.to_json())?,
        None => println!("{}", r.to_json()),
    }
    if let Some(p) = &a.csv {
        let mut w = csv::Writer::from_path(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        let csv_err = |e: csv::Error| Failure::Usage(e.to_string());
        w.write_record(HopsetReport::csv_header()).map_err(csv_err)?;
        w.write_record(r.csv_row()).map_err(csv_err)?;
        w.flush().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Audit("one or more audits failed; see the report".into()))
    }
}

#[derive(Serialize)]
struct ErrorRow {
    seed: u64,
    epsilon: f64,
    max_additive_error: f64,
    mean_abs_error: f64,
    max_hops: u32,
    hopset_edges: usize,
    certified: bool,
}

fn dp(a: &DpArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let attrs = parse_attributes(&g, &read(&a.attrs)?)?;
    let options = AsrqOptions { scale_term: a.scale_term };
    let mut rows = Vec::new();
    let mut accounts = Vec::new();
    for seed in a.seed..a.seed + a.trials {
        let o = RoutingOracle::build(&g, seed)?;
        let out = hopset_asrq(&o, &attrs, a.epsilon, seed, &options)?;
        let truth = true_range_sums(&o, &attrs);
        let diffs: Vec<f64> = out
            .matrix
            .values
            .iter()
            .zip(&truth.values)
            .filter_map(|(x, y)| Some((x.as_ref()? - y.as_ref()?).abs()))
            .collect();
        rows.push(ErrorRow {
            seed,
            epsilon: a.epsilon,
            max_additive_error: additive_error(&out.matrix, &truth),
            mean_abs_error: diffs.iter().sum::<f64>() / diffs.len().max(1) as f64,
            max_hops: out.accounting.max_hops_used,
            hopset_edges: out.accounting.hopset_edges,
            certified: out.accounting.certified,
        });
        accounts.push(json!({ "seed": seed, "accounting": out.accounting }));
    }
    let mut w = csv::Writer::from_path(&a.errors).map_err(|e| Failure::Usage(format!("{}: {e}", a.errors.display())))?;
    for row in &rows {
        w.serialize(row).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    w.flush().map_err(|e| Failure::Usage(e.to_string()))?;
    let all_certified = rows.iter().all(|r| r.certified);
    let doc = json!({ "config": { "command": "dp", "args": a }, "certified": all_certified, "trials": accounts });
    write(&a.accounting, &serde_json::to_string_pretty(&doc).expect("accounting serializes"))?;
    if all_certified {
        Ok(())
    } else {
        Err(Failure::Audit("accounting does not certify epsilon on every trial".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Build(a) => build(a),
        Command::Audit(a) => audit(a),
        Command::Dp(a) => dp(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Audit(msg)) => {
            eprintln!("audit failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
