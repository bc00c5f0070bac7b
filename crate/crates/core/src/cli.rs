//! Command-line front end. Every subcommand produces a [`Report`]; the exit
//! status is 0 for an answer, 2 when a budget or timeout ran out, 1 on error.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::decomposition::{decompose, genus_bound, verify_decomposition, Decomposition};
use crate::dichotomy::{classify, verify_report, Certificate, ClassifyReport, DichotomyOutcome, Engine};
use crate::embedding::{genus_of, min_genus, planarity, GenusOutcome, KuratowskiWitness, Planarity, Rotation};
use crate::error::{Error, Result};
use crate::graph::{cone, Graph, MarkedGraph, VSet};
use crate::io::{read_graph, to_edge_list, GraphDoc};
use crate::limits::{Deadline, Search};
use crate::minors::{find_marked_minor, find_minor, verify_marked_model, verify_model, MinorModel, ModelReport};
use crate::outerplanar::{is_u_outerplanar, su_obstruction, Outerplanarity, SuOutcome};
use crate::patterns::{theta, verify_catalog, PatternId};
use crate::structures::{star_comb, two_connected_structures, two_star_search, verify_structure, CombStructure};

#[derive(Parser, Debug)]
#[command(name = "surfminor", version, about = "Planarity, genus, minors and obstruction search for graphs on surfaces")]
pub struct Cli {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Mode::Human, global = true)]
    pub output: Mode,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Human,
    Json,
}

fn parse_timeout(s: &str) -> std::result::Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if !(t > 0.0 && t <= 86_400.0) {
        return Err("timeout must be in (0, 86400] seconds".into());
    }
    Ok(t)
}

#[derive(Args, Debug, Clone)]
pub struct Timeout {
    /// Wall-clock limit in seconds.
    #[arg(long, value_parser = parse_timeout)]
    pub timeout: f64,
}

impl Timeout {
    fn deadline(&self) -> Deadline {
        Deadline::after(Duration::from_secs_f64(self.timeout))
    }
}

#[derive(Args, Debug, Clone)]
pub struct Budget {
    /// Largest genus searched for.
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=32))]
    pub budget: u32,
}

#[derive(Args, Debug, Clone)]
pub struct Level {
    /// Truncation level of witness patterns.
    #[arg(short = 'n', long = "level", value_parser = clap::value_parser!(u32).range(1..=64))]
    pub n: u32,
}

#[derive(Args, Debug, Clone)]
pub struct FlawBound {
    /// Largest flaw set accepted.
    #[arg(short = 'k', value_parser = clap::value_parser!(u32).range(0..=10_000))]
    pub k: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineArg {
    ForestDel,
    ForestCon,
    Outerplanar,
    PlanarV,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::ForestDel => Engine::ForestDel,
            EngineArg::ForestCon => Engine::ForestCon,
            EngineArg::Outerplanar => Engine::Outerplanar,
            EngineArg::PlanarV => Engine::PlanarV,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureSearch {
    StarComb,
    TwoStar,
    TwoConnected,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Edges,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Plane rotation system or Kuratowski subdivision.
    Planar { input: PathBuf },
    /// Minimum orientable genus with a realising rotation system.
    Genus {
        input: PathBuf,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        timeout: Timeout,
    },
    /// Minor model of a pattern (catalog name or graph file) in the input.
    Minor {
        input: PathBuf,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        timeout: Timeout,
    },
    /// Marked minor model; marks come from the `M` lines of both graphs.
    MarkedMinor {
        input: PathBuf,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        timeout: Timeout,
    },
    /// Is the cone over the marked vertices planar? Otherwise a Θ model.
    Outerplanar {
        input: PathBuf,
        /// Use every vertex instead of the marked ones.
        #[arg(long)]
        all: bool,
    },
    /// Obstruction of the marked graph against cone genus within the budget.
    SuObstruct {
        input: PathBuf,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        timeout: Timeout,
    },
    /// Decomposition into planar pieces and its genus bound.
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        timeout: Timeout,
        /// Largest pairwise overlap accepted by the verification.
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1_000_000))]
        cap: Option<u32>,
    },
    /// Witness-or-flaw engine.
    Dichotomy {
        #[arg(value_enum)]
        engine: EngineArg,
        input: PathBuf,
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        k: FlawBound,
        #[command(flatten)]
        timeout: Timeout,
    },
    /// Σ witnesses, or embeddability certificates.
    Classify {
        input: PathBuf,
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        k: FlawBound,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        timeout: Timeout,
    },
    /// Emit a catalog graph, e.g. `sigma3(2)`, `theta1`, `U'2(3)`, `veeK3(4)`.
    Pattern {
        name: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
    },
    /// Star, comb and related structures attached to the marked vertices.
    Starcomb {
        input: PathBuf,
        #[command(flatten)]
        level: Level,
        #[arg(long, value_enum, default_value_t = StructureSearch::StarComb)]
        search: StructureSearch,
        /// Dominating-set bound for `two-star`.
        #[arg(short = 'd', value_parser = clap::value_parser!(u32).range(0..=10_000), default_value_t = 0)]
        d: u32,
        #[command(flatten)]
        timeout: Timeout,
    },
    /// Re-check a JSON report against the graph it was computed for.
    Verify { input: PathBuf, report: PathBuf },
    /// Pattern invariants and conversion table at a level.
    CatalogCheck {
        #[command(flatten)]
        level: Level,
        /// Also test pairwise incomparability of Σᵢ(2).
        #[arg(long)]
        pairs: bool,
        #[command(flatten)]
        timeout: Timeout,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Answer,
    BudgetExhausted,
    Error,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Answer => 0,
            Status::BudgetExhausted => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub params: Value,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub summary: String,
}

impl Report {
    fn new(command: &str, status: Status, params: Value, result: Value, summary: String) -> Report {
        Report { command: command.into(), status, params, result, warnings: Vec::new(), summary }
    }

    fn answer(command: &str, params: Value, result: impl Serialize, summary: String) -> Report {
        Report::new(command, Status::Answer, params, to_value(result), summary)
    }

    fn exhausted(command: &str, params: Value, reason: String) -> Report {
        Report::new(command, Status::BudgetExhausted, params, json!({ "reason": reason }), format!("budget exhausted: {reason}"))
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::InvalidArgument(format!("malformed {what}: {e}")))
}

fn search_value(s: &Search<MinorModel>) -> Value {
    match s {
        Search::Found(m) => json!({ "result": "found", "model": m }),
        Search::Absent => json!({ "result": "absent" }),
        Search::Timeout => json!({ "result": "timeout" }),
    }
}

/// A catalog name or a graph file.
fn load_pattern(spec: &str) -> Result<MarkedGraph> {
    let p = Path::new(spec);
    if p.is_file() {
        return Ok(read_graph(p)?.graph);
    }
    PatternId::from_str(spec)?.build()
}

fn marks_or_all(g: &MarkedGraph, all: bool) -> VSet {
    if all || g.marked.is_empty() {
        g.graph.vertex_set()
    } else {
        g.marked.clone()
    }
}

fn budget_err(command: &str, params: Value, e: Error) -> Result<Report> {
    match e {
        Error::BudgetExhausted(r) => Ok(Report::exhausted(command, params, r)),
        e => Err(e),
    }
}

pub fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Planar { input } => {
            let (g, w) = load(input)?;
            let (result, summary) = match planarity(&g.graph) {
                Planarity::Planar(r) => (json!({ "planar": true, "rotation": r }), "planar".to_string()),
                Planarity::NonPlanar(k) => {
                    let s = format!("not planar: {:?} subdivision on branch vertices {:?}", k.kind, k.branch);
                    (json!({ "planar": false, "witness": k }), s)
                }
            };
            Ok(with_warnings(Report::new("planar", Status::Answer, json!({}), result, summary), w))
        }
        Command::Genus { input, budget, timeout } => {
            let (g, w) = load(input)?;
            let params = json!({ "budget": budget.budget });
            let out = min_genus(&g.graph, budget.budget as usize, timeout.deadline());
            let (status, summary) = match &out {
                GenusOutcome::Exact { genus, .. } => (Status::Answer, format!("genus {genus}")),
                GenusOutcome::ExceedsBudget { lower_bound } => {
                    (Status::BudgetExhausted, format!("genus exceeds budget {} (at least {lower_bound})", budget.budget))
                }
                GenusOutcome::Unknown { lower_bound, .. } => (Status::BudgetExhausted, format!("timed out; genus at least {lower_bound}")),
            };
            Ok(with_warnings(Report::new("genus", status, params, to_value(&out), summary), w))
        }
        Command::Minor { input, pattern, timeout } => {
            let (g, w) = load(input)?;
            let h = load_pattern(pattern)?;
            let s = find_minor(&g.graph, &h.graph, timeout.deadline())?;
            Ok(with_warnings(minor_report("minor", pattern, &h, &s), w))
        }
        Command::MarkedMinor { input, pattern, timeout } => {
            let (g, w) = load(input)?;
            let h = load_pattern(pattern)?;
            let s = find_marked_minor(&g, &h, timeout.deadline())?;
            Ok(with_warnings(minor_report("marked-minor", pattern, &h, &s), w))
        }
        Command::Outerplanar { input, all } => {
            let (g, w) = load(input)?;
            let u = marks_or_all(&g, *all);
            let params = json!({ "u": u });
            let out = is_u_outerplanar(&g.graph, &u)?;
            let summary = match &out {
                Outerplanarity::Outerplanar { .. } => "cone over U is planar".to_string(),
                Outerplanarity::Theta(t) => format!("theta{} model found", t.index),
            };
            Ok(with_warnings(Report::answer("outerplanar", params, &out, summary), w))
        }
        Command::SuObstruct { input, budget, level, timeout } => {
            let (g, w) = load(input)?;
            let params = json!({ "budget": budget.budget, "n": level.n });
            let r = match su_obstruction(&g, budget.budget as usize, level.n, timeout.deadline()) {
                Ok(out) => {
                    let summary = match &out {
                        SuOutcome::Witness { pattern, .. } => format!("{pattern} marked minor"),
                        SuOutcome::Embeddable { genus, .. } => format!("cone embeds with genus {genus}"),
                    };
                    Report::answer("su-obstruct", params, &out, summary)
                }
                Err(e) => budget_err("su-obstruct", params, e)?,
            };
            Ok(with_warnings(r, w))
        }
        Command::Decompose { input, budget, timeout, cap } => {
            let (g, w) = load(input)?;
            let params = json!({ "budget": budget.budget, "cap": cap });
            let dl = timeout.deadline();
            let r = match decompose(&g.graph, budget.budget as usize, dl) {
                Ok(d) => {
                    let bound = genus_bound(&d, budget.budget as usize, dl);
                    let rep = verify_decomposition(&g.graph, &d, cap.map(|c| c as usize));
                    let summary = format!("{} pieces, max overlap {}, verified {}", d.pieces.len(), rep.max_overlap, rep.ok);
                    let result = json!({
                        "decomposition": d,
                        "genus_bound": bound.as_ref().ok(),
                        "verification": rep,
                    });
                    Report::new("decompose", Status::Answer, params, result, summary)
                }
                Err(e) => budget_err("decompose", params, e)?,
            };
            Ok(with_warnings(r, w))
        }
        Command::Dichotomy { engine, input, level, k, timeout } => {
            let (g, w) = load(input)?;
            let params = json!({ "engine": engine, "n": level.n, "k": k.k });
            let out = Engine::from(*engine).run(&g.graph, level.n, k.k as usize, timeout.deadline())?;
            let (status, summary) = match &out {
                DichotomyOutcome::Witness { pattern, .. } => (Status::Answer, format!("witness {pattern}")),
                DichotomyOutcome::Flaw { flaw } => (Status::Answer, format!("flaw of size {}: {:?}", flaw.len(), flaw)),
                DichotomyOutcome::BudgetExhausted { reason } => (Status::BudgetExhausted, format!("budget exhausted: {reason}")),
            };
            Ok(with_warnings(Report::new("dichotomy", status, params, to_value(&out), summary), w))
        }
        Command::Classify { input, level, k, budget, timeout } => {
            let (g, w) = load(input)?;
            let params = json!({ "n": level.n, "k": k.k, "budget": budget.budget });
            let rep = classify(&g.graph, level.n, k.k as usize, budget.budget as usize, timeout.deadline())?;
            let status = if !rep.witnesses.is_empty() || rep.exhausted.is_empty() { Status::Answer } else { Status::BudgetExhausted };
            let names: Vec<String> = rep.witnesses.iter().map(|x| x.pattern.to_string()).collect();
            let summary = if names.is_empty() {
                format!("no witness; {} certificates", rep.certificates.len())
            } else {
                format!("witnesses: {}", names.join(", "))
            };
            Ok(with_warnings(Report::new("classify", status, params, to_value(&rep), summary), w))
        }
        Command::Pattern { name, .. } => {
            let id = PatternId::from_str(name)?;
            let g = id.build()?;
            let summary = format!("{id}: {} vertices, {} edges, {} marked", g.graph.n(), g.graph.m(), g.marked.len());
            Ok(Report::answer("pattern", json!({ "name": id.to_string() }), GraphDoc::of(&g), summary))
        }
        Command::Starcomb { input, level, search, d, timeout } => {
            let (g, w) = load(input)?;
            if g.marked.is_empty() {
                return Err(Error::InvalidArgument("structure search needs marked vertices (M lines)".into()));
            }
            let params = json!({ "n": level.n, "search": search, "d": d, "u": g.marked });
            let n = level.n as usize;
            let dl = timeout.deadline();
            let out = match search {
                StructureSearch::StarComb => star_comb(&g.graph, &g.marked, n, dl),
                StructureSearch::TwoStar => two_star_search(&g.graph, &g.marked, n, *d as usize, dl),
                StructureSearch::TwoConnected => two_connected_structures(&g.graph, &g.marked, n, dl),
            };
            let r = match out {
                Ok(s) => {
                    let summary = format!("{:?} of level {}", s.kind, s.level);
                    Report::answer("starcomb", params, &s, summary)
                }
                Err(e) => budget_err("starcomb", params, e)?,
            };
            Ok(with_warnings(r, w))
        }
        Command::Verify { input, report } => {
            let (g, w) = load(input)?;
            let text = std::fs::read_to_string(report).map_err(|e| Error::Io(format!("{}: {e}", report.display())))?;
            let rep: Report = serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
            let violations = verify(&g, &rep)?;
            let ok = violations.is_empty();
            let summary = if ok { format!("{} report verified", rep.command) } else { violations.join("; ") };
            let status = if ok { Status::Answer } else { Status::Error };
            let result = json!({ "verified_command": rep.command, "ok": ok, "violations": violations });
            Ok(with_warnings(Report::new("verify", status, json!({}), result, summary), w))
        }
        Command::CatalogCheck { level, pairs, timeout } => {
            let rep = verify_catalog(level.n, *pairs, timeout.deadline())?;
            let timed_out = rep.incomparability.iter().any(|p| p.outcome == "timeout");
            let status = if timed_out { Status::BudgetExhausted } else { Status::Answer };
            let good = rep.rows.iter().filter(|r| r.ok).count();
            let summary = format!("{good}/{} conversion rows pass; {} invariant failures", rep.rows.len(), rep.invariants.len());
            Ok(Report::new("catalog-check", status, json!({ "n": level.n, "pairs": pairs }), to_value(&rep), summary))
        }
    }
}

fn load(path: &Path) -> Result<(MarkedGraph, Vec<String>)> {
    let p = read_graph(path)?;
    Ok((p.graph, p.warnings))
}

fn with_warnings(mut r: Report, w: Vec<String>) -> Report {
    r.warnings = w;
    r
}

fn minor_report(command: &str, name: &str, h: &MarkedGraph, s: &Search<MinorModel>) -> Report {
    let (status, summary) = match s {
        Search::Found(_) => (Status::Answer, format!("{name} is a minor")),
        Search::Absent => (Status::Answer, format!("{name} is not a minor")),
        Search::Timeout => (Status::BudgetExhausted, "search timed out".to_string()),
    };
    let params = json!({ "pattern": name, "pattern_graph": GraphDoc::of(h) });
    Report::new(command, status, params, search_value(s), summary)
}

fn model_violations(r: ModelReport) -> Vec<String> {
    r.violations
}

fn rotation_violations(g: &Graph, rot: &Rotation, genus: usize) -> Vec<String> {
    if let Err(e) = rot.check(g) {
        return vec![e.to_string()];
    }
    match genus_of(g, rot) {
        Ok(x) if x == genus => Vec::new(),
        Ok(x) => vec![format!("rotation has genus {x}, report claims {genus}")],
        Err(e) => vec![e.to_string()],
    }
}

fn certificate_violations(g: &Graph, c: &Certificate) -> Vec<String> {
    match c {
        Certificate::Genus { genus, rotation } => rotation_violations(g, rotation, *genus),
        Certificate::FlawVertex { rotation, genus, .. } => {
            let keep: VSet = rotation.rotation.keys().copied().collect();
            let sub = g.induced(&keep);
            match genus_of(&sub, rotation) {
                Ok(x) if x <= *genus => Vec::new(),
                Ok(x) => vec![format!("flaw-vertex rotation has genus {x} > {genus}")],
                Err(e) => vec![e.to_string()],
            }
        }
        Certificate::Decomposition { decomposition } => verify_decomposition(g, decomposition, None).violations,
    }
}

/// Independent re-check of a report; returns the violations found.
pub fn verify(g: &MarkedGraph, rep: &Report) -> Result<Vec<String>> {
    let r = &rep.result;
    if rep.status == Status::BudgetExhausted {
        return Ok(Vec::new());
    }
    Ok(match rep.command.as_str() {
        "planar" => {
            if r["planar"] == json!(true) {
                rotation_violations(&g.graph, &from_value::<Rotation>(&r["rotation"], "rotation")?, 0)
            } else {
                let k: KuratowskiWitness = from_value(&r["witness"], "witness")?;
                k.check(&g.graph).err().into_iter().collect()
            }
        }
        "genus" => match from_value::<GenusOutcome>(r, "genus outcome")? {
            GenusOutcome::Exact { genus, rotation } => rotation_violations(&g.graph, &rotation, genus),
            _ => Vec::new(),
        },
        "minor" | "marked-minor" => {
            if r["result"] != json!("found") {
                return Ok(Vec::new());
            }
            let h = from_value::<GraphDoc>(&rep.params["pattern_graph"], "pattern graph")?.to_marked()?.0;
            let m: MinorModel = from_value(&r["model"], "model")?;
            if rep.command == "minor" {
                model_violations(verify_model(&g.graph, &h.graph, &m))
            } else {
                model_violations(verify_marked_model(g, &h, &m))
            }
        }
        "outerplanar" => {
            let u: VSet = from_value(&rep.params["u"], "u")?;
            match from_value::<Outerplanarity>(r, "outerplanarity")? {
                Outerplanarity::Outerplanar { cone_vertex, rotation } => {
                    let (c, z) = cone(&g.graph, &u)?;
                    let c = c.relabel(|x| if x == z { cone_vertex } else { x });
                    rotation_violations(&c, &rotation, 0)
                }
                Outerplanarity::Theta(t) => {
                    let mg = MarkedGraph::new(g.graph.clone(), u)?;
                    model_violations(verify_marked_model(&mg, &theta(t.index)?, &t.model))
                }
            }
        }
        "su-obstruct" => match from_value::<SuOutcome>(r, "obstruction")? {
            SuOutcome::Witness { pattern, model } => model_violations(verify_marked_model(g, &pattern.build()?, &model)),
            SuOutcome::Embeddable { genus, cone_vertex, rotation } => {
                let (c, z) = cone(&g.graph, &g.marked)?;
                let c = c.relabel(|x| if x == z { cone_vertex } else { x });
                rotation_violations(&c, &rotation, genus)
            }
        },
        "decompose" => {
            let d: Decomposition = from_value(&r["decomposition"], "decomposition")?;
            let cap: Option<usize> = from_value(&rep.params["cap"], "cap")?;
            verify_decomposition(&g.graph, &d, cap).violations
        }
        "dichotomy" => {
            let e: EngineArg = from_value(&rep.params["engine"], "engine")?;
            let n: u32 = from_value(&rep.params["n"], "n")?;
            let k: usize = from_value(&rep.params["k"], "k")?;
            let out: DichotomyOutcome = from_value(r, "outcome")?;
            Engine::from(e).verify(&g.graph, n, k, &out).err().into_iter().collect()
        }
        "classify" => {
            let c: ClassifyReport = from_value(r, "classification")?;
            let mut v: Vec<String> = verify_report(&g.graph, &c).err().into_iter().collect();
            for cert in &c.certificates {
                v.extend(certificate_violations(&g.graph, cert));
            }
            v
        }
        "starcomb" => {
            let u: VSet = from_value(&rep.params["u"], "u")?;
            let s: CombStructure = from_value(r, "structure")?;
            verify_structure(&g.graph, &u, &s).err().into_iter().collect()
        }
        other => return Err(Error::InvalidArgument(format!("reports of `{other}` carry nothing to verify"))),
    })
}

fn print(mode: Mode, command: &Command, rep: &Report) {
    for w in &rep.warnings {
        eprintln!("warning: {w}");
    }
    match (mode, command) {
        (Mode::Json, _) => println!("{}", serde_json::to_string_pretty(rep).expect("report serializes")),
        (Mode::Human, Command::Pattern { format: GraphFormat::Edges, .. }) => {
            let doc: GraphDoc = serde_json::from_value(rep.result.clone()).expect("pattern report holds a graph");
            print!("{}", to_edge_list(&doc.to_marked().expect("catalog graphs are simple").0));
        }
        (Mode::Human, Command::Pattern { format: GraphFormat::Json, .. }) => println!("{}", rep.result),
        (Mode::Human, _) => println!("{}: {}", rep.command, rep.summary),
    }
}

/// Parses the process arguments, runs the command and returns the exit status.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Error.code() } else { 0 };
        }
    };
    match run(&cli.command) {
        Ok(rep) => {
            print(cli.output, &cli.command, &rep);
            rep.status.code()
        }
        Err(e) => {
            match cli.output {
                Mode::Json => println!("{}", json!({ "status": "error", "error": e.to_string() })),
                Mode::Human => eprintln!("error: {e}"),
            }
            Status::Error.code()
        }
    }
}
