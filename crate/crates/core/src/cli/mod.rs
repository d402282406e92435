//! Command-line front end: constructions, verification, exact solvers,
//! LPs, labelings, sweeps and acceptance reproduction.

pub mod density;
pub mod sweep;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::certificate::Certificate;
use crate::constructions::{
    biased_transversal, flower_packing_with, fractional_transversal_weights_with, generate_packing, interval_blowup,
    verify_transversal, Divisibility, PackingFamily,
};
use crate::embed::find_embedding;
use crate::error::{Error, Result};
use crate::hypergraph::OrderedHypergraph;
use crate::labeling::{cost, ConstructionKind, Label, Labeling};
use crate::lp::{export_lp, solve_fractional, verify_feasible, CopyWeighting, EdgeWeighting};
use crate::oracle::{exact_ex, exact_f, exact_nu, exact_tau, ExactResult, SearchBudget};
use crate::pattern::{PatternKind, PatternSpec};
use crate::reproduce::{run_criterion, CRITERION_IDS};
use density::{density_table, write_density_csv};
use sweep::{parse_grid, parse_quantities, parse_range, SweepSpec};

#[derive(Debug, Parser)]
#[command(name = "ordturan", version, about = "Exact Turán quantities for ordered tight paths")]
pub struct Cli {
    /// Also write every artifact into this directory.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Search node limit (default from ORDTURAN_NODE_LIMIT, else 10^8).
    #[arg(long, global = true)]
    pub node_limit: Option<u64>,
    /// Search time limit in seconds (default from ORDTURAN_TIME_LIMIT_SECS, else 60).
    #[arg(long, global = true)]
    pub time_limit_secs: Option<f64>,
    /// Restrict labeling searches to one reversal-inversion orbit.
    #[arg(long, global = true)]
    pub symmetry: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct PatternArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    /// natural-path, loose-path, crossing-path, tight-cycle or complete.
    #[arg(long, default_value = "natural-path", value_parser = parse_kind)]
    pub pattern: PatternKind,
}

impl PatternArgs {
    fn spec(&self) -> Result<PatternSpec> {
        PatternSpec::new(self.pattern, self.r, self.s)
    }
}

fn parse_kind(s: &str) -> std::result::Result<PatternKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructTarget {
    /// Biased transversal of short paths (n even, r <= s <= 2r-1).
    Transversal,
    /// Edge-disjoint packing matching the biased transversal.
    Packing,
    /// Flower packing (r | s).
    Flower,
    /// Fractional transversal weights r/s inside k = s/r parts.
    Weights,
    /// Complete graph minus edges inside (s-1)/(r-1) interval parts.
    Blowup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    /// Hypergraph JSON meets every copy of the pattern.
    Transversal,
    /// Hypergraph JSON contains no copy of the pattern.
    Free,
    /// Packing family JSON is edge-disjoint.
    Packing,
    /// Edge weighting JSON gives every copy weight at least 1.
    Weights,
    /// Copy weighting JSON loads every edge by at most 1.
    CopyWeights,
    /// ExactResult JSON witness matches its value.
    Exact,
    /// Labeling CSV: reports its cost and monotonicity.
    Labeling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactTarget {
    Tau,
    Nu,
    Ex,
    F,
    MonotoneF,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    Odd,
    Even,
}

impl From<ConstructionArg> for ConstructionKind {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::Odd => ConstructionKind::Odd,
            ConstructionArg::Even => ConstructionKind::Even,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LpFormat {
    Json,
    Cplex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a construction and certify it.
    Construct {
        #[arg(value_enum)]
        target: ConstructTarget,
        #[command(flatten)]
        pattern: PatternArgs,
        /// Use the longest divisible prefix instead of rejecting k ∤ n.
        #[arg(long)]
        padded: bool,
    },
    /// Check an artifact read from a file.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value = "natural-path", value_parser = parse_kind)]
        pattern: PatternKind,
        /// Label count for labeling CSVs.
        #[arg(long)]
        k: Option<Label>,
    },
    /// Exact value with an optimality proof or bounds.
    Exact {
        #[arg(value_enum)]
        target: ExactTarget,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value = "natural-path", value_parser = parse_kind)]
        pattern: PatternKind,
        #[arg(long)]
        k: Option<Label>,
    },
    /// Optimal fractional transversal and packing.
    Lp {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: LpFormat,
    },
    /// Interval-partition labelings and their density tables.
    Label {
        #[arg(value_enum)]
        construction: ConstructionArg,
        #[arg(long)]
        k: Label,
        /// Emit the labeling of [n] as CSV.
        #[arg(long, conflicts_with = "density", required_unless_present = "density")]
        n: Option<usize>,
        /// Emit a density table over this range of n (a..b[:step]).
        #[arg(long)]
        density: Option<String>,
    },
    /// Evaluate quantities over a parameter grid into one CSV.
    Sweep {
        /// Axes n, r, s, k as key=a..b[:step], comma separated.
        #[arg(long)]
        grid: String,
        /// Comma list of construct, verify, tau, nu, ex, lp, f, label-density.
        #[arg(long)]
        quantity: String,
        #[arg(long, default_value = "natural-path", value_parser = parse_kind)]
        pattern: PatternKind,
    },
    /// Run one acceptance criterion (1-9) or all of them.
    Reproduce { id: String },
}

/// Prints artifacts to stdout and mirrors them into the output directory.
struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    fn emit(&self, name: &str, content: &str) -> Result<()> {
        print!("{content}");
        if !content.ends_with('\n') {
            println!();
        }
        self.save(name, content)
    }

    fn save(&self, name: &str, content: &str) -> Result<()> {
        if let Some(dir) = &self.dir {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(name), content)?;
        }
        Ok(())
    }

    fn emit_json(&self, name: &str, value: &impl Serialize) -> Result<()> {
        self.emit(name, &serde_json::to_string(value)?)
    }
}

fn budget(cli: &Cli) -> Result<SearchBudget> {
    let mut b = SearchBudget::from_env()?;
    if let Some(n) = cli.node_limit {
        b.node_limit = n;
    }
    if let Some(t) = cli.time_limit_secs {
        b.time_limit = Duration::try_from_secs_f64(t).map_err(|_| Error::param(format!("bad time limit {t}")))?;
    }
    b.symmetry = cli.symmetry;
    b.validate()?;
    Ok(b)
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::param(format!("--{flag} is required here")))
}

fn freeness(g: &OrderedHypergraph, spec: PatternSpec) -> Result<Certificate> {
    let cert = Certificate::new(format!("{spec}-free"))
        .param("n", g.n())
        .param("pattern", spec)
        .with_value(g.edge_count());
    Ok(match find_embedding(g, &spec.build()?)? {
        Some(emb) => cert.fail(emb),
        None => cert,
    })
}

/// A construction together with its certificate, fields in a fixed order.
#[derive(Serialize)]
struct Certified<T: Serialize> {
    #[serde(flatten)]
    artifact: T,
    certificate: Certificate,
}

impl<T: Serialize> Certified<T> {
    fn render(&self) -> Result<(String, bool)> {
        Ok((serde_json::to_string(self)?, self.certificate.verified))
    }
}

#[derive(Serialize)]
struct TransversalOut<'a> {
    hypergraph: &'a OrderedHypergraph,
    e1: usize,
    e2: usize,
    overlap: usize,
}

#[derive(Serialize)]
enum Artifact<'a> {
    #[serde(rename = "hypergraph")]
    Hypergraph(&'a OrderedHypergraph),
    #[serde(rename = "packing")]
    Packing(&'a PackingFamily),
    #[serde(rename = "weights")]
    Weights(&'a EdgeWeighting),
}

fn construct(sink: &Sink, target: ConstructTarget, p: PatternArgs, padded: bool) -> Result<bool> {
    let PatternArgs { n, r, s, .. } = p;
    let mode = if padded { Divisibility::Padded } else { Divisibility::Strict };
    let name = format!("construct-{}-n{n}-r{r}-s{s}.json", format!("{target:?}").to_lowercase());
    let (text, verified) = match target {
        ConstructTarget::Transversal => {
            let t = biased_transversal(n, r, s)?;
            let certificate = verify_transversal(t.graph(), p.spec()?)?;
            let artifact = TransversalOut {
                hypergraph: t.graph(),
                e1: t.e1.len(),
                e2: t.e2.len(),
                overlap: t.overlap(),
            };
            Certified { artifact, certificate }.render()?
        }
        ConstructTarget::Packing | ConstructTarget::Flower => {
            let fam = match target {
                ConstructTarget::Packing => generate_packing(n, r, s)?,
                _ => flower_packing_with(n, r, s, mode)?,
            };
            let certificate = fam.verify();
            Certified { artifact: Artifact::Packing(&fam), certificate }.render()?
        }
        ConstructTarget::Weights => {
            let w = fractional_transversal_weights_with(n, r, s, mode)?;
            let certificate = verify_feasible(&w, n, p.spec()?)?;
            Certified { artifact: Artifact::Weights(&w), certificate }.render()?
        }
        ConstructTarget::Blowup => {
            let g = interval_blowup(n, r, s)?;
            let certificate = freeness(&g, p.spec()?)?;
            Certified { artifact: Artifact::Hypergraph(&g), certificate }.render()?
        }
    };
    sink.emit(&name, &text)?;
    Ok(verified)
}

fn verify(sink: &Sink, target: VerifyTarget, input: &Path, spec: Result<PatternSpec>, k: Option<Label>) -> Result<bool> {
    let text = read(input)?;
    let cert = match target {
        VerifyTarget::Transversal => verify_transversal(&OrderedHypergraph::from_json(&text)?, spec?)?,
        VerifyTarget::Free => freeness(&OrderedHypergraph::from_json(&text)?, spec?)?,
        VerifyTarget::Packing => serde_json::from_str::<PackingFamily>(&text)?.verify(),
        VerifyTarget::Weights => {
            let w: EdgeWeighting = serde_json::from_str(&text)?;
            verify_feasible(&w, w.n(), spec?)?
        }
        VerifyTarget::CopyWeights => {
            let w: CopyWeighting = serde_json::from_str(&text)?;
            verify_feasible(&w, w.n, w.pattern)?
        }
        VerifyTarget::Exact => serde_json::from_str::<ExactResult>(&text)?.verify()?,
        VerifyTarget::Labeling => {
            let phi = Labeling::from_csv(text.as_bytes(), need(k, "k")?)?;
            let c = cost(&phi);
            Certificate::new("labeling cost")
                .param("n", phi.n())
                .param("k", phi.k())
                .param("monotone", phi.is_monotone())
                .param("bad", c.bad)
                .with_value(c.good)
        }
    };
    sink.emit_json("verify.json", &cert)?;
    Ok(cert.verified)
}

fn exact(sink: &Sink, budget: &SearchBudget, target: ExactTarget, n: usize, spec: Result<PatternSpec>, k: Option<Label>) -> Result<bool> {
    let res = match target {
        ExactTarget::Tau => exact_tau(n, spec?, budget)?,
        ExactTarget::Nu => exact_nu(n, spec?, budget)?,
        ExactTarget::Ex => exact_ex(n, spec?, budget)?,
        ExactTarget::F => exact_f(n, need(k, "k")?, budget, false)?,
        ExactTarget::MonotoneF => exact_f(n, need(k, "k")?, budget, true)?,
    };
    let tag = match (res.pattern, res.k) {
        (Some(p), _) => format!("r{}-s{}", p.r, p.s),
        (_, Some(k)) => format!("k{k}"),
        _ => String::new(),
    };
    let name = format!("exact-{}-n{n}-{tag}.json", format!("{target:?}").to_lowercase());
    sink.emit_json(&name, &res)?;
    Ok(true)
}

fn label(sink: &Sink, kind: ConstructionKind, k: Label, n: Option<usize>, density: Option<String>) -> Result<bool> {
    let tag = format!("{kind:?}").to_lowercase();
    if let Some(range) = density {
        let rows = density_table(kind, &parse_range(&range)?, k)?;
        let mut buf = Vec::new();
        write_density_csv(&rows, &mut buf)?;
        sink.emit(&format!("density-{tag}-k{k}.csv"), &String::from_utf8(buf).expect("csv is utf-8"))?;
        return Ok(true);
    }
    let n = need(n, "n")?;
    let phi = kind.build(n, k)?;
    let mut buf = Vec::new();
    phi.to_csv(&mut buf)?;
    let base = format!("labeling-{tag}-n{n}-k{k}");
    sink.emit(&format!("{base}.csv"), &String::from_utf8(buf).expect("csv is utf-8"))?;
    let c = cost(&phi);
    let meta = json!({
        "construction": kind,
        "n": n,
        "k": k,
        "good": c.good,
        "bad": c.bad,
        "monotone": phi.is_monotone(),
        "choices": kind.choices(),
    });
    sink.save(&format!("{base}.json"), &serde_json::to_string(&meta)?)?;
    Ok(true)
}

fn reproduce(sink: &Sink, budget: &SearchBudget, id: &str) -> Result<bool> {
    let ids: Vec<u8> = if id == "all" {
        CRITERION_IDS.to_vec()
    } else {
        vec![id.parse().map_err(|_| Error::param(format!("criterion id `{id}` is not 1..=9 or all")))?]
    };
    let mut all_passed = true;
    for id in ids {
        let report = run_criterion(id, budget)?;
        eprintln!("{}", report.line());
        all_passed &= report.passed;
        sink.emit_json(&format!("criterion-{id}.json"), &report)?;
    }
    Ok(all_passed)
}

/// Runs a parsed command; `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let sink = Sink { dir: cli.out_dir.clone() };
    let spec = |r: Option<usize>, s: Option<usize>, kind: PatternKind| PatternSpec::new(kind, need(r, "r")?, need(s, "s")?);
    match &cli.command {
        Command::Construct { target, pattern, padded } => construct(&sink, *target, *pattern, *padded),
        Command::Verify { target, input, r, s, pattern, k } => verify(&sink, *target, input, spec(*r, *s, *pattern), *k),
        Command::Exact { target, n, r, s, pattern, k } => exact(&sink, &budget(cli)?, *target, *n, spec(*r, *s, *pattern), *k),
        Command::Lp { pattern, format } => {
            let (n, p) = (pattern.n, pattern.spec()?);
            match format {
                LpFormat::Json => {
                    let out = solve_fractional(n, p)?;
                    sink.emit_json(&format!("lp-n{n}-r{}-s{}.json", p.r, p.s), &out)?;
                    Ok(out.status == crate::lp::LpStatus::Optimal)
                }
                LpFormat::Cplex => {
                    sink.emit(&format!("lp-n{n}-r{}-s{}.lp", p.r, p.s), &export_lp(n, p)?)?;
                    Ok(true)
                }
            }
        }
        Command::Label { construction, k, n, density } => label(&sink, (*construction).into(), *k, *n, density.clone()),
        Command::Sweep { grid, quantity, pattern } => {
            let spec = SweepSpec {
                grid: parse_grid(grid)?,
                quantities: parse_quantities(quantity)?,
                pattern: *pattern,
                budget: budget(cli)?,
            };
            let table = spec.run()?;
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            sink.emit("sweep.csv", &String::from_utf8(buf).expect("csv is utf-8"))?;
            Ok(true)
        }
        Command::Reproduce { id } => reproduce(&sink, &budget(cli)?, id),
    }
}

/// Parses arguments and runs; returns the process exit code. Usage errors
/// exit 2, module errors print a JSON error object to stderr and exit 1,
/// failed checks exit 1.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            1
        }
    }
}
