//! Command-line front end.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::builtins::TABLE_GRAPHS;
use crate::circuit::ResistanceField;
use crate::cpa::CpaFunction;
use crate::error::{Error, ErrorKind, Result};
use crate::graph::{MetrizedGraph, Point};
use crate::green::{build_green, tau_from_field, trace_comparison};
use crate::io::{load_graph, load_measure};
use crate::measure::Measure;
use crate::spectral::{mercer_partial_sum, partial_trace, rayleigh_quotient, EigenOptions, EigenReport, SpectralProblem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

pub const THREADS_ENV: &str = "METRAGRAPH_THREADS";

#[derive(Debug, Parser)]
#[command(name = "metragraph", version, about = "Harmonic analysis on metrized graphs")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// `builtin:<name>` or a JSON graph file.
    #[arg(long)]
    pub graph: String,
}

#[derive(Debug, Args)]
pub struct MeasureArg {
    /// `dx`, `dx-normalized`, `canonical`, or a JSON measure file.
    #[arg(long, default_value = "dx-normalized")]
    pub measure: String,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    /// Largest eigenvalue searched.
    #[arg(long)]
    pub lambda_max: f64,
    /// Scan step in `γ`.
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long, default_value_t = 1e-8)]
    pub rank_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertices, edges and lengths.
    Info(GraphArg),
    /// Effective resistance `r(x, y)`.
    Resistance {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// `j_ζ(x, y)`.
    Jfun {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        zeta: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// `g_μ(x, y)`.
    Green {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        measure: MeasureArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Vertex masses and edge densities of the canonical measure.
    CanonicalMeasure(GraphArg),
    /// The tau constant.
    Tau(GraphArg),
    /// Eigenvalues with multiplicities.
    Eigen {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        measure: MeasureArg,
        #[command(flatten)]
        spectral: SpectralArgs,
    },
    /// Sampled orthonormal eigenfunctions.
    Eigenfunctions {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        measure: MeasureArg,
        #[command(flatten)]
        spectral: SpectralArgs,
        /// Samples per edge.
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// `∫ g_μ(x, x) dμ`, with the eigenvalue partial sum when `--lambda-max` is given.
    Trace {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        measure: MeasureArg,
        #[arg(long)]
        lambda_max: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
    },
    /// Compares two traces through the energy of their difference.
    TraceCompare {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        mu1: String,
        #[arg(long)]
        mu2: String,
    },
    /// Sup-grid error of the truncated eigenfunction expansion of `g_μ`.
    MercerCheck {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        measure: MeasureArg,
        #[command(flatten)]
        spectral: SpectralArgs,
        /// Grid points per edge.
        #[arg(long, default_value_t = 8)]
        grid: usize,
    },
    /// Energy pairing `⟨ν, ω⟩_μ`.
    Energy {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        measure: MeasureArg,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        omega: String,
    },
    /// Average off-diagonal `g_μ` over a point set and its lower bound.
    DiscSum {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        measure: MeasureArg,
        /// A point; repeat for more.
        #[arg(long = "point")]
        points: Vec<String>,
        /// Number of uniformly random points added to `--point`.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rayleigh quotient of a piecewise-affine trial function.
    Rayleigh {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        measure: MeasureArg,
        /// Vertex values as `name=value` pairs; unlisted vertices are 0.
        #[arg(long, value_delimiter = ',')]
        values: Vec<String>,
    },
    /// Tau and the first two eigenvalues for `dx` and the canonical measure
    /// on the built-in comparison graphs.
    ReproduceTable {
        /// Restrict to these built-ins.
        #[arg(long, value_delimiter = ',')]
        graphs: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => {
                let r = round_sig(*x);
                serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
            }
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Result of one command: a table plus warnings.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub warnings: Vec<String>,
}

impl Table {
    fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Self::default()
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    m.insert(c.clone(), v.json());
                }
                Value::Object(m)
            })
            .collect();
        let v = json!({
            "command": self.command,
            "columns": self.columns,
            "rows": rows,
            "warnings": self.warnings,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        let r = round_sig(x);
        if r != 0.0 && (r.abs() < 1e-5 || r.abs() >= 1e15) {
            format!("{r:e}")
        } else {
            format!("{r}")
        }
    }
}

/// `value(mult)` with two decimals.
pub fn eigen_label(lambda: f64, multiplicity: usize) -> String {
    format!("{lambda:.2}({multiplicity})")
}

pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Parse => EXIT_USAGE,
        ErrorKind::Validation => EXIT_VALIDATION,
        ErrorKind::Numeric => EXIT_NUMERIC,
    }
}

/// Parses, runs and writes; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    match execute(&cli.command) {
        Ok(table) => {
            for w in &table.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let text = table.render(cli.format);
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text).map_err(Error::from),
                None => out.write_all(text.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    exit_code(e.kind())
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(e.kind())
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::Invalid(format!("--{name} must be positive and finite, got {x}")))
    }
}

fn eigen_options(s: &SpectralArgs) -> Result<(f64, EigenOptions)> {
    let gamma_max = positive("lambda-max", s.lambda_max)?.sqrt();
    let step = s.step.map(|x| positive("step", x)).transpose()?;
    let opts = EigenOptions {
        step,
        rank_tol: positive("rank-tol", s.rank_tol)?,
        tol: positive("tol", s.tol)?,
        ..EigenOptions::default()
    };
    Ok((gamma_max, opts))
}

fn points(graph: &MetrizedGraph, specs: &[&str]) -> Result<Vec<Point>> {
    specs.iter().map(|s| graph.parse_point(s)).collect()
}

pub fn execute(cmd: &Command) -> Result<Table> {
    match cmd {
        Command::Info(g) => info(&load_graph(&g.graph)?),
        Command::Resistance { graph, x, y } => {
            let g = load_graph(&graph.graph)?;
            let p = points(&g, &[x, y])?;
            let field = ResistanceField::new(&g)?;
            let mut t = Table::new("resistance", &["x", "y", "r"]);
            t.push(vec![x.as_str().into(), y.as_str().into(), field.r(&p[0], &p[1]).into()]);
            Ok(t)
        }
        Command::Jfun { graph, zeta, x, y } => {
            let g = load_graph(&graph.graph)?;
            let p = points(&g, &[zeta, x, y])?;
            let field = ResistanceField::new(&g)?;
            let mut t = Table::new("jfun", &["zeta", "x", "y", "j"]);
            t.push(vec![
                zeta.as_str().into(),
                x.as_str().into(),
                y.as_str().into(),
                field.j(&p[0], &p[2], &p[1]).into(),
            ]);
            Ok(t)
        }
        Command::Green { graph, measure, x, y } => {
            let g = load_graph(&graph.graph)?;
            let mu = load_measure(&g, &measure.measure)?;
            let p = points(&g, &[x, y])?;
            let green = build_green(&g, &mu)?;
            let mut t = Table::new("green", &["x", "y", "g", "constant"]);
            t.push(vec![
                x.as_str().into(),
                y.as_str().into(),
                green.eval(&p[0], &p[1]).into(),
                green.constant().into(),
            ]);
            Ok(t)
        }
        Command::CanonicalMeasure(g) => canonical(&load_graph(&g.graph)?),
        Command::Tau(g) => {
            let g = load_graph(&g.graph)?;
            let tau = tau_from_field(&ResistanceField::new(&g)?)?;
            let mut t = Table::new("tau", &["tau", "total_length"]);
            t.push(vec![tau.into(), g.total_length().into()]);
            Ok(t)
        }
        Command::Eigen { graph, measure, spectral } => {
            let g = load_graph(&graph.graph)?;
            let mu = load_measure(&g, &measure.measure)?;
            let (gamma_max, opts) = eigen_options(spectral)?;
            let report = SpectralProblem::new(&g, &mu)?.find_eigenvalues(gamma_max, &opts)?;
            Ok(eigen_table(&report))
        }
        Command::Eigenfunctions { graph, measure, spectral, samples } => {
            let g = load_graph(&graph.graph)?;
            let mu = load_measure(&g, &measure.measure)?;
            let (gamma_max, opts) = eigen_options(spectral)?;
            if *samples == 0 {
                return Err(Error::Invalid("--samples must be at least 1".into()));
            }
            let problem = SpectralProblem::new(&g, &mu)?;
            let report = problem.eigenpairs(gamma_max, &opts)?;
            eigenfunction_table(&problem, &report, *samples)
        }
        Command::Trace { graph, measure, lambda_max, step } => {
            let g = load_graph(&graph.graph)?;
            let mu = load_measure(&g, &measure.measure)?;
            let lm = lambda_max.map(|x| positive("lambda-max", x)).transpose()?;
            let step = step.map(|x| positive("step", x)).transpose()?;
            let green = build_green(&g, &mu)?;
            let mut t = Table::new("trace", &["trace", "lambda_max", "partial_trace", "eigenvalues"]);
            match lm {
                Some(lm) => {
                    let opts = EigenOptions { step, ..EigenOptions::default() };
                    let report = SpectralProblem::new(&g, &mu)?.find_eigenvalues(lm.sqrt(), &opts)?;
                    let count: usize = report.pairs.iter().map(|p| p.multiplicity).sum();
                    t.push(vec![
                        green.trace().into(),
                        lm.into(),
                        partial_trace(&report.pairs).into(),
                        count.into(),
                    ]);
                    t.warnings = report.warnings;
                }
                None => t.push(vec![green.trace().into(), "".into(), "".into(), "".into()]),
            }
            Ok(t)
        }
        Command::TraceCompare { graph, mu1, mu2 } => {
            let g = load_graph(&graph.graph)?;
            let m1 = load_measure(&g, mu1)?;
            let m2 = load_measure(&g, mu2)?;
            let c = trace_comparison(&g, &m1, &m2)?;
            let mut t = Table::new(
                "trace-compare",
                &["trace_mu1", "trace_mu2", "formula", "dx_energy", "defect_energy"],
            );
            t.push(vec![
                c.lhs.into(),
                c.trace_mu2.into(),
                c.rhs.into(),
                c.dx_energy.into(),
                c.defect_energy.into(),
            ]);
            Ok(t)
        }
        Command::MercerCheck { graph, measure, spectral, grid } => {
            let g = load_graph(&graph.graph)?;
            let mu = load_measure(&g, &measure.measure)?;
            let (gamma_max, opts) = eigen_options(spectral)?;
            if *grid == 0 {
                return Err(Error::Invalid("--grid must be at least 1".into()));
            }
            mercer_table(&g, &mu, gamma_max, &opts, *grid)
        }
        Command::Energy { graph, measure, nu, omega } => {
            let g = load_graph(&graph.graph)?;
            let mu = load_measure(&g, &measure.measure)?;
            let n = load_measure(&g, nu)?;
            let w = load_measure(&g, omega)?;
            let green = build_green(&g, &mu)?;
            let mut t = Table::new("energy", &["pairing", "nu_mass", "omega_mass"]);
            t.push(vec![
                green.energy_pairing(&n, &w).into(),
                n.total_mass(&g).into(),
                w.total_mass(&g).into(),
            ]);
            Ok(t)
        }
        Command::DiscSum { graph, measure, points: specs, random, seed } => {
            let g = load_graph(&graph.graph)?;
            let mu = load_measure(&g, &measure.measure)?;
            let mut pts = specs.iter().map(|s| g.parse_point(s)).collect::<Result<Vec<_>>>()?;
            pts.extend(random_points(&g, *random, *seed)?);
            let green = build_green(&g, &mu)?;
            let d = green.discriminant_sum(&pts)?;
            let mut t = Table::new("disc-sum", &["points", "average", "bound", "sup_diagonal", "constant"]);
            t.push(vec![d.points.into(), d.average.into(), d.bound.into(), d.sup_diagonal.into(), d.constant.into()]);
            Ok(t)
        }
        Command::Rayleigh { graph, measure, values } => {
            let g = load_graph(&graph.graph)?;
            let mu = load_measure(&g, &measure.measure)?;
            let mut vals = vec![0.0; g.vertex_count()];
            for item in values {
                let (name, v) = item
                    .split_once('=')
                    .ok_or_else(|| Error::Invalid(format!("expected name=value, got `{item}`")))?;
                let id = g.vertex_by_name(name.trim()).ok_or_else(|| Error::UnknownVertex(name.trim().to_string()))?;
                vals[id.0] = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad value in `{item}`")))?;
            }
            let trial = CpaFunction::from_vertex_values(&g, vals)?;
            let q = rayleigh_quotient(&g, &mu, &trial)?;
            let mut t = Table::new("rayleigh", &["quotient"]);
            t.push(vec![q.into()]);
            Ok(t)
        }
        Command::ReproduceTable { graphs } => {
            let names: Vec<&str> = if graphs.is_empty() {
                TABLE_GRAPHS.to_vec()
            } else {
                graphs.iter().map(String::as_str).collect()
            };
            reproduce_table(&names)
        }
    }
}

fn info(g: &MetrizedGraph) -> Result<Table> {
    let mut t = Table::new("info", &["edge", "tail", "head", "length", "tail_valence", "head_valence"]);
    for e in g.edges() {
        t.push(vec![
            e.name.as_str().into(),
            g.vertex_name(e.tail).into(),
            g.vertex_name(e.head).into(),
            e.length.into(),
            g.valence(e.tail).into(),
            g.valence(e.head).into(),
        ]);
    }
    Ok(t)
}

fn canonical(g: &MetrizedGraph) -> Result<Table> {
    let mu = Measure::canonical(g)?;
    let mut t = Table::new("canonical-measure", &["kind", "location", "value"]);
    for (p, m) in mu.atoms() {
        t.push(vec!["atom".into(), g.format_point(p).into(), (*m).into()]);
    }
    for (e, d) in mu.densities() {
        t.push(vec!["density".into(), g.edge(*e).name.as_str().into(), d.eval(0.0).into()]);
    }
    Ok(t)
}

fn eigen_table(report: &EigenReport) -> Table {
    let mut t = Table::new("eigen", &["index", "lambda", "gamma", "multiplicity", "label", "diagnostics"]);
    for (k, p) in report.pairs.iter().enumerate() {
        t.push(vec![
            (k + 1).into(),
            p.lambda.into(),
            p.gamma.into(),
            p.multiplicity.into(),
            eigen_label(p.lambda, p.multiplicity).into(),
            p.diagnostics.join("; ").into(),
        ]);
    }
    t.warnings = report.warnings.clone();
    t
}

fn eigenfunction_table(problem: &SpectralProblem, report: &EigenReport, samples: usize) -> Result<Table> {
    let g = problem.graph();
    let mut t = Table::new("eigenfunctions", &["index", "lambda", "basis", "edge", "offset", "value"]);
    for (k, p) in report.pairs.iter().enumerate() {
        for (b, f) in p.eigenfunctions.iter().enumerate() {
            for e in g.edge_ids() {
                let edge = g.edge(e);
                for s in 0..=samples {
                    let off = edge.length * s as f64 / samples as f64;
                    t.push(vec![
                        (k + 1).into(),
                        p.lambda.into(),
                        (b + 1).into(),
                        g.chain_name(e).into(),
                        (edge.chain_start() + off).into(),
                        f.eval(e, off).into(),
                    ]);
                }
            }
        }
    }
    t.warnings = report.warnings.clone();
    Ok(t)
}

fn mercer_table(g: &MetrizedGraph, mu: &Measure, gamma_max: f64, opts: &EigenOptions, grid: usize) -> Result<Table> {
    let problem = SpectralProblem::new(g, mu)?;
    let report = problem.eigenpairs(gamma_max, opts)?;
    let green = build_green(g, mu)?;
    let pts = grid_points(g, grid);
    let exact: Vec<f64> = pts
        .iter()
        .flat_map(|x| pts.iter().map(|y| green.eval(x, y)))
        .collect();
    let mut t = Table::new("mercer-check", &["eigenvalues", "lambda_cutoff", "sup_error"]);
    let n = report.pairs.len();
    let mut cuts: Vec<usize> = (1..=4).map(|q| (n * q).div_ceil(4)).filter(|&c| c > 0).collect();
    cuts.dedup();
    for c in cuts {
        let pairs = &report.pairs[..c];
        let mut sup = 0.0f64;
        let mut k = 0;
        for x in &pts {
            for y in &pts {
                sup = sup.max((exact[k] - mercer_partial_sum(&problem, pairs, x, y)).abs());
                k += 1;
            }
        }
        let count: usize = pairs.iter().map(|p| p.multiplicity).sum();
        t.push(vec![count.into(), pairs[c - 1].lambda.into(), sup.into()]);
    }
    t.warnings = report.warnings;
    Ok(t)
}

/// Vertices plus `per_edge` evenly spaced interior points on each edge.
pub fn grid_points(g: &MetrizedGraph, per_edge: usize) -> Vec<Point> {
    let mut pts: Vec<Point> = g.vertex_ids().map(Point::Vertex).collect();
    for e in g.edge_ids() {
        let l = g.length(e);
        for k in 1..=per_edge {
            pts.push(Point::Interior {
                edge: e,
                offset: l * k as f64 / (per_edge + 1) as f64,
            });
        }
    }
    pts
}

/// `n` points uniform with respect to arc length.
pub fn random_points(g: &MetrizedGraph, n: usize, seed: u64) -> Result<Vec<Point>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = g.total_length();
    (0..n)
        .map(|_| {
            let mut s = rng.gen::<f64>() * total;
            for e in g.edge_ids() {
                let l = g.length(e);
                if s < l {
                    return g.point_on_edge(e, s);
                }
                s -= l;
            }
            Ok(Point::Vertex(g.edge(crate::graph::EdgeId(0)).tail))
        })
        .collect()
}

/// First two distinct eigenvalues.
fn first_two(problem: &SpectralProblem) -> Result<EigenReport> {
    let opts = EigenOptions::default();
    let mut gamma_max = 4.0 * PI / problem.graph().total_length();
    loop {
        let mut r = problem.find_eigenvalues(gamma_max, &opts)?;
        if r.pairs.len() >= 2 {
            r.pairs.truncate(2);
            return Ok(r);
        }
        if gamma_max > 1e4 {
            return Err(Error::Numeric("fewer than two eigenvalues found".into()));
        }
        gamma_max *= 2.0;
    }
}

pub fn reproduce_table(names: &[&str]) -> Result<Table> {
    let mut t = Table::new(
        "reproduce-table",
        &[
            "graph", "tau", "lambda1_dx", "mult1_dx", "lambda2_dx", "mult2_dx", "lambda1_can", "mult1_can",
            "lambda2_can", "mult2_can", "dx", "can",
        ],
    );
    for name in names {
        let g = crate::builtins::builtin(name)?;
        let field = ResistanceField::new(&g)?;
        let tau = tau_from_field(&field)?;
        let can = Measure::canonical_from(&g, &field)?;
        let dx = first_two(&SpectralProblem::new(&g, &Measure::lebesgue(&g, true))?)?;
        let cn = first_two(&SpectralProblem::new(&g, &can)?)?;
        let mut row: Vec<Cell> = vec![(*name).into(), tau.into()];
        for r in [&dx, &cn] {
            for p in &r.pairs {
                row.push(p.lambda.into());
                row.push(p.multiplicity.into());
            }
        }
        for r in [&dx, &cn] {
            let labels: Vec<String> = r.pairs.iter().map(|p| eigen_label(p.lambda, p.multiplicity)).collect();
            row.push(labels.join(" ").into());
        }
        t.push(row);
        for w in dx.warnings.iter().chain(&cn.warnings) {
            t.warnings.push(format!("{name}: {w}"));
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(format_float(0.1 + 0.2), "0.3");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(1234567.891234567), "1234567.89123");
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(-1.3877787807814457e-17), "-1.38777878078e-17");
    }

    #[test]
    fn label() {
        assert_eq!(eigen_label(131.4159, 3), "131.42(3)");
    }

    #[test]
    fn csv_quotes() {
        let mut t = Table::new("x", &["a"]);
        t.push(vec!["p,q".into()]);
        assert_eq!(t.to_csv(), "a\n\"p,q\"\n");
    }
}
