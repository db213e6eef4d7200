//! `sortnet`: command line front end for the `sortnet` library.
//!
//! Every subcommand writes JSON (default) or CSV to standard output or to the
//! file given by `--output`. JSON outputs carry the resolved parameters and
//! seed; CSV outputs start with a `#` comment line holding the same values.
//!
//! Exit status: 0 on success, 2 on usage or domain errors, 3 when a
//! numerical method fails its own accuracy check.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sortnet::experiments::{self, AgueSpec, CorrelationWindow, ExperimentReport};
use sortnet::fredholm;
use sortnet::jumps::PointConfiguration;
use sortnet::kernels::{self, ContourConfig, LambdaKernelQuery};
use sortnet::local_eg::{local_eg_on_points, DEFAULT_SCAN};
use sortnet::network::sample_network;
use sortnet::rng::{self, DEFAULT_SEED};
use sortnet::tableau::{poissonize, sample_syt_uniform, YoungDiagram};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "sortnet", version, about = "Random sorting networks and their local limit")]
struct Cli {
    /// Random seed, or `random` for a fresh one (reported in the output).
    #[arg(long, global = true, default_value_t = SeedArg::Fixed(DEFAULT_SEED))]
    seed: SeedArg,
    /// Worker threads for Monte Carlo trials; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum SeedArg {
    Fixed(u64),
    Random,
}

impl std::fmt::Display for SeedArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeedArg::Fixed(s) => write!(f, "{s}"),
            SeedArg::Random => f.write_str("random"),
        }
    }
}

impl std::str::FromStr for SeedArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "random" {
            return Ok(SeedArg::Random);
        }
        s.parse()
            .map(SeedArg::Fixed)
            .map_err(|_| format!("expected an unsigned integer or `random`, got `{s}`"))
    }
}

impl SeedArg {
    fn resolve(self) -> u64 {
        match self {
            SeedArg::Fixed(s) => s,
            SeedArg::Random => rand::random(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a uniformly random sorting network.
    SampleNetwork {
        /// Number of particles.
        #[arg(long)]
        n: usize,
    },
    /// Sample a uniformly random standard tableau of a given shape.
    SampleTableau {
        /// Row lengths, comma separated, e.g. `4,3,2,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        /// Replace the entries by sorted uniform values.
        #[arg(long)]
        poissonize: bool,
    },
    /// Evaluate a correlation kernel.
    #[command(subcommand)]
    Kernel(KernelCommand),
    /// Gap probability of the edge process on `[0, t]` and related laws.
    Fredholm(FredholmArgs),
    /// Run the local algorithm on a jump configuration.
    LocalEg(LocalEgArgs),
    /// Run a Monte Carlo experiment.
    Experiment(ExperimentArgs),
}

#[derive(Subcommand, Debug)]
enum KernelCommand {
    /// The edge kernel `K_edge(x1, u1; x2, u2)`.
    Edge {
        #[arg(long, allow_hyphen_values = true)]
        x1: i64,
        #[arg(long)]
        u1: f64,
        #[arg(long, allow_hyphen_values = true)]
        x2: i64,
        #[arg(long)]
        u2: f64,
    },
    /// The finite-shape kernel `K_λ(x1, t1; x2, t2)`.
    Lambda {
        /// Row lengths of `λ`, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        /// Number of particles, at least the number of rows.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        x1: i64,
        #[arg(long)]
        t1: f64,
        #[arg(long, allow_hyphen_values = true)]
        x2: i64,
        #[arg(long)]
        t2: f64,
        /// Quadrature nodes per unit of contour length.
        #[arg(long, default_value_t = ContourConfig::default().nodes_per_unit)]
        nodes_per_unit: usize,
    },
}

#[derive(Args, Debug)]
struct FredholmArgs {
    /// Interval length.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "grid", required_unless_present = "grid")]
    t: Option<f64>,
    /// Nyström nodes; defaults to a size adapted to `t`.
    #[arg(long)]
    nodes: Option<usize>,
    /// CSV file of `t` values (one per line, optional `t` header).
    #[arg(long)]
    grid: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LocalEgArgs {
    /// Jump configuration as JSON `{"points":[[x,u],…]}` or CSV `x,u`.
    #[arg(long)]
    input: PathBuf,
    /// Swap columns `a,b` to reconstruct.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    window: Vec<i64>,
    /// Only points with `u ≤ t_max` are used.
    #[arg(long, default_value_t = f64::INFINITY)]
    t_max: f64,
    /// How far to search for empty bounding lines.
    #[arg(long, default_value_t = DEFAULT_SCAN)]
    scan: i64,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// Also write gnuplot data files `<prefix>_empirical.dat` and
    /// `<prefix>_reference.dat`.
    #[arg(long, global = true)]
    plot_data: Option<PathBuf>,
    /// Also write the per-trial samples as CSV to this file.
    #[arg(long, global = true)]
    samples_out: Option<PathBuf>,
    #[command(subcommand)]
    kind: ExperimentKind,
}

#[derive(Subcommand, Debug)]
enum ExperimentKind {
    /// First appearance time of the swap at column `αn`.
    FirstSwap {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Gap between consecutive swaps at column `αn` around step `βN`.
    Gap {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Box-count correlation functions of the rescaled jump process.
    Correlation {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
        /// Lines to examine, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lines: Option<Vec<i64>>,
        #[arg(long)]
        u_max: Option<f64>,
        #[arg(long)]
        bin_width: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Mean jump counts on line 0 against the edge-process intensity.
    Intensity {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 3.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Global swap positions against the semicircle law.
    Semicircle {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Corners of the antisymmetric Gaussian matrix near the hard edge.
    Ague {
        /// Half-size `M` of the reference corner `2M`.
        #[arg(long, default_value_t = 100)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Level offsets, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,1")]
        levels: Vec<i64>,
    },
    /// Local statistics in two windows shifted by `shift` steps.
    Stationarity {
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Shift in steps; defaults to a quarter of the network length.
        #[arg(long)]
        shift: Option<usize>,
        /// Rescaled window length.
        #[arg(long, default_value_t = 2.0)]
        window: f64,
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
}

/// Failure of a command, mapped to an exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<sortnet::Error> for Failure {
    fn from(e: sortnet::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// `# key=value …` header line for CSV output.
fn csv_header(command: &str, params: &Value) -> String {
    let mut line = format!("# sortnet {command}");
    if let Value::Object(map) = params {
        for (k, v) in map {
            let _ = write!(line, " {k}={v}");
        }
    }
    line.push('\n');
    line
}

fn sample_network_cmd(n: usize, seed: u64, format: Format) -> Result<String, Failure> {
    let w = sample_network(n, &mut rng::stream(seed, 0))?;
    let params = json!({ "n": n, "seed": seed });
    Ok(match format {
        Format::Json => format!("{{\"params\":{params},\"network\":{}}}\n", w.to_json()),
        Format::Csv => csv_header("sample-network", &params) + &w.wiring_csv(),
    })
}

fn sample_tableau_cmd(shape: Vec<usize>, poissonized: bool, seed: u64, format: Format) -> Result<String, Failure> {
    let shape = YoungDiagram::new(shape)?;
    let mut r = rng::stream(seed, 0);
    let t = sample_syt_uniform(&shape, &mut r);
    let params = json!({ "shape": shape.rows(), "poissonize": poissonized, "seed": seed });
    let (body, cells): (String, Vec<(usize, usize, String)>) = if poissonized {
        let p = poissonize(&t, &mut r);
        let cells = p.entries().map(|((i, j), v)| (i, j, format!("{v:.17e}"))).collect();
        (p.to_json(), cells)
    } else {
        let cells = t
            .rows()
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i + 1, j + 1, v.to_string())))
            .collect();
        (t.to_json(), cells)
    };
    Ok(match format {
        Format::Json => format!("{{\"params\":{params},\"tableau\":{body}}}\n"),
        Format::Csv => {
            let mut out = csv_header("sample-tableau", &params) + "i,j,value\n";
            for (i, j, v) in cells {
                let _ = writeln!(out, "{i},{j},{v}");
            }
            out
        }
    })
}

fn kernel_cmd(k: KernelCommand, format: Format) -> Result<String, Failure> {
    let (query, value, nodes, imag) = match k {
        KernelCommand::Edge { x1, u1, x2, u2 } => {
            if !(u1 >= 0.0 && u2 >= 0.0) {
                return Err(Failure::Usage(format!("times must be ≥ 0, got ({u1}, {u2})")));
            }
            let v = kernels::k_edge(x1, u1, x2, u2);
            if !v.is_finite() {
                return Err(Failure::Numerical(format!("K_edge evaluated to {v}")));
            }
            let query = json!({ "kernel": "edge", "x1": x1, "u1": u1, "x2": x2, "u2": u2 });
            (query, v, Value::Null, 0.0)
        }
        KernelCommand::Lambda { shape, n, x1, t1, x2, t2, nodes_per_unit } => {
            let shape = YoungDiagram::new(shape)?;
            let n = n.unwrap_or(shape.len());
            let cfg = ContourConfig { nodes_per_unit, ..ContourConfig::default() };
            let q = LambdaKernelQuery { shape, n, x1, t1, x2, t2 };
            let kv = kernels::k_lambda(&q, &cfg)?;
            let query = json!({
                "kernel": "lambda", "shape": q.shape.rows(), "n": n,
                "x1": x1, "t1": t1, "x2": x2, "t2": t2,
            });
            (query, kv.value, json!(kv.nodes), kv.imag_residual)
        }
    };
    Ok(match format {
        Format::Json => {
            let out = json!({
                "query": query,
                "value": value,
                "metadata": { "nodes": nodes, "imag_residual": imag },
            });
            format!("{out}\n")
        }
        Format::Csv => csv_header("kernel", &query) + &format!("value,imag_residual\n{value:.17e},{imag:.17e}\n"),
    })
}

/// One row of the Fredholm table; `dyson_tail` is undefined at `t = 0`.
fn fredholm_row(t: f64, nodes: Option<usize>) -> Result<(f64, usize, f64, f64, Option<f64>), Failure> {
    if t.is_nan() || t < 0.0 || t.is_infinite() {
        return Err(Failure::Usage(format!("t must be a finite number ≥ 0, got {t}")));
    }
    let m = nodes.unwrap_or_else(|| fredholm::default_nodes(t));
    let f = fredholm::gap_probability(t, m)?;
    let tail = if t > 0.0 { Some(fredholm::dyson_tail(t)?) } else { None };
    Ok((t, m, f, 1.0 - f, tail))
}

fn parse_grid(text: &str) -> Result<Vec<f64>, Failure> {
    let mut ts = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let field = line.split(',').next().unwrap_or("").trim();
        if field.is_empty() || field.starts_with('#') || (k == 0 && field == "t") {
            continue;
        }
        let t = field
            .parse()
            .map_err(|_| Failure::Usage(format!("grid line {}: `{field}` is not a number", k + 1)))?;
        ts.push(t);
    }
    Ok(ts)
}

fn fredholm_cmd(a: FredholmArgs, format: Format) -> Result<String, Failure> {
    let rows = match (&a.grid, a.t) {
        (Some(path), _) => parse_grid(&read_file(path)?)?
            .into_iter()
            .map(|t| fredholm_row(t, a.nodes))
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(t)) => vec![fredholm_row(t, a.nodes)?],
        (None, None) => return Err(Failure::Usage("need --t or --grid".into())),
    };
    let as_json = |&(t, m, f, cdf, tail): &(f64, usize, f64, f64, Option<f64>)| {
        json!({ "t": t, "nodes": m, "gap_probability": f, "first_swap_cdf": cdf, "dyson_tail": tail })
    };
    Ok(match format {
        Format::Json if a.grid.is_some() => {
            format!("{}\n", Value::Array(rows.iter().map(as_json).collect()))
        }
        Format::Json => format!("{}\n", as_json(&rows[0])),
        Format::Csv => {
            let nodes = a.nodes.map_or(json!("auto"), |m| json!(m));
            let mut out = csv_header("fredholm", &json!({ "nodes": nodes }));
            out.push_str("t,gap_probability,first_swap_cdf,dyson_tail\n");
            for (t, _, f, cdf, tail) in rows {
                let tail = tail.map(|v| format!("{v:.17e}")).unwrap_or_default();
                let _ = writeln!(out, "{t},{f:.17e},{cdf:.17e},{tail}");
            }
            out
        }
    })
}

fn parse_points(text: &str) -> Result<PointConfiguration, Failure> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str::<PointConfiguration>(text)
            .map(|p| PointConfiguration::new(p.points().to_vec()))
            .map_err(|e| Failure::Usage(format!("bad point JSON: {e}")));
    }
    let mut points = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || (k == 0 && line == "x,u") {
            continue;
        }
        let bad = || Failure::Usage(format!("input line {}: expected `x,u`, got `{line}`", k + 1));
        let (x, u) = line.split_once(',').ok_or_else(bad)?;
        points.push((x.trim().parse().map_err(|_| bad())?, u.trim().parse().map_err(|_| bad())?));
    }
    Ok(PointConfiguration::new(points))
}

fn local_eg_cmd(a: LocalEgArgs, format: Format) -> Result<String, Failure> {
    let [lo, hi] = a.window[..] else {
        return Err(Failure::Usage(format!("--window needs two columns a,b, got {:?}", a.window)));
    };
    let points = parse_points(&read_file(&a.input)?)?;
    let out = local_eg_on_points(&points, lo, hi, a.t_max, a.scan)?;
    let t_max = if a.t_max.is_finite() { json!(a.t_max) } else { Value::Null };
    let params = json!({ "input": a.input.display().to_string(), "window": [lo, hi], "t_max": t_max, "scan": a.scan });
    Ok(match format {
        Format::Json => {
            let swaps: Vec<Value> = out.swaps.iter().map(|s| json!({ "x": s.x, "t": s.t })).collect();
            let body = json!({ "params": params, "bounding_lines": [out.window.0, out.window.1], "swaps": swaps });
            format!("{body}\n")
        }
        Format::Csv => {
            let mut csv = csv_header("local-eg", &params) + "x,t\n";
            for s in &out.swaps {
                let _ = writeln!(csv, "{},{:.17e}", s.x, s.t);
            }
            csv
        }
    })
}

fn run_experiment(kind: ExperimentKind, seed: u64) -> sortnet::Result<ExperimentReport> {
    match kind {
        ExperimentKind::FirstSwap { n, alpha, trials } => experiments::first_swap_experiment(n, alpha, trials, seed),
        ExperimentKind::Gap { n, alpha, beta, trials } => experiments::gap_experiment(n, alpha, beta, trials, seed),
        ExperimentKind::Correlation { n, alpha, lines, u_max, bin_width, trials } => {
            let d = CorrelationWindow::default();
            let window = CorrelationWindow {
                lines: lines.unwrap_or(d.lines),
                u_max: u_max.unwrap_or(d.u_max),
                bin_width: bin_width.unwrap_or(d.bin_width),
            };
            experiments::correlation_experiment(n, alpha, &window, trials, seed)
        }
        ExperimentKind::Intensity { n, t_max, trials } => experiments::intensity_experiment(n, t_max, trials, seed),
        ExperimentKind::Semicircle { n, trials } => experiments::semicircle_experiment(n, trials, seed),
        ExperimentKind::Ague { m, samples, levels } => {
            experiments::ague_corners_experiment(&AgueSpec { m, samples, levels }, seed)
        }
        ExperimentKind::Stationarity { n, shift, window, trials } => {
            let shift = shift.unwrap_or(n * n.saturating_sub(1) / 8);
            experiments::stationarity_experiment(n, shift, window, trials, seed)
        }
    }
}

fn experiment_cmd(a: ExperimentArgs, seed: u64, format: Format) -> Result<String, Failure> {
    let report = run_experiment(a.kind, seed)?;
    if let Some(prefix) = &a.plot_data {
        let (emp, reference) = report.plot_data();
        let name = |suffix: &str| {
            let mut s = prefix.clone().into_os_string();
            s.push(suffix);
            PathBuf::from(s)
        };
        write_file(&name("_empirical.dat"), &emp)?;
        write_file(&name("_reference.dat"), &reference)?;
    }
    if let Some(path) = &a.samples_out {
        write_file(path, &report.samples_csv())?;
    }
    Ok(match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => {
            let params = serde_json::to_value(&report.params).expect("parameters serialize");
            csv_header(&format!("experiment {}", report.name), &params) + &report.histogram_csv()
        }
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(k) = cli.threads {
        if k == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    let seed = cli.seed.resolve();
    let out = match cli.command {
        Command::SampleNetwork { n } => sample_network_cmd(n, seed, cli.format)?,
        Command::SampleTableau { shape, poissonize } => sample_tableau_cmd(shape, poissonize, seed, cli.format)?,
        Command::Kernel(k) => kernel_cmd(k, cli.format)?,
        Command::Fredholm(a) => fredholm_cmd(a, cli.format)?,
        Command::LocalEg(a) => local_eg_cmd(a, cli.format)?,
        Command::Experiment(a) => experiment_cmd(a, seed, cli.format)?,
    };
    match &cli.output {
        Some(path) => write_file(path, &out),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors and 0 for --help / --version.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
