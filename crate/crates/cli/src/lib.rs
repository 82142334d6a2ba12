//! Command-line front end: `rdp`, `compress`, `compare`, `sweep`, `stats`.
//!
//! Exit codes: 0 on success, 1 on data errors, 2 on usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hoboroute::geometry::mean_adjacent_distance;
use hoboroute::io::{load_route, select_points, write_route, RouteFormat};
use hoboroute::pipeline::{sweep_csv, Compression, DEFAULT_NORMALIZE_MEAN, SCHEMA_VERSION};
use hoboroute::rdp::rdp_simplify;
use hoboroute::{compare_methods, compress_route, epsilon_sweep, CompressOptions, CompressionReport, Error};
use hoboroute::{QaoaConfig, SolveMethod};

#[derive(Debug, Parser)]
#[command(name = "hoboroute", version, about = "Compress GPS routes with RDP or HOBO path selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simplify a route with Ramer–Douglas–Peucker.
    Rdp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        /// GPX or CSV by extension; GPX on stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compress a route with the HOBO path-selection method.
    Compress {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        solver: SolverArgs,
        /// GPX or CSV by extension; GPX on stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write a JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write per-segment QAOA expectation traces and sample histograms here.
        #[arg(long)]
        trace_dir: Option<PathBuf>,
    },
    /// Run RDP and the HOBO method side by side and print a table.
    Compare {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compare both methods over a range of thresholds; emits CSV.
    Sweep {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated list, e.g. "1e-5,5e-5,1e-4".
        #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "eps_range", required_unless_present = "eps_range")]
        epsilons: Vec<f64>,
        /// Linear range "start:stop:steps", both ends included.
        #[arg(long)]
        eps_range: Option<EpsRange>,
        /// Rescale the route to a mean point spacing of 0.000653 first.
        #[arg(long)]
        normalize: bool,
        /// Rescale the route to this mean point spacing first.
        #[arg(long)]
        normalize_mean: Option<f64>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print point count and mean spacing.
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Qaoa,
}

impl From<MethodArg> for SolveMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exact => SolveMethod::Exact,
            MethodArg::Qaoa => SolveMethod::Qaoa,
        }
    }
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Maximum variables per segment.
    #[arg(long, default_value_t = 12)]
    qubit_budget: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    method: MethodArg,
    /// QAOA layers.
    #[arg(long, default_value_t = 2)]
    reps: usize,
    #[arg(long, default_value_t = 4096)]
    shots: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ignore chords spanning more than this many points.
    #[arg(long)]
    max_offset: Option<usize>,
}

impl SolverArgs {
    fn options(&self, epsilon: f64) -> CompressOptions {
        CompressOptions {
            qubit_budget: Some(self.qubit_budget),
            max_offset: self.max_offset,
            method: self.method.into(),
            qaoa: QaoaConfig { reps: self.reps, shots: self.shots, seed: self.seed, ..QaoaConfig::default() },
            ..CompressOptions::new(epsilon)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct EpsRange {
    start: f64,
    stop: f64,
    steps: usize,
}

impl EpsRange {
    fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                let t = k as f64 / last;
                self.start * (1.0 - t) + self.stop * t
            })
            .collect()
    }
}

impl FromStr for EpsRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, steps] = parts.as_slice() else {
            return Err("expected start:stop:steps".into());
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("'{v}': {e}"));
        let steps: usize = steps.trim().parse().map_err(|e| format!("'{steps}': {e}"))?;
        if steps == 0 {
            return Err("steps must be at least 1".into());
        }
        Ok(EpsRange { start: num(start)?, stop: num(stop)?, steps })
    }
}

#[derive(Serialize)]
struct CompressDocument<'a> {
    schema_version: u32,
    input: String,
    epsilon: f64,
    qubit_budget: usize,
    method: SolveMethod,
    seed: u64,
    kept_indices: &'a [usize],
    #[serde(flatten)]
    report: &'a CompressionReport,
}

#[derive(Serialize)]
struct CompareDocument<'a> {
    schema_version: u32,
    input: String,
    #[serde(flatten)]
    comparison: &'a hoboroute::pipeline::Comparison,
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

fn emit(path: Option<&Path>, content: &str, out: &mut dyn Write) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| io_error(p, e)),
        None => out.write_all(content.as_bytes()).map_err(|e| Error::Io(e.to_string())),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}

fn write_simplified(
    route: &hoboroute::Polyline,
    kept: &[usize],
    output: Option<&Path>,
    name: &str,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let format = output.map_or(RouteFormat::Gpx, RouteFormat::from_path);
    emit(output, &write_route(&select_points(route, kept), format, name), out)
}

fn write_traces(dir: &Path, c: &Compression) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    for (k, run) in c.qaoa_runs.iter().enumerate() {
        let Some(run) = run else { continue };
        for (suffix, body) in [("trace", run.trace_csv()), ("histogram", run.histogram_csv())] {
            let path = dir.join(format!("segment_{k:04}_{suffix}.csv"));
            std::fs::write(&path, body).map_err(|e| io_error(&path, e))?;
        }
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Error> {
    match command {
        Command::Rdp { input, epsilon, output } => {
            let file = load_route(&input)?;
            let kept = rdp_simplify(&file.polyline, epsilon)?.kept_indices;
            write_simplified(&file.polyline, &kept, output.as_deref(), "rdp", out)
        }
        Command::Compress { input, epsilon, solver, output, report, trace_dir } => {
            let file = load_route(&input)?;
            let c = compress_route(&file.polyline, &solver.options(epsilon))?;
            write_simplified(&file.polyline, &c.kept_indices, output.as_deref(), "compressed", out)?;
            if let Some(path) = report {
                let doc = CompressDocument {
                    schema_version: SCHEMA_VERSION,
                    input: input.display().to_string(),
                    epsilon,
                    qubit_budget: solver.qubit_budget,
                    method: solver.method.into(),
                    seed: solver.seed,
                    kept_indices: &c.kept_indices,
                    report: &c.report,
                };
                emit(Some(&path), &to_json(&doc), out)?;
            }
            if let Some(dir) = trace_dir {
                write_traces(&dir, &c)?;
            }
            Ok(())
        }
        Command::Compare { input, epsilon, solver, json } => {
            let file = load_route(&input)?;
            let comparison = compare_methods(&file.polyline, &solver.options(epsilon))?;
            emit(None, &comparison.to_table(), out)?;
            if let Some(path) = json {
                let doc = CompareDocument {
                    schema_version: SCHEMA_VERSION,
                    input: input.display().to_string(),
                    comparison: &comparison,
                };
                emit(Some(&path), &to_json(&doc), out)?;
            }
            Ok(())
        }
        Command::Sweep { input, epsilons, eps_range, normalize, normalize_mean, solver, output } => {
            let file = load_route(&input)?;
            let epsilons = eps_range.map_or(epsilons, |r| r.values());
            let mean = normalize_mean.or(normalize.then_some(DEFAULT_NORMALIZE_MEAN));
            let rows = epsilon_sweep(&file.polyline, &epsilons, mean, &solver.options(0.0))?;
            emit(output.as_deref(), &sweep_csv(&rows), out)
        }
        Command::Stats { input } => {
            let file = load_route(&input)?;
            let mean = mean_adjacent_distance(&file.polyline)?;
            let text = format!("points: {}\nmean_adjacent_distance: {}\n", file.point_count(), mean);
            emit(None, &text, out)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
