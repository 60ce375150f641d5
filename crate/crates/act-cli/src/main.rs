//! Command-line front end: transforms numeric vectors from CSV/JSON files,
//! compares the heuristic method against the naive DCT, dumps the matrix
//! forms, prints plan sample points, and benchmarks the methods.
//!
//! Exit codes: 0 on success, 2 on usage/parse problems, 3 when a
//! mathematical precondition fails (a non-invertible shift), 1 when
//! round-trip verification fails.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use act_core::dct::{dct_forward, dct_inverse, dct_matrix, Signal};
use act_core::engine::{build_plan, forward_with_plan, ActPlan, OpCounts, TransformReport};
use act_core::interp::{HeuristicParams, InterpMethod};
use act_core::matrix::{build_decomposition, divisor_matrix, mobius_matrix, weight_average_matrix};
use act_core::ActError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const ROUND_TRIP_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "act",
    version,
    about = "DCT-II spectra through arithmetic averages and Mobius inversion",
    after_help = "Environment:\n  ACT_SIEVE_LIMIT  upper bound of the Mobius sieve (default 1048576)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform the vectors of an input file and write one report each
    Forward(ForwardArgs),
    /// Compare the heuristic transform against the naive DCT on random vectors
    Compare(CompareArgs),
    /// Write one of the transform matrices as CSV
    Matrices(MatricesArgs),
    /// Print the fractional sample points of a plan
    Points(PointsArgs),
    /// Time the methods and report their operation counts
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Naive,
    ActExact,
    ActHeuristic,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::ActExact => "act-exact",
            Method::ActHeuristic => "act-heuristic",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Mobius,
    Divisor,
    W,
    C1,
    C2,
    Dct,
}

#[derive(Args)]
struct ForwardArgs {
    /// Input file: CSV (one sample per line, '#' comments) or JSON (flat
    /// array, or array of arrays for a batch)
    #[arg(long)]
    input: PathBuf,
    /// Output file (stdout when absent)
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "act-exact")]
    method: Method,
    /// Shift of the average family; 0 and 0.5 have closed-form inverses
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Snap tolerance of the heuristic interpolation
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Invert each spectrum and check it reproduces the input
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// Block length
    #[arg(short = 'N', long = "block-length")]
    n: usize,
    /// Number of generated vectors
    #[arg(long, default_value_t = 256)]
    count: usize,
    /// Seed of the uniform(0,1) generator
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MatricesArgs {
    /// Matrix order
    #[arg(short = 'N', long = "block-length")]
    n: usize,
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PointsArgs {
    /// Block length
    #[arg(short = 'N', long = "block-length")]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Block lengths, comma separated
    #[arg(short = 'N', long = "block-length", value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Number of vectors per (N, method) cell
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Math(ActError),
    RoundTrip(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Math(_) => 3,
            Failure::RoundTrip(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(msg) => msg.clone(),
            Failure::Math(err) => err.to_string(),
            Failure::RoundTrip(msg) => msg.clone(),
        }
    }
}

impl From<ActError> for Failure {
    fn from(err: ActError) -> Self {
        Failure::Math(err)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Forward(args) => cmd_forward(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Matrices(args) => cmd_matrices(args),
        Command::Points(args) => cmd_points(args),
        Command::Bench(args) => cmd_bench(args),
    };
    if let Err(failure) = result {
        eprintln!("error: {}", failure.message());
        std::process::exit(failure.code());
    }
}

// ---------------------------------------------------------------- input

fn read_vectors(path: &Path) -> Result<Vec<Vec<f64>>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('[') {
        parse_json_vectors(path, &text)
    } else {
        Ok(vec![parse_csv_vector(path, &text)?])
    }
}

fn parse_csv_vector(path: &Path, text: &str) -> Result<Vec<f64>, Failure> {
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let value: f64 = trimmed.parse().map_err(|_| {
            usage(format!(
                "{} line {}: cannot parse '{}' as a number",
                path.display(),
                lineno + 1,
                trimmed
            ))
        })?;
        samples.push(value);
    }
    if samples.is_empty() {
        return Err(usage(format!("{}: no samples found", path.display())));
    }
    Ok(samples)
}

fn parse_json_vectors(path: &Path, text: &str) -> Result<Vec<Vec<f64>>, Failure> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| usage(format!("{}: invalid JSON: {e}", path.display())))?;
    let outer = value
        .as_array()
        .ok_or_else(|| usage(format!("{}: expected a JSON array", path.display())))?;
    if outer.is_empty() {
        return Err(usage(format!("{}: empty JSON array", path.display())));
    }
    let to_vector = |items: &[serde_json::Value], label: &str| -> Result<Vec<f64>, Failure> {
        items
            .iter()
            .enumerate()
            .map(|(i, item)| {
                item.as_f64().ok_or_else(|| {
                    usage(format!(
                        "{}: {label} element {i} is '{item}', not a number",
                        path.display()
                    ))
                })
            })
            .collect()
    };
    if outer.iter().all(|item| item.is_array()) {
        outer
            .iter()
            .enumerate()
            .map(|(i, row)| {
                to_vector(row.as_array().unwrap(), &format!("vector {i}"))
            })
            .collect()
    } else {
        Ok(vec![to_vector(outer, "array")?])
    }
}

fn write_output(target: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match target {
        Some(path) => fs::write(path, contents)
            .map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------- forward

#[derive(Serialize)]
struct JsonOpCounts {
    additions: u64,
    multiplications: u64,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    n: usize,
    method: &'a str,
    beta: f64,
    spectrum: &'a [f64],
    op_counts: JsonOpCounts,
}

fn naive_op_counts(n: usize) -> OpCounts {
    // Direct-formula cost: N products and N−1 additions per coefficient,
    // plus one scaling multiplication each.
    OpCounts {
        additions: (n * (n - 1)) as u64,
        multiplications: (n * n + n) as u64,
    }
}

fn transform(v: &Signal, method: Method, plan: Option<&ActPlan>) -> Result<TransformReport, Failure> {
    match method {
        Method::Naive => Ok(TransformReport {
            spectrum: dct_forward(v),
            n: v.len(),
            beta: 0.0,
            method: InterpMethod::Direct,
            op_counts: naive_op_counts(v.len()),
            mse_vs_reference: None,
        }),
        Method::ActExact | Method::ActHeuristic => {
            let plan = plan.expect("plan built for act methods");
            Ok(forward_with_plan(v, plan)?)
        }
    }
}

fn cmd_forward(args: ForwardArgs) -> Result<(), Failure> {
    if args.eps <= 0.0 {
        return Err(usage("--eps must be positive"));
    }
    let vectors = read_vectors(&args.input)?;
    let method_name = args.method.name();

    let mut out = String::new();
    let mut verify_failures = Vec::new();
    let mut plans: Vec<(usize, ActPlan)> = Vec::new();
    for (index, data) in vectors.iter().enumerate() {
        let v = Signal::new(data.clone()).map_err(|e| {
            usage(format!("{} vector {index}: {e}", args.input.display()))
        })?;
        let plan = match args.method {
            Method::Naive => None,
            _ if v.len() < 2 => None,
            _ => {
                let n = v.len();
                if !plans.iter().any(|(pn, _)| *pn == n) {
                    let interp = match args.method {
                        Method::ActExact => InterpMethod::Direct,
                        Method::ActHeuristic => {
                            InterpMethod::Heuristic(HeuristicParams::with_eps(args.eps))
                        }
                        Method::Naive => unreachable!(),
                    };
                    plans.push((n, build_plan(n, args.beta, interp)?));
                }
                plans.iter().find(|(pn, _)| *pn == n).map(|(_, p)| p)
            }
        };
        let report = match plan {
            Some(plan) => transform(&v, args.method, Some(plan))?,
            None if matches!(args.method, Method::Naive) || v.len() == 1 => {
                transform(&v, Method::Naive, None).map(|mut r| {
                    if v.len() == 1 {
                        r.op_counts = OpCounts::default();
                    }
                    r
                })?
            }
            None => unreachable!(),
        };

        match args.format {
            Format::Json => {
                let json = JsonReport {
                    n: report.n,
                    method: method_name,
                    beta: args.beta,
                    spectrum: report.spectrum.coeffs(),
                    op_counts: JsonOpCounts {
                        additions: report.op_counts.additions,
                        multiplications: report.op_counts.multiplications,
                    },
                };
                let line = serde_json::to_string(&json)
                    .map_err(|e| usage(format!("serialization failed: {e}")))?;
                out.push_str(&line);
                out.push('\n');
            }
            Format::Csv => {
                let _ = writeln!(
                    out,
                    "# n={} method={} beta={} additions={} multiplications={}",
                    report.n,
                    method_name,
                    args.beta,
                    report.op_counts.additions,
                    report.op_counts.multiplications
                );
                let row: Vec<String> =
                    report.spectrum.coeffs().iter().map(|x| x.to_string()).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }

        if args.verify {
            let back = dct_inverse(&report.spectrum);
            let worst = back
                .samples()
                .iter()
                .zip(v.samples())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            if worst > ROUND_TRIP_TOL {
                verify_failures.push(format!(
                    "vector {index}: round-trip error {worst:.3e} exceeds {ROUND_TRIP_TOL:e}"
                ));
            } else {
                eprintln!("verify: vector {index} round-trip max err {worst:.3e}");
            }
        }
    }

    write_output(args.output.as_deref(), &out)?;
    if !verify_failures.is_empty() {
        return Err(Failure::RoundTrip(verify_failures.join("; ")));
    }
    Ok(())
}

// ---------------------------------------------------------------- compare

fn cmd_compare(args: CompareArgs) -> Result<(), Failure> {
    if args.n < 2 {
        return Err(usage("comparison needs a block length of at least 2"));
    }
    if args.count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    if args.eps <= 0.0 {
        return Err(usage("--eps must be positive"));
    }
    let plan = build_plan(
        args.n,
        args.beta,
        InterpMethod::Heuristic(HeuristicParams::with_eps(args.eps)),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut out = String::new();
    let mut total = 0.0;
    for index in 0..args.count {
        let v = Signal::new((0..args.n).map(|_| rng.random::<f64>()).collect())
            .expect("generated samples are finite");
        let report = forward_with_plan(&v, &plan)?;
        let mse = report.mse_vs_reference.expect("heuristic reports its error");
        total += mse;
        let _ = writeln!(out, "vector {index}: mse={mse:.6e}");
    }
    let _ = writeln!(
        out,
        "mean mse over {} vectors: {:.6e}",
        args.count,
        total / args.count as f64
    );
    write_output(args.output.as_deref(), &out)
}

// ---------------------------------------------------------------- matrices

fn matrix_to_csv(matrix: &act_core::nalgebra::DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..matrix.nrows() {
        let row: Vec<String> = (0..matrix.ncols()).map(|j| matrix[(i, j)].to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn cmd_matrices(args: MatricesArgs) -> Result<(), Failure> {
    if args.n == 0 {
        return Err(usage("matrix order must be at least 1"));
    }
    let needs_two = matches!(args.which, Which::W | Which::C1 | Which::C2);
    if needs_two && args.n < 2 {
        return Err(usage("this matrix needs order at least 2"));
    }
    let matrix = match args.which {
        Which::Mobius => mobius_matrix(args.n)?.into_entries(),
        Which::Divisor => divisor_matrix(args.n)?,
        Which::W => weight_average_matrix(args.n)?,
        Which::C1 => build_decomposition(args.n)?.c1,
        Which::C2 => build_decomposition(args.n)?.c2,
        Which::Dct => dct_matrix(args.n)?,
    };
    write_output(args.output.as_deref(), &matrix_to_csv(&matrix))
}

// ---------------------------------------------------------------- points

fn cmd_points(args: PointsArgs) -> Result<(), Failure> {
    if args.n < 2 {
        return Err(usage("the plan needs a block length of at least 2"));
    }
    let plan = build_plan(args.n, args.beta, InterpMethod::Direct)?;
    let mut out = String::new();
    for k in 1..args.n {
        let rendered: Vec<String> = match plan.raw_fractions(k) {
            Some(fractions) => fractions.iter().map(|f| f.to_string()).collect(),
            None => plan.raw_points(k).iter().map(|r| format!("{r:.12}")).collect(),
        };
        let _ = writeln!(out, "k={k}: {}", rendered.join(", "));
    }
    let folded: Vec<String> = match plan.unique_fractions() {
        Some(fractions) => fractions.iter().map(|f| f.to_string()).collect(),
        None => plan.unique_points().iter().map(|r| format!("{r:.12}")).collect(),
    };
    let _ = writeln!(
        out,
        "unique folded points ({}): {}",
        folded.len(),
        folded.join(", ")
    );
    write_output(args.output.as_deref(), &out)
}

// ---------------------------------------------------------------- bench

fn nonzero_fraction(plan: &ActPlan) -> f64 {
    let n = plan.n();
    let mut nonzero = 0usize;
    let mut terms = 0usize;
    for k in 1..n {
        let cap = (n - 1) / k;
        terms += cap;
        nonzero += (1..=cap).filter(|&l| plan.inverse_seq().get(l) != 0.0).count();
    }
    nonzero as f64 / terms as f64
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    if args.n.is_empty() {
        return Err(usage("give at least one block length"));
    }
    if args.count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    for &n in &args.n {
        if n < 2 {
            return Err(usage("block lengths must be at least 2"));
        }
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>6} {:>14} {:>10} {:>10} {:>16} {:>13}",
        "N", "method", "wall_ms", "additions", "multiplications", "nonzero_frac"
    );
    for &n in &args.n {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let vectors: Vec<Signal> = (0..args.count)
            .map(|_| {
                Signal::new((0..n).map(|_| rng.random::<f64>()).collect())
                    .expect("generated samples are finite")
            })
            .collect();

        let start = Instant::now();
        for v in &vectors {
            std::hint::black_box(dct_forward(v));
        }
        let naive_ms = start.elapsed().as_secs_f64() * 1e3;
        let naive_ops = naive_op_counts(n);
        let _ = writeln!(
            out,
            "{:>6} {:>14} {:>10.3} {:>10} {:>16} {:>13}",
            n, "naive", naive_ms, naive_ops.additions, naive_ops.multiplications, "-"
        );

        for (label, interp) in [
            ("act-exact", InterpMethod::Direct),
            (
                "act-heuristic",
                InterpMethod::Heuristic(HeuristicParams::default()),
            ),
        ] {
            let plan = build_plan(n, 0.0, interp)?;
            let start = Instant::now();
            let mut last = OpCounts::default();
            for v in &vectors {
                let report = forward_with_plan(v, &plan)?;
                last = report.op_counts;
                std::hint::black_box(report.spectrum);
            }
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let _ = writeln!(
                out,
                "{:>6} {:>14} {:>10.3} {:>10} {:>16} {:>13.4}",
                n,
                label,
                ms,
                last.additions,
                last.multiplications,
                nonzero_fraction(&plan)
            );
        }
    }
    write_output(args.output.as_deref(), &out)
}
