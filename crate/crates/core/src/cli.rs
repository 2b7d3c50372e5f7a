//! The `ptomo` command line.
//!
//! Exit codes: 0 solved or verified, 1 infeasible or rejected, 2 invalid
//! input, 3 undecided (search budget or enumeration ceiling).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use crate::cylinder::{self, SolveOptions, StageTimes};
use crate::error::SolveError;
use crate::generate::random_periodic;
use crate::instance::Instance;
use crate::matrix::{check_solution, BinaryMatrix, Direction, Period};
use crate::oracle::{self, EnumerationRequest};
use crate::solve::{self, Strategy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ptomo", version, about = "Reconstruct periodic binary matrices from row and column sums")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reconstruct a matrix from an instance file ("-" reads stdin)
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print stage timings to stderr
        #[arg(long)]
        time: bool,
        /// 2-SAT calls allowed in the fallback search
        #[arg(long, default_value_t = SolveOptions::default().search_budget)]
        budget: u64,
    },
    /// Print the line sums of a matrix along a lattice direction
    Xray {
        matrix: PathBuf,
        /// Direction a,b: a steps along columns, b along rows
        #[arg(long, allow_hyphen_values = true)]
        dir: Direction,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a matrix against an instance
    Verify { matrix: PathBuf, instance: PathBuf },
    /// List every realization of a small instance
    Enumerate {
        instance: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        /// Largest m*n accepted
        #[arg(long, default_value_t = oracle::DEFAULT_CELL_CEILING)]
        ceiling: usize,
    },
    /// Random periodic matrix and its instance
    Gen {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Probability of keeping each maximal line
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// json prints the instance, text prints the matrix
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        matrix_out: Option<PathBuf>,
        #[arg(long)]
        instance_out: Option<PathBuf>,
    },
    /// Time the (p,1) pipeline on generated square instances
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "50,100,200,300")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 7)]
        p: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Runs per size; the median of each stage is reported
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
}

/// Exit code `solve` reports for a solver error.
pub fn exit_code(e: &SolveError) -> i32 {
    match e {
        SolveError::Infeasible(_) => EXIT_INFEASIBLE,
        SolveError::UnsupportedPeriod { .. } => EXIT_INVALID,
        SolveError::IncompleteSearch { .. } | SolveError::EncodingMismatch { .. } => EXIT_UNDECIDED,
    }
}

/// Failure that ends a command with an exit code and a message on stderr.
struct Exit(i32, String);

fn invalid(msg: impl ToString) -> Exit {
    Exit(EXIT_INVALID, msg.to_string())
}

fn read_input(path: &Path) -> Result<String, Exit> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| invalid(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn read_instance(path: &Path) -> Result<Instance, Exit> {
    Instance::from_json(&read_input(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<BinaryMatrix, Exit> {
    read_input(path)?
        .parse()
        .map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Solve {
            instance,
            format,
            time,
            budget,
        } => cmd_solve(&instance, format, time, budget, out, err),
        Command::Xray { matrix, dir, format } => cmd_xray(&matrix, dir, format, out),
        Command::Verify { matrix, instance } => cmd_verify(&matrix, &instance, out),
        Command::Enumerate {
            instance,
            limit,
            ceiling,
        } => cmd_enumerate(&instance, limit, ceiling, out),
        Command::Gen {
            m,
            n,
            p,
            q,
            density,
            seed,
            format,
            matrix_out,
            instance_out,
        } => cmd_gen(m, n, Period { p, q }, density, seed, format, matrix_out, instance_out, out),
        Command::Bench {
            sizes,
            p,
            density,
            seed,
            repeat,
        } => cmd_bench(&sizes, p, density, seed, repeat, out),
    };
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn io_error(e: io::Error) -> Exit {
    Exit(EXIT_INVALID, format!("write failed: {e}"))
}

fn print_solution(a: &BinaryMatrix, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Text => write!(out, "{a}"),
        Format::Json => {
            let rows: Vec<String> = a.to_string().lines().map(str::to_owned).collect();
            writeln!(out, "{}", serde_json::json!({ "status": "solved", "matrix": rows }))
        }
    }
}

fn print_infeasible(reason: &str, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Text => writeln!(out, "INFEASIBLE"),
        Format::Json => writeln!(out, "{}", serde_json::json!({ "status": "infeasible", "reason": reason })),
    }
}

fn write_times(times: &StageTimes, total: Duration, err: &mut dyn Write) -> io::Result<()> {
    let names = StageTimes::NAMES.join("\t");
    let values: Vec<String> = times.as_array().iter().map(|d| ms(*d)).collect();
    writeln!(err, "{names}\ttotal")?;
    writeln!(err, "{}\t{}", values.join("\t"), ms(total))
}

fn ms(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1e3)
}

fn cmd_solve(path: &Path, format: Format, time: bool, budget: u64, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    let inst = read_instance(path)?;
    let period = inst.period().map_err(invalid)?;
    let strategy = solve::strategy(inst.m, inst.n, period).map_err(invalid)?;
    let Ok(pair) = inst.pair() else {
        print_infeasible("a sum exceeds the opposite dimension", format, out).map_err(io_error)?;
        return Ok(EXIT_INFEASIBLE);
    };
    let opts = SolveOptions {
        search_budget: budget,
        ..SolveOptions::default()
    };
    let clock = Instant::now();
    let outcome: Result<(BinaryMatrix, Option<StageTimes>), SolveError> = match strategy {
        Strategy::RowStep(p) => cylinder::solve_p1_with(&pair, p, &opts).map(|r| (r.matrix, Some(r.times))),
        Strategy::ColumnStep(q) => cylinder::solve_1q_with(&pair, q, &opts).map(|r| (r.matrix, Some(r.times))),
        _ => solve::solve_with(&pair, period, &opts).map(|a| (a, None)),
    };
    let total = clock.elapsed();
    if time {
        write_times(&outcome.as_ref().ok().and_then(|o| o.1).unwrap_or_default(), total, err).map_err(io_error)?;
    }
    match outcome {
        Ok((a, _)) => {
            print_solution(&a, format, out).map_err(io_error)?;
            Ok(EXIT_OK)
        }
        Err(SolveError::Infeasible(reason)) => {
            print_infeasible(&reason.to_string(), format, out).map_err(io_error)?;
            let _ = writeln!(err, "{reason}");
            Ok(EXIT_INFEASIBLE)
        }
        Err(e) => Err(Exit(exit_code(&e), e.to_string())),
    }
}

fn cmd_xray(path: &Path, dir: Direction, format: Format, out: &mut dyn Write) -> Result<i32, Exit> {
    let a = read_matrix(path)?;
    let sums = a.xray(dir);
    let res = match format {
        Format::Text => {
            let words: Vec<String> = sums.iter().map(usize::to_string).collect();
            writeln!(out, "{}", words.join(" "))
        }
        Format::Json => writeln!(out, "{}", serde_json::json!(sums)),
    };
    res.map_err(io_error)?;
    Ok(EXIT_OK)
}

fn cmd_verify(matrix: &Path, instance: &Path, out: &mut dyn Write) -> Result<i32, Exit> {
    let a = read_matrix(matrix)?;
    let inst = read_instance(instance)?;
    let period = inst.period().map_err(invalid)?;
    if (a.rows(), a.cols()) != (inst.m, inst.n) {
        return Err(invalid(format!(
            "matrix is {}x{} but the instance is {}x{}",
            a.rows(),
            a.cols(),
            inst.m,
            inst.n
        )));
    }
    let verdict = match inst.pair() {
        Ok(pair) => check_solution(&a, &pair, period).map_err(|v| v.to_string()),
        Err(e) => Err(e.to_string()),
    };
    match verdict {
        Ok(()) => {
            writeln!(out, "OK").map_err(io_error)?;
            Ok(EXIT_OK)
        }
        Err(msg) => {
            writeln!(out, "FAIL {msg}").map_err(io_error)?;
            Ok(EXIT_INFEASIBLE)
        }
    }
}

fn cmd_enumerate(path: &Path, limit: Option<usize>, ceiling: usize, out: &mut dyn Write) -> Result<i32, Exit> {
    let inst = read_instance(path)?;
    let period = inst.period().map_err(invalid)?;
    let Ok(pair) = inst.pair() else {
        writeln!(out, "INFEASIBLE").map_err(io_error)?;
        return Ok(EXIT_INFEASIBLE);
    };
    let mut req = EnumerationRequest::new(pair, period).with_ceiling(ceiling);
    if let Some(k) = limit {
        req = req.with_limit(k);
    }
    let sols = oracle::enumerate_periodic(&req).map_err(|e| Exit(EXIT_UNDECIDED, e.to_string()))?;
    if sols.is_empty() {
        writeln!(out, "INFEASIBLE").map_err(io_error)?;
        return Ok(EXIT_INFEASIBLE);
    }
    let blocks: Vec<String> = sols.iter().map(BinaryMatrix::to_string).collect();
    write!(out, "{}", blocks.join("\n")).map_err(io_error)?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    m: usize,
    n: usize,
    period: Period,
    density: f64,
    seed: u64,
    format: Format,
    matrix_out: Option<PathBuf>,
    instance_out: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, Exit> {
    if m == 0 || n == 0 {
        return Err(invalid("m and n must be positive"));
    }
    let period = Period::new(period.p, period.q).map_err(invalid)?;
    if !(0.0..=1.0).contains(&density) {
        return Err(invalid(format!("density {density} is outside [0, 1]")));
    }
    let a = random_periodic(m, n, period, density, seed);
    let json = Instance::from_matrix(&a, period).to_json();
    let write_file = |path: &Path, text: &str| fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display())));
    if let Some(path) = &matrix_out {
        write_file(path, &a.to_string())?;
    }
    if let Some(path) = &instance_out {
        write_file(path, &format!("{json}\n"))?;
    }
    match format {
        Format::Json => writeln!(out, "{json}"),
        Format::Text => write!(out, "{a}"),
    }
    .map_err(io_error)?;
    Ok(EXIT_OK)
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

fn cmd_bench(sizes: &[usize], p: usize, density: f64, seed: u64, repeat: usize, out: &mut dyn Write) -> Result<i32, Exit> {
    if repeat == 0 || !(0.0..=1.0).contains(&density) {
        return Err(invalid("repeat must be positive and density within [0, 1]"));
    }
    if let Some(&s) = sizes.iter().find(|&&s| s <= p) {
        return Err(invalid(format!("size {s} must exceed p = {p}")));
    }
    let period = Period { p, q: 1 };
    writeln!(out, "m\tn\t{}\ttotal", StageTimes::NAMES.join("\t")).map_err(io_error)?;
    for &s in sizes {
        let mut stages = vec![Vec::new(); StageTimes::NAMES.len()];
        let mut totals = Vec::new();
        for r in 0..repeat {
            let pair = random_periodic(s, s, period, density, seed + r as u64).projections();
            let clock = Instant::now();
            let report = cylinder::solve_p1_with(&pair, p, &SolveOptions::default())
                .map_err(|e| Exit(EXIT_UNDECIDED, format!("{s}x{s}: {e}")))?;
            totals.push(clock.elapsed());
            for (k, d) in report.times.as_array().into_iter().enumerate() {
                stages[k].push(d);
            }
        }
        let cols: Vec<String> = stages.into_iter().map(|v| ms(median(v))).collect();
        writeln!(out, "{s}\t{s}\t{}\t{}", cols.join("\t"), ms(median(totals))).map_err(io_error)?;
    }
    Ok(EXIT_OK)
}
