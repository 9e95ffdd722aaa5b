//! The `prs` command line: compute values, cross-check them against the
//! counting oracle, and emit convergence tables.

mod output;
pub mod selftest;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Float;

use crate::bigfloat::format_fixed;
use crate::error::Error;
use crate::hrr::{big_r, HrrParams, HrrSeries, Truncation, TruncationPolicy};
use crate::numtheory::{gcd, is_squarefree};
use crate::qseries::{oracle_prs, oracle_prs_table};

pub use output::{convergence_csv, svg_polyline, ComputeJson, ConvergenceJson, ConvergenceRow};

/// Exit status for a computation or check that ran but did not succeed.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for invalid input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "prs",
    version,
    about = "Partitions with no part divisible by r or s"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    /// Evaluate the series for p_{r,s}(n) and round it.
    Compute,
    /// Count p_{r,s}(n) directly.
    Oracle,
    /// Compare series and oracle over a grid of (r, s, n).
    Verify,
    /// Partial sums S_N and p_{r,s}(n) - S_N for N = 1..N-max.
    Convergence,
    /// Run the invariant batteries.
    Selftest,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// First modulus.
    #[arg(long, global = true)]
    pub r: Option<u64>,
    /// Second modulus, coprime to r.
    #[arg(long, global = true)]
    pub s: Option<u64>,
    /// Argument of p_{r,s}; for `verify`, the largest n in the grid.
    #[arg(long, global = true)]
    pub n: Option<u64>,
    /// Largest number of terms (`compute`) or rows (`convergence`).
    #[arg(long = "N-max", global = true)]
    pub n_max: Option<u64>,
    /// Working precision; picked from n and N when omitted.
    #[arg(long = "precision-bits", global = true)]
    pub precision_bits: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Accept r or s with a square factor (experimental).
    #[arg(long = "allow-non-squarefree", global = true)]
    pub allow_non_squarefree: bool,
    /// Also draw the convergence differences as an SVG polyline.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// RNG seed for `selftest`.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    /// Digits after the decimal point for S_N.
    #[arg(long, default_value_t = 4, global = true)]
    pub decimals: u32,
    /// Also compare the computed value with the counting oracle.
    #[arg(long = "oracle-check", global = true)]
    pub oracle_check: bool,
    /// `verify`: largest r and s in the grid.
    #[arg(long = "max-part", default_value_t = 15, global = true)]
    pub max_part: u64,
    /// `selftest`: force the named check to fail.
    #[arg(long = "inject-fault", global = true, hide = true)]
    pub inject_fault: Option<String>,
}

/// Validated settings for one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub r: Option<u64>,
    pub s: Option<u64>,
    pub n: Option<u64>,
    pub n_max: Option<u64>,
    pub precision_override: Option<u32>,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub allow_non_squarefree: bool,
    pub emit_svg: Option<PathBuf>,
    pub seed: u64,
    pub decimals: u32,
    pub oracle_check: bool,
    pub max_part: u64,
    pub inject_fault: Option<String>,
}

/// Text to print plus an exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(status: i32, message: String) -> Self {
        Outcome {
            status,
            stdout: String::new(),
            stderr: message,
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, String> {
        let o = cli.options;
        let cfg = RunConfig {
            command: cli.command,
            r: o.r,
            s: o.s,
            n: o.n,
            n_max: o.n_max,
            precision_override: o.precision_bits,
            output_format: o.format,
            output_path: o.out,
            allow_non_squarefree: o.allow_non_squarefree,
            emit_svg: o.svg,
            seed: o.seed,
            decimals: o.decimals,
            oracle_check: o.oracle_check,
            max_part: o.max_part,
            inject_fault: o.inject_fault,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), String> {
        let needs_rsn = matches!(
            self.command,
            CommandKind::Compute | CommandKind::Oracle | CommandKind::Convergence
        );
        if needs_rsn {
            for (name, v) in [("--r", self.r), ("--s", self.s), ("--n", self.n)] {
                if v.is_none() {
                    return Err(format!("{name} is required for this command"));
                }
            }
        }
        if self.command == CommandKind::Verify && self.r.is_some() != self.s.is_some() {
            return Err("verify takes both --r and --s or neither".into());
        }
        if self.n_max == Some(0) {
            return Err("--N-max must be at least 1".into());
        }
        if let Some(bits) = self.precision_override {
            if bits < 64 {
                return Err("--precision-bits must be at least 64".into());
            }
        }
        Ok(())
    }

    fn rsn(&self) -> (u64, u64, u64) {
        (
            self.r.unwrap_or(0),
            self.s.unwrap_or(0),
            self.n.unwrap_or(0),
        )
    }

    fn params(&self) -> crate::Result<HrrParams> {
        let (r, s, n) = self.rsn();
        if self.allow_non_squarefree {
            HrrParams::non_squarefree(r, s, n)
        } else {
            HrrParams::new(r, s, n)
        }
    }
}

fn domain_error(e: &Error) -> Outcome {
    let status = match e {
        Error::NotConverged { .. } | Error::OracleMismatch { .. } => EXIT_FAILURE,
        _ => EXIT_USAGE,
    };
    Outcome::error(status, format!("error [{}]: {e}\n", e.module()))
}

/// Parse `args` (including the program name), run, and return the outcome.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome::ok(text)
            } else {
                Outcome::error(status, text)
            };
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => run(&cfg),
        Err(msg) => Outcome::error(EXIT_USAGE, format!("error [args]: {msg}\n")),
    }
}

/// Run a validated configuration. Output goes to `--out` when given.
pub fn run(cfg: &RunConfig) -> Outcome {
    let outcome = match cfg.command {
        CommandKind::Compute => cmd_compute(cfg),
        CommandKind::Oracle => cmd_oracle(cfg),
        CommandKind::Verify => cmd_verify(cfg),
        CommandKind::Convergence => cmd_convergence(cfg),
        CommandKind::Selftest => cmd_selftest(cfg),
    };
    match &cfg.output_path {
        Some(path) if !outcome.stdout.is_empty() => match std::fs::write(path, &outcome.stdout) {
            Ok(()) => Outcome {
                stdout: String::new(),
                ..outcome
            },
            Err(e) => Outcome::error(
                EXIT_FAILURE,
                format!("error [io]: cannot write {}: {e}\n", path.display()),
            ),
        },
        _ => outcome,
    }
}

/// Entry point for the binary: runs and prints, returning the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let outcome = run_args(args);
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", outcome.stderr);
    outcome.status
}

fn compute_policy(cfg: &RunConfig, series: &HrrSeries, n: u64) -> TruncationPolicy {
    let mut policy = TruncationPolicy {
        precision_bits: cfg.precision_override,
        ..TruncationPolicy::default()
    };
    if let Some(n_max) = cfg.n_max {
        let (initial, window, _) = series.default_plan(n);
        policy.truncation = Truncation::Window {
            initial: initial.min(n_max),
            window: window.min(n_max),
            max: n_max,
        };
    }
    if cfg.oracle_check {
        policy = policy.with_oracle();
    }
    policy
}

pub fn cmd_compute(cfg: &RunConfig) -> Outcome {
    let params = match cfg.params() {
        Ok(p) => p,
        Err(e) => return domain_error(&e),
    };
    let series = match HrrSeries::for_params(&params) {
        Ok(s) => s,
        Err(e) => return domain_error(&e),
    };
    let policy = compute_policy(cfg, &series, params.n);
    let report = match series.evaluate(params.n, &policy) {
        Ok(rep) => rep,
        Err(e) => return domain_error(&e),
    };
    let mut stderr = String::new();
    for w in &report.diagnostics.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let json = ComputeJson::new(&params, &report);
    let stdout = match cfg.output_format {
        Format::Json => json.to_json(),
        Format::Csv => json.to_csv(),
        Format::Text => json.to_text(),
    };
    Outcome {
        status: 0,
        stdout,
        stderr,
    }
}

pub fn cmd_oracle(cfg: &RunConfig) -> Outcome {
    let (r, s, n) = cfg.rsn();
    if r == 0 || s == 0 {
        return Outcome::error(
            EXIT_USAGE,
            "error [args]: r and s must be positive\n".into(),
        );
    }
    let value = oracle_prs(r, s, n);
    let stdout = match cfg.output_format {
        Format::Json => {
            format!("{{\"r\":\"{r}\",\"s\":\"{s}\",\"n\":\"{n}\",\"value\":\"{value}\"}}\n")
        }
        Format::Csv => format!("r,s,n,value\n{r},{s},{n},{value}\n"),
        Format::Text => format!("p_{{{r},{s}}}({n}) = {value}\n"),
    };
    Outcome::ok(stdout)
}

/// Square-free coprime pairs `2 <= r < s <= max_part` (any coprime pair when
/// `allow_non_squarefree`).
pub fn grid_pairs(max_part: u64, allow_non_squarefree: bool) -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    for r in 2..=max_part {
        for s in r + 1..=max_part {
            let sf = is_squarefree(r) && is_squarefree(s);
            if gcd(r, s) == 1 && (sf || allow_non_squarefree) {
                pairs.push((r, s));
            }
        }
    }
    pairs
}

pub fn cmd_verify(cfg: &RunConfig) -> Outcome {
    let pairs = match (cfg.r, cfg.s) {
        (Some(r), Some(s)) => vec![(r, s)],
        _ => grid_pairs(cfg.max_part, cfg.allow_non_squarefree),
    };
    let n_top = cfg.n.unwrap_or(150);
    let mut out = String::new();
    let mut cases = 0u64;
    let mut failures = 0u64;
    for (r, s) in pairs {
        let params = HrrParams {
            r,
            s,
            n: 0,
            allow_non_squarefree: cfg.allow_non_squarefree,
        };
        let series = match HrrSeries::for_params(&params) {
            Ok(series) => series,
            Err(e) => return domain_error(&e),
        };
        let table = oracle_prs_table(r, s, n_top);
        let floor_r = big_r(r, s).floor().numer().to_u64().unwrap_or(0);
        for n in floor_r + 1..=n_top {
            cases += 1;
            let policy = TruncationPolicy {
                precision_bits: cfg.precision_override,
                ..TruncationPolicy::default()
            };
            match series.evaluate(n, &policy) {
                Ok(rep) if rep.value == table[n as usize] => {}
                Ok(rep) => {
                    failures += 1;
                    let _ = writeln!(
                        out,
                        "mismatch r={r} s={s} n={n}: series {} oracle {}",
                        rep.value, table[n as usize]
                    );
                }
                Err(e) => {
                    failures += 1;
                    let _ = writeln!(out, "failure r={r} s={s} n={n}: {e}");
                }
            }
        }
    }
    let summary = format!("{cases} cases, {failures} failures");
    let stdout = match cfg.output_format {
        Format::Json => format!("{{\"cases\":{cases},\"failures\":{failures}}}\n"),
        _ => format!("{out}{summary}\n"),
    };
    Outcome {
        status: if failures == 0 { 0 } else { EXIT_FAILURE },
        stdout,
        stderr: String::new(),
    }
}

pub fn cmd_convergence(cfg: &RunConfig) -> Outcome {
    let params = match cfg.params() {
        Ok(p) => p,
        Err(e) => return domain_error(&e),
    };
    let n_max = cfg.n_max.unwrap_or(11);
    let series = match HrrSeries::for_params(&params) {
        Ok(s) => s,
        Err(e) => return domain_error(&e),
    };
    let sums = match series.partial_sums(params.n, n_max, cfg.precision_override) {
        Ok(sums) => sums,
        Err(e) => return domain_error(&e),
    };
    let truth = oracle_prs(params.r, params.s, params.n);
    let rows: Vec<ConvergenceRow> = sums
        .iter()
        .map(|(k, sum)| {
            let diff = Float::with_val(sum.prec(), &truth - sum);
            ConvergenceRow {
                n_terms: *k,
                s_n: format_fixed(sum, cfg.decimals),
                diff: format_fixed(&diff, cfg.decimals),
            }
        })
        .collect();

    let mut stderr = String::new();
    if !params.is_squarefree_pair() {
        let _ = writeln!(
            stderr,
            "warning: experimental: ({}, {}) is not a square-free pair",
            params.r, params.s
        );
    }
    if let Some(path) = &cfg.emit_svg {
        let points: Vec<(f64, f64)> = sums
            .iter()
            .map(|(k, sum)| {
                (
                    *k as f64,
                    Float::with_val(sum.prec(), &truth - sum).to_f64(),
                )
            })
            .collect();
        let title = format!(
            "p - S_N for (r, s, n) = ({}, {}, {})",
            params.r, params.s, params.n
        );
        if let Err(e) = std::fs::write(path, svg_polyline(&points, &title)) {
            return Outcome::error(
                EXIT_FAILURE,
                format!("error [io]: cannot write {}: {e}\n", path.display()),
            );
        }
    }
    let stdout = match cfg.output_format {
        Format::Csv => convergence_csv(&rows),
        Format::Json => ConvergenceJson {
            r: params.r.to_string(),
            s: params.s.to_string(),
            n: params.n.to_string(),
            value: truth.to_string(),
            rows,
        }
        .to_json(),
        Format::Text => output::convergence_text(&rows),
    };
    Outcome {
        status: 0,
        stdout,
        stderr,
    }
}

pub fn cmd_selftest(cfg: &RunConfig) -> Outcome {
    let results = selftest::run_all(cfg.seed, cfg.inject_fault.as_deref());
    let mut out = String::new();
    let mut failed = Vec::new();
    for res in &results {
        match &res.outcome {
            Ok(detail) => {
                let _ = writeln!(out, "ok   {:<22} {detail}", res.name);
            }
            Err(detail) => {
                let _ = writeln!(out, "FAIL {:<22} {detail}", res.name);
                failed.push(res.name);
            }
        }
    }
    if failed.is_empty() {
        let _ = writeln!(
            out,
            "all {} checks passed (seed {})",
            results.len(),
            cfg.seed
        );
        Outcome::ok(out)
    } else {
        let stderr = format!("failed checks: {}\n", failed.join(", "));
        Outcome {
            status: EXIT_FAILURE,
            stdout: out,
            stderr,
        }
    }
}
