//! `krq`: exact ideal-count polynomials C_n(q) and the arithmetic of their
//! value distribution, from the command line.
//!
//! Exit codes: 0 success, 1 mathematical inconsistency (a cross-check that
//! should be an identity failed), 2 usage error. Output goes to stdout in
//! one of three formats; `--progress` and `--timing` write to stderr only,
//! so default stdout is byte-identical across runs and thread counts.

mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use std::time::Instant;

use krq_core::{CnRoute, KrError, LimitsError, OracleError};

/// Worker-thread cap; the only environment variable the tool reads.
const THREADS_ENV: &str = "KRQ_THREADS";

#[derive(Parser)]
#[command(name = "krq", version, about = "Ideal-count polynomials of F_q[x,y,x^-1,y^-1]: exact computation, identity verification, deviation scans, brute-force cross-checks", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Report wall-clock time on stderr and in the JSON envelope
    #[arg(long, global = true)]
    timing: bool,

    /// Write coarse progress notes to stderr (stdout stays clean payload)
    #[arg(long, global = true)]
    progress: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Route {
    Coeffs,
    Divisors,
    Gf,
}

impl Route {
    fn to_core(self) -> CnRoute {
        match self {
            Route::Coeffs => CnRoute::Coefficients,
            Route::Divisors => CnRoute::Divisors,
            Route::Gf => CnRoute::GeneratingFunction,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Route::Coeffs => "coeffs",
            Route::Divisors => "divisors",
            Route::Gf => "gf",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute C_n(q), as a coefficient list or evaluated exactly at a point
    Cn {
        /// Codimension n >= 1
        n: u64,
        /// Evaluation point, a nonzero rational like 2, -3, or 5/7
        #[arg(long)]
        q: Option<String>,
        /// Which of the three independent algorithms to run
        #[arg(long, value_enum, default_value_t = Route::Divisors)]
        route: Route,
    },
    /// Check the three C_n routes against each other, exactly, for every n
    /// up to a bound; exits 1 on any mismatch
    Verify {
        #[arg(long, default_value_t = 60)]
        max_n: u64,
        /// Highest n compared against the generating-function route
        /// (defaults to min(max-n, 200); the route is O(max^3) overall)
        #[arg(long)]
        gf_max: Option<u64>,
        /// Also compare n <= 3 against brute-force ideal counts over F_2, F_3
        #[arg(long)]
        oracle: bool,
    },
    /// Scan all n = 2^(h-1) p (p odd prime) up to a bound and cluster the
    /// deviations D_n(q) by their limit offset k = 2^h - p
    Scan {
        #[arg(long, default_value_t = 2000)]
        max_n: u64,
        /// Evaluation point, a nonzero rational
        #[arg(long, default_value = "2")]
        q: String,
        /// Re-derive D_n by direct polynomial evaluation for every member
        /// up to this bound and require exact agreement (exit 1 otherwise)
        #[arg(long, default_value_t = 200)]
        crosscheck: u64,
    },
    /// Flag every n up to a bound with |D_n(2)| within 2^-n of 1/2 --
    /// exactly the n = 2^(h-1) p with |2^h - p| = 1
    Criterion {
        #[arg(long, default_value_t = 10000)]
        max_n: u64,
        /// Use a fixed margin 2^EPSILON instead of the per-n margin 2^-n
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<i64>,
    },
    /// List the family E_k: n = 2^(h-1) p with p = 2^h - k prime, h <= max-h,
    /// together with the shared limit value their deviations approach
    Ek {
        /// Odd offset k (even k yields no members); may be negative
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, default_value_t = 16)]
        max_h: u32,
        /// Evaluation point, a nonzero rational
        #[arg(long, default_value = "2")]
        q: String,
        /// Expand exact deviations only for members with n up to this bound;
        /// larger members report the residual exponent alone
        #[arg(long, default_value_t = 20000)]
        expand_bound: u64,
    },
    /// Count codimension-n ideals of F_q[x,y,x^-1,y^-1] by explicit matrix
    /// enumeration and compare with C_n(q); exits 1 on disagreement
    Oracle {
        /// Codimension, 1 to 3
        n: u32,
        /// Field order, one of 2, 3, 5
        q: u32,
        /// Refuse enumerations needing more than this many (A, B) pairs
        #[arg(long, default_value_t = krq_core::DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
}

/// Failures after argument parsing. Usage errors exit 2; inconsistencies
/// (identities that must hold failing to) exit 1.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Inconsistent(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Inconsistent(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Inconsistent(m) => m,
        }
    }
}

impl From<KrError> for CliError {
    fn from(e: KrError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<LimitsError> for CliError {
    fn from(e: LimitsError) -> Self {
        match e {
            LimitsError::Inconsistency { .. } => CliError::Inconsistent(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Everything a command needs to talk to the outside world.
pub(crate) struct Ctx {
    format: Format,
    timing: bool,
    progress: bool,
    started: Instant,
}

impl Ctx {
    fn note(&self, msg: &str) {
        if self.progress {
            eprintln!("{msg}");
        }
    }

    fn wall_ms(&self) -> Option<u64> {
        self.timing.then(|| self.started.elapsed().as_millis() as u64)
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn run(cli: &Cli, ctx: &Ctx) -> Result<(), CliError> {
    match &cli.command {
        Command::Cn { n, q, route } => commands::cn(ctx, *n, q.as_deref(), *route),
        Command::Verify { max_n, gf_max, oracle } => commands::verify(ctx, *max_n, *gf_max, *oracle),
        Command::Scan { max_n, q, crosscheck } => commands::scan(ctx, *max_n, q, *crosscheck),
        Command::Criterion { max_n, epsilon } => commands::criterion(ctx, *max_n, *epsilon),
        Command::Ek { k, max_h, q, expand_bound } => commands::ek(ctx, k, *max_h, q, *expand_bound),
        Command::Oracle { n, q, budget } => commands::oracle(ctx, *n, *q, *budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        format: cli.format,
        timing: cli.timing,
        progress: cli.progress,
        started: Instant::now(),
    };
    let result = init_threads().and_then(|()| run(&cli, &ctx));
    if ctx.timing {
        eprintln!("wall: {} ms", ctx.started.elapsed().as_millis());
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
