//! Argument parsing and dispatch.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::commands::{self, CensusArgs, ExpandTarget, FamilyArg, InstabilityArgs, Output, SolveArgs};
use crate::error::{CliError, CliResult};
use crate::fixtures::DEFAULT_ORDER;
use crate::format::{to_canonical, Settings};

#[derive(Debug, Parser)]
#[command(name = "qdelta", version, about = "Arithmetic differential calculus on p-adic q-series")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Prime p (at least 5).
    #[arg(long = "p", global = true, default_value_t = 5)]
    pub p: u64,
    /// p-adic precision: values are known modulo p^N.
    #[arg(long = "N", global = true, default_value_t = 8)]
    pub n: u32,
    /// Degree of the unramified extension.
    #[arg(long = "f", global = true, default_value_t = 1)]
    pub f: u32,
    /// Truncation order in q.
    #[arg(long = "M", global = true, default_value_t = 30)]
    pub m: i64,
    /// Seed for randomized inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for grid commands.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Emit canonical JSON (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    pub json: bool,
    /// Emit aligned text tables.
    #[arg(long, global = true)]
    pub table: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print q-expansions of classical forms and symbolic forms.
    Expand {
        #[arg(value_enum)]
        target: ExpandTarget,
        /// Weight of the Eisenstein series (2, 4 or 6).
        #[arg(long, default_value_t = 4)]
        k: u32,
        /// Number of coefficients, counted from the lowest exponent (overrides --M).
        #[arg(long)]
        terms: Option<i64>,
        /// Symbolic form such as "(2*a4_0*a6_1 - 3*a6_0*a4_1)/Delta^1".
        #[arg(long)]
        expr: Option<String>,
    },
    /// Build a solution family.
    Solve {
        /// Solution family to build.
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Convection parameter z, a rational in pZ.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        z: String,
        /// Positive integer kappa prime to p (not used by the modular-plain family).
        #[arg(long)]
        kappa: Option<u64>,
        /// Amplitude alpha, a rational or comma-separated coordinates over the extension.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        /// Scalar eta multiplying the modular families.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        eta: String,
        /// Residue whose Teichmueller lift is the root of unity zeta.
        #[arg(long, default_value = "1")]
        zeta: String,
        /// Unit series v: comma-separated coefficients or "random".
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
    },
    /// Check a family produced by `solve` (path or "-" for stdin).
    Verify {
        #[arg(long, default_value = "-")]
        input: String,
        /// Required residual valuation (default N - 3).
        #[arg(long, allow_hyphen_values = true)]
        tolerance: Option<i64>,
    },
    /// Recover (u, v^2) from a bad-type point or modular family.
    Decompose {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Solve the linearized equation term by term and classify the pivots.
    Census {
        /// Unit kappa, a rational.
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        /// Convection parameter z, a rational in pZ.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        z: String,
        /// Constant term: a rational, or "beta" for the solution of the constant equation.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c0: String,
        /// Right side of the equation: 0 or -1.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        rhs: i64,
        /// Value at a free exponent, as n=value (repeatable).
        #[arg(long)]
        free: Vec<String>,
        /// Treat kappa as a generic unit even when it is an integer.
        #[arg(long)]
        generic: bool,
    },
    /// Look for mod-p disagreements between perturbed families.
    Instability {
        /// Positive integer kappa prime to p.
        #[arg(long, default_value_t = 1)]
        kappa: u64,
        /// Amplitude of the first family.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        /// Amplitude of the second family.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha0: String,
        /// Parameter z of the first family.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        z: String,
        /// Parameter z of the second family.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        z0: String,
        /// Scalar multiplying the first family.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        eta: String,
        /// Scalar multiplying the second family.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        eta0: String,
        /// Rows of the valuation table.
        #[arg(long, default_value_t = 10)]
        rows: u32,
        /// Run the standard grid of perturbations instead of a single case.
        #[arg(long)]
        grid: bool,
    },
    /// Write or check the integer fixture files.
    Fixtures {
        /// Target directory (default: $QDELTA_FIXTURE_DIR, else ./fixtures).
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Compare existing files instead of writing them.
        #[arg(long)]
        check: bool,
    },
}

fn read_input(path: &str) -> CliResult<Value> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    Ok(serde_json::from_str(&text)?)
}

pub fn dispatch(cli: &Cli) -> CliResult<Output> {
    let g = &cli.global;
    let settings = || Settings::new(g.p, g.n, g.f, g.m);
    match &cli.command {
        Command::Expand { target, k, terms, expr } => {
            let mut s = settings()?;
            if let Some(t) = terms {
                let lowest = if *target == ExpandTarget::J { -1 } else { 0 };
                s.order = lowest + t - 1;
            }
            commands::expand(&s, *target, *k, expr.as_deref())
        }
        Command::Solve { family, z, kappa, alpha, eta, zeta, v } => commands::solve(
            &settings()?,
            &SolveArgs {
                family: *family,
                z: z.clone(),
                kappa: *kappa,
                alpha: alpha.clone(),
                eta: eta.clone(),
                zeta: zeta.clone(),
                v: v.clone(),
                seed: g.seed,
            },
        ),
        Command::Verify { input, tolerance } => commands::verify(&read_input(input)?, *tolerance),
        Command::Decompose { input } => commands::decompose(&read_input(input)?),
        Command::Census { kappa, z, c0, rhs, free, generic } => commands::census(
            &settings()?,
            &CensusArgs {
                kappa: kappa.clone(),
                z: z.clone(),
                c0: c0.clone(),
                rhs: *rhs,
                free: free.clone(),
                generic: *generic,
            },
        ),
        Command::Instability { kappa, alpha, alpha0, z, z0, eta, eta0, rows, grid } => commands::instability(
            &settings()?,
            &InstabilityArgs {
                kappa: *kappa,
                alpha: alpha.clone(),
                alpha0: alpha0.clone(),
                z: z.clone(),
                z0: z0.clone(),
                eta: eta.clone(),
                eta0: eta0.clone(),
                rows: *rows,
                grid: *grid,
                jobs: g.jobs,
            },
        ),
        Command::Fixtures { dir, order, check } => commands::fixtures_cmd(dir.as_deref(), *order, *check),
    }
}

/// Runs the command and returns the process exit status.
pub fn run(cli: &Cli) -> u8 {
    match dispatch(cli) {
        Ok(out) => {
            let text = if cli.global.table { out.table } else { to_canonical(&out.value) };
            let written = match &cli.global.output {
                Some(path) => std::fs::write(path, text).map_err(CliError::from),
                None => std::io::stdout().write_all(text.as_bytes()).map_err(CliError::from),
            };
            match written {
                Ok(()) if out.passed => 0,
                Ok(()) => 1,
                Err(e) => {
                    eprintln!("qdelta: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("qdelta: {e}");
            e.exit_code()
        }
    }
}
