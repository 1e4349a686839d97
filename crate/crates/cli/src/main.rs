//! `twobody`: relativistic two-particle Coulomb bound states.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 computation
//! error (supercritical coupling, non-convergence, failed verification).

mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};

use twobody_core::{Catalog, Error, PhysicalConstants};

use commands::Context;
use output::Format;

/// Environment variable overriding the particle catalog path.
const CATALOG_ENV: &str = "TWOBODY_CATALOG";

#[derive(Parser)]
#[command(
    name = "twobody",
    version,
    about = "Relativistic energy levels, binding energies and radial wavefunctions \
             for spin-zero two-particle Coulomb bound states",
    after_help = "Particles are resolved from the catalog (see --catalog or TWOBODY_CATALOG; \
                  a built-in catalog with electron, proton, muon, pions, deuteron and more \
                  is used by default)."
)]
struct Cli {
    /// Particle catalog file (default: $TWOBODY_CATALOG, else built-in).
    #[arg(long, global = true)]
    catalog: Option<std::path::PathBuf>,

    /// Constants file with alpha and hbar_c (default: built-in CODATA values).
    #[arg(long, global = true)]
    constants: Option<std::path::PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Normal,
    Abnormal,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyWhich {
    Approx,
    Full,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the level spectrum over an (n, l) grid.
    Spectrum {
        particle1: String,
        particle2: String,
        /// Charge number; defaults to |q1*q2| from the catalog charges.
        #[arg(short = 'Z', long = "Z")]
        z: Option<u32>,
        /// Largest principal quantum number.
        #[arg(long)]
        n_max: u32,
        /// Restrict to one orbital quantum number.
        #[arg(long)]
        l_filter: Option<u32>,
        /// Which energy branch to solve.
        #[arg(long, value_enum, default_value = "normal")]
        branch: BranchArg,
    },
    /// Check the closed-form eigenvalue against the shooting ODE solver.
    Verify {
        particle1: String,
        particle2: String,
        #[arg(short = 'Z', long = "Z")]
        z: Option<u32>,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        /// Which radial equation to shoot on.
        #[arg(long, value_enum, default_value = "both")]
        which: VerifyWhich,
    },
    /// Compare one level against the reference spectra.
    Compare {
        particle1: String,
        particle2: String,
        #[arg(short = 'Z', long = "Z")]
        z: Option<u32>,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
    },
    /// Sample the normalized radial wavefunction R(r).
    Wavefunction {
        particle1: String,
        particle2: String,
        #[arg(short = 'Z', long = "Z")]
        z: Option<u32>,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        /// Grid end in fm (default: rho = 60, comfortably past the tail).
        #[arg(long)]
        r_max: Option<f64>,
        /// Number of grid points.
        #[arg(long, default_value_t = 512)]
        points: usize,
    },
}

/// Command failures carrying the exit-code classification.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Computation(String),
}

impl CliError {
    fn usage(err: Error) -> Self {
        CliError::Usage(err.to_string())
    }

    fn computation(err: Error) -> Self {
        CliError::Computation(err.to_string())
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Computation(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Computation(m) => m,
        }
    }
}

/// Configuration-loading errors are usage errors (exit 1).
fn load_context(cli: &Cli) -> Result<Context, CliError> {
    let catalog = match &cli.catalog {
        Some(path) => Catalog::load(path).map_err(CliError::usage)?,
        None => match std::env::var_os(CATALOG_ENV) {
            Some(path) => Catalog::load(path).map_err(CliError::usage)?,
            None => Catalog::builtin(),
        },
    };
    let constants = match &cli.constants {
        Some(path) => PhysicalConstants::load(path).map_err(CliError::usage)?,
        None => PhysicalConstants::builtin(),
    };
    Ok(Context {
        catalog,
        constants,
        format: cli.format,
    })
}

fn dispatch(cli: &Cli, ctx: &Context) -> Result<i32, CliError> {
    match &cli.command {
        Command::Spectrum {
            particle1,
            particle2,
            z,
            n_max,
            l_filter,
            branch,
        } => commands::cmd_spectrum(ctx, particle1, particle2, *z, *n_max, *l_filter, *branch),
        Command::Verify {
            particle1,
            particle2,
            z,
            n,
            l,
            which,
        } => commands::cmd_verify(ctx, particle1, particle2, *z, *n, *l, *which),
        Command::Compare {
            particle1,
            particle2,
            z,
            n,
            l,
        } => commands::cmd_compare(ctx, particle1, particle2, *z, *n, *l),
        Command::Wavefunction {
            particle1,
            particle2,
            z,
            n,
            l,
            r_max,
            points,
        } => commands::cmd_wavefunction(ctx, particle1, particle2, *z, *n, *l, *r_max, *points),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are successful outputs, everything else is a
            // usage error (exit 1, not clap's default 2).
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let code = match load_context(&cli).and_then(|ctx| dispatch(&cli, &ctx)) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    };
    std::process::exit(code);
}
