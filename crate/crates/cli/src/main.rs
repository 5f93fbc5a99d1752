mod commands;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "lrlab", version, about = "Mod-2 level raising, local conditions and Selmer rank experiments")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: logical CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Never touch the network; serve data from the cache and bundled fixtures.
    #[arg(long, global = true, env = "LRLAB_OFFLINE", value_parser = clap::builder::BoolishValueParser::new(), action = clap::ArgAction::SetTrue)]
    pub offline: bool,
    /// Directory for cached API responses.
    #[arg(long, global = true, env = "LRLAB_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants, standing hypotheses and the 2-adic profile of a curve.
    Analyze {
        #[arg(long)]
        curve: String,
    },
    /// Level-raising primes q <= bound (q not dividing 2N, a_q even).
    RaisingPrimes {
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 100)]
        bound: u64,
        /// Also report Frobenius-order frequencies against their predictions.
        #[arg(long)]
        density: bool,
    },
    /// Auxiliary primes for a set of level-raising primes.
    AuxPrimes {
        #[arg(long)]
        curve: String,
        /// Level-raising primes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<u64>,
        #[arg(long)]
        p1: u64,
        #[arg(long, default_value_t = 2)]
        min: u64,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        /// Also impose the Legendre condition at p1.
        #[arg(long)]
        strict: bool,
    },
    /// Classify the local condition at a place.
    Local {
        #[arg(long)]
        curve: String,
        /// A prime, or "inf".
        #[arg(long)]
        place: String,
        /// Sign of the raised form at a level-raising prime.
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<i8>,
    },
    /// Involution matrix and toric-line isotropy certificate at an order-2 prime.
    Qform {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        place: u64,
    },
    /// Selmer model: rank walk from a seed system, or exhaustive verification.
    SelmerSim {
        /// Dimensions of the random seed places, comma separated (each even).
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["seed_dim", "exhaustive"])]
        places: Option<Vec<usize>>,
        /// Use the standard seed with this Selmer dimension instead.
        #[arg(long, conflicts_with = "exhaustive")]
        seed_dim: Option<usize>,
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree d of the coefficient field F_{2^d}.
        #[arg(long, default_value_t = 1)]
        field_degree: u32,
        /// Verify every system of total dimension up to this bound (at most 8).
        #[arg(long)]
        exhaustive: Option<usize>,
        /// Include the final system in the output.
        #[arg(long)]
        emit_system: bool,
    },
    /// Rigidity of tame lifts over GR(2^k, 2) at an auxiliary prime q.
    LiftCheck {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        precision: u32,
    },
    /// Fetch (or read from cache) the newforms of a level.
    Fetch {
        #[arg(long)]
        level: Option<u64>,
        /// Fetch a curve by label instead.
        #[arg(long, conflicts_with = "level")]
        curve: Option<String>,
    },
    /// Re-derive the level-raising tables from newform data.
    Audit {
        /// Table fixture (default: the bundled transcription).
        #[arg(long)]
        tables: Option<PathBuf>,
        #[arg(long, default_value_t = lrlab_lmfdb::DEFAULT_BOUND)]
        bound: u64,
        /// Print every certificate as well.
        #[arg(long)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).target(env_logger::Target::Stderr).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
    let format = if cli.global.json { Format::Json } else { cli.global.format };
    match commands::run(&cli.global, cli.command) {
        Ok(outcome) => {
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", render::render(&outcome.report, format));
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
