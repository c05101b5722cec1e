//! `ppverify`: construct binary fields, test maps for the permutation
//! property and run the full verification of both permutation theorems.
//!
//! Exit codes: 0 when every requested check passes, 1 when a mathematical
//! check fails, 2 on usage or configuration errors.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{Format, PpMethod};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PPVERIFY_THREADS";

#[derive(Parser, Debug)]
#[command(name = "ppverify", version, about)]
struct Cli {
    /// Modulus override file with `m:hex` lines.
    #[arg(long, global = true)]
    modulus_file: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Thm1,
    Thm3,
    /// thm1 for k = 1..2 plus thm3 with L-note on the four smallest towers.
    Smoke,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a theorem verification and emit reports.
    Verify {
        #[arg(value_enum, default_value = "smoke")]
        theorem: Theorem,
        /// Value, list (1,2) or inclusive range (1..3).
        #[arg(long)]
        t: Option<String>,
        #[arg(long, default_value = "1")]
        k: String,
        /// Linearized polynomial for thm3: builtin:L-note, identity or lin[...].
        #[arg(long = "L", default_value = "builtin:L-note")]
        l: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = ppverify_core::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 128)]
        samples: usize,
        /// Skip conclusion checks when a thm3 hypothesis fails.
        #[arg(long)]
        skip_on_hypothesis_failure: bool,
    },
    /// Test one map for the permutation property.
    Pptest {
        #[command(flatten)]
        field: FieldFlags,
        /// builtin:g-thm1, builtin:L-note, builtin:g-thm3(L) or a hex table file.
        #[arg(long)]
        map: String,
        #[arg(long, value_enum, default_value = "exhaustive")]
        method: PpMethod,
        /// `all` or `sample:n:seed`.
        #[arg(long, default_value = "all")]
        mode: String,
        /// Allow the all-a character-sum test above m = 14.
        #[arg(long)]
        override_gate: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Character sum of a map for a single twist a.
    Charsum {
        #[command(flatten)]
        field: FieldFlags,
        #[arg(long)]
        map: String,
        /// Twist a in hex.
        #[arg(long)]
        a: String,
    },
    /// Search for further admissible L of the generalized theorem.
    #[command(name = "search-L")]
    SearchL {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 64)]
        budget: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Describe a field context.
    FieldInfo {
        #[command(flatten)]
        field: FieldFlags,
    },
    /// Export a map as a hex table (`x:gx` per line).
    Export {
        #[command(flatten)]
        field: FieldFlags,
        #[arg(long)]
        map: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct FieldFlags {
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Plain field degree, for maps without tower structure.
    #[arg(long)]
    m: Option<u32>,
}

impl From<FieldFlags> for config::FieldArgs {
    fn from(f: FieldFlags) -> Self {
        config::FieldArgs {
            t: f.t,
            k: f.k,
            m: f.m,
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("{THREADS_ENV} must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
