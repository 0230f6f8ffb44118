mod channel;
mod codec;
mod commands;
mod config;
mod error;
mod formats;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;
pub use error::CliError;

#[derive(Parser)]
#[command(name = "grcodec", version, about = "List decoding of RS and folded RS codes over Galois rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// RunConfig JSON file.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Error count (symbols for rs, columns for frs).
    #[arg(long)]
    e: Option<usize>,
    /// Agreement threshold.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
}

impl Common {
    fn load(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::load(&self.config)?;
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(trials) = self.trials {
            cfg.trials = trials;
        }
        // a flag for one of e/t replaces whatever the file says about both
        if self.e.is_some() || self.t.is_some() {
            cfg.e = self.e;
            cfg.t = self.t;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Encode a message file (one coefficient per line).
    Encode {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        message: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inject exactly e errors into a word file.
    Corrupt {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List-decode a word file, or run a seeded batch of trials without --input.
    Decode {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Record wall-clock times (reports are then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Compare the decoder with exhaustive enumeration of the code.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Print decoding radii and list-size bounds.
    Bounds {
        #[command(flatten)]
        common: Common,
    },
    /// Run built-in end-to-end checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn print(text: String) {
    if text.ends_with('\n') {
        print!("{text}");
    } else {
        println!("{text}");
    }
}

fn json(v: &serde_json::Value) -> String {
    v.to_string()
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Encode { common, message, out } => {
            if let Some(text) = commands::encode(&common.load()?, &message, out.as_ref())? {
                print(text);
            }
        }
        Command::Corrupt { common, input, out } => {
            if let Some(text) = commands::corrupt(&common.load()?, &input, out.as_ref())? {
                print(text);
            }
        }
        Command::Decode { common, input, timing } => {
            print(json(&commands::decode(&common.load()?, input.as_deref(), timing)?));
        }
        Command::Oracle { common, input } => {
            let (report, clean) = commands::oracle(&common.load()?, input.as_deref())?;
            print(json(&report));
            return Ok(clean);
        }
        Command::Bounds { common } => print(json(&commands::bounds(&common.load()?)?)),
        Command::Selftest { seed } => {
            let (report, ok) = commands::selftest(seed);
            print(json(&report));
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.code as u8)
        }
    }
}
