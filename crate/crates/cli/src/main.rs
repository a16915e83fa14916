use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use oriented_ideal_cli::{
    cmd_check, cmd_fuzz, cmd_invariants, cmd_reproduce_paper, Command, Format, RunConfig,
    SizeLimits,
};

#[derive(Parser)]
#[command(name = "oriented-ideal", version, about = "Invariants of powers of edge ideals of weighted oriented graphs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the structural hypotheses (exit 0 applicable, 1 not, 2 bad input).
    Check {
        file: PathBuf,
        #[arg(long, default_value = "md")]
        format: Format,
    },
    /// Formulas and oracle invariants of I^t for t = 1..=power.
    Invariants {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, default_value = "md")]
        format: Format,
        #[arg(long)]
        lattice_cap: Option<usize>,
    },
    /// Recompute the embedded reference values.
    ReproducePaper {
        #[arg(long, default_value = "md")]
        format: Format,
        /// Run a single fixture.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        lattice_cap: Option<usize>,
    },
    /// Check formulas, bounds and identities on random instances.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_x: usize,
        #[arg(long, default_value_t = 3)]
        max_y: usize,
        #[arg(long, default_value_t = 2)]
        max_weight: u32,
        #[arg(long, default_value_t = 2)]
        max_power: u32,
        #[arg(long, default_value_t = 2)]
        max_components: usize,
        /// Flip edge orientations at random (negative control).
        #[arg(long)]
        scramble: bool,
        #[arg(long, default_value = "md")]
        format: Format,
        #[arg(long)]
        lattice_cap: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (config, run): (RunConfig, fn(&RunConfig) -> oriented_ideal_cli::Outcome) = match cli.command {
        Cmd::Check { file, format } => {
            let mut c = RunConfig::new(Command::Check);
            c.input = Some(file);
            c.format = format;
            (c, cmd_check)
        }
        Cmd::Invariants { file, power, format, lattice_cap } => {
            let mut c = RunConfig::new(Command::Invariants);
            c.input = Some(file);
            c.power = power;
            c.format = format;
            c.lattice_cap = lattice_cap;
            (c, cmd_invariants)
        }
        Cmd::ReproducePaper { format, only, lattice_cap } => {
            let mut c = RunConfig::new(Command::ReproducePaper);
            c.format = format;
            c.only = only;
            c.lattice_cap = lattice_cap;
            (c, cmd_reproduce_paper)
        }
        Cmd::Fuzz {
            count,
            seed,
            max_x,
            max_y,
            max_weight,
            max_power,
            max_components,
            scramble,
            format,
            lattice_cap,
        } => {
            let mut c = RunConfig::new(Command::Fuzz);
            c.count = count;
            c.seed = seed;
            c.limits = SizeLimits { max_x, max_y, max_weight, max_power, max_components };
            c.scramble = scramble;
            c.format = format;
            c.lattice_cap = lattice_cap;
            (c, cmd_fuzz)
        }
    };
    let outcome = run(&config);
    if outcome.exit == 2 {
        eprint!("{}", outcome.text);
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.exit as u8)
}
