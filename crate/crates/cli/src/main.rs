use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use derdim::commands::{self, BoundModeArg, WitnessMode};
use derdim::{CliError, Outcome, Workspace};
use derdim_core::homological::{DEFAULT_CAP, DEFAULT_SEED};
use derdim_core::levels::DimInput;

/// Syzygies, relative dimensions and level certificates over quiver
/// algebras over F_p.
#[derive(Parser)]
#[command(name = "derdim", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Algebra file.
    algebra: PathBuf,
    /// Objects file with modules, complexes and generators.
    objects: Option<PathBuf>,
    /// Largest resolution step examined.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Seed for every randomized routine.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl Common {
    fn workspace(&self) -> Result<Workspace, CliError> {
        let mut ws = Workspace::load(&self.algebra, self.objects.as_deref())?;
        ws.cap = self.cap;
        ws.seed = self.seed;
        Ok(ws)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Load an algebra and report its basis and projectives.
    Check { algebra: PathBuf },
    /// Relative dimension of a module with respect to add M.
    Xdim {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        /// Generator name, or @projectives.
        #[arg(long, default_value = "@projectives")]
        generator: String,
    },
    /// The n-th syzygy of a module.
    Syzygy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a level certificate for a complex.
    Witness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        complex: String,
        #[arg(long, default_value = "@projectives")]
        generator: String,
        #[arg(long, value_enum, default_value_t = WitnessMode::Han)]
        mode: WitnessMode,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file.
    Verify { certificate: PathBuf },
    /// Derived dimension bounds from a relative dimension.
    Bound {
        /// A number or `inf`.
        #[arg(long, value_parser = commands::parse_dim)]
        d: DimInput,
        #[arg(long, value_enum, default_value_t = BoundModeArg::Plain)]
        mode: BoundModeArg,
    },
    /// Search for counterexamples to the semi-resolving property.
    SemiresCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        generator: String,
        /// Random samples on top of the modules in the objects file.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { algebra } => commands::cmd_check(algebra),
        Command::Xdim { common, module, generator } => commands::cmd_xdim(&common.workspace()?, module, generator),
        Command::Syzygy { common, module, n, out } => {
            commands::cmd_syzygy(&common.workspace()?, module, *n, out.as_deref())
        }
        Command::Witness { common, complex, generator, mode, d, out } => {
            commands::cmd_witness(&common.workspace()?, complex, generator, *mode, *d, out.as_deref())
        }
        Command::Verify { certificate } => commands::cmd_verify(certificate),
        Command::Bound { d, mode } => Ok(commands::cmd_bound(*d, *mode)),
        Command::SemiresCheck { common, generator, samples, max_dim } => {
            commands::cmd_semires_check(&common.workspace()?, generator, *samples, *max_dim)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
