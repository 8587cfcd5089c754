use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pic2cone::commands::{self, Command, Options, EXIT_USAGE};
use pic2cone::groupclass::Action;

#[derive(Parser)]
#[command(name = "pic2cone", version, about = "Cone symmetries of Picard number two Calabi-Yau manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ActionArg {
    Aut,
    Bir,
}

#[derive(Args)]
struct Common {
    /// Scenario file
    file: PathBuf,
    /// Which cone and group to act with
    #[arg(long, value_enum)]
    action: Option<ActionArg>,
    /// Fundamental domain seed, e.g. "(1, 2)"
    #[arg(long)]
    seed: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the scenario against the structural rules
    Validate { file: PathBuf },
    /// Classify the automorphism group(s)
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Construct the fundamental domain
    Domain {
        #[command(flatten)]
        common: Common,
    },
    /// Verify the tiling by translates of the fundamental domain
    Tile {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = commands::DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Find the tile containing a ray
    Locate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        point: String,
    },
    /// Check intersection-theoretic obstructions
    Constraints { file: PathBuf },
    /// Draw the tiling as SVG
    Render {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = commands::DEFAULT_DEPTH)]
        depth: u32,
        /// Output path; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn options(common: &Common) -> Options {
    Options {
        action: common.action.map(|a| match a {
            ActionArg::Aut => Action::Aut,
            ActionArg::Bir => Action::Bir,
        }),
        seed: common.seed.clone(),
        ..Options::default()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, file, opts, out) = match cli.command {
        Cmd::Validate { file } => (Command::Validate, file, Options::default(), None),
        Cmd::Constraints { file } => (Command::Constraints, file, Options::default(), None),
        Cmd::Classify { common } => (Command::Classify, common.file.clone(), options(&common), None),
        Cmd::Domain { common } => (Command::Domain, common.file.clone(), options(&common), None),
        Cmd::Tile { common, depth } => {
            (Command::Tile, common.file.clone(), Options { depth: Some(depth), ..options(&common) }, None)
        }
        Cmd::Locate { common, point } => {
            (Command::Locate, common.file.clone(), Options { point: Some(point), ..options(&common) }, None)
        }
        Cmd::Render { common, depth, out } => {
            (Command::Render, common.file.clone(), Options { depth: Some(depth), ..options(&common) }, out)
        }
    };
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    match commands::run(cmd, &text, &opts) {
        Ok(report) => {
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &report.text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(EXIT_USAGE as u8);
                    }
                }
                None if report.text.ends_with('\n') => print!("{}", report.text),
                None => println!("{}", report.text),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
