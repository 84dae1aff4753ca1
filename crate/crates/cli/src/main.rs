mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use render::Outcome;

/// Hilbert squares of nodal curves: stability, degenerations and reconstruction.
#[derive(Parser, Debug)]
#[command(name = "symsq", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Flag {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Lex,
    Grevlex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect a curve file.
    #[command(subcommand)]
    Curve(CurveCommand),
    /// List stable dual graphs of a given arithmetic genus.
    Enumerate(EnumerateArgs),
    /// The Hilbert square of a curve.
    #[command(subcommand)]
    Hilb2(Hilb2Command),
    /// Ampleness of log-canonical classes of log symmetric squares.
    #[command(subcommand)]
    Ample(AmpleCommand),
    /// Contract the Hilbert square to its relative minimal or canonical model.
    #[command(subcommand)]
    Mmp(MmpCommand),
    /// Recover a curve from a surface model document.
    Reconstruct { model: PathBuf },
    /// Build, contract, forget and reconstruct every curve of a genus.
    Roundtrip(RoundtripArgs),
    /// Local algebra of a resolved bad point.
    #[command(subcommand)]
    Local(LocalCommand),
}

#[derive(Subcommand, Debug)]
enum CurveCommand {
    /// Validate and test stability.
    Check { file: PathBuf },
    /// Print the arithmetic genus.
    Genus { file: PathBuf },
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    genus: u32,
    /// Defaults to 2g - 2, the largest possible number.
    #[arg(long)]
    max_components: Option<usize>,
    #[arg(long)]
    allow_self_nodes: bool,
    /// Split genus-3 components into hyperelliptic and non-hyperelliptic.
    #[arg(long)]
    hyperelliptic_variants: bool,
    #[arg(long, default_value_t = symsq::curve_model::DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(Subcommand, Debug)]
enum Hilb2Command {
    /// Components and curves of the blown-up Hilbert square.
    Model { file: PathBuf },
    /// Decide whether the Hilbert square is a stable surface.
    Stability { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum AmpleCommand {
    /// Classify one log symmetric square.
    Classify {
        #[arg(short = 'g', long)]
        genus: u32,
        /// Number of marked boundary points.
        #[arg(short = 'd', long)]
        delta: u32,
        #[arg(long, value_enum, default_value_t = Flag::Unknown)]
        hyperelliptic: Flag,
    },
    /// Status for every genus and boundary size up to the bounds.
    Table {
        #[arg(long, default_value_t = 6)]
        gmax: u32,
        #[arg(long, default_value_t = 6)]
        dmax: u32,
    },
}

#[derive(Subcommand, Debug)]
enum MmpCommand {
    Minimal { file: PathBuf },
    Canonical { file: PathBuf },
}

#[derive(Args, Debug)]
struct RoundtripArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long, default_value_t = 5)]
    max_components: usize,
}

#[derive(Subcommand, Debug)]
enum LocalCommand {
    /// Compare the relations with the 2x2 minors of their matrix.
    VerifyMinors,
    /// Search for a monomial chart of the resolution.
    FindParam {
        #[arg(long, default_value_t = 2)]
        degree_bound: u32,
    },
    /// The relations after setting a3 = a4 a5.
    CentralFiber,
    /// Action of the involution on the base parameter and chart monomials.
    Equivariance,
    /// Reduced Groebner basis of an ideal file.
    Groebner {
        file: PathBuf,
        /// Overrides the order given in the file.
        #[arg(long, value_enum)]
        order: Option<Order>,
    },
}

pub enum CliError {
    Input(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 66,
            CliError::Domain(_) => 1,
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    use commands::*;
    match cli.command {
        Command::Curve(CurveCommand::Check { file }) => curve_check(&file),
        Command::Curve(CurveCommand::Genus { file }) => curve_genus(&file),
        Command::Enumerate(a) => enumerate(
            a.genus,
            a.max_components,
            a.allow_self_nodes,
            a.hyperelliptic_variants,
            a.cap,
        ),
        Command::Hilb2(Hilb2Command::Model { file }) => hilb2_model(&file),
        Command::Hilb2(Hilb2Command::Stability { file }) => hilb2_stability(&file),
        Command::Ample(AmpleCommand::Classify {
            genus,
            delta,
            hyperelliptic,
        }) => ample_classify(genus, delta, hyperelliptic),
        Command::Ample(AmpleCommand::Table { gmax, dmax }) => ample_table(gmax, dmax),
        Command::Mmp(MmpCommand::Minimal { file }) => mmp_minimal(&file),
        Command::Mmp(MmpCommand::Canonical { file }) => mmp_canonical(&file),
        Command::Reconstruct { model } => reconstruct(&model),
        Command::Roundtrip(a) => roundtrip(a.genus, a.max_components),
        Command::Local(LocalCommand::VerifyMinors) => local_minors(),
        Command::Local(LocalCommand::FindParam { degree_bound }) => local_find_param(degree_bound),
        Command::Local(LocalCommand::CentralFiber) => local_central_fiber(),
        Command::Local(LocalCommand::Equivariance) => local_equivariance(),
        Command::Local(LocalCommand::Groebner { file, order }) => local_groebner(&file, order),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(outcome) => {
            outcome.print(format);
            if outcome.negative {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let (CliError::Input(msg) | CliError::Domain(msg)) = &e;
            eprintln!("error: {msg}");
            ExitCode::from(e.code())
        }
    }
}
