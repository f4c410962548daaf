//! `netfair`: perception-based fairness audits of attributed networks.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use netfair_core::DegenerateRule;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DATA: u8 = 3;
pub const EXIT_VERIFICATION: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "netfair",
    version,
    about = "Fairness perception and visibility on attributed networks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Neighborhood radius.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub delta: u32,
    /// Handling of nodes without same-outcome neighbors [default: zero].
    #[arg(long, global = true, value_enum)]
    pub degenerate: Option<DegenerateArg>,
    /// Acceptability threshold: y = 1 iff avg_rating > threshold - 1.
    #[arg(long, global = true, default_value_t = 6.0)]
    pub threshold: f64,
    /// Seed for randomized commands
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Also write a plotting script next to sweep tables.
    #[arg(long, global = true)]
    pub plot: bool,
    /// Refuse to analyze disconnected networks.
    #[arg(long, global = true)]
    pub require_connected: bool,
    /// Report table format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Parity tolerance.
    #[arg(long, global = true, default_value_t = 0.0)]
    pub epsilon: f64,
}

impl Global {
    pub fn rule(&self) -> DegenerateRule {
        self.degenerate
            .map(DegenerateRule::from)
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DegenerateArg {
    Zero,
    Exclude,
}

impl From<DegenerateArg> for DegenerateRule {
    fn from(arg: DegenerateArg) -> Self {
        match arg {
            DegenerateArg::Zero => DegenerateRule::ZeroExpectation,
            DegenerateArg::Exclude => DegenerateRule::MarkIneligible,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a paper network from review tables.
    Ingest(IngestArgs),
    /// Per-node fairness perception with group breakdowns.
    Perceive(NetworkArgs),
    /// Fairness visibility for every radius up to --delta-max.
    Sweep(SweepArgs),
    /// Fairness visibility parity and demographic parity gaps.
    Parity(NetworkArgs),
    /// Randomized axiom and expectation-property suite.
    Axioms(AxiomsArgs),
    /// Generate a synthetic network and decision vector.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Args)]
pub struct NetworkArgs {
    /// Directory holding nodes.csv and edges.csv.
    #[arg(long)]
    pub network: PathBuf,
    /// Decision table [default: <network>/decisions.csv].
    #[arg(long)]
    pub decisions: Option<PathBuf>,
    /// Drop self-loops and duplicate edges instead of rejecting them.
    #[arg(long)]
    pub normalize_edges: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub network: NetworkArgs,
    /// Largest radius [default: saturation radius].
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub delta_max: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AttributeArg {
    Famous,
    TopInstitution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LinkArg {
    SharedAuthor,
    Collaboration,
}

#[derive(Debug, Clone, Args)]
pub struct IngestArgs {
    /// Paper table (CSV or JSON)
    #[arg(long)]
    pub papers: PathBuf,
    /// Author table (CSV or JSON)
    #[arg(long)]
    pub authors: PathBuf,
    /// Famous author ids, one per line.
    #[arg(long)]
    pub famous: Option<PathBuf>,
    /// Top institution names, one per line.
    #[arg(long)]
    pub top_institutions: Option<PathBuf>,
    /// Which roster defines the protected group
    #[arg(long, value_enum, default_value_t = AttributeArg::Famous)]
    pub attribute: AttributeArg,
    /// Which author relations link two papers
    #[arg(long, value_enum, default_value_t = LinkArg::SharedAuthor)]
    pub link: LinkArg,
    /// Match ids case-insensitively with whitespace collapsed.
    #[arg(long)]
    pub fold_ids: bool,
}

#[derive(Debug, Clone, Args)]
pub struct AxiomsArgs {
    /// Suite configuration (TOML).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Trials per check
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["config", "pitfall"])))]
pub struct SynthArgs {
    /// Generator configuration (TOML).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Emit the low-degree pitfall instance instead.
    #[arg(long)]
    pub pitfall: bool,
}

/// Failures with a dedicated exit status; anything else is a data error.
#[derive(Debug)]
pub enum Refusal {
    Usage(String),
    /// A precondition or verification check failed.
    Verification(String),
}

impl std::fmt::Display for Refusal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Refusal::Usage(m) | Refusal::Verification(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for Refusal {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Ingest(args) => commands::ingest(&cli.global, args),
        Command::Perceive(args) => commands::perceive(&cli.global, args),
        Command::Sweep(args) => commands::sweep(&cli.global, args),
        Command::Parity(args) => commands::parity(&cli.global, args),
        Command::Axioms(args) => commands::axioms(&cli.global, args),
        Command::Synth(args) => commands::synth(&cli.global, args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(match err.downcast_ref::<Refusal>() {
                Some(Refusal::Usage(_)) => EXIT_USAGE,
                Some(Refusal::Verification(_)) => EXIT_VERIFICATION,
                None => EXIT_DATA,
            })
        }
    }
}
