mod commands;
mod error;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use minbr::tensor::Factor;

use crate::error::CliError;
use crate::report::Node;

/// Exact minimal-border-rank invariants of small order-3 tensors.
#[derive(Parser)]
#[command(name = "minbr", version)]
struct Cli {
    /// Print JSON instead of indented text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for a tensor file or `corpus:KEY`.
    Analyze {
        input: String,
        /// Rotate the factors so this one comes first.
        #[arg(long, value_enum)]
        factor: Option<FactorArg>,
        /// Cross-check the 111-map rank against the directly assembled matrix.
        #[arg(long)]
        verify_direct: bool,
    },
    /// Orbit label of a concise 1-degenerate 111-abundant tensor with m = 5.
    Classify { input: String },
    /// Verdicts, diagonalizability and limit certificates.
    Certify {
        input: String,
        /// TOML file with `members` (matrices over Q[t]) and optional `factor`.
        #[arg(long)]
        family: Option<String>,
    },
    /// Built-in tensors.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// All keys with descriptions.
    List,
    /// One entry with its expected invariants.
    Show { key: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum FactorArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
}

impl From<FactorArg> for Factor {
    fn from(f: FactorArg) -> Factor {
        match f {
            FactorArg::A => Factor::A,
            FactorArg::B => Factor::B,
            FactorArg::C => Factor::C,
        }
    }
}

fn run(command: Command) -> Result<Node, CliError> {
    match command {
        Command::Analyze { input, factor, verify_direct } => {
            let loaded = input::load(&input)?;
            Ok(commands::analyze(&loaded, factor.map(Factor::from), verify_direct))
        }
        Command::Classify { input } => commands::classify(&input::load(&input)?),
        Command::Certify { input, family } => {
            let loaded = input::load(&input)?;
            let family = family.as_deref().map(input::load_family).transpose()?;
            commands::certify(&loaded, family)
        }
        Command::Corpus { action: CorpusAction::List } => Ok(commands::corpus_list()),
        Command::Corpus { action: CorpusAction::Show { key } } => commands::corpus_show(&key),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(node) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&node.to_json()).expect("JSON values serialize") + "\n"
            } else {
                node.render_text()
            };
            // A closed pipe (`minbr corpus list | head`) is not an error.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
