//! `ainf`: Hochschild and cyclic homology, the cyclic Lie bialgebra and its
//! axioms for finite A∞ categories given as documents or builtin fixtures.

mod commands;
mod table;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ainf_core::Field;
use table::Format;

#[derive(Parser, Debug)]
#[command(name = "ainf", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the A∞ relations and, when a pairing is present, the Calabi-Yau conditions.
    Verify(Common),
    /// Truncated Hochschild homology.
    Hh(Common),
    /// Truncated cyclic (Connes) homology.
    Ch(Common),
    /// Bracket of two cyclic classes, or every nonzero bracket of basis classes.
    Bracket {
        #[command(flatten)]
        common: Common,
        /// Classes as `[a|b|...]`.
        #[arg(num_args = 0..=2)]
        words: Vec<String>,
    },
    /// Cobracket of one cyclic class, or of every basis class.
    Cobracket {
        #[command(flatten)]
        common: Common,
        word: Option<String>,
    },
    /// Lie bialgebra axioms, degree law and compatibility with the differential.
    Axioms(Common),
    /// Compare the cyclic Lie bialgebra with the Poisson bialgebra of noncommutative 0-forms.
    NcsympCompare(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Convention {
    Chain,
    Cochain,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Category document path, or a builtin fixture name.
    #[arg(long)]
    input: String,
    /// Word-length truncation (default depends on the command).
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    degree_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    degree_max: Option<i64>,
    /// `q` or `fp:P`; overrides the document's field.
    #[arg(long, value_parser = parse_field)]
    field: Option<Field>,
    #[arg(long, value_enum, default_value_t = Convention::Chain)]
    convention: Convention,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.status)
        }
    }
}
