use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semdb_cli::{run, Command, Format, RunConfig};

#[derive(Parser)]
#[command(name = "semdb", version, about = "Semantic lexicon database tools")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Compile a lexicon into semantic lexicon entries.
    Compile(EmitArgs),
    /// Emit the one-line-per-lemma table.
    Table(EmitArgs),
    /// Validate interface terms against a lexicon.
    Check(CheckArgs),
    /// Enumerate the scope readings of interface terms.
    Readings(ReadingArgs),
}

#[derive(Args)]
struct Common {
    /// Treat warnings as failures (exit 1).
    #[arg(long)]
    strict: bool,
    /// Write output here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EmitArgs {
    #[arg(long, value_name = "PATH")]
    lexicon: PathBuf,
    /// Trafo rule file; defaults to the shipped rules.
    #[arg(long, value_name = "PATH")]
    rules: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_name = "PATH")]
    lexicon: PathBuf,
    #[arg(long, value_name = "PATH")]
    vits: PathBuf,
    /// Sort alias table; defaults to the shipped one.
    #[arg(long, value_name = "PATH")]
    aliases: Option<PathBuf>,
    /// Semantic class catalog; defaults to the builtin one.
    #[arg(long, value_name = "PATH")]
    catalog: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ReadingArgs {
    #[arg(long, value_name = "PATH")]
    vits: PathBuf,
    #[arg(long, value_name = "PATH")]
    catalog: Option<PathBuf>,
    /// Print the scoped tree under each reading.
    #[arg(long)]
    trees: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn config(cli: Cli) -> RunConfig {
    let (command, common) = match &cli.command {
        Sub::Compile(a) => (Command::Compile, &a.common),
        Sub::Table(a) => (Command::Table, &a.common),
        Sub::Check(a) => (Command::Check, &a.common),
        Sub::Readings(a) => (Command::Readings, &a.common),
    };
    let mut c = RunConfig::new(command);
    c.strict = common.strict;
    c.output_path = common.out.clone();
    match cli.command {
        Sub::Compile(a) | Sub::Table(a) => {
            c.lexicon_path = Some(a.lexicon);
            c.rules_path = a.rules;
        }
        Sub::Check(a) => {
            c.lexicon_path = Some(a.lexicon);
            c.vit_path = Some(a.vits);
            c.alias_path = a.aliases;
            c.catalog_path = a.catalog;
            c.format = match a.format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Json => Format::Json,
            };
        }
        Sub::Readings(a) => {
            c.vit_path = Some(a.vits);
            c.catalog_path = a.catalog;
            c.trees = a.trees;
        }
    }
    c
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(&config(cli), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
