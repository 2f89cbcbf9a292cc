use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use remora::eval::Dialect;
use remora::session::{Mode, Options};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DialectArg {
    Dynamic,
    Typed,
}

#[derive(Debug, Parser)]
#[command(name = "remora", version, about = "Run Remora programs", args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = DialectArg::Dynamic)]
    pub dialect: DialectArg,
    /// Type-check without evaluating (typed dialect only).
    #[arg(long)]
    pub check_only: bool,
    #[arg(long)]
    pub no_prelude: bool,
    /// Evaluate independent cells of an application on worker threads.
    #[arg(long)]
    pub parallel_cells: bool,
    /// Source files; with none, start the REPL.
    pub files: Vec<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every `.rem` case in a directory against its `.expected` file.
    Corpus {
        #[arg(long)]
        parallel_cells: bool,
        dir: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Run(Vec<PathBuf>),
    Repl,
    Corpus(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub options: Options,
    pub action: Action,
}

impl RunConfig {
    /// Validate flags; the error is a usage message.
    pub fn from_cli(cli: Cli) -> Result<RunConfig, String> {
        if let Some(Command::Corpus { parallel_cells, dir }) = cli.command {
            return Ok(RunConfig {
                options: Options { parallel_cells: parallel_cells || cli.parallel_cells, ..Options::default() },
                action: Action::Corpus(dir),
            });
        }
        let dialect = match cli.dialect {
            DialectArg::Dynamic => Dialect::Dynamic,
            DialectArg::Typed => Dialect::Typed,
        };
        if cli.check_only && dialect != Dialect::Typed {
            return Err("--check-only requires --dialect typed".into());
        }
        let options = Options {
            dialect,
            mode: if cli.check_only { Mode::Check } else { Mode::Run },
            parallel_cells: cli.parallel_cells,
            prelude: !cli.no_prelude,
        };
        let action = if cli.files.is_empty() { Action::Repl } else { Action::Run(cli.files) };
        Ok(RunConfig { options, action })
    }
}
