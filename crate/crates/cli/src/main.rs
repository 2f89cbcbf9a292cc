use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use remora::session::with_large_stack;
use remora_cli::config::{Action, Cli, RunConfig};
use remora_cli::{corpus, repl, run};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("remora: {msg}");
            return ExitCode::from(2);
        }
    };
    let code = with_large_stack(move || {
        let (stdout, stderr) = (io::stdout(), io::stderr());
        let (mut out, mut err) = (stdout.lock(), stderr.lock());
        let code = match &config.action {
            Action::Run(files) => run::run_files(files, config.options, &mut out, &mut err),
            Action::Repl => repl::repl(config.options, &mut io::stdin().lock(), &mut out, &mut err),
            Action::Corpus(dir) => corpus::main(dir, config.options.parallel_cells, &mut out),
        };
        let _ = out.flush();
        code
    });
    ExitCode::from(code as u8)
}
