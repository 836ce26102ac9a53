use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use surgeul_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_seed = std::env::var("SURGEUL_SEED").ok();
    match RunConfig::from_cli(cli, env_seed.as_deref()).and_then(|c| run(&c)) {
        Ok(outcome) => {
            let mut out = io::stdout().lock();
            match out.write_all(outcome.stdout.as_bytes()).and_then(|_| out.flush()) {
                Ok(()) => ExitCode::from(outcome.status),
                // closed pipe (e.g. `| head`): the reader has what it wanted
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::from(outcome.status),
                Err(e) => {
                    eprintln!("surgeul: writing output: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("surgeul: {e}");
            ExitCode::from(2)
        }
    }
}
