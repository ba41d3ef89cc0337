use std::process::ExitCode;

use clap::Parser;
use submod::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|o| {
        if let Some(path) = &cli.out {
            std::fs::write(path, &o.output).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        } else {
            print!("{}", o.output);
        }
        Ok(o.code)
    });
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("submod: {e}");
            ExitCode::from(2)
        }
    }
}
