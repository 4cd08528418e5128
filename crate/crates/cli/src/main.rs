use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rankrange_cli::args::Cli;
use rankrange_cli::error::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = rankrange_cli::run(&cli).and_then(|out| {
        match rankrange_cli::output_path(&cli) {
            Some(path) => {
                std::fs::write(path, &out.body).map_err(|source| CliError::Write { path: path.to_owned(), source })?
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                // a closed pipe is not worth an error message
                let _ = stdout.write_all(out.body.as_bytes());
            }
        }
        Ok(out)
    });
    match result {
        Ok(out) if out.disagreement => {
            eprintln!("rankrange: engines disagree beyond tolerance");
            ExitCode::from(4)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rankrange: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
