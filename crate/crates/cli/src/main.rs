use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use yamabe_flag_cli::{exit_code, run, Cli, RunConfig, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(p) => match File::create(p) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", p.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let code = match run(&cfg, &mut sink) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    if let Err(e) = sink.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(code as u8)
}
