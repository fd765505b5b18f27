use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use thzprop::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    let report = match cli::execute(&args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(cli::exit_code(&e) as u8);
        }
    };
    for w in &report.warnings {
        eprintln!("{w}");
    }
    let text = report.table.render(args.format);
    let written = match args.out.as_str() {
        "-" | "stdout" => std::io::stdout().lock().write_all(text.as_bytes()),
        path => std::fs::write(path, text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
