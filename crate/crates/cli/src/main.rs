mod args;
mod commands;
mod input;
mod table;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<symcoh::Error>()) {
        Some(err) if err.is_refused_hypothesis() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| commands::run(&cli.command)) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.json(),
                Format::Table => report.table(),
            };
            println!("{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
