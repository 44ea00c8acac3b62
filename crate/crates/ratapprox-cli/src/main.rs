mod args;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Approx(a) => run::approx(a, false),
        Command::Report(a) => run::approx(a, true),
        Command::Autocorrect(a) => run::autocorrect(a),
        Command::ElemfunCheck(a) => run::elemfun_check(a),
        Command::Model(a) => run::model(a),
        Command::Accelerate(a) => run::accelerate(a),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code() as u8)
        }
    }
}
