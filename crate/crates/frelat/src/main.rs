use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use frelat::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let rendered = outcome.render(cli.json);
    let _ = if !cli.json && outcome.text.starts_with("error:") {
        std::io::stderr().write_all(rendered.as_bytes())
    } else {
        std::io::stdout().write_all(rendered.as_bytes())
    };
    ExitCode::from(outcome.code)
}
