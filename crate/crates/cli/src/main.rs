use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let config = wkb::RunConfig::parse();
    let outcome = wkb::run(&config);
    if let Some(err) = &outcome.error {
        eprintln!("error: {err}");
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(outcome.render(config.format).as_bytes());
    }
    ExitCode::from(outcome.status)
}
