use std::io;
use std::process::ExitCode;

use clap::Parser;
use cli_harness::{run, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let (mut out, mut err) = (io::stdout().lock(), io::stderr());
    match run(&cfg, &mut out, &mut err) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("geocorr: {e}");
            // I/O and numerical failures share the usage code
            ExitCode::from(2)
        }
    }
}
