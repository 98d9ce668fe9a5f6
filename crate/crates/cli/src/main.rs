mod args;
mod cache;
mod commands;
mod failure;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::cache::Cache;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are validation failures; help and version are not
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::new(cli.cache_dir.unwrap_or_else(Cache::default_dir))
    };
    match commands::run(cli.command, &cache) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    }
}
