mod cli;
mod commands;
mod output;

use clap::Parser;

fn main() {
    let args = cli::Cli::parse();
    if let Err(e) = init_thread_pool() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
    match commands::run(args.command) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

/// DELTAION_THREADS caps internal parallelism; unset means rayon's default.
fn init_thread_pool() -> Result<(), String> {
    let Ok(raw) = std::env::var("DELTAION_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .map_err(|_| format!("DELTAION_THREADS = {raw:?} is not a positive integer"))?;
    if n == 0 {
        return Err("DELTAION_THREADS must be >= 1".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("thread pool: {e}"))
}
