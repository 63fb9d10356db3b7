use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tree_energy::{run, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let to_stdout = cli.global.out.is_none();
    match run(cli) {
        Ok(out) => {
            if to_stdout {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(out.text.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                    return ExitCode::from(1);
                }
            }
            eprintln!("cache: {} hits, {} misses", out.cache.hits, out.cache.misses);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
