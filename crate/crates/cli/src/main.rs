use std::process::ExitCode;

use bohrlab_cli::{run, Cli, SEED_ENV};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let seed_env = std::env::var(SEED_ENV).ok();
    let code = match run(&cli, &argv, seed_env.as_deref()) {
        Ok(out) => match write_record(&cli, &out.record) {
            Ok(()) => {
                print!("{}", out.stdout);
                out.exit_code
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

fn write_record(
    cli: &Cli,
    record: &bohrlab_cli::OutputRecord,
) -> Result<(), bohrlab_cli::CliError> {
    if let Some(path) = cli.out() {
        let json = serde_json::to_string_pretty(record)?;
        std::fs::write(path, json + "\n")?;
    }
    Ok(())
}
