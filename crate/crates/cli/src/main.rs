use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use tracecat_cli::{execute, read_input, Cli, CliError, Format};

fn fail(e: &CliError, format: Format) -> ExitCode {
    match format {
        Format::Json => eprintln!("{}", serde_json::to_string_pretty(&e.to_json()).expect("error serializes")),
        Format::Text => eprintln!("error[{}]: {e}", e.code()),
    }
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let msg = msg.trim().trim_start_matches("error: ");
            return fail(&CliError::Usage(msg.to_string()), Format::Text);
        }
    };
    let out = read_input(&cli).and_then(|text| execute(&cli, &text));
    match out {
        Ok(s) => match &cli.output {
            Some(path) => match std::fs::write(path, s) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(
                    &CliError::Io {
                        path: path.display().to_string(),
                        message: e.to_string(),
                    },
                    cli.format,
                ),
            },
            None => {
                print!("{s}");
                ExitCode::SUCCESS
            }
        },
        Err(e) => fail(&e, cli.format),
    }
}
