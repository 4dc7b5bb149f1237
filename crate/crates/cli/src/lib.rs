//! Command-line front end for `tracecat`: a JSON document bundle format and
//! the subcommands that read and write it.

pub mod args;
pub mod commands;
pub mod document;
pub mod emit;
pub mod error;

use std::io::Read;

pub use args::{Cli, Format};
pub use commands::{run, Report};
pub use document::{parse, Bundle, Document};
pub use error::{CliError, SchemaIssue};

pub fn read_input(cli: &Cli) -> Result<String, CliError> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("missing --input <FILE>".into()))?;
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io {
            path: "stdin".into(),
            message: e.to_string(),
        })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Parses the input, runs the command and renders the report.
pub fn execute(cli: &Cli, text: &str) -> Result<String, CliError> {
    let bundle = parse(text)?;
    let report = run(cli, &bundle)?;
    Ok(match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    })
}
