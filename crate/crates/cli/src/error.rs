use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaIssue {
    /// Dotted path into the bundle, e.g. `documents.M`.
    pub path: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl SchemaIssue {
    pub fn at_path(path: &str, message: impl Into<String>) -> Self {
        SchemaIssue {
            path: path.to_string(),
            line: None,
            column: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for SchemaIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, "line {l}, column {c}: ")?;
        }
        if !self.path.is_empty() {
            write!(f, "{}: ", self.path)?;
        }
        f.write_str(&self.message)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Schema(Vec<SchemaIssue>),
    #[error("dangling reference to `{name}` from {from}")]
    DanglingReference { from: String, name: String },
    #[error(transparent)]
    Domain(#[from] tracecat::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse_error",
            CliError::Schema(_) => "schema_error",
            CliError::DanglingReference { .. } => "dangling_reference",
            CliError::Domain(e) => e.code(),
            CliError::Usage(_) => "usage_error",
            CliError::Io { .. } => "io_error",
        }
    }

    /// 1 for domain errors, 2 for usage and input problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "error": {
                "code": self.code(),
                "message": self.to_string(),
            }
        });
        if let CliError::Schema(issues) = self {
            v["error"]["issues"] = issues
                .iter()
                .map(|i| {
                    serde_json::json!({
                        "path": i.path,
                        "line": i.line,
                        "column": i.column,
                        "message": i.message,
                    })
                })
                .collect();
        }
        if let CliError::Domain(
            tracecat::Error::MalformedDiagram(d)
            | tracecat::Error::InvalidSpace(d)
            | tracecat::Error::InvalidSystem(d)
            | tracecat::Error::NotAMorphism(d),
        ) = self
        {
            v["error"]["diagnostics"] = crate::emit::diagnostics_json(d);
        }
        v
    }
}
