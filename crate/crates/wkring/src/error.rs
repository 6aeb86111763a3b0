use std::fmt;

use serde_json::{json, Value};

/// Failures surfaced by the command-line layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Core(wkring_core::Error),
    /// Malformed JSON input or a value outside the documented schema.
    Format(String),
    Io(String),
    UnknownSuite(String),
    Usage(String),
}

impl From<wkring_core::Error> for CliError {
    fn from(e: wkring_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<wkring_core::UnknownSuite> for CliError {
    fn from(e: wkring_core::UnknownSuite) -> Self {
        CliError::UnknownSuite(e.0)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Format(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::UnknownSuite(s) => write!(f, "unknown suite `{s}`"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Format(_) => "InvalidInput",
            CliError::Io(_) => "Io",
            CliError::UnknownSuite(_) => "UnknownSuite",
            CliError::Usage(_) => "Usage",
        }
    }

    /// 2 for broken internal invariants, 1 for everything the caller can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut err = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Core(e) = self {
            if e.is_internal() {
                err["diagnostic"] = json!(format!("{e:?}"));
            }
        }
        json!({ "error": err })
    }
}
