use monodromy_core::Error as CoreError;

/// Errors surfaced by the command-line layer. Parse-family errors exit
/// with code 2, everything else with code 1.
#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CliError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unsupported schema version {found:?}; this build reads version \"1\"")]
    SchemaVersionUnsupported { found: String },
    #[error("unknown fixture {0:?}; run `monodromy corpus` to list the embedded corpus")]
    UnknownFixture(String),
    #[error("descriptor kind {kind:?} is not valid for `{command}`")]
    WrongKind { command: &'static str, kind: &'static str },
    #[error(transparent)]
    Computation(#[from] CoreError),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::SchemaVersionUnsupported { .. } => 2,
            _ => 1,
        }
    }

    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
