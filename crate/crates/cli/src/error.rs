use std::fmt;
use std::process::ExitCode;

/// Failure classes, each with its own exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Unreadable input: syntax errors, bad numbers, malformed JSON.
    Parse,
    /// Well-formed input that fails a structural check.
    Validation,
    /// Valid input on which the operation is not defined.
    Precondition,
    /// A search ran out of budget without a conclusive answer.
    Exhausted,
}

impl Kind {
    pub fn code(self) -> u8 {
        match self {
            Kind::Parse => 2,
            Kind::Validation => 3,
            Kind::Precondition => 4,
            Kind::Exhausted => 5,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: Kind, message: impl fmt::Display) -> Self {
        CliError { kind, message: message.to_string() }
    }

    pub fn parse(message: impl fmt::Display) -> Self {
        Self::new(Kind::Parse, message)
    }

    pub fn validation(message: impl fmt::Display) -> Self {
        Self::new(Kind::Validation, message)
    }

    pub fn precondition(message: impl fmt::Display) -> Self {
        Self::new(Kind::Precondition, message)
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.kind.code())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CliResult<T> = Result<T, CliError>;
