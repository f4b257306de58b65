use ordvar::monad::MonadError;
use ordvar::{GuardError, PosetError, TermError, VarietyError};

/// Failures that end a command. Check failures are not errors; they are
/// reported through the exit code of a successful run.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Guard(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Guard(m) => write!(f, "resource guard: {m}"),
        }
    }
}

impl From<GuardError> for CliError {
    fn from(e: GuardError) -> Self {
        CliError::Guard(e.to_string())
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::Guard(g) => g.into(),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<TermError> for CliError {
    fn from(e: TermError) -> Self {
        match e {
            TermError::Guard(g) => g.into(),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<VarietyError> for CliError {
    fn from(e: VarietyError) -> Self {
        match e {
            VarietyError::Guard(g) => g.into(),
            VarietyError::Term(t) => t.into(),
            VarietyError::Poset(p) => p.into(),
            e @ VarietyError::Budget(_) => CliError::Guard(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<MonadError> for CliError {
    fn from(e: MonadError) -> Self {
        match e {
            MonadError::Guard(g) => g.into(),
            MonadError::Poset(p) => p.into(),
            MonadError::Variety(v) => v.into(),
            MonadError::Truncation(m) => CliError::Guard(format!("outside the truncation: {m}")),
            e => CliError::Input(e.to_string()),
        }
    }
}
