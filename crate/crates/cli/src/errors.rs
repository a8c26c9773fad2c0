use std::fmt;

/// Command-level failures, split by exit code: input problems (bad files,
/// unparseable rows, unknown groups) exit 2, invalid arguments exit 3.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Args(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Args(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Args(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<elso::Error> for CliError {
    fn from(e: elso::Error) -> Self {
        match e {
            elso::Error::InvalidArgument(m) | elso::Error::Domain(m) => CliError::Args(m),
            elso::Error::Format(m) => CliError::Input(m),
            elso::Error::Io(m) => CliError::Input(m.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
