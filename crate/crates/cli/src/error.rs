use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Library(#[from] minbr::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Library(e) => match e {
                minbr::Error::UnknownKey(_) | minbr::Error::Parse(_) | minbr::Error::DimensionMismatch(_) => 2,
                _ => 1,
            },
        }
    }
}
