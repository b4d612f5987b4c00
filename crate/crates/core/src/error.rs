use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime characteristic")]
    NotPrime(u32),

    #[error("digit {digit} out of range for p = {p}")]
    DigitOutOfRange { digit: u32, p: u32 },

    #[error("enumeration exceeded cap of {cap} items")]
    CapExceeded { cap: usize },

    #[error("{op} requires p > 3, got p = {p}")]
    CharacteristicTooSmall { op: &'static str, p: u32 },

    #[error("tower height {0} exceeds the supported maximum of 20")]
    TowerTooTall(u32),

    #[error("weights differ by something other than a multiple of the root (-1, 2)")]
    NotRootMultiple,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed table data: {0}")]
    Table(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
