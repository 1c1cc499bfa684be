use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole at s = 1: {0}")]
    Pole(String),
    #[error("invalid modulus {0}: need n >= 3")]
    InvalidModulus(u64),
    #[error("invalid precision: {0}")]
    InvalidPrecision(String),
    #[error("group functions live on different groups")]
    GroupMismatch,
    #[error("unsupported character: {0}")]
    UnsupportedCharacter(String),
    #[error("not a CM type: {0}")]
    NotACmType(String),
    #[error("not a CM field: {0}")]
    NotCmField(String),
    #[error("singular system: pivot {pivot} below threshold at column {column}")]
    SingularSystem { column: usize, pivot: String },
    #[error("character pairing <f, chi> vanishes for character {0}")]
    ZeroCharacterPairing(usize),
    #[error("route calibration failed: {0}")]
    CalibrationFailed(String),
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag, used in CLI error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::Pole(_) => "PoleError",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::InvalidPrecision(_) => "InvalidPrecision",
            Error::GroupMismatch => "GroupMismatch",
            Error::UnsupportedCharacter(_) => "UnsupportedCharacter",
            Error::NotACmType(_) => "NotACMType",
            Error::NotCmField(_) => "NotCMField",
            Error::SingularSystem { .. } => "SingularSystem",
            Error::ZeroCharacterPairing(_) => "ZeroCharacterPairing",
            Error::CalibrationFailed(_) => "CalibrationFailed",
            Error::PrecisionTooLow(_) => "PrecisionTooLow",
            Error::Parse(_) => "ParseError",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
