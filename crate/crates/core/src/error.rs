use thiserror::Error;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("beta must lie in (1, 2): {0}")]
    BetaOutOfRange(String),
    #[error(
        "interval arithmetic lost the digit at position {position} (precision {precision} bits)"
    )]
    PrecisionExhausted { position: usize, precision: u32 },
    #[error("sequence is not a valid expansion of 1: {0}")]
    NotValidated(String),
    #[error("gap set is empty")]
    EmptySet,
    #[error("gap set must have at least two elements")]
    TooSmall,
    #[error("gap set is not finite")]
    NotFinite,
    #[error("operation needs s_0 = 0")]
    NonzeroS0,
    #[error("object is not sofic")]
    NotSofic,
    #[error("star condition fails at n = {0}")]
    StarFails(usize),
    #[error("a horizon is required for truncated objects")]
    HorizonRequired,
    #[error("horizon {horizon} is too small, need at least {needed}")]
    HorizonTooSmall { horizon: usize, needed: usize },
    #[error("period length {0} exceeds the brute-force limit of 24")]
    NTooLarge(usize),
    #[error("graph with {0} vertices exceeds the isomorphism limit of 64")]
    TooLarge(usize),
    #[error("graph has no distinguished vertex a1")]
    NoDistinguishedVertex,
    #[error("gap set is not the image of a finite expansion of 1")]
    NotAssImage,
    #[error("rational function is not a zeta function: {0}")]
    NotAZeta(String),
    #[error("need at least {needed} known increments, have {have}")]
    PrefixTooShort { needed: usize, have: usize },
    #[error("syntax error at {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("invalid object: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable code used in JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BetaOutOfRange(_) => "BetaOutOfRange",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::NotValidated(_) => "NotValidated",
            Error::EmptySet => "EmptySet",
            Error::TooSmall => "TooSmall",
            Error::NotFinite => "NotFinite",
            Error::NonzeroS0 => "NonzeroS0",
            Error::NotSofic => "NotSofic",
            Error::StarFails(_) => "StarFails",
            Error::HorizonRequired => "HorizonRequired",
            Error::HorizonTooSmall { .. } => "HorizonTooSmall",
            Error::NTooLarge(_) => "NTooLarge",
            Error::TooLarge(_) => "TooLarge",
            Error::NoDistinguishedVertex => "NoDistinguishedVertex",
            Error::NotAssImage => "NotAssImage",
            Error::NotAZeta(_) => "NotAZeta",
            Error::PrefixTooShort { .. } => "PrefixTooShort",
            Error::Syntax { .. } => "SyntaxError",
            Error::Invalid(_) => "Invalid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
