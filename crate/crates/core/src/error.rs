use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field size q = {0} (supported: 2, 3, 4, 5, 7, 8, 9, 11, 13, 16)")]
    UnsupportedField(u8),
    #[error("zero rational function has no divisor or valuation")]
    ZeroFunction,
    #[error("polynomial {0} is not a monic irreducible")]
    NotAPlace(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("matrix is singular")]
    Singular,
    #[error("divisor {0} is not effective")]
    NotEffective(String),
    #[error("level divisor must be non-zero")]
    ZeroLevel,
    #[error("lattices differ at a place other than {0}")]
    NotLocalAt(String),
    #[error("depth {requested} exceeds the configured bound {bound}")]
    DepthBound { requested: usize, bound: usize },
    #[error("level {level} is not supported away from the place {place}")]
    PlaceInLevel { level: String, place: String },
    #[error("seed order has level {found}, expected {expected}")]
    SeedLevel { found: String, expected: String },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(u8, u8),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
