use thiserror::Error;

/// Errors raised by group construction and the unit-group pipeline.
#[derive(Error, Debug)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection on 0..{degree}")]
    NotBijection { degree: usize },
    #[error("group order exceeds the enumeration cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("subgroup is not normal in the given overgroup")]
    NotNormal,
    #[error("element is not in the normalizer")]
    NotInNormalizer,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group is not a semidirect product of an odd abelian group with inversion: {0}")]
    WrongConstruction(String),
    #[error("brute force over {r} subgroup classes exceeds the oracle cap of {cap}")]
    OracleCapExceeded { r: usize, cap: usize },
    #[error("unit verification failed for basis vector {index}")]
    VerificationFailed { index: usize },
    #[error("lattice inconsistency: {0}")]
    Lattice(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
