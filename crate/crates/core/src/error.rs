use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("galois exponent {k} is not coprime to conductor {n}")]
    GaloisNotCoprime { k: i64, n: u32 },
    #[error("value does not lie in the cyclotomic field of conductor {0}")]
    NotInSubfield(u32),
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("orbit size exceeded the cap of {0}")]
    OrbitCapExceeded(usize),
    #[error("enumeration cap of {0} elements exceeded")]
    EnumerationCapExceeded(u128),
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("vector does not stay inside the group's point set")]
    NotAPointPermutation,
    #[error("unknown group name: {0}")]
    UnknownGroup(String),
    #[error("cannot parse group name `{0}`: {1}")]
    ParseError(String, String),
    #[error("invalid constructor data: {0}")]
    InvalidConstruction(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("assembly data invalid: {0}")]
    InvalidAssembly(String),
    #[error("group is not a reflection-rotation group")]
    NotReflectionRotation,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
