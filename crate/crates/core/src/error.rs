use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot invert a zero scalar")]
    DegenerateScalar,
    #[error("root of unity of order zero")]
    ZeroOrder,
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("invalid ring specification: {0}")]
    InvalidRing(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("the quadratic character is undefined at zero")]
    ZeroCharacter,
    #[error("{what} has {size} elements, above the limit of {limit}")]
    SizeGuard { what: String, size: u128, limit: u128 },
    #[error("operation requires a {expected} ring")]
    WrongVariant { expected: &'static str },
    #[error("elements are not coprime or do not star-commute")]
    NotCoprime,
    #[error("no symmetric unit shift exists for the given pair")]
    NoShift,
    #[error("element is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("matrix is not in {0}")]
    NotInGroup(&'static str),
    #[error("group closure exceeded the limit of {0} elements")]
    LimitExceeded(usize),
    #[error("Weil constructions need odd m and the x -> -x involution (m = {m}, involution = {involution})")]
    WeilPrecondition { m: usize, involution: String },
    #[error("fiber functions live over different Lagrangians ({0} vs {1})")]
    LagrangianMismatch(usize, usize),
    #[error("operational cocycle residual {0:.3e} exceeds threshold")]
    CocycleResidual(f64),
    #[error("malformed literal: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
