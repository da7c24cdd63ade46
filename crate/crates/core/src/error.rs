use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("index {index} out of range for lattice with {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operands live on different lattices")]
    LatticeMismatch,
    #[error("grid function has {got} values, lattice has {expected} points")]
    LengthMismatch { expected: usize, got: usize },
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("margin {margin} leaves no interior rows on a lattice with {n_points} points")]
    MarginTooLarge { margin: usize, n_points: usize },
    #[error("lattice too small: {0}")]
    LatticeTooSmall(String),
    #[error("eigenvalue outside lattice band: |a*x| = {0} > 1")]
    OutsideBand(f64),
    #[error("degenerate denominator: {0}")]
    Degenerate(String),
    #[error("cannot normalise the zero vector")]
    ZeroVector,
    #[error("invalid convergence scan: {0}")]
    InvalidScan(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("exponent {0} exceeds the limit of 16")]
    ExponentTooLarge(u32),
    #[error("division by a non-scalar or non-monomial expression")]
    NonScalarDivision,
    #[error("malformed csv: {0}")]
    Csv(String),
}
