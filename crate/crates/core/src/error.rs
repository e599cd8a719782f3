use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("generating set has rank {rank} < {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("ambient ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("{0} is not prime")]
    Composite(u64),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has a repeated factor")]
    NotSquarefree,
    #[error("polynomial is reducible over Q")]
    Reducible,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrices do not commute")]
    NonCommuting,
    #[error("relation alpha = gamma * alpha^kappa * gamma^-1 fails")]
    RelationFails,
    #[error("could not factor {0} by trial division")]
    Unfactored(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("unit vector is not a two-sided identity")]
    BadUnit,
    #[error("generator {0} is not a regular element")]
    NonRegular(usize),
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("lattice is not constructible at depth {0}")]
    NotConstructible(usize),
    #[error("quotient of size {0} is too large to materialize")]
    TooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
