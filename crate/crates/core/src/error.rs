use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("table is not a latin square: {0}")]
    NotLatinSquare(String),
    #[error("no identity: {0}")]
    NoIdentity(String),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("size exceeded: {0}")]
    SizeExceeded(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("near-field axiom failed: {0}")]
    AxiomFailure(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("simultaneous diagonalization did not separate characters after {0} attempts")]
    NumericalDegeneracy(usize),
    #[error("non-integer multiplicity {value} for index {index}")]
    NonIntegerMultiplicity { index: usize, value: f64 },
    #[error("fusion coefficient N[{0}][{1}][{2}] = {3} is negative or not an integer")]
    NegativeOrNonInteger(usize, usize, usize, f64),
    #[error("cocycle identity fails at ({0}, {1}, {2})")]
    CocycleIdentityFailure(usize, usize, usize),
    #[error("near-field is not a field")]
    NotAField,
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("table is not bimultiplicative at ({0}, {1}, {2})")]
    NotBimultiplicative(usize, usize, usize),
    #[error("cocycle and subgroup do not match")]
    SubgroupMismatch,
    #[error("equivalence conditions and tunneling matrix disagree: {0}")]
    ConditionMismatch(String),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("patch needs {0} amplitudes, above the cap of 2^22")]
    DimensionCap(u128),
    #[error("projector pass returned a zero vector after {0} attempts")]
    ZeroProjection(usize),
    #[error("invalid ribbon: {0}")]
    InvalidRibbon(String),
    #[error("element {0} is not in the boundary subgroup")]
    NotInSubgroup(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
