use std::fmt;

use thiserror::Error;

use crate::degree::DegreeVector;

/// Problems reading textual or JSON input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown field {0:?}, expected \"q\" or {{\"fp\": p}}")]
    FieldName(String),
    #[error("cannot parse scalar {0:?}")]
    Scalar(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("cannot parse degree {0:?}")]
    Degree(String),
}

/// A single violated presentation invariant, with coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Nonzero entry whose column degree is not above its row degree.
    Homogeneity { t: usize, j: usize },
    /// Nonzero entry of degree zero, i.e. a unit in the presentation matrix.
    NonMinimal { t: usize, j: usize },
    ZeroColumn { j: usize },
    DimensionMismatch(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Homogeneity { t, j } => write!(f, "Homogeneity({t},{j})"),
            Violation::NonMinimal { t, j } => write!(f, "NonMinimal({t},{j})"),
            Violation::ZeroColumn { j } => write!(f, "ZeroColumn({j})"),
            Violation::DimensionMismatch(what) => write!(f, "DimensionMismatch({what})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid presentation: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("negative degree coordinates in {0}; shift the presentation first")]
    NegativeDegrees(DegreeVector),
    #[error("computed beta_0 = {beta0}, beta_1 = {beta1} but the presentation has {rows} rows and {cols} columns; the presentation is not minimal")]
    MinimalityBroken { beta0: u64, beta1: u64, rows: usize, cols: usize },
    #[error("homological index {i} is below {min}")]
    IndexTooSmall { i: usize, min: usize },
    #[error("ground set of size {n} exceeds the enumeration cap {max}")]
    GroundSetTooLarge { n: usize, max: usize },
    #[error("index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{vars} variables exceed the cap {max}")]
    TooManyVariables { vars: usize, max: usize },
    #[error("degree box of {size} points exceeds the cap {max}")]
    BoxTooLarge { size: u128, max: u128 },
    #[error("field {field} has too few elements for {nodes} distinct nodes")]
    FieldTooSmall { field: String, nodes: usize },
    #[error("invalid construction parameters: {0}")]
    BadSpec(String),
    #[error("coefficient matroid is not uniform: columns {0:?} are dependent")]
    NotUniform(Vec<usize>),
    #[error("degree {b} violates 0 <= b <= a*supp(b) for a = {a}")]
    ConstraintViolated { a: DegreeVector, b: DegreeVector },
    #[error("generator {gen} does not divide x^{a}")]
    GeneratorExceedsA { gen: DegreeVector, a: DegreeVector },
    #[error("degree {0} has the wrong number of coordinates")]
    DegreeLength(DegreeVector),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
