use thiserror::Error;

use crate::vecfield::WeightClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// `index` is zero-based; the message shows the one-based name.
    #[error("index {} out of range for n = {n}", index + 1)]
    IndexOutOfRange { index: usize, n: usize },

    #[error("indices must be distinct (both are {})", .0 + 1)]
    RepeatedIndex(usize),

    #[error("not a weight vector: components of weight {first} and {second}")]
    NotHomogeneous {
        first: WeightClass,
        second: WeightClass,
    },

    #[error("zero input is not allowed here")]
    ZeroInput,

    #[error("seed polynomial is constant")]
    ConstantSeed,

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("input of degree {degree} exceeds the cutoff {cutoff}")]
    DegreeExceedsCutoff { degree: u32, cutoff: u32 },

    #[error("element does not lie in the ambient algebra {0}")]
    NotInAmbient(String),

    #[error("affine map has a singular matrix")]
    SingularMatrix,

    #[error("triangular map on x{} must not depend on x{}", .0 + 1, .0 + 1)]
    TriangularSelfDependence(usize),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}
