use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is out of range 1..={m}")]
    VertexOutOfRange { vertex: i64, m: usize },

    #[error("a complex needs at least one vertex or one face")]
    EmptyComplex,

    #[error("{m} vertices requested but faces are stored as 64-bit masks (at most {max})", max = crate::complex::MAX_VERTICES)]
    TooManyVertices { m: usize },

    #[error("vertex subset must be nonempty and contained in 1..={m}")]
    InvalidSubset { m: usize },

    #[error("not the dual boundary complex of a simple {n}-polytope: {reason}")]
    InvalidPolytope { n: usize, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("characteristic matrix is singular on face {face:?} (minor {det})")]
    InvalidCharacteristic { face: Vec<usize>, det: String },

    #[error("boundary maps do not compose to zero between degrees {degree} and {}", degree - 1)]
    MalformedChainComplex { degree: i64 },

    #[error("{m} vertices exceeds the subset-enumeration cap of {cap}; pass an explicit override")]
    CapExceeded { m: usize, cap: usize },

    #[error("{0} is not an odd prime (the splitting needs p - 1 >= 2 distinct eigenvalues mod p)")]
    NotOddPrime(u64),

    #[error("p = {p} does not exceed n = {n}; use the general splitting instead")]
    PrimeTooSmall { p: u64, n: usize },

    #[error("{u} is not a primitive root modulo {p}")]
    NotPrimitiveRoot { u: i64, p: u64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("malformed parameters: {0}")]
    InvalidParameters(String),

    #[error("unsupported coefficients {0}")]
    UnsupportedCoefficients(String),

    /// A computed invariant contradicts a theorem; either the input violates a
    /// precondition that was not checked or there is a bug.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalConsistency(_))
    }
}
