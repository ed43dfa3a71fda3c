use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("incompatible field content: {0}")]
    ContentMismatch(String),

    #[error("species index {index} out of range (have {count})")]
    SpeciesOutOfRange { index: usize, count: usize },

    #[error("index {index} has the wrong lattice for {what}")]
    IndexLattice { what: String, index: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("matrix is not Hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),

    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),

    #[error("bilinear form is not invariant on ({0}, {1}, {2})")]
    NonInvariantForm(String, String, String),

    #[error("bilinear form is not supersymmetric on ({0}, {1})")]
    FormSymmetry(String, String),

    #[error("bracket table inconsistent on ({0}, {1})")]
    BracketSymmetry(String, String),

    #[error("missing sl2 triple data: {0}")]
    MissingTriple(String),

    #[error("gradation is not minimal: {0}")]
    NonMinimalGradation(String),

    #[error("form restricted to the centralizer is degenerate")]
    DegenerateRestriction,

    #[error("Casimir operator is not scalar on the adjoint representation")]
    NonScalarCasimir,

    #[error("level k = {0} is critical")]
    CriticalLevel(String),

    #[error("argument outside the declared subspace: {0}")]
    Subspace(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("power iteration did not converge after {0} steps")]
    NoConvergence(usize),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
