use thiserror::Error;

/// Errors raised by the algebraic and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("structure constants are not antisymmetric: c[{k}][{i}][{j}] + c[{k}][{j}][{i}] = {defect:.3e}")]
    AntisymmetryViolation {
        k: usize,
        i: usize,
        j: usize,
        defect: f64,
    },

    #[error("structure constants violate the Jacobi identity (max defect {defect:.3e})")]
    JacobiViolation { defect: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("Killing form is singular; no quadratic Casimir is available")]
    SingularKillingForm,

    #[error("algebra `{0}` has no matrix basis")]
    NoMatrixBasis(String),

    #[error("Gram matrix of the basis is singular; cannot project onto the algebra")]
    BasisGramSingular,

    #[error("non-finite value encountered in {0}")]
    NonFiniteValue(String),

    #[error("unresolvable frame field `{0}`")]
    UnresolvableFrameField(String),

    #[error(
        "point lies on a Weyl chamber wall: |B(f, alpha)| = {value:.3e} for positive root #{root}"
    )]
    WeylWallSingularity { root: usize, value: f64 },

    #[error("point is off the coadjoint orbit: Casimir {casimir:.6e}, level {level:.6e}")]
    OffOrbit { casimir: f64, level: f64 },

    #[error("algebra `{0}` is not supported here")]
    UnsupportedAlgebra(String),

    #[error("algebra is not abelian")]
    NotAbelian,

    #[error("trajectory is empty")]
    EmptyTrajectory,

    #[error("expression parse error at {pos}: {msg}")]
    ExpressionParse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

pub(crate) fn finite(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteValue(what.to_string()))
    }
}
