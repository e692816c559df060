use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("half-dimension must be positive")]
    ZeroDimension,

    #[error("half-dimension {0} outside supported range {1}..={2}")]
    DimensionOutOfRange(usize, usize, usize),

    #[error("signature ({plus},{minus}) does not describe a {dim}-dimensional space")]
    SignatureMismatch { plus: usize, minus: usize, dim: usize },

    #[error("spinor has {got} components, representation expects {expected}")]
    SpinorLength { expected: usize, got: usize },

    #[error("spinor norm {norm:e} is below tolerance {tol:e}")]
    ZeroSpinor { norm: f64, tol: f64 },

    #[error("spinor is not {0:?}-chiral within tolerance (residual {1:e})")]
    ChiralityViolation(crate::spinor::Chirality, f64),

    #[error("operation requires a chiral (Weyl) spinor")]
    ChiralityRequired,

    #[error(
        "kernel rank is ambiguous: relative singular value {singular_value:e} lies in the \
         guard band [{tol:e}, {upper:e}]"
    )]
    AmbiguousRank {
        singular_value: f64,
        tol: f64,
        upper: f64,
    },

    #[error("representation has no timelike generator")]
    NoTimelikeGenerator,

    #[error("operation requires a {expected}-dimensional vector space, got {got}")]
    VectorDimension { expected: usize, got: usize },

    #[error("bilinear has an imaginary residue {residue:e} above tolerance {tol:e}")]
    ImaginaryResidue { residue: f64, tol: f64 },

    #[error("momentum is not null: p^2 = {square:e}")]
    NotNull { square: f64 },

    #[error("two-component spinor is zero")]
    ZeroTwoSpinor,

    #[error("quadrature did not reach tolerance {tol:e} after {levels} refinements (last change {change:e})")]
    QuadratureNonConvergence { tol: f64, levels: u32, change: f64 },

    #[error("grid size {grid} is too coarse for {probes} probe levels (need at least {needed})")]
    GridTooCoarse {
        grid: usize,
        probes: usize,
        needed: usize,
    },

    #[error("eigen-solver failed: {0}")]
    EigenSolver(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not available with provenance {1}")]
    UnsupportedVolume(String, String),
}
