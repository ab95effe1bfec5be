//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symplectic (residual {residual:.3e})")]
    NotSymplectic { residual: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("matrix is not in the passive block form (residual {residual:.3e})")]
    NotPassiveBlockForm { residual: f64 },

    #[error("matrix is not symmetric (residual {residual:.3e})")]
    NotSymmetric { residual: f64 },

    #[error("matrix is not positive definite (least eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("invalid class label (a = {a}, b = {b}): need a >= b >= 0 and finite")]
    InvalidClassLabel { a: f64, b: f64 },

    #[error("identity class: operation undefined for the no-squeeze label")]
    IdentityClass,

    #[error("squeeze vectors are both zero")]
    ZeroSqueezeVectors,

    #[error("mode weights are not normalized (|alpha|^2 + |beta|^2 = {norm_sq})")]
    UnnormalizedModeWeights { norm_sq: f64 },

    #[error("inverse temperature must be positive (beta = {beta})")]
    NonPositiveBeta { beta: f64 },

    #[error("determinant is not 1 (got {det_re} + {det_im}i)")]
    NotSpecialUnitary { det_re: f64, det_im: f64 },

    #[error("need at least {min} scan samples (got {got})")]
    TooFewSamples { got: usize, min: usize },

    #[error("input contains non-finite entries")]
    NonFinite,

    #[error("matrix exponential overflowed (input norm {norm:.3e})")]
    Overflow { norm: f64 },

    #[error("singular linear system")]
    Singular,
}
