use alloc::vec::Vec;

use thiserror::Error;

use crate::spectrum::SigmaScanPoint;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state has no photons")]
    NoPhotons,
    #[error("photon number {n} exceeds the supported maximum {max}")]
    PhotonLimit { n: usize, max: usize },
    #[error("null state: all amplitudes are zero")]
    NullState,
    #[error("amplitude is not finite at index {index}")]
    NonFiniteAmplitude { index: usize },
    #[error("expected {expected} amplitudes, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("gaussian width must be positive and finite, got {0}")]
    InvalidSigma(f64),
    #[error("falling factorial {a}!/({a}-{k})! requires k <= a")]
    FallingFactorialRange { a: usize, k: usize },
    #[error("reduction order m = {m} outside 1..={n}")]
    ReductionOrder { m: usize, n: usize },
    #[error("full 2^m matrix requested for m = {m}; use the compressed form above m = {max}")]
    FullMatrixTooLarge { m: usize, max: usize },
    #[error("matrix order {found} where {expected} is required")]
    WrongOrder { expected: usize, found: usize },
    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("eigenvalue {0:e} is too negative to be roundoff")]
    NegativeEigenvalue(f64),
    #[error("concurrence is defined for n = 2 only, got n = {0}")]
    NotQutrit(usize),
    #[error("sigma grid must be non-empty, strictly positive and strictly increasing")]
    InvalidGrid,
    #[error("no interior minimum of K in the bracket ({} scan points)", scan.len())]
    NoInteriorMinimum { scan: Vec<SigmaScanPoint> },
    #[error("oracle size n = {n} exceeds the cap {max}")]
    OracleTooLarge { n: usize, max: usize },
    #[error("invalid traced subset")]
    InvalidSubset,
}
