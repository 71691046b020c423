//! Density matrices and entanglement of two-mode polarization Fock states.
//!
//! An `n`-photon state with all photons in one frequency and propagation
//! direction lives in the span of the basic Fock states `|n_H, n_V⟩`. This
//! crate builds the density matrices of such states from normally ordered
//! correlators, reduces them over `n - m` photon variables, and extracts the
//! spectra and entanglement measures (Schmidt parameter `K`, entropy `S`,
//! qutrit concurrence) of the reduced states.
//!
//! Every entry of the `2^m × 2^m` reduced matrix depends only on the number
//! of `V` labels in its row and column bitstrings, so production code works
//! with an `(m+1)`-dimensional compressed Hermitian matrix that has the same
//! nonzero spectrum. The full matrix is still available for small `m`, and
//! the [`oracle`] module carries independent brute-force reference
//! implementations used by the tests and by the `verify` command of the CLI.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]
#![deny(rust_2018_idioms)]

extern crate alloc;

pub mod correlators;
pub mod density;
pub mod error;
pub mod fock;
pub mod oracle;
pub mod rational;
pub mod spectrum;

pub use num_complex::Complex64;

pub use correlators::{correlator, correlator_table, CorrelatorSpec, CorrelatorTable};
pub use density::{
    compressed_hermitian, full_matrix, klyshko_compaction, pure_coherence, reduced_density,
    CompressedHermitian, FullMatrix, ReducedDensity,
};
pub use error::Error;
pub use fock::{
    gaussian_superposition, make_fock, make_superposition, ModeOccupation, TwoModeSuperposition,
    DEFAULT_MAX_N,
};
pub use rational::{binomial, falling_factorial, ExactNonnegativeRational};
pub use spectrum::{
    analytic_fock_eigenvalues, concurrence, entropy, find_min_k_sigma, hermitian_eigenvalues,
    k_approx, schmidt_k, sigma_scan, single_photon_k, SigmaMinimum, SigmaScanPoint, Spectrum,
};

pub type Result<T> = core::result::Result<T, Error>;

/// Crate version, echoed in CLI run reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
