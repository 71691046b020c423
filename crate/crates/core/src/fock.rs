//! State model: basic Fock states `|n_H, n_V⟩` and their superpositions at
//! fixed total photon number.
//!
//! Amplitudes are stored by the number of vertically polarized photons: the
//! amplitude at index `k` multiplies `|(n-k)_H, k_V⟩`. For `n = 2` this is the
//! usual qutrit ordering `(C₁, C₂, C₃) ↔ (|2_H⟩, |1_H 1_V⟩, |2_V⟩)`. Use
//! [`TwoModeSuperposition::amplitudes_by_nh`] for the ordering indexed by `n_H`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest total photon number accepted by the default constructors.
pub const DEFAULT_MAX_N: usize = 200;

const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeOccupation {
    pub n_h: usize,
    pub n_v: usize,
}

impl ModeOccupation {
    pub fn new(n_h: usize, n_v: usize) -> Result<Self> {
        Self::with_cap(n_h, n_v, DEFAULT_MAX_N)
    }

    /// Like [`ModeOccupation::new`] with a caller-chosen photon cap.
    pub fn with_cap(n_h: usize, n_v: usize, max_n: usize) -> Result<Self> {
        let n = n_h + n_v;
        check_photon_number(n, max_n)?;
        Ok(Self { n_h, n_v })
    }

    pub fn n(&self) -> usize {
        self.n_h + self.n_v
    }

    pub fn swapped(&self) -> Self {
        Self {
            n_h: self.n_v,
            n_v: self.n_h,
        }
    }
}

fn check_photon_number(n: usize, max_n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::NoPhotons);
    }
    if n > max_n {
        return Err(Error::PhotonLimit { n, max: max_n });
    }
    Ok(())
}

/// Normalized pure state of `n` photons distributed over the `H` and `V`
/// modes.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeSuperposition {
    n: usize,
    amplitudes: Vec<Complex64>,
    renormalized: bool,
}

impl TwoModeSuperposition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Amplitudes indexed by `n_V`.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, n_v: usize) -> Complex64 {
        self.amplitudes[n_v]
    }

    /// Amplitudes indexed by `n_H` (index reversal of the stored order).
    pub fn amplitudes_by_nh(&self) -> Vec<Complex64> {
        self.amplitudes.iter().rev().copied().collect()
    }

    /// Whether normalization changed the raw input by more than `1e-12`.
    pub fn was_renormalized(&self) -> bool {
        self.renormalized
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// The occupation of a single basic Fock state, `None` for genuine
    /// superpositions.
    pub fn as_fock(&self) -> Option<ModeOccupation> {
        let mut nonzero = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() != 0.0);
        let (n_v, _) = nonzero.next()?;
        if nonzero.next().is_some() {
            return None;
        }
        Some(ModeOccupation {
            n_h: self.n - n_v,
            n_v,
        })
    }

    /// Builds a state from amplitudes indexed by `n_H`, the ordering of a
    /// sum over `C_{n_H} |n_H, n - n_H⟩`.
    pub fn from_nh_ordered(n: usize, by_nh: &[Complex64]) -> Result<Self> {
        let by_nv: Vec<Complex64> = by_nh.iter().rev().copied().collect();
        make_superposition(n, &by_nv)
    }
}

/// The basic Fock state `|n_H, n_V⟩`.
pub fn make_fock(occ: ModeOccupation) -> Result<TwoModeSuperposition> {
    make_fock_with_cap(occ, DEFAULT_MAX_N)
}

pub fn make_fock_with_cap(occ: ModeOccupation, max_n: usize) -> Result<TwoModeSuperposition> {
    let n = occ.n();
    check_photon_number(n, max_n)?;
    let mut amplitudes = alloc::vec![Complex64::new(0.0, 0.0); n + 1];
    amplitudes[occ.n_v] = Complex64::new(1.0, 0.0);
    Ok(TwoModeSuperposition {
        n,
        amplitudes,
        renormalized: false,
    })
}

/// Normalizes `raw` (indexed by `n_V`, length `n + 1`) into a state.
pub fn make_superposition(n: usize, raw: &[Complex64]) -> Result<TwoModeSuperposition> {
    make_superposition_with_cap(n, raw, DEFAULT_MAX_N)
}

pub fn make_superposition_with_cap(
    n: usize,
    raw: &[Complex64],
    max_n: usize,
) -> Result<TwoModeSuperposition> {
    check_photon_number(n, max_n)?;
    if raw.len() != n + 1 {
        return Err(Error::LengthMismatch {
            expected: n + 1,
            found: raw.len(),
        });
    }
    if let Some(index) = raw.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::NonFiniteAmplitude { index });
    }
    // Rescale by the largest modulus first so that the sum of squares can
    // neither overflow nor underflow.
    let scale = raw.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::NullState);
    }
    let norm = libm::sqrt(raw.iter().map(|c| (c / scale).norm_sqr()).sum::<f64>()) * scale;
    let amplitudes: Vec<Complex64> = raw.iter().map(|c| c / norm).collect();
    let renormalized = raw
        .iter()
        .zip(&amplitudes)
        .any(|(a, b)| (a - b).norm() > NORM_TOLERANCE);
    Ok(TwoModeSuperposition {
        n,
        amplitudes,
        renormalized,
    })
}

/// Superposition with a Gaussian envelope over `n_V = 0..=n`: the amplitude
/// at `m` is proportional to `exp(-(m - m0)² / (2σ²))`.
pub fn gaussian_superposition(n: usize, m0: f64, sigma: f64) -> Result<TwoModeSuperposition> {
    gaussian_superposition_with_cap(n, m0, sigma, DEFAULT_MAX_N)
}

pub fn gaussian_superposition_with_cap(
    n: usize,
    m0: f64,
    sigma: f64,
    max_n: usize,
) -> Result<TwoModeSuperposition> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidSigma(sigma));
    }
    check_photon_number(n, max_n)?;
    let exponents: Vec<f64> = (0..=n)
        .map(|m| {
            let d = m as f64 - m0;
            -(d * d) / (2.0 * sigma * sigma)
        })
        .collect();
    let peak = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<Complex64> = exponents
        .iter()
        .map(|e| Complex64::new(libm::exp(e - peak), 0.0))
        .collect();
    let mut state = make_superposition_with_cap(n, &raw, max_n)?;
    state.renormalized = false;
    Ok(state)
}
