//! Spectra of reduced density matrices and the entanglement measures built
//! on them.
//!
//! Basic Fock states have block-diagonal reductions whose eigenvalues are
//! hypergeometric probabilities, available here as exact rationals through
//! [`analytic_fock_eigenvalues`]. Superpositions go through the numerical
//! path: [`hermitian_eigenvalues`] on the compressed reduced matrix.

pub mod jacobi;

use alloc::vec::Vec;

use crate::density::{compressed_hermitian, reduced_density, CompressedHermitian};
use crate::fock::{gaussian_superposition, ModeOccupation, TwoModeSuperposition};
use crate::rational::{binomial, falling_factorial_int, ExactNonnegativeRational};
use crate::{Error, Result};

/// Inputs further than this from Hermitian are rejected.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
/// Negative eigenvalues smaller in magnitude than this are clamped to zero.
pub const NEGATIVE_CLAMP_LIMIT: f64 = 1e-8;
/// A minimum of `K` this close to one counts as a product state.
pub const DISENTANGLED_THRESHOLD: f64 = 1e-6;
/// Resolution of the `σ` search in [`find_min_k_sigma`].
pub const SIGMA_TOLERANCE: f64 = 1e-7;
const COARSE_SCAN_POINTS: usize = 200;

/// Descending eigenvalues of a reduced density matrix with the Schmidt
/// parameter `K = 1/Σλ²` and the entropy `S = -Σ λ log₂ λ` in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub k: f64,
    pub s: f64,
}

impl Spectrum {
    /// Sorts descending and clamps roundoff-level negative values to zero.
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> Result<Self> {
        for x in eigenvalues.iter_mut() {
            if *x < 0.0 {
                if *x < -NEGATIVE_CLAMP_LIMIT {
                    return Err(Error::NegativeEigenvalue(*x));
                }
                *x = 0.0;
            }
        }
        jacobi::sort_descending(&mut eigenvalues);
        let k = schmidt_k(&eigenvalues);
        let s = entropy(&eigenvalues);
        Ok(Self { eigenvalues, k, s })
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Count of eigenvalues above `threshold`.
    pub fn rank(&self, threshold: f64) -> usize {
        self.eigenvalues.iter().filter(|&&x| x > threshold).count()
    }
}

/// Numerical spectrum of a compressed reduced density matrix.
pub fn hermitian_eigenvalues(b: &CompressedHermitian) -> Result<Spectrum> {
    let deviation = b.hermiticity_defect();
    if deviation.is_nan() || deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let values = jacobi::hermitian_eigenvalues_raw(b.entries(), b.dim())?;
    Spectrum::from_eigenvalues(values)
}

/// Numerical spectrum of `state` reduced to `m` photon variables.
pub fn reduced_spectrum(state: &TwoModeSuperposition, m: usize) -> Result<Spectrum> {
    hermitian_eigenvalues(&compressed_hermitian(&reduced_density(state, m)?))
}

pub fn schmidt_k(eigenvalues: &[f64]) -> f64 {
    1.0 / eigenvalues.iter().map(|x| x * x).sum::<f64>()
}

/// Von Neumann entropy in bits, with `0 log 0 = 0`.
pub fn entropy(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * libm::log2(x))
        .sum();
    // -0.0 for a pure state
    s.max(0.0)
}

/// Exact eigenvalues of the order-`m` reduction of `|n_H, n_V⟩`:
///
/// `λ_k = (n-m)!/n! · C(m,k) · n_H!/(n_H-m+k)! · n_V!/(n_V-k)!`
///
/// for `max(m - n_H, 0) ≤ k ≤ min(n_V, m)`. These are the hypergeometric
/// probabilities of finding `k` V-photons among `m` drawn from `n`.
pub fn analytic_fock_eigenvalues(
    occ: ModeOccupation,
    m: usize,
) -> Result<Vec<(usize, ExactNonnegativeRational)>> {
    let n = occ.n();
    if m == 0 || m > n {
        return Err(Error::ReductionOrder { m, n });
    }
    let prefactor = ExactNonnegativeRational::from_integer(falling_factorial_int(n, m)?).recip();
    let lo = m.saturating_sub(occ.n_h);
    let hi = occ.n_v.min(m);
    (lo..=hi)
        .map(|k| {
            let weight = binomial(m, k)
                * falling_factorial_int(occ.n_h, m - k)?
                * falling_factorial_int(occ.n_v, k)?;
            Ok((k, &prefactor * &ExactNonnegativeRational::from_integer(weight)))
        })
        .collect()
}

/// [`analytic_fock_eigenvalues`] as a floating-point [`Spectrum`].
pub fn analytic_fock_spectrum(occ: ModeOccupation, m: usize) -> Result<Spectrum> {
    let values = analytic_fock_eigenvalues(occ, m)?
        .into_iter()
        .map(|(_, x)| x.to_f64())
        .collect();
    Spectrum::from_eigenvalues(values)
}

/// `K = 1/Σλ²` of the exact Fock spectrum, as a rational.
pub fn exact_fock_k(occ: ModeOccupation, m: usize) -> Result<ExactNonnegativeRational> {
    let purity: ExactNonnegativeRational = analytic_fock_eigenvalues(occ, m)?
        .into_iter()
        .map(|(_, x)| &x * &x)
        .sum();
    Ok(purity.recip())
}

/// `K` of the single-photon reduction of `|n_H, n_V⟩`:
/// `(n_H + n_V)² / (n_H² + n_V²)`.
pub fn single_photon_k(occ: ModeOccupation) -> ExactNonnegativeRational {
    let (h, v) = (occ.n_h as u64, occ.n_v as u64);
    ExactNonnegativeRational::new((h + v) * (h + v), h * h + v * v)
}

/// Qutrit concurrence `|2 C₁ C₃ - C₂²|` with `(C₁, C₂, C₃)` the amplitudes of
/// `|2_H⟩, |1_H 1_V⟩, |2_V⟩`.
pub fn concurrence(qutrit: &TwoModeSuperposition) -> Result<f64> {
    if qutrit.n() != 2 {
        return Err(Error::NotQutrit(qutrit.n()));
    }
    let c = qutrit.amplitudes();
    Ok((c[0] * c[2] * 2.0 - c[1] * c[1]).norm())
}

/// Concurrence implied by a Schmidt parameter: `√(2(1 - 1/K))`.
pub fn concurrence_from_k(k: f64) -> f64 {
    libm::sqrt((2.0 * (1.0 - 1.0 / k)).max(0.0))
}

/// Power-law fit `0.62 + n^0.54` to `K(n)` of balanced states split in
/// halves.
pub fn k_approx(n: usize) -> f64 {
    0.62 + libm::pow(n as f64, 0.54)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaScanPoint {
    pub sigma: f64,
    pub k: f64,
}

/// `K` of the order-`m` reduction of the Gaussian superposition
/// `(n, m0, σ)`.
pub fn gaussian_k(n: usize, m0: f64, m: usize, sigma: f64) -> Result<f64> {
    let state = gaussian_superposition(n, m0, sigma)?;
    Ok(reduced_spectrum(&state, m)?.k)
}

pub fn sigma_scan(n: usize, m0: f64, m: usize, sigmas: &[f64]) -> Result<Vec<SigmaScanPoint>> {
    check_grid(sigmas)?;
    if m == 0 || m > n {
        return Err(Error::ReductionOrder { m, n });
    }
    sigmas
        .iter()
        .map(|&sigma| Ok(SigmaScanPoint { sigma, k: gaussian_k(n, m0, m, sigma)? }))
        .collect()
}

pub(crate) fn check_grid(sigmas: &[f64]) -> Result<()> {
    let positive = sigmas.iter().all(|s| s.is_finite() && *s > 0.0);
    let increasing = sigmas.windows(2).all(|w| w[0] < w[1]);
    if sigmas.is_empty() || !positive || !increasing {
        return Err(Error::InvalidGrid);
    }
    Ok(())
}

/// Location and depth of the minimum of `K(σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaMinimum {
    pub sigma: f64,
    pub k: f64,
}

impl SigmaMinimum {
    /// `K` returns to one within [`DISENTANGLED_THRESHOLD`].
    pub fn reached_one(&self) -> bool {
        self.k <= 1.0 + DISENTANGLED_THRESHOLD
    }
}

/// Finds the width `σ` at which the Gaussian superposition is least
/// entangled.
///
/// A coarse scan over `bracket` picks the deepest interior local minimum of
/// `K`; golden-section search then narrows it to [`SIGMA_TOLERANCE`]. Plateaus
/// (e.g. `K = 1` exactly as `σ → 0` for edge-centered envelopes) are not
/// local minima.
pub fn find_min_k_sigma(n: usize, m0: f64, m: usize, bracket: (f64, f64)) -> Result<SigmaMinimum> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidGrid);
    }
    let step = (hi - lo) / (COARSE_SCAN_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..COARSE_SCAN_POINTS)
        .map(|i| lo + step * i as f64)
        .collect();
    let scan = sigma_scan(n, m0, m, &grid)?;

    let best = (1..scan.len() - 1)
        .filter(|&i| scan[i].k < scan[i - 1].k && scan[i].k <= scan[i + 1].k)
        .min_by(|&a, &b| scan[a].k.total_cmp(&scan[b].k));
    let Some(i) = best else {
        return Err(Error::NoInteriorMinimum { scan });
    };

    let f = |sigma: f64| gaussian_k(n, m0, m, sigma);
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let (mut a, mut b) = (scan[i - 1].sigma, scan[i + 1].sigma);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > SIGMA_TOLERANCE {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2)?;
        }
    }
    let (sigma, k) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    let (sigma, k) = if scan[i].k < k { (scan[i].sigma, scan[i].k) } else { (sigma, k) };
    Ok(SigmaMinimum { sigma, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_fock, make_superposition};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn occ(h: usize, v: usize) -> ModeOccupation {
        ModeOccupation::new(h, v).unwrap()
    }

    fn r(p: u64, q: u64) -> ExactNonnegativeRational {
        ExactNonnegativeRational::new(p, q)
    }

    fn sigma0() -> f64 {
        1.0 / libm::sqrt(core::f64::consts::LN_2)
    }

    #[test]
    fn balanced_four_photon_eigenvalues() {
        let ev = analytic_fock_eigenvalues(occ(2, 2), 2).unwrap();
        assert_eq!(ev, [(0, r(1, 6)), (1, r(2, 3)), (2, r(1, 6))]);
        assert_eq!(exact_fock_k(occ(2, 2), 2).unwrap(), r(2, 1));
    }

    #[test]
    fn balanced_eight_photon_eigenvalues_are_hypergeometric() {
        // C(4,k) C(4,4-k) / C(8,4)
        let ev: Vec<_> = analytic_fock_eigenvalues(occ(4, 4), 4)
            .unwrap()
            .into_iter()
            .map(|(_, x)| x)
            .collect();
        assert_eq!(ev, [r(1, 70), r(8, 35), r(18, 35), r(8, 35), r(1, 70)]);
    }

    #[test]
    fn full_order_is_pure() {
        for (h, v) in [(3, 0), (2, 5), (0, 1), (7, 7)] {
            let ev = analytic_fock_eigenvalues(occ(h, v), h + v).unwrap();
            assert_eq!(ev, [(v, r(1, 1))]);
        }
    }

    #[test]
    fn analytic_order_out_of_range() {
        assert_eq!(
            analytic_fock_eigenvalues(occ(1, 1), 3),
            Err(Error::ReductionOrder { m: 3, n: 2 })
        );
        assert!(analytic_fock_eigenvalues(occ(1, 1), 0).is_err());
    }

    #[test]
    fn measures_of_small_spectra() {
        let ev = [2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0];
        assert_abs_diff_eq!(schmidt_k(&ev), 2.0, epsilon = 1e-14);
        let s_expected = libm::log2(6.0) / 3.0 + 2.0 / 3.0 * libm::log2(1.5);
        assert_abs_diff_eq!(entropy(&ev), s_expected, epsilon = 1e-14);
        assert_abs_diff_eq!(entropy(&ev), 1.2516291673878228, epsilon = 1e-14);
        assert_eq!(schmidt_k(&[1.0]), 1.0);
        assert_eq!(entropy(&[1.0, 0.0]), 0.0);
    }

    #[test]
    fn numerical_matches_analytic_for_small_fock_state() {
        let s = make_fock(occ(2, 2)).unwrap();
        let spec = reduced_spectrum(&s, 2).unwrap();
        assert_abs_diff_eq!(spec.eigenvalues[0], 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.eigenvalues[1], 1.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.eigenvalues[2], 1.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.k, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn single_photon_k_values() {
        assert_eq!(single_photon_k(occ(1, 2)), r(9, 5));
        for k in 1..20 {
            assert_eq!(single_photon_k(occ(k, k)), r(2, 1));
        }
        assert_eq!(single_photon_k(occ(7, 0)), r(1, 1));
        for (h, v) in [(1, 2), (3, 5), (10, 1)] {
            assert_eq!(exact_fock_k(occ(h, v), 1).unwrap(), single_photon_k(occ(h, v)));
        }
    }

    #[test]
    fn concurrence_examples() {
        let c = |re: f64| Complex64::new(re, 0.0);
        let sep = make_superposition(2, &[c(1.0), c(0.0), c(0.0)]).unwrap();
        assert_eq!(concurrence(&sep).unwrap(), 0.0);

        let h = core::f64::consts::FRAC_1_SQRT_2;
        let bell = make_superposition(2, &[c(h), c(0.0), c(h)]).unwrap();
        assert_abs_diff_eq!(concurrence(&bell).unwrap(), 1.0, epsilon = 1e-15);
        let k = reduced_spectrum(&bell, 1).unwrap().k;
        assert_abs_diff_eq!(k, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(concurrence_from_k(k), 1.0, epsilon = 1e-7);

        let g = gaussian_superposition(2, 1.0, sigma0()).unwrap();
        assert_abs_diff_eq!(concurrence(&g).unwrap(), 0.0, epsilon = 1e-15);

        let three = make_fock(occ(2, 1)).unwrap();
        assert_eq!(concurrence(&three), Err(Error::NotQutrit(3)));
    }

    #[test]
    fn k_approx_values() {
        // 0.62 + n^0.54 evaluated with exp/ln independently.
        for n in [2usize, 4, 100] {
            let direct = 0.62 + libm::exp(0.54 * libm::log(n as f64));
            assert_abs_diff_eq!(k_approx(n), direct, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(k_approx(4), 2.735, epsilon = 1e-3);
        assert_abs_diff_eq!(k_approx(100), 12.643, epsilon = 1e-3);
        assert_abs_diff_eq!(k_approx(2), 2.074, epsilon = 1e-3);
    }

    #[test]
    fn sigma_scan_small_width_limits() {
        let scan = sigma_scan(6, 3.0, 1, &[0.05]).unwrap();
        assert_abs_diff_eq!(scan[0].k, 2.0, epsilon = 1e-12);
        let scan = sigma_scan(6, 0.0, 1, &[0.05]).unwrap();
        assert_abs_diff_eq!(scan[0].k, 1.0, epsilon = 1e-12);
        let scan = sigma_scan(2, 1.0, 1, &[sigma0()]).unwrap();
        assert_abs_diff_eq!(scan[0].k, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn sigma_scan_rejects_bad_grids() {
        assert_eq!(sigma_scan(2, 1.0, 1, &[]), Err(Error::InvalidGrid));
        assert_eq!(sigma_scan(2, 1.0, 1, &[0.5, 0.5]), Err(Error::InvalidGrid));
        assert_eq!(sigma_scan(2, 1.0, 1, &[-0.5, 0.5]), Err(Error::InvalidGrid));
        assert_eq!(sigma_scan(2, 1.0, 3, &[0.5]), Err(Error::ReductionOrder { m: 3, n: 2 }));
    }

    #[test]
    fn two_photon_disentangling_width() {
        for m0 in [0.0, 1.0] {
            let min = find_min_k_sigma(2, m0, 1, (0.3, 5.0)).unwrap();
            assert!((min.sigma - sigma0()).abs() < 1e-6, "m0 = {m0}: {}", min.sigma);
            assert!((min.k - 1.0).abs() < 1e-9);
            assert!(min.reached_one());
        }
    }

    #[test]
    fn no_interior_minimum_reports_scan() {
        // Below σ₀ a centered two-photon envelope only loses entanglement
        // as σ grows.
        match find_min_k_sigma(2, 1.0, 1, (0.3, 0.9)) {
            Err(Error::NoInteriorMinimum { scan }) => assert_eq!(scan.len(), 200),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let e = alloc::vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(0.1, 0.0),
            Complex64::new(0.3, 0.0),
            Complex64::new(0.5, 0.0),
        ];
        let b = CompressedHermitian::from_entries(1, e).unwrap();
        assert!(matches!(hermitian_eigenvalues(&b), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn negative_eigenvalues_beyond_roundoff_are_errors() {
        assert_eq!(
            Spectrum::from_eigenvalues(alloc::vec![1.1, -0.1]),
            Err(Error::NegativeEigenvalue(-0.1))
        );
        let s = Spectrum::from_eigenvalues(alloc::vec![-1e-14, 1.0]).unwrap();
        assert_eq!(s.eigenvalues, [1.0, 0.0]);
    }
}
