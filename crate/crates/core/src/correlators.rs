//! Normally ordered correlators
//! `⟨(a_H†)^{p_H} (a_V†)^{p_V} a_H^{q_H} a_V^{q_V}⟩` of fixed-`n` states, and
//! the `(m+1) × (m+1)` tables of them that make up reduced density matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::fock::TwoModeSuperposition;
use crate::rational::{binomial_row, falling_factorial_int};
use crate::{Error, Result};

/// Above this photon number the falling-factorial weights of a single
/// correlator are accumulated as logarithms.
const EXACT_FACTOR_MAX_N: usize = 30;

/// Powers of the operator string `(a_H†)^{p_H} (a_V†)^{p_V} a_H^{q_H} a_V^{q_V}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CorrelatorSpec {
    pub p_h: usize,
    pub p_v: usize,
    pub q_h: usize,
    pub q_v: usize,
}

impl CorrelatorSpec {
    pub fn new(p_h: usize, p_v: usize, q_h: usize, q_v: usize) -> Self {
        Self { p_h, p_v, q_h, q_v }
    }

    /// Entry `(k₂, k₁)` of an order-`m` table: row `k₂` fixes the creation
    /// powers, column `k₁` the annihilation powers.
    pub fn table_entry(m: usize, k2: usize, k1: usize) -> Self {
        Self::new(m - k2, k2, m - k1, k1)
    }

    pub fn is_balanced(&self) -> bool {
        self.p_h + self.p_v == self.q_h + self.q_v
    }

    /// The spec of the Hermitian-conjugate operator string.
    pub fn adjoint(&self) -> Self {
        Self::new(self.q_h, self.q_v, self.p_h, self.p_v)
    }
}

/// `⟨Ψ| (a_H†)^{p_H} (a_V†)^{p_V} a_H^{q_H} a_V^{q_V} |Ψ⟩`.
///
/// Unbalanced strings change the photon number and give exactly zero on a
/// fixed-`n` state.
pub fn correlator(state: &TwoModeSuperposition, spec: CorrelatorSpec) -> Complex64 {
    let mut acc = Complex64::zero();
    if !spec.is_balanced() {
        return acc;
    }
    let n = state.n();
    let amps = state.amplitudes();
    for (k, &ket) in amps.iter().enumerate() {
        let (ket_h, ket_v) = (n - k, k);
        if ket == Complex64::zero() || spec.q_h > ket_h || spec.q_v > ket_v {
            continue;
        }
        // n_V of the bra after the annihilators and creators act.
        let j = ket_v - spec.q_v + spec.p_v;
        if j > n {
            continue;
        }
        let bra = amps[j];
        if bra == Complex64::zero() {
            continue;
        }
        let (bra_h, bra_v) = (n - j, j);
        let factors = [
            (ket_h, spec.q_h),
            (ket_v, spec.q_v),
            (bra_h, spec.p_h),
            (bra_v, spec.p_v),
        ];
        acc += bra.conj() * ket * ladder_weight(n, &factors);
    }
    acc
}

/// `√(Π a!/(a-k)!)` over the given `(a, k)` pairs, all with `k ≤ a`.
fn ladder_weight(n: usize, factors: &[(usize, usize)]) -> f64 {
    if n <= EXACT_FACTOR_MAX_N {
        let product: BigUint = factors
            .iter()
            .map(|&(a, k)| falling_factorial_int(a, k).expect("k <= a checked by caller"))
            .product();
        libm::sqrt(product.to_f64().unwrap_or(f64::INFINITY))
    } else {
        let log: f64 = factors
            .iter()
            .map(|&(a, k)| ((a - k + 1)..=a).map(|i| libm::log(i as f64)).sum::<f64>())
            .sum();
        libm::exp(0.5 * log)
    }
}

/// Correlators `A[k₂][k₁] = ⟨(a_H†)^{m-k₂} (a_V†)^{k₂} a_H^{m-k₁} a_V^{k₁}⟩`
/// for `0 ≤ k₁, k₂ ≤ m`.
///
/// The raw entries grow like `n!/(n-m)!` and leave the `f64` range well
/// before `n = 200`, so the table stores them divided by that scale; the
/// scale itself is kept as an exact integer. For a single Fock state the
/// table is diagonal with integer entries, which are kept exactly too.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorTable {
    n: usize,
    m: usize,
    scale: BigUint,
    normalized: Vec<Complex64>,
    exact_diagonal: Option<Vec<BigUint>>,
}

impl CorrelatorTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n!/(n-m)!`, the factor between raw correlators and the
    /// stored entries.
    pub fn scale(&self) -> &BigUint {
        &self.scale
    }

    /// Raw correlator `A[k₂][k₁]`; overflows to infinity when the true value
    /// exceeds the `f64` range.
    pub fn get(&self, k2: usize, k1: usize) -> Complex64 {
        if let Some(diag) = &self.exact_diagonal {
            return if k1 == k2 {
                Complex64::new(diag[k1].to_f64().unwrap_or(f64::INFINITY), 0.0)
            } else {
                Complex64::zero()
            };
        }
        let scale = self.scale.to_f64().unwrap_or(f64::INFINITY);
        self.normalized(k2, k1) * scale
    }

    /// `A[k₂][k₁] (n-m)!/n!`, one entry of the reduced `2^m` matrix.
    pub fn normalized(&self, k2: usize, k1: usize) -> Complex64 {
        self.normalized[k2 * (self.m + 1) + k1]
    }

    /// Exact integer diagonal for single Fock states.
    pub fn exact_diagonal(&self) -> Option<&[BigUint]> {
        self.exact_diagonal.as_deref()
    }
}

/// Fills the order-`m` correlator table of `state`.
///
/// Each entry is summed term by term as in [`correlator`], but with the
/// ladder weights regrouped into square roots of hypergeometric
/// probabilities, `√(C(j,k₂) C(n-j,m-k₂)/C(n,m))`, which stay in `[0, 1]`
/// for every `n`. Only `k₂ ≤ k₁` is computed; the rest follows by
/// Hermiticity.
pub fn correlator_table(state: &TwoModeSuperposition, m: usize) -> Result<CorrelatorTable> {
    let n = state.n();
    if m == 0 || m > n {
        return Err(Error::ReductionOrder { m, n });
    }
    let scale = falling_factorial_int(n, m)?;
    let dim = m + 1;
    let mut normalized = vec![Complex64::zero(); dim * dim];
    let class_sizes: Vec<f64> = binomial_row(m)
        .iter()
        .map(|c| c.to_f64().expect("C(m, k) fits in f64 for m <= 1000"))
        .collect();

    if let Some(occ) = state.as_fock() {
        let weight = state.amplitude(occ.n_v).norm_sqr();
        let mut diag = Vec::with_capacity(dim);
        for k in 0..dim {
            let a = match (
                falling_factorial_int(occ.n_h, m - k),
                falling_factorial_int(occ.n_v, k),
            ) {
                (Ok(h), Ok(v)) => h * v,
                _ => BigUint::zero(),
            };
            let value = Ratio::new_raw(a.clone(), scale.clone())
                .to_f64()
                .unwrap_or(0.0);
            normalized[k * dim + k] = Complex64::new(weight * value, 0.0);
            diag.push(a);
        }
        let exact_diagonal = (weight == 1.0).then_some(diag);
        return Ok(CorrelatorTable {
            n,
            m,
            scale,
            normalized,
            exact_diagonal,
        });
    }

    let roots = sqrt_hypergeometric_weights(n, m);
    let amps = state.amplitudes();
    for k2 in 0..dim {
        for k1 in k2..dim {
            // Ket n_V = k, bra n_V = k - k1 + k2.
            let mut acc = Complex64::zero();
            for k in k1..=n {
                let j = k - k1 + k2;
                if j > n {
                    break;
                }
                let w = roots[j * dim + k2] * roots[k * dim + k1];
                if w != 0.0 {
                    acc += amps[j].conj() * amps[k] * w;
                }
            }
            let value = acc / libm::sqrt(class_sizes[k2] * class_sizes[k1]);
            if k1 == k2 {
                normalized[k2 * dim + k1] = Complex64::new(value.re, 0.0);
            } else {
                normalized[k2 * dim + k1] = value;
                normalized[k1 * dim + k2] = value.conj();
            }
        }
    }
    Ok(CorrelatorTable {
        n,
        m,
        scale,
        normalized,
        exact_diagonal: None,
    })
}

/// `√(C(v, q) C(n-v, m-q) / C(n, m))` for `v ∈ 0..=n`, `q ∈ 0..=m`, row-major in
/// `v`. Computed from exact binomials and rounded once.
fn sqrt_hypergeometric_weights(n: usize, m: usize) -> Vec<f64> {
    let dim = m + 1;
    let rows: Vec<Vec<BigUint>> = (0..=n).map(binomial_row).collect();
    let total = &rows[n][m];
    let mut out = vec![0.0; (n + 1) * dim];
    for v in 0..=n {
        for q in 0..dim {
            if q > v || m - q > n - v {
                continue;
            }
            let numer = &rows[v][q] * &rows[n - v][m - q];
            let p = Ratio::new_raw(numer, total.clone()).to_f64().unwrap_or(0.0);
            out[v * dim + q] = libm::sqrt(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_fock, make_superposition, ModeOccupation};
    use approx::assert_abs_diff_eq;

    fn fock(n_h: usize, n_v: usize) -> TwoModeSuperposition {
        make_fock(ModeOccupation::new(n_h, n_v).unwrap()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn number_operator_on_fock_state() {
        let s = fock(2, 2);
        assert_eq!(correlator(&s, CorrelatorSpec::new(1, 0, 1, 0)), c(2.0, 0.0));
        assert_eq!(correlator(&s, CorrelatorSpec::new(0, 1, 0, 1)), c(2.0, 0.0));
    }

    #[test]
    fn qutrit_coherence_corner() {
        let amps = [c(0.3, 0.1), c(-0.2, 0.5), c(0.4, -0.6)];
        let s = make_superposition(2, &amps).unwrap();
        let a = s.amplitudes();
        let got = correlator(&s, CorrelatorSpec::new(2, 0, 0, 2));
        let expected = a[0].conj() * a[2] * 2.0;
        assert_abs_diff_eq!(got.re, expected.re, epsilon = 1e-14);
        assert_abs_diff_eq!(got.im, expected.im, epsilon = 1e-14);
    }

    #[test]
    fn single_fock_off_diagonal_vanishes() {
        assert_eq!(correlator(&fock(1, 2), CorrelatorSpec::new(1, 0, 0, 1)), Complex64::zero());
    }

    #[test]
    fn unbalanced_specs_are_zero() {
        let s = make_superposition(3, &[c(1.0, 0.0); 4]).unwrap();
        assert_eq!(correlator(&s, CorrelatorSpec::new(2, 0, 1, 0)), Complex64::zero());
        assert_eq!(correlator(&s, CorrelatorSpec::new(0, 0, 0, 1)), Complex64::zero());
    }

    #[test]
    fn powers_beyond_occupation_vanish() {
        assert_eq!(correlator(&fock(2, 0), CorrelatorSpec::new(3, 0, 3, 0)), Complex64::zero());
    }

    #[test]
    fn log_space_weights_match_exact_weights() {
        // Same state at n = 30 (exact branch) and n = 31 with a spectator
        // photon would differ; compare the two branches directly instead.
        let factors = [(30, 12), (20, 5), (25, 10), (28, 7)];
        let exact = ladder_weight(30, &factors);
        let logged = ladder_weight(31, &factors);
        assert!((exact - logged).abs() / exact < 1e-12);
    }

    #[test]
    fn table_of_balanced_fock_state() {
        let t = correlator_table(&fock(2, 2), 2).unwrap();
        let diag: Vec<f64> = (0..3).map(|k| t.get(k, k).re).collect();
        assert_eq!(diag, [2.0, 4.0, 2.0]);
        assert_eq!(t.get(0, 1), Complex64::zero());
        assert_eq!(t.scale(), &BigUint::from(12u32));
        let exact: Vec<u32> = t
            .exact_diagonal()
            .unwrap()
            .iter()
            .map(|x| x.to_u32().unwrap())
            .collect();
        assert_eq!(exact, [2, 4, 2]);
    }

    #[test]
    fn table_at_full_order_is_outer_product() {
        let s = make_superposition(3, &[c(0.1, 0.2), c(0.7, 0.0), c(-0.3, 0.4), c(0.0, -0.5)])
            .unwrap();
        let t = correlator_table(&s, 3).unwrap();
        let a = s.amplitudes();
        for k2 in 0..4 {
            for k1 in 0..4 {
                let spec = CorrelatorSpec::table_entry(3, k2, k1);
                let direct = correlator(&s, spec);
                let got = t.get(k2, k1);
                assert_abs_diff_eq!(got.re, direct.re, epsilon = 1e-12);
                assert_abs_diff_eq!(got.im, direct.im, epsilon = 1e-12);
                // (n-m)!/n! A = conj(C_k2) C_k1 / √(C(3,k2) C(3,k1))
                let norm = libm::sqrt(
                    (binomial_row(3)[k2].to_f64().unwrap()) * binomial_row(3)[k1].to_f64().unwrap(),
                );
                let expected = a[k2].conj() * a[k1] / norm;
                assert_abs_diff_eq!(t.normalized(k2, k1).re, expected.re, epsilon = 1e-14);
                assert_abs_diff_eq!(t.normalized(k2, k1).im, expected.im, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn noon_like_state_single_photon_table() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let s = make_superposition(2, &[c(h, 0.0), c(0.0, 0.0), c(h, 0.0)]).unwrap();
        let t = correlator_table(&s, 1).unwrap();
        assert_abs_diff_eq!(t.get(0, 0).re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(t.get(1, 1).re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(t.get(0, 1).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn table_order_out_of_range() {
        let s = fock(1, 1);
        assert_eq!(correlator_table(&s, 0), Err(Error::ReductionOrder { m: 0, n: 2 }));
        assert_eq!(correlator_table(&s, 3), Err(Error::ReductionOrder { m: 3, n: 2 }));
    }

    #[test]
    fn large_fock_table_stays_finite() {
        let t = correlator_table(&fock(60, 60), 50).unwrap();
        let trace: f64 = (0..=50)
            .map(|k| t.normalized(k, k).re * binomial_row(50)[k].to_f64().unwrap())
            .sum();
        assert_abs_diff_eq!(trace, 1.0, epsilon = 1e-12);
    }
}
