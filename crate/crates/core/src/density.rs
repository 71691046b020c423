//! Pure-state and reduced density matrices assembled from correlator tables.
//!
//! Reducing an `n`-photon state over `n - m` of its polarization variables
//! gives a `2^m × 2^m` matrix with entries
//! `(n-m)!/n! · A[popcount(row)][popcount(col)]`, where `A` is the order-`m`
//! [`CorrelatorTable`]. Rows sharing a popcount `k` repeat `C(m, k)` times, so
//! the matrix has rank at most `m + 1`. [`CompressedHermitian`] folds each
//! popcount class into one row and column weighted by `√C(m, k)`, which keeps
//! the nonzero spectrum and the trace.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::correlators::{correlator_table, CorrelatorTable};
use crate::fock::TwoModeSuperposition;
use crate::rational::{binomial_row, ExactNonnegativeRational};
use crate::{Error, Result};

/// Largest `m` for which the dense `2^m × 2^m` matrix is materialized.
pub const FULL_MATRIX_MAX_M: usize = 12;

/// Reduced density matrix of an `n`-photon state over `m` retained
/// variables, in correlator form.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensity {
    n: usize,
    m: usize,
    prefactor: ExactNonnegativeRational,
    table: CorrelatorTable,
}

impl ReducedDensity {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `(n-m)!/n!`.
    pub fn prefactor(&self) -> &ExactNonnegativeRational {
        &self.prefactor
    }

    pub fn table(&self) -> &CorrelatorTable {
        &self.table
    }

    /// Entry of the `2^m` matrix for row class `k₂` and column class `k₁`.
    pub fn entry(&self, k2: usize, k1: usize) -> Complex64 {
        self.table.normalized(k2, k1)
    }

    /// Exact entry for single Fock states, `None` for superpositions.
    pub fn exact_entry(&self, k2: usize, k1: usize) -> Option<ExactNonnegativeRational> {
        let diag = self.table.exact_diagonal()?;
        if k1 != k2 {
            return Some(ExactNonnegativeRational::zero());
        }
        Some(&self.prefactor * &ExactNonnegativeRational::from_integer(diag[k1].clone()))
    }

    /// `Σ_k C(m,k) ρ[k][k]`, which is one for every valid reduction.
    pub fn trace(&self) -> f64 {
        binomial_row(self.m)
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::INFINITY) * self.entry(k, k).re)
            .sum()
    }
}

/// Reduces `state` over `n - m` photon variables.
pub fn reduced_density(state: &TwoModeSuperposition, m: usize) -> Result<ReducedDensity> {
    let table = correlator_table(state, m)?;
    let prefactor = ExactNonnegativeRational::from_integer(table.scale().clone()).recip();
    Ok(ReducedDensity {
        n: state.n(),
        m,
        prefactor,
        table,
    })
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FullMatrix {
    m: usize,
    dim: usize,
    entries: Vec<Complex64>,
}

impl FullMatrix {
    pub(crate) fn from_entries(m: usize, entries: Vec<Complex64>) -> Self {
        let dim = 1usize << m;
        debug_assert_eq!(entries.len(), dim * dim);
        Self { m, dim, entries }
    }

    /// Number of photon variables; the matrix has order `2^m`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.entries, self.dim)
    }

    pub fn max_abs_diff(&self, other: &FullMatrix) -> f64 {
        max_abs_diff(&self.entries, &other.entries)
    }

    /// `‖ρ² - ρ‖∞` entrywise.
    pub fn idempotence_defect(&self) -> f64 {
        let sq = matmul(&self.entries, &self.entries, self.dim);
        max_abs_diff(&sq, &self.entries)
    }
}

/// Materializes the `2^m × 2^m` matrix; bit `i` of a row or column index is
/// the polarization of variable `i` (`H = 0`, `V = 1`).
pub fn full_matrix(rd: &ReducedDensity) -> Result<FullMatrix> {
    if rd.m > FULL_MATRIX_MAX_M {
        return Err(Error::FullMatrixTooLarge {
            m: rd.m,
            max: FULL_MATRIX_MAX_M,
        });
    }
    let dim = 1usize << rd.m;
    let mut entries = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        let k2 = row.count_ones() as usize;
        for col in 0..dim {
            entries.push(rd.entry(k2, col.count_ones() as usize));
        }
    }
    Ok(FullMatrix::from_entries(rd.m, entries))
}

/// Exact rational form of [`full_matrix`] for single Fock states.
pub fn full_matrix_exact(rd: &ReducedDensity) -> Result<Option<Vec<ExactNonnegativeRational>>> {
    if rd.m > FULL_MATRIX_MAX_M {
        return Err(Error::FullMatrixTooLarge {
            m: rd.m,
            max: FULL_MATRIX_MAX_M,
        });
    }
    let dim = 1usize << rd.m;
    let mut out = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        for col in 0..dim {
            match rd.exact_entry(row.count_ones() as usize, col.count_ones() as usize) {
                Some(x) => out.push(x),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(out))
}

/// `(m+1) × (m+1)` Hermitian matrix whose nonzero spectrum equals that of
/// the `2^m` reduced density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressedHermitian {
    m: usize,
    entries: Vec<Complex64>,
}

impl CompressedHermitian {
    /// Wraps a row-major `(m+1)²` buffer without checking Hermiticity;
    /// [`crate::hermitian_eigenvalues`] checks it.
    pub fn from_entries(m: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != (m + 1) * (m + 1) {
            return Err(Error::WrongOrder {
                expected: (m + 1) * (m + 1),
                found: entries.len(),
            });
        }
        Ok(Self { m, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.m + 1
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * (self.m + 1) + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.entries, self.dim())
    }

    pub fn max_abs_diff(&self, other: &CompressedHermitian) -> f64 {
        max_abs_diff(&self.entries, &other.entries)
    }
}

/// `B[k₂][k₁] = √(C(m,k₂) C(m,k₁)) · (n-m)!/n! · A[k₂][k₁]`.
pub fn compressed_hermitian(rd: &ReducedDensity) -> CompressedHermitian {
    let dim = rd.m + 1;
    let roots: Vec<f64> = binomial_row(rd.m)
        .iter()
        .map(|c| libm::sqrt(c.to_f64().unwrap_or(f64::INFINITY)))
        .collect();
    let mut entries = vec![Complex64::zero(); dim * dim];
    for k2 in 0..dim {
        for k1 in 0..dim {
            entries[k2 * dim + k1] = rd.entry(k2, k1) * (roots[k2] * roots[k1]);
        }
    }
    CompressedHermitian { m: rd.m, entries }
}

/// Coherence matrix `conj(C_i) C_j` of a pure state, indices by `n_V`.
pub fn pure_coherence(state: &TwoModeSuperposition) -> CompressedHermitian {
    let amps = state.amplitudes();
    let entries = amps
        .iter()
        .flat_map(|ci| amps.iter().map(move |cj| ci.conj() * cj))
        .collect();
    CompressedHermitian {
        m: state.n(),
        entries,
    }
}

pub type Matrix4 = [[Complex64; 4]; 4];

/// Rotates the two-photon matrix into the symmetric/antisymmetric basis of
/// its middle rows, `U ρ U†` with
/// `U = [e₁; (e₂+e₃)/√2; (e₂-e₃)/√2; e₄]`. Row and column 2 (0-based) of the
/// result vanish for every bosonic state.
pub fn klyshko_compaction(full: &FullMatrix) -> Result<Matrix4> {
    if full.m() != 2 {
        return Err(Error::WrongOrder {
            expected: 2,
            found: full.m(),
        });
    }
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let mut u = [[Complex64::zero(); 4]; 4];
    u[0][0] = Complex64::new(1.0, 0.0);
    u[1][1] = Complex64::new(h, 0.0);
    u[1][2] = Complex64::new(h, 0.0);
    u[2][1] = Complex64::new(h, 0.0);
    u[2][2] = Complex64::new(-h, 0.0);
    u[3][3] = Complex64::new(1.0, 0.0);

    let mut out = [[Complex64::zero(); 4]; 4];
    for (i, out_row) in out.iter_mut().enumerate() {
        for (j, slot) in out_row.iter_mut().enumerate() {
            let mut acc = Complex64::zero();
            for a in 0..4 {
                for b in 0..4 {
                    acc += u[i][a] * full.get(a, b) * u[j][b].conj();
                }
            }
            *slot = acc;
        }
    }
    Ok(out)
}

/// Drops row and column 2 of a compacted two-photon matrix.
pub fn compacted_coherence(rotated: &Matrix4) -> CompressedHermitian {
    let keep = [0usize, 1, 3];
    let entries = keep
        .iter()
        .flat_map(|&i| keep.iter().map(move |&j| rotated[i][j]))
        .collect();
    CompressedHermitian { m: 2, entries }
}

fn hermiticity_defect(entries: &[Complex64], dim: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in i..dim {
            let d = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn matmul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik == Complex64::zero() {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += aik * b[k * dim + j];
            }
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

    fn r(p: u32, q: u32) -> ExactNonnegativeRational {
        ExactNonnegativeRational::new(p, q)
    }

    fn qutrit() -> TwoModeSuperposition {
        make_superposition(2, &[c(0.3, 0.1), c(-0.2, 0.5), c(0.4, -0.6)]).unwrap()
    }

    #[test]
    fn balanced_four_photon_reduction_is_exact() {
        let rd = reduced_density(&fock(2, 2), 2).unwrap();
        assert_eq!(rd.prefactor(), &r(1, 12));
        let exact = full_matrix_exact(&rd).unwrap().unwrap();
        let z = r(0, 1);
        let expected = [
            [r(1, 6), z.clone(), z.clone(), z.clone()],
            [z.clone(), r(1, 3), r(1, 3), z.clone()],
            [z.clone(), r(1, 3), r(1, 3), z.clone()],
            [z.clone(), z.clone(), z.clone(), r(1, 6)],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(exact[i * 4 + j], expected[i][j], "entry ({i},{j})");
            }
        }
        let full = full_matrix(&rd).unwrap();
        assert_abs_diff_eq!(full.get(1, 2).re, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(full.trace().re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn full_order_reduction_prefactor() {
        let rd = reduced_density(&fock(3, 1), 4).unwrap();
        assert_eq!(rd.prefactor(), &r(1, 24));
    }

    #[test]
    fn single_photon_reduction_of_fock_state() {
        let rd = reduced_density(&fock(1, 2), 1).unwrap();
        let full = full_matrix(&rd).unwrap();
        assert_eq!(rd.exact_entry(0, 0).unwrap(), r(1, 3));
        assert_eq!(rd.exact_entry(1, 1).unwrap(), r(2, 3));
        assert_abs_diff_eq!(full.get(0, 0).re, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(full.get(1, 1).re, 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(full.get(0, 1), Complex64::zero());
    }

    #[test]
    fn single_photon_pure_state() {
        let full = full_matrix(&reduced_density(&fock(1, 0), 1).unwrap()).unwrap();
        assert_eq!(full.entries(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn compressed_form_of_balanced_states() {
        let b = compressed_hermitian(&reduced_density(&fock(2, 2), 2).unwrap());
        let diag: Vec<f64> = (0..3).map(|k| b.get(k, k).re).collect();
        assert_abs_diff_eq!(diag[0], 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(diag[1], 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(diag[2], 1.0 / 6.0, epsilon = 1e-15);

        let b = compressed_hermitian(&reduced_density(&fock(1, 1), 1).unwrap());
        assert_abs_diff_eq!(b.get(0, 0).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(b.get(1, 1).re, 0.5, epsilon = 1e-15);
        assert_eq!(b.get(0, 1), Complex64::zero());
    }

    #[test]
    fn compressed_pure_qutrit_is_coherence_matrix() {
        let s = qutrit();
        let b = compressed_hermitian(&reduced_density(&s, 2).unwrap());
        assert!(b.max_abs_diff(&pure_coherence(&s)) < 1e-14);
    }

    #[test]
    fn coherence_matrix_from_correlator_formulas() {
        use crate::correlators::{correlator, CorrelatorSpec as S};
        let s = qutrit();
        let r2 = core::f64::consts::SQRT_2;
        // Rows/columns ordered |2_H⟩, |1_H 1_V⟩, |2_V⟩.
        let formulas = [
            [(S::new(2, 0, 2, 0), 2.0), (S::new(2, 0, 1, 1), r2), (S::new(2, 0, 0, 2), 2.0)],
            [(S::new(1, 1, 2, 0), r2), (S::new(1, 1, 1, 1), 1.0), (S::new(1, 1, 0, 2), r2)],
            [(S::new(0, 2, 2, 0), 2.0), (S::new(0, 2, 1, 1), r2), (S::new(0, 2, 0, 2), 2.0)],
        ];
        let coh = pure_coherence(&s);
        for (i, row) in formulas.iter().enumerate() {
            for (j, &(spec, div)) in row.iter().enumerate() {
                let expected = correlator(&s, spec) / div;
                assert!((coh.get(i, j) - expected).norm() < 1e-12, "({i},{j})");
            }
        }
    }

    #[test]
    fn pure_coherence_examples() {
        let s = make_superposition(2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let coh = pure_coherence(&s);
        assert_eq!(coh.get(0, 0), c(1.0, 0.0));
        assert_eq!(coh.trace(), c(1.0, 0.0));

        let h = core::f64::consts::FRAC_1_SQRT_2;
        let s = make_superposition(2, &[c(h, 0.0), c(0.0, 0.0), c(h, 0.0)]).unwrap();
        let coh = pure_coherence(&s);
        for (i, j) in [(0, 0), (0, 2), (2, 0), (2, 2)] {
            assert_abs_diff_eq!(coh.get(i, j).re, 0.5, epsilon = 1e-15);
        }
        for k in 0..3 {
            assert_eq!(coh.get(1, k), Complex64::zero());
            assert_eq!(coh.get(k, 1), Complex64::zero());
        }
    }

    #[test]
    fn pure_state_is_idempotent() {
        let s = make_superposition(3, &[c(0.1, 0.2), c(0.7, 0.0), c(-0.3, 0.4), c(0.0, -0.5)])
            .unwrap();
        let full = full_matrix(&reduced_density(&s, 3).unwrap()).unwrap();
        assert!(full.idempotence_defect() < 1e-12);
        assert!(full.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn full_matrix_size_guard() {
        let rd = reduced_density(&fock(7, 7), 13).unwrap();
        assert_eq!(
            full_matrix(&rd),
            Err(Error::FullMatrixTooLarge { m: 13, max: 12 })
        );
    }

    #[test]
    fn compaction_of_balanced_four_photon_reduction() {
        let full = full_matrix(&reduced_density(&fock(2, 2), 2).unwrap()).unwrap();
        let rot = klyshko_compaction(&full).unwrap();
        let expected = [1.0 / 6.0, 2.0 / 3.0, 0.0, 1.0 / 6.0];
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { expected[i] } else { 0.0 };
                assert_abs_diff_eq!(rot[i][j].re, e, epsilon = 1e-15);
                assert_abs_diff_eq!(rot[i][j].im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn compaction_preserves_identity() {
        let mut entries = vec![Complex64::zero(); 16];
        for i in 0..4 {
            entries[i * 4 + i] = c(0.25, 0.0);
        }
        let rot = klyshko_compaction(&FullMatrix::from_entries(2, entries)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { 0.25 } else { 0.0 };
                assert_abs_diff_eq!(rot[i][j].re, e, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn compaction_of_pure_qutrit_recovers_coherence_matrix() {
        let s = qutrit();
        let full = full_matrix(&reduced_density(&s, 2).unwrap()).unwrap();
        let rot = klyshko_compaction(&full).unwrap();
        for k in 0..4 {
            assert!(rot[2][k].norm() < 1e-12 && rot[k][2].norm() < 1e-12);
        }
        assert!(compacted_coherence(&rot).max_abs_diff(&pure_coherence(&s)) < 1e-12);
    }

    #[test]
    fn compaction_rejects_other_orders() {
        let full = full_matrix(&reduced_density(&fock(2, 1), 1).unwrap()).unwrap();
        assert_eq!(
            klyshko_compaction(&full),
            Err(Error::WrongOrder { expected: 2, found: 1 })
        );
    }
}
