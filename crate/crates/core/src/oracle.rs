//! Brute-force reference implementations for small photon numbers.
//!
//! These follow the first-quantized picture: each of the `n` photons carries
//! a polarization variable `σ_i ∈ {H, V}`, the state is a permutation
//! symmetric amplitude over all `2^n` bitstrings, and reduction sums over
//! equal values of the traced variables. Correlators are evaluated with
//! explicit truncated ladder-operator matrices. Nothing here shares code
//! with the correlator or density paths it is used to check.
//!
//! Matrices use the same orientation as the correlator matrices: entry
//! `(r, c)` is `conj(ψ_r) ψ_c`, the transpose of `|ψ⟩⟨ψ|`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use crate::correlators::CorrelatorSpec;
use crate::density::FullMatrix;
use crate::fock::TwoModeSuperposition;
use crate::{Error, Result};

pub const ORACLE_MAX_N: usize = 12;

/// Symmetrized amplitudes over polarization bitstrings; bit `i` is variable
/// `σ_i` with `H = 0`, `V = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionTensor {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl WavefunctionTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Spreads each `C_k` evenly over the `C(n, k)` bitstrings with `k` V-bits.
pub fn wavefunction_tensor(state: &TwoModeSuperposition) -> Result<WavefunctionTensor> {
    let n = state.n();
    if n > ORACLE_MAX_N {
        return Err(Error::OracleTooLarge {
            n,
            max: ORACLE_MAX_N,
        });
    }
    // Count class sizes by enumeration rather than with a binomial formula.
    let mut class_size = vec![0u32; n + 1];
    for b in 0..(1usize << n) {
        class_size[b.count_ones() as usize] += 1;
    }
    let amplitudes = (0..(1usize << n))
        .map(|b| {
            let k = b.count_ones() as usize;
            state.amplitude(k) / libm::sqrt(class_size[k] as f64)
        })
        .collect();
    Ok(WavefunctionTensor { n, amplitudes })
}

/// Pure-state matrix of the whole tensor.
pub fn outer_product(tensor: &WavefunctionTensor) -> FullMatrix {
    let psi = &tensor.amplitudes;
    let entries = psi
        .iter()
        .flat_map(|r| psi.iter().map(move |c| r.conj() * c))
        .collect();
    FullMatrix::from_entries(tensor.n, entries)
}

/// Traces out the variables at positions `traced`. The kept variables, in
/// increasing position order, become bits `0..m` of the result.
pub fn partial_trace(tensor: &WavefunctionTensor, traced: &[usize]) -> Result<FullMatrix> {
    let n = tensor.n;
    let mut is_traced = vec![false; n];
    for &p in traced {
        if p >= n || is_traced[p] {
            return Err(Error::InvalidSubset);
        }
        is_traced[p] = true;
    }
    let kept: Vec<usize> = (0..n).filter(|&p| !is_traced[p]).collect();
    if kept.is_empty() {
        return Err(Error::InvalidSubset);
    }
    let m = kept.len();

    let scatter = |bits: usize, positions: &[usize]| -> usize {
        positions
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .fold(0usize, |acc, (_, &p)| acc | 1 << p)
    };
    let psi = &tensor.amplitudes;
    let dim = 1usize << m;
    let mut entries = vec![Complex64::zero(); dim * dim];
    for t in 0..(1usize << traced.len()) {
        let env = scatter(t, traced);
        for r in 0..dim {
            let row = psi[env | scatter(r, &kept)].conj();
            if row == Complex64::zero() {
                continue;
            }
            for c in 0..dim {
                entries[r * dim + c] += row * psi[env | scatter(c, &kept)];
            }
        }
    }
    Ok(FullMatrix::from_entries(m, entries))
}

/// Reduction to the first `m` variables.
pub fn reduce_to_leading(tensor: &WavefunctionTensor, m: usize) -> Result<FullMatrix> {
    if m == 0 || m > tensor.n {
        return Err(Error::ReductionOrder { m, n: tensor.n });
    }
    let traced: Vec<usize> = (m..tensor.n).collect();
    partial_trace(tensor, &traced)
}

/// Single-mode ladder operator on the truncated number basis `0..dim`,
/// stored densely and applied through its nonzero entries.
#[derive(Debug, Clone)]
pub struct LadderMatrix {
    dim: usize,
    dense: Vec<f64>,
    nonzeros: Vec<(usize, usize, f64)>,
}

impl LadderMatrix {
    /// `a|k⟩ = √k |k-1⟩`.
    pub fn annihilation(dim: usize) -> Self {
        let mut dense = vec![0.0; dim * dim];
        for k in 1..dim {
            dense[(k - 1) * dim + k] = libm::sqrt(k as f64);
        }
        Self::from_dense(dim, dense)
    }

    /// `a†|k⟩ = √(k+1) |k+1⟩`, the transpose of [`LadderMatrix::annihilation`].
    pub fn creation(dim: usize) -> Self {
        let a = Self::annihilation(dim);
        let mut dense = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                dense[j * dim + i] = a.dense[i * dim + j];
            }
        }
        Self::from_dense(dim, dense)
    }

    fn from_dense(dim: usize, dense: Vec<f64>) -> Self {
        let nonzeros = (0..dim * dim)
            .filter(|&i| dense[i] != 0.0)
            .map(|i| (i / dim, i % dim, dense[i]))
            .collect();
        Self {
            dim,
            dense,
            nonzeros,
        }
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.dense[row * self.dim + col]
    }

    /// Acts on one factor of a two-mode vector indexed `h * dim + v`.
    fn apply(&self, psi: &[Complex64], mode: Mode) -> Vec<Complex64> {
        let d = self.dim;
        let mut out = vec![Complex64::zero(); psi.len()];
        for &(row, col, val) in &self.nonzeros {
            for other in 0..d {
                let (src, dst) = match mode {
                    Mode::H => (col * d + other, row * d + other),
                    Mode::V => (other * d + col, other * d + row),
                };
                out[dst] += psi[src] * val;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
enum Mode {
    H,
    V,
}

/// `⟨Ψ| (a_H†)^{p_H} (a_V†)^{p_V} a_H^{q_H} a_V^{q_V} |Ψ⟩` by explicit matrix
/// action. The basis is padded so creation operators never hit the
/// truncation edge.
pub fn ladder_correlator(state: &TwoModeSuperposition, spec: CorrelatorSpec) -> Result<Complex64> {
    let n = state.n();
    if n > ORACLE_MAX_N {
        return Err(Error::OracleTooLarge {
            n,
            max: ORACLE_MAX_N,
        });
    }
    let dim = n + 1 + spec.p_h.max(spec.p_v);
    let a = LadderMatrix::annihilation(dim);
    let a_dag = LadderMatrix::creation(dim);

    let mut psi = vec![Complex64::zero(); dim * dim];
    for (k, &c) in state.amplitudes().iter().enumerate() {
        psi[(n - k) * dim + k] = c;
    }

    let mut phi = psi.clone();
    for _ in 0..spec.q_v {
        phi = a.apply(&phi, Mode::V);
    }
    for _ in 0..spec.q_h {
        phi = a.apply(&phi, Mode::H);
    }
    for _ in 0..spec.p_v {
        phi = a_dag.apply(&phi, Mode::V);
    }
    for _ in 0..spec.p_h {
        phi = a_dag.apply(&phi, Mode::H);
    }
    Ok(psi.iter().zip(&phi).map(|(x, y)| x.conj() * y).sum())
}
