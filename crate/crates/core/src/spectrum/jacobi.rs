//! Cyclic Jacobi eigenvalue iteration for real symmetric matrices, with
//! complex Hermitian input handled through the real embedding
//! `[[Re, -Im], [Im, Re]]`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result};

/// Convergence threshold on the largest off-diagonal magnitude.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric `dim × dim` matrix (row-major), unsorted.
/// The input buffer is overwritten.
pub fn symmetric_eigenvalues(a: &mut [f64], dim: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), dim * dim);
    for _ in 0..MAX_SWEEPS {
        if max_off_diagonal(a, dim) < OFF_DIAGONAL_TOLERANCE {
            return Ok((0..dim).map(|i| a[i * dim + i]).collect());
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                rotate(a, dim, p, q);
            }
        }
    }
    let residual = max_off_diagonal(a, dim);
    if residual < OFF_DIAGONAL_TOLERANCE {
        return Ok((0..dim).map(|i| a[i * dim + i]).collect());
    }
    Err(Error::NoConvergence {
        sweeps: MAX_SWEEPS,
        residual,
    })
}

/// Eigenvalues of a complex Hermitian `dim × dim` matrix, sorted descending.
///
/// Real input is diagonalized directly. Otherwise the `2·dim` real embedding
/// is diagonalized; its spectrum is the Hermitian spectrum with every value
/// doubled, so after sorting every second value is kept.
pub fn hermitian_eigenvalues_raw(entries: &[Complex64], dim: usize) -> Result<Vec<f64>> {
    let is_real = entries.iter().all(|z| z.im == 0.0);
    let mut values = if is_real {
        let mut a: Vec<f64> = entries.iter().map(|z| z.re).collect();
        symmetric_eigenvalues(&mut a, dim)?
    } else {
        let big = 2 * dim;
        let mut a = vec![0.0; big * big];
        for i in 0..dim {
            for j in 0..dim {
                let z = entries[i * dim + j];
                a[i * big + j] = z.re;
                a[(i + dim) * big + (j + dim)] = z.re;
                a[i * big + (j + dim)] = -z.im;
                a[(i + dim) * big + j] = z.im;
            }
        }
        let mut doubled = symmetric_eigenvalues(&mut a, big)?;
        sort_descending(&mut doubled);
        doubled.into_iter().step_by(2).collect()
    };
    sort_descending(&mut values);
    Ok(values)
}

pub(crate) fn sort_descending(values: &mut [f64]) {
    values.sort_by(|a, b| b.total_cmp(a));
}

fn max_off_diagonal(a: &[f64], dim: usize) -> f64 {
    let mut worst = 0.0f64;
    for p in 0..dim {
        for q in (p + 1)..dim {
            worst = worst.max(a[p * dim + q].abs());
        }
    }
    worst
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [f64], dim: usize, p: usize, q: usize) {
    let apq = a[p * dim + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * dim + p];
    let aqq = a[q * dim + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.is_finite() {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + libm::sqrt(theta * theta + 1.0))
    } else {
        // |θ| overflowed: the rotation angle is ~apq/(aqq-app).
        apq / (aqq - app)
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * dim + p] = app - t * apq;
    a[q * dim + q] = aqq + t * apq;
    a[p * dim + q] = 0.0;
    a[q * dim + p] = 0.0;
    for r in 0..dim {
        if r == p || r == q {
            continue;
        }
        let g = a[r * dim + p];
        let h = a[r * dim + q];
        let new_rp = g - s * (h + g * tau);
        let new_rq = h + s * (g - h * tau);
        a[r * dim + p] = new_rp;
        a[p * dim + r] = new_rp;
        a[r * dim + q] = new_rq;
        a[q * dim + r] = new_rq;
    }
}
