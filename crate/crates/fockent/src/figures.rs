//! Data tables behind the six figures.
//!
//! Grid points are independent and evaluated in parallel on the current
//! rayon pool; rows are always assembled in grid order.

use fockent_core::spectrum::{analytic_fock_spectrum, exact_fock_k, gaussian_k};
use fockent_core::{
    analytic_fock_eigenvalues, k_approx, single_photon_k, ExactNonnegativeRational, ModeOccupation,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::state::check_n;
use crate::table::{float_value, Cell, Table};

fn occ(n_h: usize, n_v: usize, cap: usize) -> CliResult<ModeOccupation> {
    Ok(ModeOccupation::with_cap(n_h, n_v, cap)?)
}

fn even_range(n_max: usize, cap: usize) -> CliResult<Vec<usize>> {
    if n_max < 2 {
        return Err(CliError::validation(format!("--n-max must be at least 2, got {n_max}")));
    }
    check_n(n_max, cap)?;
    Ok((2..=n_max).step_by(2).collect())
}

/// Balanced states `|n/2, n/2⟩` split in halves: `K`, the power-law fit and
/// their difference.
pub fn figure1(n_max: usize, cap: usize) -> CliResult<Table> {
    let ns = even_range(n_max, cap)?;
    let rows: Vec<Vec<Cell>> = ns
        .par_iter()
        .map(|&n| {
            let k_exact = exact_fock_k(occ(n / 2, n / 2, cap)?, n / 2)?;
            let k = k_exact.to_f64();
            let fit = k_approx(n);
            Ok(vec![n.into(), k.into(), fit.into(), (k - fit).into(), (&k_exact).into()])
        })
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(&["n", "K", "K_appr", "residual", "K_exact"]);
    table.extend(rows);
    Ok(table)
}

/// Entropy of the same reductions as [`figure1`].
pub fn figure2(n_max: usize, cap: usize) -> CliResult<Table> {
    let ns = even_range(n_max, cap)?;
    let rows: Vec<Vec<Cell>> = ns
        .par_iter()
        .map(|&n| {
            let s = analytic_fock_spectrum(occ(n / 2, n / 2, cap)?, n / 2)?.s;
            Ok(vec![n.into(), s.into()])
        })
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(&["n", "S"]);
    table.extend(rows);
    Ok(table)
}

/// Single-photon reductions of `|n - n_V, n_V⟩` across `n_V = 0..=n`.
pub fn figure3(ns: &[usize], cap: usize) -> CliResult<Table> {
    let points: Vec<(usize, usize)> = ns
        .iter()
        .map(|&n| check_n(n, cap).map(|_| (0..=n).map(move |v| (n, v))))
        .collect::<CliResult<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|&(n, v)| {
            let k_exact = single_photon_k(occ(n - v, v, cap)?);
            Ok(vec![n.into(), v.into(), k_exact.to_f64().into(), (&k_exact).into()])
        })
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(&["n", "n_V", "K", "K_exact"]);
    table.extend(rows);
    Ok(table)
}

/// `K` of `|n/2, n/2⟩` against the reduction fraction `m/n`, `m = 1..n-1`.
pub fn figure4(ns: &[usize], cap: usize) -> CliResult<Table> {
    let mut points = Vec::new();
    for &n in ns {
        check_n(n, cap)?;
        if n % 2 == 1 || n < 2 {
            return Err(CliError::validation(format!("figure 4 needs even n >= 2, got {n}")));
        }
        points.extend((1..n).map(|m| (n, m)));
    }
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|&(n, m)| {
            let k_exact = exact_fock_k(occ(n / 2, n / 2, cap)?, m)?;
            Ok(vec![n.into(), m.into(), (m as f64 / n as f64).into(), k_exact.to_f64().into(), (&k_exact).into()])
        })
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(&["n", "m", "m_over_n", "K", "K_exact"]);
    table.extend(rows);
    Ok(table)
}

/// Descending exact eigenvalues of `|h, h⟩` reduced to each `m`.
pub fn figure5(half: usize, ms: &[usize], cap: usize) -> CliResult<Table> {
    let state = occ(half, half, cap)?;
    let blocks: Vec<Vec<Vec<Cell>>> = ms
        .par_iter()
        .map(|&m| {
            let mut values: Vec<ExactNonnegativeRational> =
                analytic_fock_eigenvalues(state, m)?.into_iter().map(|(_, x)| x).collect();
            values.sort_by(|a, b| b.cmp(a));
            Ok(values
                .iter()
                .enumerate()
                .map(|(i, x)| vec![m.into(), (i + 1).into(), x.to_f64().into(), x.into()])
                .collect())
        })
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(&["m", "k_rank", "lambda", "lambda_exact"]);
    table.extend(blocks.into_iter().flatten());
    Ok(table)
}

/// Evenly spaced widths `σ_i = max · i / steps`, `i = 1..=steps`.
pub fn sigma_grid(sigma_max: f64, steps: usize) -> CliResult<Vec<f64>> {
    if !(sigma_max > 0.0 && sigma_max.is_finite()) || steps == 0 {
        return Err(CliError::validation("sigma grid needs a positive finite maximum and at least one step"));
    }
    Ok((1..=steps).map(|i| sigma_max * i as f64 / steps as f64).collect())
}

/// `K(σ)` of Gaussian superpositions for each centre `m0`.
pub fn figure6(n: usize, m0s: &[f64], m: usize, sigmas: &[f64], cap: usize) -> CliResult<Table> {
    check_n(n, cap)?;
    if m == 0 || m > n {
        return Err(fockent_core::Error::ReductionOrder { m, n }.into());
    }
    if m0s.iter().any(|x| !x.is_finite()) {
        return Err(CliError::validation("m0 values must be finite"));
    }
    let points: Vec<(f64, f64)> = m0s.iter().flat_map(|&m0| sigmas.iter().map(move |&s| (m0, s))).collect();
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|&(m0, sigma)| Ok(vec![m0.into(), sigma.into(), gaussian_k(n, m0, m, sigma)?.into()]))
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(&["m0", "sigma", "K"]);
    table.extend(rows);
    Ok(table)
}

/// Parameters of a figure request, echoed into the run report.
#[derive(Debug, Clone, PartialEq)]
pub enum FigureRequest {
    One { n_max: usize },
    Two { n_max: usize },
    Three { ns: Vec<usize> },
    Four { ns: Vec<usize> },
    Five { half: usize, ms: Vec<usize> },
    Six { n: usize, m0s: Vec<f64>, m: usize, sigma_max: f64, steps: usize },
}

impl FigureRequest {
    pub fn index(&self) -> u8 {
        match self {
            FigureRequest::One { .. } => 1,
            FigureRequest::Two { .. } => 2,
            FigureRequest::Three { .. } => 3,
            FigureRequest::Four { .. } => 4,
            FigureRequest::Five { .. } => 5,
            FigureRequest::Six { .. } => 6,
        }
    }

    pub fn describe(&self) -> Value {
        match self {
            FigureRequest::One { n_max } | FigureRequest::Two { n_max } => json!({ "n_max": n_max }),
            FigureRequest::Three { ns } | FigureRequest::Four { ns } => json!({ "n": ns }),
            FigureRequest::Five { half, ms } => json!({ "n_h": half, "n_v": half, "m": ms }),
            FigureRequest::Six { n, m0s, m, sigma_max, steps } => json!({
                "n": n,
                "m0": m0s.iter().map(|&x| float_value(x)).collect::<Value>(),
                "m": m,
                "sigma_max": float_value(*sigma_max),
                "sigma_steps": steps,
            }),
        }
    }

    pub fn run(&self, cap: usize) -> CliResult<Table> {
        match self {
            FigureRequest::One { n_max } => figure1(*n_max, cap),
            FigureRequest::Two { n_max } => figure2(*n_max, cap),
            FigureRequest::Three { ns } => figure3(ns, cap),
            FigureRequest::Four { ns } => figure4(ns, cap),
            FigureRequest::Five { half, ms } => figure5(*half, ms, cap),
            FigureRequest::Six { n, m0s, m, sigma_max, steps } => {
                figure6(*n, m0s, *m, &sigma_grid(*sigma_max, *steps)?, cap)
            }
        }
    }
}
