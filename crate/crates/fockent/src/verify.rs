//! Oracle-equivalence checks run from the command line.
//!
//! Every check compares a production path against the brute-force reference
//! implementations in [`fockent_core::oracle`] on seeded random inputs, so
//! repeated runs print identical tables.

use fockent_core::density::full_matrix_exact;
use fockent_core::oracle::{ladder_correlator, reduce_to_leading, wavefunction_tensor, ORACLE_MAX_N};
use fockent_core::spectrum::jacobi::hermitian_eigenvalues_raw;
use fockent_core::{
    compressed_hermitian, correlator, full_matrix, make_fock, make_superposition, reduced_density,
    Complex64, CorrelatorSpec, ModeOccupation, TwoModeSuperposition,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::table::Table;

pub const DEFAULT_MAX_N: usize = 8;
pub const SEED: u64 = 0x5eed_f0c5;
pub const STATES_PER_N: usize = 50;
/// Random states per `n` that also go through the full-order spectrum check.
const SPECTRUM_STATES_PER_N: usize = 2;
const ENTRY_TOLERANCE: f64 = 1e-10;
const EXACT_TOLERANCE: f64 = 1e-12;
const SPECTRUM_TOLERANCE: f64 = 1e-10;
const NONZERO_EIGENVALUE: f64 = 1e-9;

/// Options of a verification run. `prefactor_perturbation` rescales the
/// production reduced matrices by `1 + ε` and exists to exercise the
/// failure path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub max_n: usize,
    pub prefactor_perturbation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub check: &'static str,
    pub n: usize,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub worst: String,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Largest deviation seen so far and where it occurred.
struct Worst {
    deviation: f64,
    location: String,
}

impl Worst {
    fn new() -> Self {
        Self { deviation: 0.0, location: String::new() }
    }

    fn record(&mut self, deviation: f64, location: impl FnOnce() -> String) {
        // NaN must register as a failure.
        if deviation > self.deviation || (deviation.is_nan() && !self.deviation.is_nan()) {
            self.deviation = deviation;
            self.location = location();
        }
    }
}

pub fn random_state(n: usize, rng: &mut impl Rng) -> TwoModeSuperposition {
    let raw: Vec<Complex64> = (0..=n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    make_superposition(n, &raw).expect("random amplitudes form a valid state")
}

fn balanced_specs(max_power: usize) -> Vec<CorrelatorSpec> {
    let mut specs = Vec::new();
    for t in 0..=max_power {
        for p_v in 0..=t {
            for q_v in 0..=t {
                specs.push(CorrelatorSpec::new(t - p_v, p_v, t - q_v, q_v));
            }
        }
    }
    specs
}

fn states_for(n: usize) -> Vec<TwoModeSuperposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
    (0..STATES_PER_N).map(|_| random_state(n, &mut rng)).collect()
}

fn full_matrix_check(n: usize, states: &[TwoModeSuperposition], eps: f64) -> CliResult<CheckResult> {
    let mut worst = Worst::new();
    let mut cases = 0;
    for (s, state) in states.iter().enumerate() {
        let tensor = wavefunction_tensor(state)?;
        for m in 1..=n {
            let production = full_matrix(&reduced_density(state, m)?)?;
            let oracle = reduce_to_leading(&tensor, m)?;
            let dim = oracle.dim();
            for (i, (a, b)) in production.entries().iter().zip(oracle.entries()).enumerate() {
                let d = (a * (1.0 + eps) - b).norm();
                worst.record(d, || format!("state {s}, m={m}, entry ({},{})", i / dim, i % dim));
            }
            cases += 1;
        }
    }
    Ok(CheckResult {
        check: "full_matrix_vs_partial_trace",
        n,
        cases,
        max_deviation: worst.deviation,
        tolerance: ENTRY_TOLERANCE,
        worst: worst.location,
    })
}

fn correlator_check(n: usize, states: &[TwoModeSuperposition]) -> CliResult<CheckResult> {
    let specs = balanced_specs(n);
    let mut worst = Worst::new();
    let mut cases = 0;
    for (s, state) in states.iter().enumerate() {
        for spec in &specs {
            let d = (correlator(state, *spec) - ladder_correlator(state, *spec)?).norm();
            worst.record(d, || {
                format!("state {s}, spec ({},{};{},{})", spec.p_h, spec.p_v, spec.q_h, spec.q_v)
            });
            cases += 1;
        }
    }
    Ok(CheckResult {
        check: "correlators_vs_ladder_operators",
        n,
        cases,
        max_deviation: worst.deviation,
        tolerance: ENTRY_TOLERANCE,
        worst: worst.location,
    })
}

fn exact_fock_check(n: usize, eps: f64) -> CliResult<CheckResult> {
    let mut worst = Worst::new();
    let mut cases = 0;
    for n_v in 0..=n {
        let state = make_fock(ModeOccupation::new(n - n_v, n_v)?)?;
        let tensor = wavefunction_tensor(&state)?;
        for m in 1..=n {
            let exact = full_matrix_exact(&reduced_density(&state, m)?)?
                .ok_or_else(|| CliError::numerical("Fock reduction lost its exact form"))?;
            let oracle = reduce_to_leading(&tensor, m)?;
            let dim = oracle.dim();
            for (i, (a, b)) in exact.iter().zip(oracle.entries()).enumerate() {
                let d = (Complex64::new(a.to_f64() * (1.0 + eps), 0.0) - b).norm();
                worst.record(d, || {
                    format!("|{},{}>, m={m}, entry ({},{}) = {a}", n - n_v, n_v, i / dim, i % dim)
                });
            }
            cases += 1;
        }
    }
    Ok(CheckResult {
        check: "exact_fock_vs_partial_trace",
        n,
        cases,
        max_deviation: worst.deviation,
        tolerance: EXACT_TOLERANCE,
        worst: worst.location,
    })
}

fn nonzero(mut values: Vec<f64>) -> Vec<f64> {
    values.retain(|x| x.abs() > NONZERO_EIGENVALUE);
    values
}

fn spectrum_check(n: usize, states: &[TwoModeSuperposition]) -> CliResult<CheckResult> {
    let mut inputs: Vec<TwoModeSuperposition> = states.iter().take(SPECTRUM_STATES_PER_N).cloned().collect();
    inputs.push(make_fock(ModeOccupation::new(n / 2, n - n / 2)?)?);
    let mut worst = Worst::new();
    let mut cases = 0;
    for (s, state) in inputs.iter().enumerate() {
        for m in 1..=n {
            let rd = reduced_density(state, m)?;
            let full = full_matrix(&rd)?;
            let b = compressed_hermitian(&rd);
            let a = nonzero(hermitian_eigenvalues_raw(full.entries(), full.dim())?);
            let c = nonzero(hermitian_eigenvalues_raw(b.entries(), b.dim())?);
            if a.len() != c.len() {
                worst.record(f64::INFINITY, || format!("state {s}, m={m}: rank {} vs {}", a.len(), c.len()));
            }
            for (i, (x, y)) in a.iter().zip(&c).enumerate() {
                worst.record((x - y).abs(), || format!("state {s}, m={m}, eigenvalue {i}"));
            }
            cases += 1;
        }
    }
    Ok(CheckResult {
        check: "compressed_vs_full_spectrum",
        n,
        cases,
        max_deviation: worst.deviation,
        tolerance: SPECTRUM_TOLERANCE,
        worst: worst.location,
    })
}

fn checks_for(n: usize, eps: f64) -> CliResult<Vec<CheckResult>> {
    let states = states_for(n);
    Ok(vec![
        full_matrix_check(n, &states, eps)?,
        correlator_check(n, &states)?,
        exact_fock_check(n, eps)?,
        spectrum_check(n, &states)?,
    ])
}

/// All checks for `n = 1..=max_n`, ordered by `n` then by check.
pub fn run(options: VerifyOptions) -> CliResult<Vec<CheckResult>> {
    if options.max_n == 0 || options.max_n > ORACLE_MAX_N {
        return Err(CliError::validation(format!(
            "--max-n must lie in 1..={ORACLE_MAX_N}, got {}",
            options.max_n
        )));
    }
    let per_n: Vec<Vec<CheckResult>> = (1..=options.max_n)
        .into_par_iter()
        .map(|n| checks_for(n, options.prefactor_perturbation))
        .collect::<CliResult<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

pub fn to_table(results: &[CheckResult]) -> Table {
    let mut table = Table::new(&["check", "n", "cases", "max_deviation", "tolerance", "status", "worst"]);
    for r in results {
        table.push(vec![
            r.check.into(),
            r.n.into(),
            r.cases.into(),
            r.max_deviation.into(),
            r.tolerance.into(),
            if r.passed() { "PASS" } else { "FAIL" }.into(),
            r.worst.clone().into(),
        ]);
    }
    table
}
