//! The `reduce`, `measures` and `sigma0` commands.

use fockent_core::density::full_matrix_exact;
use fockent_core::spectrum::{exact_fock_k, reduced_spectrum};
use fockent_core::{
    analytic_fock_eigenvalues, binomial, compressed_hermitian, concurrence, find_min_k_sigma,
    full_matrix, reduced_density, Complex64, ExactNonnegativeRational, ReducedDensity, Spectrum,
};
use serde_json::{json, Map, Value};

use crate::error::CliResult;
use crate::report::{Output, RunReport, Stopwatch};
use crate::state::StateSpec;
use crate::table::{float_value, rational_value, Cell, Table};

/// Default search interval for `sigma0`. Its lower end stays clear of the
/// `σ → 0` plateau where edge-centred envelopes collapse onto a Fock state.
pub const DEFAULT_SIGMA_BRACKET: (f64, f64) = (0.3, 5.0);

fn complex_pairs(entries: &[Complex64]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|c| Value::Array(vec![float_value(c.re), float_value(c.im)]))
            .collect(),
    )
}

fn matrix_dump(
    form: &str,
    rd: &ReducedDensity,
    order: usize,
    entries: &[Complex64],
    exact: Option<&[ExactNonnegativeRational]>,
) -> Value {
    let mut dump = Map::new();
    dump.insert("form".into(), form.into());
    dump.insert("n".into(), rd.n().into());
    dump.insert("m".into(), rd.m().into());
    dump.insert("prefactor".into(), rational_value(rd.prefactor()));
    dump.insert("prefactor_value".into(), float_value(rd.prefactor().to_f64()));
    dump.insert("order".into(), order.into());
    dump.insert("entries".into(), complex_pairs(entries));
    if let Some(exact) = exact {
        dump.insert("entries_exact".into(), exact.iter().map(rational_value).collect());
    }
    Value::Object(dump)
}

fn push_matrix_rows(
    table: &mut Table,
    form: &str,
    order: usize,
    entries: &[Complex64],
    exact: Option<&[ExactNonnegativeRational]>,
) {
    for (i, c) in entries.iter().enumerate() {
        table.push(vec![
            form.into(),
            (i / order).into(),
            (i % order).into(),
            c.re.into(),
            c.im.into(),
            exact.map(|e| &e[i]).into(),
        ]);
    }
}

/// Exact compressed entries `C(m,k) ρ[k][k]` for a single Fock state.
fn compressed_exact(rd: &ReducedDensity) -> Option<Vec<ExactNonnegativeRational>> {
    let m = rd.m();
    let mut out = vec![ExactNonnegativeRational::zero(); (m + 1) * (m + 1)];
    for k in 0..=m {
        let weight = ExactNonnegativeRational::from_integer(binomial(m, k));
        out[k * (m + 1) + k] = &weight * &rd.exact_entry(k, k)?;
    }
    Some(out)
}

pub fn reduce(spec: &StateSpec, m: usize, full: bool, cap: usize, sw: &mut Stopwatch) -> CliResult<Output> {
    let state = spec.build(cap)?;
    sw.lap("state");
    let rd = reduced_density(&state, m)?;
    sw.lap("reduction");

    let mut report = RunReport::new("reduce");
    report.input("state", spec.describe()).input("m", m).input("full", full);
    let mut table = Table::new(&["form", "row", "col", "re", "im", "exact"]);

    let b = compressed_hermitian(&rd);
    let b_exact = compressed_exact(&rd);
    report.output("compressed", matrix_dump("compressed", &rd, b.dim(), b.entries(), b_exact.as_deref()));
    report.output("trace", float_value(b.trace().re));
    push_matrix_rows(&mut table, "compressed", b.dim(), b.entries(), b_exact.as_deref());

    if full {
        let f = full_matrix(&rd)?;
        let f_exact = full_matrix_exact(&rd)?;
        report.output("full", matrix_dump("full", &rd, f.dim(), f.entries(), f_exact.as_deref()));
        push_matrix_rows(&mut table, "full", f.dim(), f.entries(), f_exact.as_deref());
    }
    sw.lap("assembly");
    Ok(Output { report, table })
}

pub fn measures(spec: &StateSpec, m: usize, cap: usize, sw: &mut Stopwatch) -> CliResult<Output> {
    let state = spec.build(cap)?;
    sw.lap("state");

    let (method, spectrum, exact, k_exact) = match state.as_fock() {
        Some(occ) => {
            let mut values: Vec<ExactNonnegativeRational> =
                analytic_fock_eigenvalues(occ, m)?.into_iter().map(|(_, x)| x).collect();
            values.sort_by(|a, b| b.cmp(a));
            let spectrum = Spectrum::from_eigenvalues(values.iter().map(|x| x.to_f64()).collect())?;
            ("analytic", spectrum, Some(values), Some(exact_fock_k(occ, m)?))
        }
        None => ("numerical", reduced_spectrum(&state, m)?, None, None),
    };
    sw.lap("spectrum");
    let k = k_exact.as_ref().map_or(spectrum.k, |k| k.to_f64());
    let c = if state.n() == 2 { Some(concurrence(&state)?) } else { None };
    sw.lap("measures");

    let mut report = RunReport::new("measures");
    report.input("state", spec.describe()).input("m", m);
    report.output("method", method);
    report.output("eigenvalues", spectrum.eigenvalues.iter().map(|&x| float_value(x)).collect::<Value>());
    if let Some(exact) = &exact {
        report.output("eigenvalues_exact", exact.iter().map(rational_value).collect::<Value>());
    }
    report.output("eigenvalue_sum", float_value(spectrum.sum()));
    report.output("K", float_value(k));
    if let Some(k_exact) = &k_exact {
        report.output("K_exact", rational_value(k_exact));
    }
    report.output("S", float_value(spectrum.s));
    if let Some(c) = c {
        report.output("C", float_value(c));
    }

    let mut table = Table::new(&["quantity", "value", "exact"]);
    table.push(vec!["K".into(), k.into(), k_exact.as_ref().into()]);
    table.push(vec!["S".into(), spectrum.s.into(), Cell::Empty]);
    if let Some(c) = c {
        table.push(vec!["C".into(), c.into(), Cell::Empty]);
    }
    for (i, x) in spectrum.eigenvalues.iter().enumerate() {
        let e = exact.as_ref().map(|e| &e[i]);
        table.push(vec![format!("lambda_{}", i + 1).into(), (*x).into(), e.into()]);
    }
    Ok(Output { report, table })
}

pub fn sigma0(n: usize, m0: f64, m: usize, bracket: (f64, f64), sw: &mut Stopwatch) -> CliResult<Output> {
    let min = find_min_k_sigma(n, m0, m, bracket)?;
    sw.lap("search");
    let gap = min.k - 1.0;

    let mut report = RunReport::new("sigma0");
    report
        .input("n", n)
        .input("m0", float_value(m0))
        .input("m", m)
        .input("bracket", json!([float_value(bracket.0), float_value(bracket.1)]));
    report
        .output("sigma_star", float_value(min.sigma))
        .output("K_star", float_value(min.k))
        .output("gap_to_one", float_value(gap))
        .output("reached_one", min.reached_one());

    let mut table = Table::new(&["n", "m0", "m", "sigma_star", "K_star", "gap_to_one", "reached_one"]);
    table.push(vec![n.into(), m0.into(), m.into(), min.sigma.into(), min.k.into(), gap.into(), min.reached_one().into()]);
    Ok(Output { report, table })
}
