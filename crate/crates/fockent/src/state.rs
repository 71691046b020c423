//! State specifications from the command line and the amplitude file format.
//!
//! An amplitude file has a header line `n <integer>` followed by `n + 1`
//! lines `<index> <re> <im>`, one per basis state, in any order. Indices run
//! over `0..=n` and each appears exactly once. Blank lines and lines starting
//! with `#` are ignored.

use std::path::Path;

use fockent_core::fock::{gaussian_superposition_with_cap, make_fock_with_cap, make_superposition_with_cap};
use fockent_core::{Complex64, ModeOccupation, TwoModeSuperposition, DEFAULT_MAX_N};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::table::float_value;

/// Environment variable that replaces the default photon-number cap.
pub const MAX_N_ENV: &str = "FOCKENT_MAX_N";

/// Photon-number cap: [`MAX_N_ENV`] when set, the library default otherwise.
pub fn max_n() -> CliResult<usize> {
    match std::env::var(MAX_N_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::validation(format!("{MAX_N_ENV} must be a positive integer, got {raw:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_N),
        Err(e) => Err(CliError::validation(format!("{MAX_N_ENV}: {e}"))),
    }
}

pub fn check_n(n: usize, cap: usize) -> CliResult<()> {
    if n == 0 {
        return Err(fockent_core::Error::NoPhotons.into());
    }
    if n > cap {
        return Err(fockent_core::Error::PhotonLimit { n, max: cap }.into());
    }
    Ok(())
}

/// Which index the amplitudes of a list or file are ordered by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum AmplitudeOrder {
    /// Entry `i` multiplies `|n - i, i⟩`.
    #[default]
    Nv,
    /// Entry `i` multiplies `|i, n - i⟩`.
    Nh,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Fock { n_h: usize, n_v: usize },
    Amplitudes { source: String, order: AmplitudeOrder },
    Gaussian { n: usize, m0: f64, sigma: f64 },
}

impl StateSpec {
    pub fn build(&self, cap: usize) -> CliResult<TwoModeSuperposition> {
        match self {
            StateSpec::Fock { n_h, n_v } => {
                let occ = ModeOccupation::with_cap(*n_h, *n_v, cap)?;
                Ok(make_fock_with_cap(occ, cap)?)
            }
            StateSpec::Amplitudes { source, order } => {
                let amplitudes = read_amplitudes(source)?;
                let n = amplitudes.len() - 1;
                let by_nv = match order {
                    AmplitudeOrder::Nv => amplitudes,
                    AmplitudeOrder::Nh => amplitudes.into_iter().rev().collect(),
                };
                Ok(make_superposition_with_cap(n, &by_nv, cap)?)
            }
            StateSpec::Gaussian { n, m0, sigma } => {
                Ok(gaussian_superposition_with_cap(*n, *m0, *sigma, cap)?)
            }
        }
    }

    /// Echo for run reports.
    pub fn describe(&self) -> Value {
        match self {
            StateSpec::Fock { n_h, n_v } => json!({ "kind": "fock", "n_h": n_h, "n_v": n_v }),
            StateSpec::Amplitudes { source, order } => json!({
                "kind": "amplitudes",
                "source": source,
                "order": match order { AmplitudeOrder::Nv => "n_v", AmplitudeOrder::Nh => "n_h" },
            }),
            StateSpec::Gaussian { n, m0, sigma } => json!({
                "kind": "gaussian",
                "n": n,
                "m0": float_value(*m0),
                "sigma": float_value(*sigma),
            }),
        }
    }
}

/// Reads a file when `source` names an existing path, otherwise parses it as
/// a comma-separated list of complex numbers (`1`, `0.5-2i`, `i`, ...).
pub fn read_amplitudes(source: &str) -> CliResult<Vec<Complex64>> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("{source}: {e}")))?;
        parse_amplitude_file(&text).map_err(|e| CliError::validation(format!("{source}: {}", e.message)))
    } else {
        parse_inline(source)
    }
}

pub fn parse_inline(list: &str) -> CliResult<Vec<Complex64>> {
    let values: Vec<Complex64> = list
        .split(',')
        .map(|item| {
            let item = item.trim();
            item.parse::<Complex64>().map_err(|_| {
                CliError::validation(format!(
                    "amplitudes: {list:?} is neither a file nor a list of complex numbers (bad item {item:?})"
                ))
            })
        })
        .collect::<CliResult<_>>()?;
    if values.len() < 2 {
        return Err(CliError::validation("amplitudes: a state needs at least n + 1 = 2 entries"));
    }
    Ok(values)
}

pub fn parse_amplitude_file(text: &str) -> CliResult<Vec<Complex64>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or_else(|| CliError::validation("empty amplitude file"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", value] => value
            .parse::<usize>()
            .map_err(|_| CliError::validation(format!("line {line_no}: bad photon number {value:?}")))?,
        _ => return Err(CliError::validation(format!("line {line_no}: expected `n <integer>`"))),
    };
    if n == 0 {
        return Err(fockent_core::Error::NoPhotons.into());
    }

    let mut slots: Vec<Option<Complex64>> = vec![None; n + 1];
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [index, re, im] = fields[..] else {
            return Err(CliError::validation(format!("line {line_no}: expected `<index> <re> <im>`")));
        };
        let bad = |what: &str| CliError::validation(format!("line {line_no}: bad {what}"));
        let index: usize = index.parse().map_err(|_| bad("index"))?;
        let re: f64 = re.parse().map_err(|_| bad("real part"))?;
        let im: f64 = im.parse().map_err(|_| bad("imaginary part"))?;
        let slot = slots
            .get_mut(index)
            .ok_or_else(|| CliError::validation(format!("line {line_no}: index {index} outside 0..={n}")))?;
        if slot.is_some() {
            return Err(CliError::validation(format!("line {line_no}: duplicate index {index}")));
        }
        *slot = Some(Complex64::new(re, im));
    }
    slots
        .iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| CliError::validation(format!("missing amplitude for index {i}"))))
        .collect()
}
