//! Argument grammar and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{self, DEFAULT_SIGMA_BRACKET};
use crate::error::{CliError, CliResult};
use crate::figures::FigureRequest;
use crate::report::{Output, RunReport, Stopwatch};
use crate::state::{self, AmplitudeOrder, StateSpec};
use crate::verify::{self, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Density matrices, spectra and entanglement of two-mode polarization
/// Fock states and their superpositions.
#[derive(Debug, Parser)]
#[command(name = "fockent", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of standard output.
    #[arg(short = 'o', long = "output", global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Output format; `figure` defaults to csv, every other command to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Maximum number of worker threads.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Add wall-clock timings per stage to JSON reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced density matrix of a state, in compressed and optionally full form.
    Reduce(ReduceArgs),
    /// Spectrum, Schmidt parameter K, entropy S and (for n = 2) concurrence C.
    Measures(MeasuresArgs),
    /// Data table behind one of the six figures.
    Figure(FigureArgs),
    /// Width of the Gaussian superposition that minimizes K.
    Sigma0(Sigma0Args),
    /// Compare production paths against brute-force references.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(id = "state", required = true, multiple = false)]
pub struct StateArgs {
    /// Basic Fock state |NH, NV⟩.
    #[arg(long, num_args = 2, value_names = ["NH", "NV"])]
    pub fock: Option<Vec<usize>>,
    /// Amplitude file, or an inline comma-separated list of complex numbers.
    #[arg(long, value_name = "FILE|LIST", allow_hyphen_values = true)]
    pub amplitudes: Option<String>,
    /// Gaussian envelope over n_V with centre M0 and width SIGMA.
    #[arg(long, num_args = 3, value_names = ["N", "M0", "SIGMA"], allow_negative_numbers = true)]
    pub gaussian: Option<Vec<String>>,
}

impl StateArgs {
    fn spec(&self, nh_order: bool) -> CliResult<StateSpec> {
        if nh_order && self.amplitudes.is_none() {
            return Err(CliError::validation("--nh-order applies to --amplitudes only"));
        }
        // Repeated vector flags append; each takes exactly one group of values.
        if self.fock.as_ref().is_some_and(|v| v.len() != 2) {
            return Err(CliError::validation("--fock given more than once"));
        }
        if self.gaussian.as_ref().is_some_and(|v| v.len() != 3) {
            return Err(CliError::validation("--gaussian given more than once"));
        }
        if let Some(v) = &self.fock {
            return Ok(StateSpec::Fock { n_h: v[0], n_v: v[1] });
        }
        if let Some(source) = &self.amplitudes {
            let order = if nh_order { AmplitudeOrder::Nh } else { AmplitudeOrder::Nv };
            return Ok(StateSpec::Amplitudes { source: source.clone(), order });
        }
        let g = self.gaussian.as_ref().expect("clap enforces one state flag");
        let bad = |what: &str, v: &str| CliError::validation(format!("--gaussian: bad {what} {v:?}"));
        Ok(StateSpec::Gaussian {
            n: g[0].parse().map_err(|_| bad("photon number", &g[0]))?,
            m0: g[1].parse().map_err(|_| bad("centre", &g[1]))?,
            sigma: g[2].parse().map_err(|_| bad("width", &g[2]))?,
        })
    }
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Amplitudes are listed by n_H instead of n_V.
    #[arg(long)]
    pub nh_order: bool,
    /// Number of photon variables kept.
    #[arg(short = 'm', default_value_t = 1)]
    pub m: usize,
    /// Also emit the full 2^m × 2^m matrix (m ≤ 12).
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Args)]
pub struct MeasuresArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Amplitudes are listed by n_H instead of n_V.
    #[arg(long)]
    pub nh_order: bool,
    /// Number of photon variables kept.
    #[arg(short = 'm', default_value_t = 1)]
    pub m: usize,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure number.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
    pub index: u8,
    /// Figures 1-2: largest even photon number (default 30).
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Figure 3: photon numbers (default 3..10); figure 4: even photon
    /// numbers (default 6,8,24); figure 6: one photon number (default 6).
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Figure 5: photons per mode (default 60).
    #[arg(long)]
    pub half: Option<usize>,
    /// Figure 5: reduction orders (default 50,30,10); figure 6: one order (default 1).
    #[arg(short = 'm', value_delimiter = ',')]
    pub m: Option<Vec<usize>>,
    /// Figure 6: envelope centres (default 3,2,1,0).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub m0: Option<Vec<f64>>,
    /// Figure 6: largest width of the σ grid (default 3).
    #[arg(long)]
    pub sigma_max: Option<f64>,
    /// Figure 6: number of grid points (default 60).
    #[arg(long)]
    pub sigma_steps: Option<usize>,
}

impl FigureArgs {
    fn request(&self) -> CliResult<FigureRequest> {
        let i = self.index;
        let only = |present: bool, flag: &str, figures: &[u8]| -> CliResult<()> {
            if present && !figures.contains(&i) {
                return Err(CliError::validation(format!("{flag} does not apply to figure {i}")));
            }
            Ok(())
        };
        only(self.n_max.is_some(), "--n-max", &[1, 2])?;
        only(self.n.is_some(), "--n", &[3, 4, 6])?;
        only(self.half.is_some(), "--half", &[5])?;
        only(self.m.is_some(), "-m", &[5, 6])?;
        only(self.m0.is_some(), "--m0", &[6])?;
        only(self.sigma_max.is_some(), "--sigma-max", &[6])?;
        only(self.sigma_steps.is_some(), "--sigma-steps", &[6])?;

        let single = |values: &Option<Vec<usize>>, flag: &str, default: usize| -> CliResult<usize> {
            match values.as_deref() {
                None => Ok(default),
                Some([v]) => Ok(*v),
                Some(_) => Err(CliError::validation(format!("figure 6 takes a single {flag} value"))),
            }
        };
        Ok(match i {
            1 => FigureRequest::One { n_max: self.n_max.unwrap_or(30) },
            2 => FigureRequest::Two { n_max: self.n_max.unwrap_or(30) },
            3 => FigureRequest::Three { ns: self.n.clone().unwrap_or_else(|| (3..=10).collect()) },
            4 => FigureRequest::Four { ns: self.n.clone().unwrap_or_else(|| vec![6, 8, 24]) },
            5 => FigureRequest::Five {
                half: self.half.unwrap_or(60),
                ms: self.m.clone().unwrap_or_else(|| vec![50, 30, 10]),
            },
            _ => FigureRequest::Six {
                n: single(&self.n, "--n", 6)?,
                m0s: self.m0.clone().unwrap_or_else(|| vec![3.0, 2.0, 1.0, 0.0]),
                m: single(&self.m, "-m", 1)?,
                sigma_max: self.sigma_max.unwrap_or(3.0),
                steps: self.sigma_steps.unwrap_or(60),
            },
        })
    }
}

#[derive(Debug, Args)]
pub struct Sigma0Args {
    /// Photon number.
    #[arg(long)]
    pub n: usize,
    /// Envelope centre.
    #[arg(long, allow_negative_numbers = true)]
    pub m0: f64,
    /// Number of photon variables kept.
    #[arg(short = 'm', default_value_t = 1)]
    pub m: usize,
    /// Search interval for σ.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub bracket: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest photon number checked (at most 12).
    #[arg(long, default_value_t = verify::DEFAULT_MAX_N)]
    pub max_n: usize,
    /// Rescale production reduced matrices by 1 + EPS before comparing.
    #[arg(long, hide = true, default_value_t = 0.0, value_name = "EPS")]
    pub perturb_prefactor: f64,
}

/// Output of one invocation plus the verification verdict, if any.
struct Run {
    output: Output,
    failure: Option<CliError>,
}

fn run_command(cli: &Cli, sw: &mut Stopwatch) -> CliResult<Run> {
    let cap = state::max_n()?;
    let output = match &cli.command {
        Command::Reduce(a) => commands::reduce(&a.state.spec(a.nh_order)?, a.m, a.full, cap, sw)?,
        Command::Measures(a) => commands::measures(&a.state.spec(a.nh_order)?, a.m, cap, sw)?,
        Command::Sigma0(a) => {
            let bracket = a.bracket.as_deref().map_or(DEFAULT_SIGMA_BRACKET, |b| (b[0], b[1]));
            state::check_n(a.n, cap)?;
            commands::sigma0(a.n, a.m0, a.m, bracket, sw)?
        }
        Command::Figure(a) => {
            let request = a.request()?;
            let table = request.run(cap)?;
            sw.lap("figure");
            let mut report = RunReport::new("figure");
            report.input("figure", request.index()).input("parameters", request.describe());
            report.output("columns", table.columns().to_vec()).output("rows", table.to_json());
            Output { report, table }
        }
        Command::Verify(a) => {
            let results = verify::run(VerifyOptions { max_n: a.max_n, prefactor_perturbation: a.perturb_prefactor })?;
            sw.lap("verify");
            let table = verify::to_table(&results);
            let failed: Vec<String> = results
                .iter()
                .filter(|r| !r.passed())
                .map(|r| format!("{} n={} at {}", r.check, r.n, r.worst))
                .collect();
            let mut report = RunReport::new("verify");
            report.input("max_n", a.max_n).input("seed", verify::SEED).input("states_per_n", verify::STATES_PER_N);
            if a.perturb_prefactor != 0.0 {
                report.input("prefactor_perturbation", crate::table::float_value(a.perturb_prefactor));
            }
            report
                .output("passed", failed.is_empty())
                .output("failed", failed.len())
                .output("checks", table.to_json());
            let failure = (!failed.is_empty())
                .then(|| CliError::verification(format!("{} check(s) failed: {}", failed.len(), failed.join("; "))));
            return Ok(Run { output: Output { report, table }, failure });
        }
    };
    Ok(Run { output, failure: None })
}

fn default_format(command: &Command) -> Format {
    match command {
        Command::Figure(_) => Format::Csv,
        _ => Format::Json,
    }
}

/// Runs a parsed command and writes its output; the error carries the exit
/// class.
pub fn execute(cli: &Cli) -> CliResult<()> {
    let mut sw = Stopwatch::default();
    let run = match cli.jobs {
        Some(0) => return Err(CliError::validation("--jobs must be at least 1")),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::validation(format!("--jobs: {e}")))?
            .install(|| run_command(cli, &mut sw))?,
        None => run_command(cli, &mut sw)?,
    };
    let Run { mut output, failure } = run;
    if cli.timings {
        output.report.timings = Some(sw.into_map());
    }
    let text = match cli.format.unwrap_or_else(|| default_format(&cli.command)) {
        Format::Json => output.report.to_json_string(),
        Format::Csv => output.table.to_csv()?,
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    failure.map_or(Ok(()), Err)
}

/// Parses `args`, runs the command, and reports failures as one JSON line on
/// standard error.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let message = message.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let err = CliError::validation(message.trim_start_matches("error: "));
            eprintln!("{}", err.to_json_line());
            return err.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json_line());
            err.exit_code()
        }
    }
}
