//! Command-line driver: job specification, dispatch and report output.
//!
//! Exit codes: 0 success, 1 failed check, 2 invalid input, 3 internal error.

pub mod job;
pub mod run;

use std::path::PathBuf;

use clap::Parser;

use crate::correlator::{Dispersion, StateSpec};
use crate::error::Error;
use crate::oracle::NumericAssignment;
pub use job::{JobSpec, Mode, NumericRequest, DEFAULT_MAX_N, SCHEMA_VERSION};
pub use run::{run, Body, Report};

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum StateArg {
    Fock,
    Gaussian,
    Temperature,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DispersionArg {
    Linear,
    Quadratic,
}

#[derive(Debug, Parser)]
#[command(
    name = "qdeform",
    version,
    about = "Correlators of q-deformed entangled operators"
)]
pub struct Args {
    /// Operator word, e.g. "a a a+ a+" or "a(t1,k1) a+(s,q)"
    #[arg(long, default_value = "")]
    pub pattern: String,

    #[arg(long, value_enum, default_value = "fock")]
    pub state: StateArg,

    /// Inverse temperature for --state temperature
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,

    #[arg(long, value_enum, default_value = "quadratic")]
    pub dispersion: DispersionArg,

    #[arg(long, value_enum, default_value = "finite")]
    pub mode: Mode,

    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,

    /// JSON file holding a numeric assignment
    #[arg(long, conflicts_with = "seed")]
    pub numeric: Option<PathBuf>,

    /// Seed for a random numeric assignment
    #[arg(long)]
    pub seed: Option<u64>,

    /// Print the report as JSON
    #[arg(long)]
    pub json: bool,

    /// Write the quadrature sweep as CSV to this path
    #[arg(long)]
    pub csv: Option<PathBuf>,

    /// Comma-separated lambda values for --mode quadrature
    #[arg(long, value_delimiter = ',')]
    pub sweep: Option<Vec<f64>>,

    /// Run check-theorem2 or diagrams over every balanced pattern of this length
    #[arg(long)]
    pub all_patterns: Option<usize>,

    /// Read the whole job from a JSON file; other job flags are ignored
    #[arg(long)]
    pub job: Option<PathBuf>,
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

impl Args {
    pub fn to_job(&self) -> Result<JobSpec, Error> {
        if let Some(path) = &self.job {
            return JobSpec::from_json(&read(path)?);
        }
        let dispersion = match self.dispersion {
            DispersionArg::Linear => Dispersion::Linear,
            DispersionArg::Quadratic => Dispersion::Quadratic,
        };
        let state = match self.state {
            StateArg::Fock => StateSpec::Fock,
            StateArg::Gaussian => StateSpec::Gaussian,
            StateArg::Temperature => StateSpec::Temperature {
                beta: self.beta,
                dispersion,
            },
        };
        let mut job = JobSpec::new(&self.pattern, state, self.mode);
        job.max_n = self.max_n;
        job.all_patterns = self.all_patterns;
        if let Some(lambdas) = &self.sweep {
            job.lambdas = lambdas.clone();
        }
        job.numeric = match (&self.numeric, self.seed) {
            (Some(path), _) => {
                let assignment: NumericAssignment = serde_json::from_str(&read(path)?)
                    .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                Some(NumericRequest::Assignment { assignment })
            }
            (None, Some(seed)) => Some(NumericRequest::Random { seed }),
            (None, None) => None,
        };
        Ok(job)
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::DuplicateLabel { .. }
            | Error::InvalidArgument(_)
            | Error::Unassigned(_)
            | Error::LimitObject(_)
    )
}

/// Runs the CLI and returns the process exit code.
pub fn main_with(args: Args) -> i32 {
    let outcome = args.to_job().and_then(|job| {
        if args.csv.is_some() && job.mode != Mode::Quadrature {
            return Err(Error::InvalidArgument(
                "--csv is only used by --mode quadrature".into(),
            ));
        }
        run(&job)
    });
    match outcome {
        Ok(report) => {
            if let (Some(path), Body::Quadrature { points, .. }) = (&args.csv, &report.body) {
                if let Err(e) = std::fs::write(path, crate::oracle::to_csv(points)) {
                    eprintln!("error: {}: {e}", path.display());
                    return 2;
                }
            }
            if args.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            if is_input_error(&e) {
                2
            } else {
                3
            }
        }
    }
}
