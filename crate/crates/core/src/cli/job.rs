use serde::{Deserialize, Serialize};

use crate::correlator::StateSpec;
use crate::error::{Error, Result};
use crate::oracle::quadrature::{TestFunction, DEFAULT_SWEEP};
use crate::oracle::NumericAssignment;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_MAX_N: usize = 12;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[value(rename_all = "kebab-case")]
pub enum Mode {
    Finite,
    Limit,
    Free,
    OracleFock,
    OracleDouble,
    CheckTheorem2,
    Diagrams,
    Quadrature,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Finite => "finite",
            Mode::Limit => "limit",
            Mode::Free => "free",
            Mode::OracleFock => "oracle-fock",
            Mode::OracleDouble => "oracle-double",
            Mode::CheckTheorem2 => "check-theorem2",
            Mode::Diagrams => "diagrams",
            Mode::Quadrature => "quadrature",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum NumericRequest {
    Assignment {
        assignment: NumericAssignment,
    },
    /// Random assignment drawn with ChaCha8 from `seed`.
    Random {
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JobSpec {
    pub schema_version: u32,
    /// Whitespace-separated `a`/`a+` tokens, or explicit `a(t,k)` letters.
    #[serde(default)]
    pub pattern: String,
    /// When set, `check-theorem2` and `diagrams` run over every balanced
    /// pattern of this length instead of `pattern`.
    #[serde(default)]
    pub all_patterns: Option<usize>,
    pub state: StateSpec,
    pub mode: Mode,
    #[serde(default = "default_max_n")]
    pub max_n: usize,
    #[serde(default)]
    pub numeric: Option<NumericRequest>,
    #[serde(default = "default_sweep")]
    pub lambdas: Vec<f64>,
    #[serde(default = "default_test_function")]
    pub test_function: TestFunction,
}

fn default_max_n() -> usize {
    DEFAULT_MAX_N
}

fn default_sweep() -> Vec<f64> {
    DEFAULT_SWEEP.to_vec()
}

fn default_test_function() -> TestFunction {
    TestFunction::Gaussian
}

impl JobSpec {
    pub fn new(pattern: &str, state: StateSpec, mode: Mode) -> Self {
        JobSpec {
            schema_version: SCHEMA_VERSION,
            pattern: pattern.to_string(),
            all_patterns: None,
            state,
            mode,
            max_n: DEFAULT_MAX_N,
            numeric: None,
            lambdas: default_sweep(),
            test_function: TestFunction::Gaussian,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let job: JobSpec = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("job file: {e}")))?;
        if job.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported schemaVersion {} (expected {SCHEMA_VERSION})",
                job.schema_version
            )));
        }
        Ok(job)
    }

    /// Checks mode/state compatibility and size limits. Pattern syntax is checked
    /// when the pattern is parsed.
    pub fn validate(&self) -> Result<()> {
        match (self.mode, &self.state) {
            (Mode::OracleFock, s) if !s.is_fock() => {
                return Err(Error::InvalidArgument(
                    "oracle-fock requires --state fock".into(),
                ))
            }
            (Mode::OracleDouble, s) if s.is_fock() => {
                return Err(Error::InvalidArgument(
                    "oracle-double requires a gaussian or temperature state".into(),
                ))
            }
            _ => {}
        }
        if let StateSpec::Temperature { beta, .. } = self.state {
            if !(beta > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "beta must be positive, got {beta}"
                )));
            }
        }
        let len = match self.all_patterns {
            Some(len) => len,
            None => self.pattern.split_whitespace().count(),
        };
        if len > self.max_n {
            return Err(Error::InvalidArgument(format!(
                "pattern length {len} exceeds the maximum {}",
                self.max_n
            )));
        }
        if self.all_patterns.is_some() && !matches!(self.mode, Mode::CheckTheorem2 | Mode::Diagrams)
        {
            return Err(Error::InvalidArgument(
                "all-patterns is only supported by check-theorem2 and diagrams".into(),
            ));
        }
        if self.mode == Mode::Quadrature {
            if self.lambdas.is_empty() {
                return Err(Error::InvalidArgument("empty lambda sweep".into()));
            }
            if let Some(bad) = self.lambdas.iter().find(|l| !(**l > 0.0)) {
                return Err(Error::InvalidArgument(format!(
                    "lambda must be positive, got {bad}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_modes_check_state() {
        assert!(JobSpec::new("a a+", StateSpec::Gaussian, Mode::OracleFock)
            .validate()
            .is_err());
        assert!(JobSpec::new("a a+", StateSpec::Fock, Mode::OracleDouble)
            .validate()
            .is_err());
        assert!(JobSpec::new("a a+", StateSpec::Fock, Mode::OracleFock)
            .validate()
            .is_ok());
    }

    #[test]
    fn length_limit() {
        let mut job = JobSpec::new("a a+ a a+", StateSpec::Fock, Mode::Finite);
        job.max_n = 2;
        assert!(job.validate().is_err());
    }

    #[test]
    fn json_defaults() {
        let job = JobSpec::from_json(
            r#"{"schemaVersion":1,"pattern":"a a+","state":{"kind":"fock"},"mode":"oracle-fock"}"#,
        )
        .unwrap();
        assert_eq!(job.max_n, DEFAULT_MAX_N);
        assert_eq!(job.lambdas, DEFAULT_SWEEP.to_vec());
        assert!(JobSpec::from_json(
            r#"{"schemaVersion":9,"pattern":"","state":{"kind":"fock"},"mode":"finite"}"#
        )
        .is_err());
    }
}
