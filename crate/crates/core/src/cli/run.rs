use std::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::job::{JobSpec, Mode, NumericRequest, SCHEMA_VERSION};
use crate::correlator::{finite_lambda_correlator, take_limit, Dispersion, StateSpec};
use crate::diagrams::{diagram_stats, DiagramStats};
use crate::error::Result;
use crate::masterfield::{free_correlator, master_word, theorem2_check};
use crate::oracle::quadrature::{sweep, QuadraturePoint, TestFunction};
use crate::oracle::{doubled_normal_order, numeric_eval, qdef_normal_order, NumericAssignment};
use crate::symcore::render::{render_monomial, render_sum_lines};
use crate::symcore::word::pattern_to_string;
use crate::symcore::{balanced_patterns, NameTable, OperatorWord, ScalarSum};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NumericValue {
    pub re: f64,
    pub im: f64,
    pub assignment: NumericAssignment,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PatternStats {
    pub pattern: String,
    #[serde(flatten)]
    pub stats: DiagramStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckEntry {
    pub pattern: String,
    pub equal: bool,
    pub terms: usize,
    pub only_in_limit: Vec<String>,
    pub only_in_free: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Body {
    Sum {
        sum: ScalarSum,
        text: String,
        numeric: Option<NumericValue>,
    },
    Diagrams {
        patterns: Vec<PatternStats>,
    },
    Check {
        passed: bool,
        entries: Vec<CheckEntry>,
    },
    Quadrature {
        test_function: TestFunction,
        points: Vec<QuadraturePoint>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub mode: Mode,
    pub state: StateSpec,
    pub pattern: String,
    pub body: Body,
}

impl Report {
    /// 0 on success or equality, 1 on a failed check.
    pub fn exit_code(&self) -> i32 {
        match self.body {
            Body::Check { passed: false, .. } => 1,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mode: {}", self.mode.name());
        let _ = writeln!(out, "state: {}", self.state.name());
        if !self.pattern.is_empty() {
            let _ = writeln!(out, "pattern: {}", self.pattern);
        }
        match &self.body {
            Body::Sum { sum, text, numeric } => {
                let _ = writeln!(out, "terms: {}", sum.len());
                out.push_str(text);
                if let Some(v) = numeric {
                    let _ = writeln!(out, "numeric: {:.15e} {:+.15e}i", v.re, v.im);
                }
            }
            Body::Diagrams { patterns } => {
                for p in patterns {
                    let _ = writeln!(
                        out,
                        "{}: total={} noncrossing={} fock={}",
                        p.pattern, p.stats.total, p.stats.non_crossing, p.stats.fock_surviving
                    );
                    for d in &p.stats.diagrams {
                        let _ = writeln!(out, "  {d}");
                    }
                }
            }
            Body::Check { passed, entries } => {
                for e in entries {
                    let _ = writeln!(
                        out,
                        "{} {} ({} terms)",
                        if e.equal { "equal" } else { "DIFFER" },
                        e.pattern,
                        e.terms
                    );
                    for m in &e.only_in_limit {
                        let _ = writeln!(out, "  only in limit: {m}");
                    }
                    for m in &e.only_in_free {
                        let _ = writeln!(out, "  only in free: {m}");
                    }
                }
                let _ = writeln!(out, "{}", if *passed { "PASS" } else { "FAIL" });
            }
            Body::Quadrature { points, .. } => {
                out.push_str(&crate::oracle::to_csv(points));
            }
        }
        out
    }
}

fn numeric(
    request: &Option<NumericRequest>,
    word: &OperatorWord,
    state: &StateSpec,
    sum: &ScalarSum,
) -> Result<Option<NumericValue>> {
    let assignment = match request {
        None => return Ok(None),
        Some(NumericRequest::Assignment { assignment }) => assignment.clone(),
        Some(NumericRequest::Random { seed }) => {
            let dispersion = match state {
                StateSpec::Temperature { dispersion, .. } => *dispersion,
                _ => Dispersion::Quadratic,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            NumericAssignment::random(word, state, dispersion, &mut rng)
        }
    };
    let v = numeric_eval(sum, &assignment)?;
    Ok(Some(NumericValue {
        re: v.re,
        im: v.im,
        assignment,
    }))
}

fn patterns_of(job: &JobSpec) -> Result<Vec<(OperatorWord, NameTable)>> {
    match job.all_patterns {
        Some(len) => Ok(balanced_patterns(len)
            .iter()
            .map(|p| {
                let w = OperatorWord::from_pattern(p);
                let names = w.default_names();
                (w, names)
            })
            .collect()),
        None => Ok(vec![OperatorWord::parse(&job.pattern)?]),
    }
}

/// Executes a validated job.
pub fn run(job: &JobSpec) -> Result<Report> {
    job.validate()?;
    let report = |pattern: String, body: Body| Report {
        schema_version: SCHEMA_VERSION,
        mode: job.mode,
        state: job.state,
        pattern,
        body,
    };

    match job.mode {
        Mode::Quadrature => {
            let points = sweep(&job.test_function, &job.lambdas)?;
            Ok(report(
                String::new(),
                Body::Quadrature {
                    test_function: job.test_function,
                    points,
                },
            ))
        }
        Mode::Diagrams => {
            let patterns = patterns_of(job)?
                .iter()
                .map(|(w, _)| {
                    let p = w.pattern();
                    PatternStats {
                        pattern: pattern_to_string(&p),
                        stats: diagram_stats(&p),
                    }
                })
                .collect();
            let shown = if job.all_patterns.is_some() {
                String::new()
            } else {
                job.pattern.clone()
            };
            Ok(report(shown, Body::Diagrams { patterns }))
        }
        Mode::CheckTheorem2 => {
            let mut entries = Vec::new();
            for (w, names) in patterns_of(job)? {
                let r = theorem2_check(&w, &job.state);
                entries.push(CheckEntry {
                    pattern: w.render(&names),
                    equal: r.equal,
                    terms: r.limit.len(),
                    only_in_limit: r
                        .only_in_limit
                        .iter()
                        .map(|m| render_monomial(m, &names))
                        .collect(),
                    only_in_free: r
                        .only_in_free
                        .iter()
                        .map(|m| render_monomial(m, &names))
                        .collect(),
                });
            }
            let passed = entries.iter().all(|e| e.equal);
            let shown = if job.all_patterns.is_some() {
                String::new()
            } else {
                job.pattern.clone()
            };
            Ok(report(shown, Body::Check { passed, entries }))
        }
        Mode::Finite | Mode::Limit | Mode::Free | Mode::OracleFock | Mode::OracleDouble => {
            let (word, names) = OperatorWord::parse(&job.pattern)?;
            let sum = match job.mode {
                Mode::Finite => finite_lambda_correlator(&word, &job.state),
                Mode::Limit => take_limit(&finite_lambda_correlator(&word, &job.state))?,
                Mode::Free => free_correlator(&master_word(&word), &job.state),
                Mode::OracleFock => qdef_normal_order(&word),
                Mode::OracleDouble => doubled_normal_order(&word, &job.state),
                _ => unreachable!(),
            };
            let numeric = numeric(&job.numeric, &word, &job.state, &sum)?;
            Ok(report(
                word.render(&names),
                Body::Sum {
                    text: render_sum_lines(&sum, &names),
                    sum,
                    numeric,
                },
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_point_diagrams() {
        let r = run(&JobSpec::new("a a a+ a+", StateSpec::Fock, Mode::Diagrams)).unwrap();
        let Body::Diagrams { patterns } = &r.body else {
            panic!()
        };
        assert_eq!(
            (patterns[0].stats.total, patterns[0].stats.non_crossing),
            (2, 1)
        );
    }

    #[test]
    fn theorem2_sweep_passes() {
        let mut job = JobSpec::new("", StateSpec::Gaussian, Mode::CheckTheorem2);
        job.all_patterns = Some(4);
        let r = run(&job).unwrap();
        assert_eq!(r.exit_code(), 0);
        assert!(r.to_text().ends_with("PASS\n"));
    }

    #[test]
    fn parse_errors_surface() {
        let err = run(&JobSpec::new("a b+ x", StateSpec::Fock, Mode::Finite)).unwrap_err();
        assert!(matches!(
            err,
            crate::error::Error::Parse { position: 3, .. }
        ));
    }

    #[test]
    fn seeded_numeric_is_reproducible() {
        let mut job = JobSpec::new("a a a+ a+", StateSpec::Fock, Mode::Finite);
        job.numeric = Some(NumericRequest::Random { seed: 5 });
        let a = run(&job).unwrap().to_json();
        let b = run(&job).unwrap().to_json();
        assert_eq!(a, b);
    }
}
