//! Diagram-sum correlators at finite coupling and in the weak-coupling limit.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::diagrams::{enumerate_pairings, Diagram, Edge, EdgeRelation};
use crate::error::{Error, Result};
use crate::symcore::{
    Basis, EnergyComb, Eps, OperatorWord, ScalarFactor, ScalarMonomial, ScalarSum, TimeComb,
};

/// Dispersion law used when a temperature state is evaluated numerically.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dispersion {
    /// `ω(k) = |k|`
    Linear,
    /// `ω(k) = k²/2`
    Quadratic,
}

impl Dispersion {
    pub fn omega(self, k: [f64; 3]) -> f64 {
        let k2 = k.iter().map(|x| x * x).sum::<f64>();
        match self {
            Dispersion::Linear => k2.sqrt(),
            Dispersion::Quadratic => 0.5 * k2,
        }
    }
}

/// Gaussian (mean-zero, non-squeezed) state of the field.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateSpec {
    /// `N(k) = 0`
    Fock,
    /// `N(k)` kept as a symbol.
    Gaussian,
    /// Symbolically identical to `Gaussian`; `β` and the dispersion are used only
    /// when occupations are evaluated numerically.
    Temperature { beta: f64, dispersion: Dispersion },
}

impl StateSpec {
    pub fn is_fock(&self) -> bool {
        matches!(self, StateSpec::Fock)
    }

    /// Bose occupation `1/(e^{βω} - 1)`; zero for the Fock state.
    pub fn occupation(&self, omega: f64) -> Option<f64> {
        match *self {
            StateSpec::Fock => Some(0.0),
            StateSpec::Gaussian => None,
            StateSpec::Temperature { beta, .. } => Some(1.0 / (beta * omega).exp_m1()),
        }
    }

    /// Applies `N(k) → 0` in the Fock state (so `N(k)+1 → 1`).
    pub fn evaluate(&self, s: &ScalarSum) -> ScalarSum {
        if !self.is_fock() {
            return s.clone();
        }
        s.terms
            .iter()
            .filter(|m| {
                !m.factors
                    .iter()
                    .any(|f| matches!(f, ScalarFactor::MFactor { offset: 0, .. }))
            })
            .map(|m| {
                let mut m = m.clone();
                m.factors
                    .retain(|f| !matches!(f, ScalarFactor::MFactor { .. }));
                m
            })
            .collect()
    }

    pub fn name(&self) -> &'static str {
        match self {
            StateSpec::Fock => "fock",
            StateSpec::Gaussian => "gaussian",
            StateSpec::Temperature { .. } => "temperature",
        }
    }
}

fn check_edge(edge: &Edge, word: &OperatorWord) -> Result<()> {
    let bad = edge.creation == 0
        || edge.annihilation == 0
        || edge.creation > word.len()
        || edge.annihilation > word.len()
        || word.at(edge.creation).eps != Eps::Creation
        || word.at(edge.annihilation).eps != Eps::Annihilation;
    if bad {
        return Err(Error::InvalidEdge {
            creation: edge.creation,
            annihilation: edge.annihilation,
        });
    }
    Ok(())
}

fn occupation_factor(edge: &Edge, word: &OperatorWord) -> ScalarFactor {
    let offset = if edge.orientation() == 1 { 1 } else { 0 };
    ScalarFactor::occupation(word.at(edge.creation).wave, offset)
}

/// Edge energy `ω(k_m) + δ_j·½k_m² + k_m·p + Σ_{l ⊃ j} δ_l k_{m_l}·k_m`.
fn edge_energy(word: &OperatorWord, diagram: &Diagram, j: usize) -> EnergyComb {
    let edge = diagram.edges()[j];
    let k = word.at(edge.creation).wave;
    let mut energy = EnergyComb::kinetic(k, edge.orientation());
    for l in diagram.related(j, EdgeRelation::Contains) {
        let outer = diagram.edges()[l];
        energy.add_term(
            Basis::dot(word.at(outer.creation).wave, k),
            Rational64::from_integer(outer.orientation()),
        );
    }
    energy
}

fn edge_time(word: &OperatorWord, edge: &Edge) -> TimeComb {
    TimeComb::difference(word.at(edge.creation).time, word.at(edge.annihilation).time)
}

/// Two-point function of one edge:
/// `λ⁻² · exp(i(t_m - t_m')(ω + δ½k² + k·p)/λ²) · (N(k) + (δ+1)/2) · δ(k_m - k_m')`.
///
/// In the Fock state an edge with the creator on the left gives the zero monomial.
pub fn pairing_factor(
    edge: &Edge,
    word: &OperatorWord,
    state: &StateSpec,
) -> Result<ScalarMonomial> {
    check_edge(edge, word)?;
    let k = word.at(edge.creation).wave;
    let m = ScalarMonomial::from_factors([
        ScalarFactor::kernel(
            edge_time(word, edge),
            EnergyComb::kinetic(k, edge.orientation()),
        ),
        occupation_factor(edge, word),
        ScalarFactor::delta_k(k, word.at(edge.annihilation).wave),
    ])
    .with_lambda(-2);
    Ok(state
        .evaluate(&m.into())
        .terms
        .into_iter()
        .next()
        .unwrap_or_else(ScalarMonomial::zero))
}

fn survives_state(diagram: &Diagram, state: &StateSpec) -> bool {
    !state.is_fock() || diagram.edges().iter().all(|e| e.orientation() == 1)
}

fn diagram_term(word: &OperatorWord, diagram: &Diagram) -> ScalarMonomial {
    let edges = diagram.edges();
    let mut m = ScalarMonomial::unit().with_lambda(-2 * edges.len() as i32);
    for (j, edge) in edges.iter().enumerate() {
        let kj = word.at(edge.creation).wave;
        let dj = edge.orientation();
        m.factors.push(ScalarFactor::kernel(
            edge_time(word, edge),
            edge_energy(word, diagram, j),
        ));
        for l in diagram.related(j, EdgeRelation::LeftCross) {
            let inner_end = word.at(edges[l].right());
            m.factors.push(ScalarFactor::phase(
                TimeComb::label(inner_end.time),
                EnergyComb::term(
                    Basis::dot(inner_end.wave, kj),
                    Rational64::from_integer(inner_end.eps.sign() * dj),
                ),
            ));
        }
        for l in diagram.related(j, EdgeRelation::RightCross) {
            let inner_end = word.at(edges[l].left());
            m.factors.push(ScalarFactor::phase(
                TimeComb::label(inner_end.time),
                EnergyComb::term(
                    Basis::dot(inner_end.wave, kj),
                    Rational64::from_integer(inner_end.eps.sign() * dj),
                ),
            ));
        }
        m.factors.push(occupation_factor(edge, word));
        m.factors
            .push(ScalarFactor::delta_k(kj, word.at(edge.annihilation).wave));
    }
    m
}

/// Finite-λ N-point function as a sum over all pair partitions.
///
/// Each edge contributes its pairing kernel with the nesting shift of every
/// enclosing edge; each crossing contributes a phase on the single time of the
/// crossing end. Unbalanced words give zero.
pub fn finite_lambda_correlator(word: &OperatorWord, state: &StateSpec) -> ScalarSum {
    let terms = enumerate_pairings(&word.pattern())
        .iter()
        .filter(|d| survives_state(d, state))
        .map(|d| diagram_term(word, d))
        .collect::<Vec<_>>();
    state.evaluate(&ScalarSum::from_terms(terms))
}

/// Weak-coupling limit term by term.
///
/// After canonicalization each monomial holds kernels (exponents owning a `1/λ²`)
/// and residual phases. A residual phase with nonzero time and energy sends the
/// term to zero; each kernel becomes `2π δ(T) δ(E)`. The `λ` power must be
/// exactly `-2` per kernel.
pub fn take_limit(s: &ScalarSum) -> Result<ScalarSum> {
    let mut out = Vec::with_capacity(s.len());
    'terms: for m in s.canonical().terms {
        let kernels: Vec<&ScalarFactor> = m
            .factors
            .iter()
            .filter(|f| matches!(f, ScalarFactor::OscExp { budget, .. } if *budget > 0))
            .collect();
        let budget: u32 = kernels
            .iter()
            .map(|f| match f {
                ScalarFactor::OscExp { budget, .. } => *budget,
                _ => 0,
            })
            .sum();
        if m.pow_lambda != -2 * budget as i32 {
            return Err(Error::Structural(format!(
                "lambda power {} does not match {} kernel budget(s)",
                m.pow_lambda, budget
            )));
        }
        let mut limit = ScalarMonomial {
            coeff: m.coeff,
            pow_2pi: m.pow_2pi,
            pow_lambda: 0,
            factors: Vec::with_capacity(m.factors.len()),
        };
        for f in m.factors {
            match f {
                ScalarFactor::OscExp {
                    time,
                    energy,
                    budget: 0,
                } => {
                    if !time.is_zero() && !energy.is_zero() {
                        continue 'terms;
                    }
                }
                ScalarFactor::OscExp {
                    time,
                    energy,
                    budget: 1,
                } => {
                    if time.is_zero() || energy.is_zero() {
                        return Err(Error::Structural(
                            "kernel with vanishing time or energy argument diverges".into(),
                        ));
                    }
                    limit.pow_2pi += 1;
                    limit.factors.push(ScalarFactor::TimeDelta(time));
                    limit.factors.push(ScalarFactor::EnergyDelta(energy));
                }
                ScalarFactor::OscExp { budget, .. } => {
                    return Err(Error::Structural(format!(
                        "one exponent owns {budget} factors of 1/lambda^2"
                    )));
                }
                other => limit.factors.push(other),
            }
        }
        out.push(limit);
    }
    Ok(ScalarSum::from_terms(out))
}

/// Limit built directly from the non-crossing diagrams.
pub fn limit_correlator(word: &OperatorWord, state: &StateSpec) -> ScalarSum {
    let terms = enumerate_pairings(&word.pattern())
        .iter()
        .filter(|d| d.is_non_crossing() && survives_state(d, state))
        .map(|d| {
            let mut m = ScalarMonomial::unit().with_2pi(d.n() as i32);
            for (j, edge) in d.edges().iter().enumerate() {
                let kj = word.at(edge.creation).wave;
                m.factors
                    .push(ScalarFactor::TimeDelta(edge_time(word, edge)));
                m.factors
                    .push(ScalarFactor::EnergyDelta(edge_energy(word, d, j)));
                m.factors.push(occupation_factor(edge, word));
                m.factors
                    .push(ScalarFactor::delta_k(kj, word.at(edge.annihilation).wave));
            }
            m
        })
        .collect::<Vec<_>>();
    state.evaluate(&ScalarSum::from_terms(terms))
}

/// Number of factors of each kind in a monomial, for bookkeeping checks.
pub fn factor_census(m: &ScalarMonomial) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    for f in &m.factors {
        let key = match f {
            ScalarFactor::OscExp { budget: 0, .. } => "phase",
            ScalarFactor::OscExp { .. } => "kernel",
            ScalarFactor::DeltaK(..) => "deltaK",
            ScalarFactor::TimeDelta(_) => "timeDelta",
            ScalarFactor::EnergyDelta(_) => "energyDelta",
            ScalarFactor::MFactor { .. } => "occupation",
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}
