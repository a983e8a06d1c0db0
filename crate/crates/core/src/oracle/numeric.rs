//! Double-precision evaluation of finite-λ expressions.
//!
//! Momentum deltas use discrete-mode semantics: within a term every label is
//! replaced by the representative of its delta class, and `δ(k-k')` itself
//! evaluates to 1.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::correlator::{Dispersion, StateSpec};
use crate::error::{Error, Result};
use crate::symcore::{
    Basis, EnergyComb, OperatorWord, ScalarFactor, ScalarMonomial, ScalarSum, TimeComb, TimeLabel,
    WaveLabel,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericAssignment {
    pub lambda: f64,
    pub times: BTreeMap<TimeLabel, f64>,
    /// Wave vectors; `k·k'` and `k·p` are computed from them.
    pub waves: BTreeMap<WaveLabel, [f64; 3]>,
    pub p: [f64; 3],
    pub omega: BTreeMap<WaveLabel, f64>,
    #[serde(default)]
    pub occupation: BTreeMap<WaveLabel, f64>,
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl NumericAssignment {
    /// Random values for every label of `word`: components of `k` and `p` in
    /// `[-1, 1)`, times in `[-2, 2)`, `λ` in `[0.5, 1.5)`, `ω` from the
    /// dispersion and occupations from the state (uniform in `[0, 2)` for a
    /// symbolic Gaussian state).
    pub fn random<R: Rng + ?Sized>(
        word: &OperatorWord,
        state: &StateSpec,
        dispersion: Dispersion,
        rng: &mut R,
    ) -> Self {
        let vector = |rng: &mut R| -> [f64; 3] {
            [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ]
        };
        let lambda = rng.random_range(0.5..1.5);
        let p = vector(rng);
        let mut a = NumericAssignment {
            lambda,
            times: BTreeMap::new(),
            waves: BTreeMap::new(),
            p,
            omega: BTreeMap::new(),
            occupation: BTreeMap::new(),
        };
        for l in word.letters() {
            a.times.insert(l.time, rng.random_range(-2.0..2.0));
            let k = vector(rng);
            let w = dispersion.omega(k);
            a.waves.insert(l.wave, k);
            a.omega.insert(l.wave, w);
            let n = state
                .occupation(w)
                .unwrap_or_else(|| rng.random_range(0.0..2.0));
            a.occupation.insert(l.wave, n);
        }
        a
    }

    fn wave(&self, k: WaveLabel) -> Result<[f64; 3]> {
        self.waves
            .get(&k)
            .copied()
            .ok_or_else(|| Error::Unassigned(k.to_string()))
    }

    fn basis(&self, b: Basis) -> Result<f64> {
        Ok(match b {
            Basis::Omega(k) => *self
                .omega
                .get(&k)
                .ok_or_else(|| Error::Unassigned(format!("w({k})")))?,
            Basis::Dot(a, b) => dot(self.wave(a)?, self.wave(b)?),
            Basis::DotP(k) => dot(self.wave(k)?, self.p),
        })
    }

    fn time(&self, t: &TimeComb) -> Result<f64> {
        t.iter().try_fold(0.0, |acc, (label, c)| {
            let v = self
                .times
                .get(&label)
                .ok_or_else(|| Error::Unassigned(label.to_string()))?;
            Ok(acc + c as f64 * v)
        })
    }

    fn energy(&self, e: &EnergyComb, rep: &impl Fn(WaveLabel) -> WaveLabel) -> Result<f64> {
        e.relabel(rep).iter().try_fold(0.0, |acc, (b, c)| {
            Ok(acc + c.to_f64().expect("finite rational") * self.basis(b)?)
        })
    }
}

pub fn numeric_eval_monomial(m: &ScalarMonomial, a: &NumericAssignment) -> Result<Complex64> {
    if !(a.lambda > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "lambda must be positive, got {}",
            a.lambda
        )));
    }
    let reps = m.delta_representatives();
    let rep = |k: WaveLabel| *reps.get(&k).unwrap_or(&k);
    let mut value = Complex64::new(m.coeff.to_f64().expect("finite rational"), 0.0);
    value *= (2.0 * PI).powi(m.pow_2pi) * a.lambda.powi(m.pow_lambda);
    for f in &m.factors {
        match f {
            ScalarFactor::OscExp { time, energy, .. } => {
                let phase = a.time(time)? * a.energy(energy, &rep)? / (a.lambda * a.lambda);
                value *= Complex64::from_polar(1.0, phase);
            }
            ScalarFactor::DeltaK(..) => {}
            ScalarFactor::MFactor { k, offset } => {
                let k = rep(*k);
                let n = a
                    .occupation
                    .get(&k)
                    .ok_or_else(|| Error::Unassigned(format!("N({k})")))?;
                value *= n + f64::from(*offset);
            }
            ScalarFactor::TimeDelta(_) => return Err(Error::LimitObject("dt".into())),
            ScalarFactor::EnergyDelta(_) => return Err(Error::LimitObject("de".into())),
        }
    }
    Ok(value)
}

/// Sum of the values of possibly non-canonical terms.
pub fn numeric_eval_terms(terms: &[ScalarMonomial], a: &NumericAssignment) -> Result<Complex64> {
    terms.iter().try_fold(Complex64::new(0.0, 0.0), |acc, m| {
        Ok(acc + numeric_eval_monomial(m, a)?)
    })
}

pub fn numeric_eval(s: &ScalarSum, a: &NumericAssignment) -> Result<Complex64> {
    numeric_eval_terms(&s.terms, a)
}

/// `|x - y| <= rel · max(|x|, |y|)`
pub fn relative_close(x: Complex64, y: Complex64, rel: f64) -> bool {
    (x - y).norm() <= rel * x.norm().max(y.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlator::finite_lambda_correlator;
    use crate::oracle::qdef::qdef_terms;
    use crate::symcore::{balanced_patterns, Eps};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fixed() -> NumericAssignment {
        NumericAssignment {
            lambda: 1.0,
            times: [(TimeLabel(1), 1.0)].into_iter().collect(),
            waves: [(WaveLabel(1), [1.0, 0.0, 0.0])].into_iter().collect(),
            p: [0.0; 3],
            omega: [(WaveLabel(1), PI)].into_iter().collect(),
            occupation: BTreeMap::new(),
        }
    }

    #[test]
    fn unit_is_one() {
        let v = numeric_eval(&ScalarSum::one(), &fixed()).unwrap();
        assert_eq!(v, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn half_turn_is_minus_one() {
        let m = ScalarMonomial::from_factors([ScalarFactor::phase(
            TimeComb::label(TimeLabel(1)),
            EnergyComb::omega(WaveLabel(1)),
        )]);
        let v = numeric_eval_monomial(&m, &fixed()).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn unassigned_symbol_is_named() {
        let m = ScalarMonomial::from_factors([ScalarFactor::phase(
            TimeComb::label(TimeLabel(7)),
            EnergyComb::omega(WaveLabel(1)),
        )]);
        assert_eq!(
            numeric_eval_monomial(&m, &fixed()),
            Err(Error::Unassigned("t7".into()))
        );
        let m = ScalarMonomial::from_factors([ScalarFactor::occupation(WaveLabel(1), 0)]);
        assert_eq!(
            numeric_eval_monomial(&m, &fixed()),
            Err(Error::Unassigned("N(k1)".into()))
        );
    }

    #[test]
    fn limit_objects_are_rejected() {
        let m =
            ScalarMonomial::from_factors([ScalarFactor::TimeDelta(TimeComb::label(TimeLabel(1)))]);
        assert!(matches!(
            numeric_eval_monomial(&m, &fixed()),
            Err(Error::LimitObject(_))
        ));
    }

    #[test]
    fn raw_and_canonical_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in balanced_patterns(4) {
            let w = crate::symcore::OperatorWord::from_pattern(&p);
            let raw = qdef_terms(&w);
            let canonical = ScalarSum::from_terms(raw.clone());
            for _ in 0..10 {
                let a = NumericAssignment::random(
                    &w,
                    &StateSpec::Fock,
                    Dispersion::Quadratic,
                    &mut rng,
                );
                let x = numeric_eval_terms(&raw, &a).unwrap();
                let y = numeric_eval(&canonical, &a).unwrap();
                assert!(relative_close(x, y, 1e-12) || (x.norm() < 1e-300 && y.norm() < 1e-300));
            }
        }
    }

    #[test]
    fn finite_diagram_sum_against_oracle_numerically() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let w = crate::symcore::OperatorWord::from_pattern(&[
            Eps::Annihilation,
            Eps::Annihilation,
            Eps::Creation,
            Eps::Creation,
        ]);
        let s = finite_lambda_correlator(&w, &StateSpec::Fock);
        let raw = qdef_terms(&w);
        for _ in 0..20 {
            let a = NumericAssignment::random(&w, &StateSpec::Fock, Dispersion::Linear, &mut rng);
            assert!(relative_close(
                numeric_eval(&s, &a).unwrap(),
                numeric_eval_terms(&raw, &a).unwrap(),
                1e-9
            ));
        }
    }
}
