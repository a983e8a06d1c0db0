use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::factor::ScalarFactor;
use super::monomial::ScalarMonomial;

/// Sum of monomials. Values produced by this crate are always canonical, so
/// `==` is structural equality of canonical forms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScalarSum {
    pub terms: Vec<ScalarMonomial>,
}

impl ScalarSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        ScalarMonomial::unit().into()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ScalarMonomial>) -> Self {
        ScalarSum {
            terms: terms.into_iter().collect(),
        }
        .canonical()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ScalarMonomial> {
        self.terms.iter()
    }

    /// Canonicalizes every term, merges like terms, drops zeros, sorts.
    pub fn canonical(&self) -> ScalarSum {
        let mut terms: Vec<ScalarMonomial> = self
            .terms
            .iter()
            .map(ScalarMonomial::canonical)
            .filter(|m| !m.is_zero())
            .collect();
        terms.sort_by(|a, b| a.shape().cmp(&b.shape()));
        let mut merged: Vec<ScalarMonomial> = Vec::with_capacity(terms.len());
        for m in terms {
            match merged.last_mut() {
                Some(last) if last.shape() == m.shape() => last.coeff += m.coeff,
                _ => merged.push(m),
            }
        }
        merged.retain(|m| !m.is_zero());
        ScalarSum { terms: merged }
    }

    pub fn add(&self, other: &ScalarSum) -> ScalarSum {
        ScalarSum {
            terms: self
                .terms
                .iter()
                .chain(other.terms.iter())
                .cloned()
                .collect(),
        }
        .canonical()
    }

    pub fn mul(&self, other: &ScalarSum) -> ScalarSum {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.mul_raw(b));
            }
        }
        ScalarSum { terms }.canonical()
    }

    pub fn mul_factor(&self, f: &ScalarFactor) -> ScalarSum {
        self.mul(&ScalarMonomial::from_factors([f.clone()]).into())
    }

    /// Rewrites every monomial onto delta representatives. Part of canonicalization;
    /// exposed on its own for callers holding hand-built sums.
    pub fn apply_momentum_deltas(&self) -> ScalarSum {
        self.canonical()
    }

    /// Terms present in exactly one of the two sums.
    pub fn symmetric_difference(
        &self,
        other: &ScalarSum,
    ) -> (Vec<ScalarMonomial>, Vec<ScalarMonomial>) {
        let a: BTreeSet<String> = self.terms.iter().map(key).collect();
        let b: BTreeSet<String> = other.terms.iter().map(key).collect();
        let only_a = self
            .terms
            .iter()
            .filter(|m| !b.contains(&key(m)))
            .cloned()
            .collect();
        let only_b = other
            .terms
            .iter()
            .filter(|m| !a.contains(&key(m)))
            .cloned()
            .collect();
        (only_a, only_b)
    }
}

fn key(m: &ScalarMonomial) -> String {
    serde_json::to_string(m).expect("monomials always serialize")
}

impl From<ScalarMonomial> for ScalarSum {
    fn from(m: ScalarMonomial) -> Self {
        ScalarSum { terms: vec![m] }.canonical()
    }
}

impl FromIterator<ScalarMonomial> for ScalarSum {
    fn from_iter<I: IntoIterator<Item = ScalarMonomial>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::comb::{EnergyComb, TimeComb};
    use crate::symcore::label::{TimeLabel, WaveLabel};
    use num_rational::Rational64;

    #[test]
    fn equal_time_exponents_merge() {
        let tau = TimeComb::difference(TimeLabel(1), TimeLabel(2));
        let e1 = EnergyComb::omega(WaveLabel(1));
        let e2 = EnergyComb::dot(WaveLabel(1), WaveLabel(2));
        let a: ScalarSum =
            ScalarMonomial::from_factors([ScalarFactor::phase(tau.clone(), e1.clone())]).into();
        let b: ScalarSum =
            ScalarMonomial::from_factors([ScalarFactor::phase(tau.clone(), e2.clone())]).into();
        let expected: ScalarSum =
            ScalarMonomial::from_factors([ScalarFactor::phase(tau, e1 + e2)]).into();
        assert_eq!(a.mul(&b), expected);
    }

    #[test]
    fn zero_annihilates() {
        let a: ScalarSum =
            ScalarMonomial::from_factors([ScalarFactor::delta_k(WaveLabel(1), WaveLabel(2))])
                .into();
        assert!(a.mul(&ScalarSum::zero()).is_zero());
    }

    #[test]
    fn like_terms_merge_and_cancel() {
        let m = ScalarMonomial::from_factors([ScalarFactor::occupation(WaveLabel(1), 0)]);
        let s = ScalarSum::from_terms([m.clone(), m.clone()]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.terms[0].coeff, Rational64::from_integer(2));
        let cancelled = ScalarSum::from_terms([m.clone(), m.scaled(Rational64::from_integer(-1))]);
        assert!(cancelled.is_zero());
    }
}
