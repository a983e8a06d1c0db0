//! Exact linear combinations of formal time symbols and energy basis terms.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::label::{TimeLabel, WaveLabel};

/// Integer combination `Σ c_i t_i`. The empty combination is the zero time argument.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<(TimeLabel, i64)>", into = "Vec<(TimeLabel, i64)>")]
pub struct TimeComb {
    coeffs: BTreeMap<TimeLabel, i64>,
}

impl TimeComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn label(t: TimeLabel) -> Self {
        Self::from_terms([(t, 1)])
    }

    /// `a - b`
    pub fn difference(a: TimeLabel, b: TimeLabel) -> Self {
        Self::from_terms([(a, 1), (b, -1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (TimeLabel, i64)>) -> Self {
        let mut out = Self::zero();
        for (t, c) in terms {
            out.add_term(t, c);
        }
        out
    }

    pub fn add_term(&mut self, t: TimeLabel, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(t).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&t);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, t: TimeLabel) -> i64 {
        self.coeffs.get(&t).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (TimeLabel, i64)> + '_ {
        self.coeffs.iter().map(|(t, c)| (*t, *c))
    }

    pub fn contains(&self, t: TimeLabel) -> bool {
        self.coeffs.contains_key(&t)
    }

    /// Returns the combination with a positive leading coefficient, and whether it was negated.
    pub fn sign_normalized(self) -> (Self, bool) {
        match self.coeffs.values().next() {
            Some(c) if *c < 0 => (-self, true),
            _ => (self, false),
        }
    }
}

impl From<Vec<(TimeLabel, i64)>> for TimeComb {
    fn from(v: Vec<(TimeLabel, i64)>) -> Self {
        Self::from_terms(v)
    }
}

impl From<TimeComb> for Vec<(TimeLabel, i64)> {
    fn from(c: TimeComb) -> Self {
        c.coeffs.into_iter().collect()
    }
}

impl Neg for TimeComb {
    type Output = TimeComb;
    fn neg(mut self) -> TimeComb {
        for c in self.coeffs.values_mut() {
            *c = -*c;
        }
        self
    }
}

impl Add for TimeComb {
    type Output = TimeComb;
    fn add(mut self, rhs: TimeComb) -> TimeComb {
        for (t, c) in rhs.coeffs {
            self.add_term(t, c);
        }
        self
    }
}

impl Sub for TimeComb {
    type Output = TimeComb;
    fn sub(self, rhs: TimeComb) -> TimeComb {
        self + (-rhs)
    }
}

/// Basis symbol of an energy argument: `ω(k)`, `k·k'`, or `k·p`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Basis {
    Omega(WaveLabel),
    /// Stored with the smaller label first; build through [`Basis::dot`].
    Dot(WaveLabel, WaveLabel),
    DotP(WaveLabel),
}

impl Basis {
    pub fn dot(a: WaveLabel, b: WaveLabel) -> Self {
        if a <= b {
            Basis::Dot(a, b)
        } else {
            Basis::Dot(b, a)
        }
    }

    fn relabel(self, f: &impl Fn(WaveLabel) -> WaveLabel) -> Self {
        match self {
            Basis::Omega(k) => Basis::Omega(f(k)),
            Basis::Dot(a, b) => Basis::dot(f(a), f(b)),
            Basis::DotP(k) => Basis::DotP(f(k)),
        }
    }
}

/// Exact rational combination of [`Basis`] symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<EnergyTerm>", into = "Vec<EnergyTerm>")]
pub struct EnergyComb {
    coeffs: BTreeMap<Basis, Rational64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyTerm {
    pub basis: Basis,
    #[serde(with = "crate::symcore::ratio_serde")]
    pub coeff: Rational64,
}

impl EnergyComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(basis: Basis, c: Rational64) -> Self {
        let mut out = Self::zero();
        out.add_term(basis, c);
        out
    }

    pub fn omega(k: WaveLabel) -> Self {
        Self::term(Basis::Omega(k), Rational64::one())
    }

    pub fn dot(a: WaveLabel, b: WaveLabel) -> Self {
        Self::term(Basis::dot(a, b), Rational64::one())
    }

    pub fn dot_p(k: WaveLabel) -> Self {
        Self::term(Basis::DotP(k), Rational64::one())
    }

    /// `ω(k) + sign·½k² + k·p`, the free energy carried by a pairing.
    pub fn kinetic(k: WaveLabel, sign: i64) -> Self {
        let mut e = Self::omega(k);
        e.add_term(Basis::dot(k, k), Rational64::new(sign, 2));
        e.add_term(Basis::DotP(k), Rational64::one());
        e
    }

    pub fn add_term(&mut self, basis: Basis, c: Rational64) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(basis).or_insert_with(Rational64::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&basis);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, basis: Basis) -> Rational64 {
        self.coeffs
            .get(&basis)
            .copied()
            .unwrap_or_else(Rational64::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Basis, Rational64)> + '_ {
        self.coeffs.iter().map(|(b, c)| (*b, *c))
    }

    pub fn scale(mut self, s: Rational64) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        for c in self.coeffs.values_mut() {
            *c *= s;
        }
        self
    }

    /// Substitutes `p → p + sign·k_j`: every `c·(k_i·p)` gains `c·sign·(k_i·k_j)`.
    pub fn shift_p(&self, j: WaveLabel, sign: i64) -> Self {
        let mut out = self.clone();
        for (b, c) in &self.coeffs {
            if let Basis::DotP(i) = b {
                out.add_term(Basis::dot(*i, j), *c * Rational64::from_integer(sign));
            }
        }
        out
    }

    pub fn relabel(&self, f: &impl Fn(WaveLabel) -> WaveLabel) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.coeffs {
            out.add_term(b.relabel(f), *c);
        }
        out
    }

    pub fn waves(&self) -> impl Iterator<Item = WaveLabel> + '_ {
        self.coeffs.keys().flat_map(|b| match *b {
            Basis::Omega(k) | Basis::DotP(k) => vec![k],
            Basis::Dot(a, b) => vec![a, b],
        })
    }

    /// Leading coefficient made positive. Only valid where the overall sign is irrelevant.
    pub fn sign_normalized(self) -> Self {
        match self.coeffs.values().next() {
            Some(c) if c.is_negative() => -self,
            _ => self,
        }
    }
}

impl From<Vec<EnergyTerm>> for EnergyComb {
    fn from(v: Vec<EnergyTerm>) -> Self {
        let mut out = Self::zero();
        for t in v {
            out.add_term(t.basis, t.coeff);
        }
        out
    }
}

impl From<EnergyComb> for Vec<EnergyTerm> {
    fn from(e: EnergyComb) -> Self {
        e.coeffs
            .into_iter()
            .map(|(basis, coeff)| EnergyTerm { basis, coeff })
            .collect()
    }
}

impl Neg for EnergyComb {
    type Output = EnergyComb;
    fn neg(mut self) -> EnergyComb {
        for c in self.coeffs.values_mut() {
            *c = -*c;
        }
        self
    }
}

impl Add for EnergyComb {
    type Output = EnergyComb;
    fn add(mut self, rhs: EnergyComb) -> EnergyComb {
        self += rhs;
        self
    }
}

impl AddAssign for EnergyComb {
    fn add_assign(&mut self, rhs: EnergyComb) {
        for (b, c) in rhs.coeffs {
            self.add_term(b, c);
        }
    }
}

impl Sub for EnergyComb {
    type Output = EnergyComb;
    fn sub(self, rhs: EnergyComb) -> EnergyComb {
        self + (-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(i: u32) -> WaveLabel {
        WaveLabel(i)
    }

    #[test]
    fn dot_key_is_unordered() {
        assert_eq!(Basis::dot(k(3), k(1)), Basis::dot(k(1), k(3)));
        assert_eq!(EnergyComb::dot(k(2), k(1)), EnergyComb::dot(k(1), k(2)));
    }

    #[test]
    fn shift_p_adds_dot_term() {
        let shifted = EnergyComb::dot_p(k(2)).shift_p(k(1), 1);
        assert_eq!(
            shifted,
            EnergyComb::dot_p(k(2)) + EnergyComb::dot(k(1), k(2))
        );
    }

    #[test]
    fn shift_p_ignores_p_free_terms() {
        let e = EnergyComb::omega(k(2)) + EnergyComb::dot(k(2), k(2));
        assert_eq!(e.shift_p(k(5), -1), e);
    }

    #[test]
    fn opposite_shifts_cancel() {
        let e = EnergyComb::kinetic(k(2), 1) + EnergyComb::dot(k(1), k(3));
        assert_eq!(e.shift_p(k(1), 1).shift_p(k(1), -1), e);
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let e = EnergyComb::omega(k(1)) - EnergyComb::omega(k(1));
        assert!(e.is_zero());
        let t = TimeComb::label(TimeLabel(1)) - TimeComb::label(TimeLabel(1));
        assert!(t.is_zero());
    }

    #[test]
    fn time_sign_normalization() {
        let t = TimeComb::difference(TimeLabel(2), TimeLabel(1));
        let (n, flipped) = t.sign_normalized();
        assert!(flipped);
        assert_eq!(n, TimeComb::difference(TimeLabel(1), TimeLabel(2)));
    }
}
