//! Gaussian-state expectations through the Bogoliubov double
//! `a(k) ↦ u(k) a1(k) + v(k) a2†(k)`, `|u|² = N+1`, `|v|² = N`, with plain CCR
//! normal ordering of the auxiliary Fock fields.
//!
//! Each entangled letter is first written as
//! `λ⁻¹ exp(i t ε(ω - ε½k² + k·p)/λ²) e^{iεk·q} a^ε(k)`; the scalar parts are
//! collected on the left (shifting `p` by the pending `q`-exponential) and the
//! bare field operators on the right.

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::correlator::StateSpec;
use crate::symcore::{
    EnergyComb, Eps, OperatorWord, ScalarFactor, ScalarMonomial, ScalarSum, TimeComb, TimeLabel,
    WaveLabel,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Species {
    /// The original field, used directly for the Fock state.
    Field,
    Double1,
    Double2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoseLetter {
    pub species: Species,
    pub dag: bool,
    pub wave: WaveLabel,
    pub time: TimeLabel,
    /// Kind of the entangled letter this one came from.
    pub origin: Eps,
}

/// Scalar prefix, pending `e^{iκ·q}` and bare field letters.
#[derive(Clone, Debug, PartialEq)]
pub struct DressedWord {
    pub prefix: ScalarMonomial,
    pub shift: BTreeMap<WaveLabel, i64>,
    pub letters: Vec<BoseLetter>,
}

impl DressedWord {
    /// Dressing of `word` with every letter on the original field.
    pub fn new(word: &OperatorWord) -> Self {
        let mut prefix = ScalarMonomial::unit().with_lambda(-(word.len() as i32));
        let mut shift: BTreeMap<WaveLabel, i64> = BTreeMap::new();
        let mut letters = Vec::with_capacity(word.len());
        for l in word.letters() {
            let eps = l.eps.sign();
            let mut energy = EnergyComb::kinetic(l.wave, -eps).scale(Rational64::from_integer(eps));
            // e^{iκq} f(p) = f(p - κ) e^{iκq}
            for (&k, &c) in &shift {
                energy = energy.shift_p(k, -c);
            }
            prefix = prefix.with_factor(ScalarFactor::phase(TimeComb::label(l.time), energy));
            *shift.entry(l.wave).or_insert(0) += eps;
            letters.push(BoseLetter {
                species: Species::Field,
                dag: l.eps == Eps::Creation,
                wave: l.wave,
                time: l.time,
                origin: l.eps,
            });
        }
        shift.retain(|_, c| *c != 0);
        DressedWord {
            prefix,
            shift,
            letters,
        }
    }

    /// The `2^N` words obtained by splitting every field letter over the two
    /// auxiliary species.
    pub fn doubled(&self) -> Vec<DressedWord> {
        let mut out = vec![Vec::with_capacity(self.letters.len())];
        for l in &self.letters {
            // a ↦ a1 + a2†, a† ↦ a1† + a2
            let choices = [
                BoseLetter {
                    species: Species::Double1,
                    ..*l
                },
                BoseLetter {
                    species: Species::Double2,
                    dag: !l.dag,
                    ..*l
                },
            ];
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<BoseLetter>| {
                    choices.iter().map(move |c| {
                        let mut w = prefix.clone();
                        w.push(*c);
                        w
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|letters| DressedWord {
                prefix: self.prefix.clone(),
                shift: self.shift.clone(),
                letters,
            })
            .collect()
    }
}

fn contraction(ann: &BoseLetter, cre: &BoseLetter) -> ScalarMonomial {
    let (creator_side, annihilator_side) = if ann.origin == Eps::Creation {
        (ann, cre)
    } else {
        (cre, ann)
    };
    // ⟨a a†⟩ carries no exponent; the zero-energy kernel only records that this
    // pair owns one 1/λ² of the prefix.
    let mut m = ScalarMonomial::from_factors([
        ScalarFactor::kernel(
            TimeComb::difference(creator_side.time, annihilator_side.time),
            EnergyComb::zero(),
        ),
        ScalarFactor::delta_k(ann.wave, cre.wave),
    ]);
    match ann.species {
        Species::Field => {}
        Species::Double1 => m = m.with_factor(ScalarFactor::occupation(creator_side.wave, 1)),
        Species::Double2 => m = m.with_factor(ScalarFactor::occupation(creator_side.wave, 0)),
    }
    m
}

/// Double-vacuum expectation of the bare letters by CCR normal ordering.
fn vacuum_terms(letters: Vec<BoseLetter>) -> Vec<ScalarMonomial> {
    let mut out = Vec::new();
    let mut stack = vec![(ScalarMonomial::unit(), letters)];
    while let Some((scalar, letters)) = stack.pop() {
        if letters.is_empty() {
            out.push(scalar);
            continue;
        }
        if letters.first().is_some_and(|l| l.dag) || letters.last().is_some_and(|l| !l.dag) {
            continue;
        }
        let Some(i) = (0..letters.len() - 1).find(|&i| !letters[i].dag && letters[i + 1].dag)
        else {
            continue;
        };
        let mut swapped = letters.clone();
        swapped.swap(i, i + 1);
        if letters[i].species == letters[i + 1].species {
            let value = contraction(&letters[i], &letters[i + 1]);
            let mut rest = letters;
            rest.drain(i..i + 2);
            stack.push((scalar.mul_raw(&value), rest));
        }
        stack.push((scalar, swapped));
    }
    out
}

/// Unsimplified terms; `κ` is checked to vanish on every surviving term.
pub fn doubled_terms(word: &OperatorWord, state: &StateSpec) -> Vec<ScalarMonomial> {
    let dressed = DressedWord::new(word);
    let words = if state.is_fock() {
        vec![dressed]
    } else {
        dressed.doubled()
    };
    let mut out = Vec::new();
    for w in words {
        for wick in vacuum_terms(w.letters.clone()) {
            let m = w.prefix.mul_raw(&wick);
            let reps = m.delta_representatives();
            let mut kappa: BTreeMap<WaveLabel, i64> = BTreeMap::new();
            for (k, c) in &w.shift {
                *kappa.entry(*reps.get(k).unwrap_or(k)).or_insert(0) += c;
            }
            assert!(
                kappa.values().all(|c| *c == 0),
                "q-exponential survives the vacuum expectation"
            );
            out.push(m);
        }
    }
    out
}

/// Gaussian-state expectation of an entangled-operator word.
pub fn doubled_normal_order(word: &OperatorWord, state: &StateSpec) -> ScalarSum {
    ScalarSum::from_terms(doubled_terms(word, state))
}
