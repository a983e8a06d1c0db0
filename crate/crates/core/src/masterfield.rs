//! Free master-field algebra and its Fock-state evaluator.
//!
//! The master field is `b = b1 + b2†` with free generators `b1, b2` and
//!
//! ```text
//! b1(t,k) b1†(t',k') = 2π δ(t-t') δ(ω(k) + ½k² + k·p) (N(k)+1) δ(k-k')
//! b2(t,k) b2†(t',k') = 2π δ(t-t') δ(ω(k) - ½k² + k·p) N(k)     δ(k-k')
//! b1 b2† = b2 b1† = 0
//! b1 p = (p+k) b1,   b2 p = (p-k) b2
//! ```
//!
//! Expectations are evaluated by contracting adjacent annihilator–creator pairs;
//! no diagrams are enumerated here.

use serde::{Deserialize, Serialize};

use crate::correlator::{limit_correlator, StateSpec};
use crate::symcore::{
    EnergyComb, Eps, OperatorWord, ScalarFactor, ScalarMonomial, ScalarSum, TimeComb, TimeLabel,
    WaveLabel,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Species {
    B,
    BDag,
    B1,
    B1Dag,
    B2,
    B2Dag,
}

impl Species {
    fn is_annihilator(self) -> bool {
        matches!(self, Species::B1 | Species::B2)
    }

    fn is_creator(self) -> bool {
        matches!(self, Species::B1Dag | Species::B2Dag)
    }

    /// Sign `s` in `X f(p) = f(p + s·k) X`, i.e. the shift a scalar picks up when
    /// it moves left across this letter.
    ///
    /// | letter | relation            | s  |
    /// |--------|---------------------|----|
    /// | b1     | b1 p = (p+k) b1     | +1 |
    /// | b1†    | adjoint of the above| -1 |
    /// | b2     | b2 p = (p-k) b2     | -1 |
    /// | b2†    | adjoint of the above| +1 |
    fn p_shift(self) -> i64 {
        match self {
            Species::B1 | Species::B2Dag => 1,
            Species::B1Dag | Species::B2 => -1,
            Species::B | Species::BDag => unreachable!("composite letters are expanded first"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MasterLetter {
    pub species: Species,
    pub time: TimeLabel,
    pub wave: WaveLabel,
}

/// `a → b`, `a† → b†` with the same labels.
pub fn master_word(word: &OperatorWord) -> Vec<MasterLetter> {
    word.letters()
        .iter()
        .map(|l| MasterLetter {
            species: match l.eps {
                Eps::Annihilation => Species::B,
                Eps::Creation => Species::BDag,
            },
            time: l.time,
            wave: l.wave,
        })
        .collect()
}

/// Expands every `b`/`b†` into its two free components.
fn expand(word: &[MasterLetter]) -> Vec<Vec<MasterLetter>> {
    let mut out: Vec<Vec<MasterLetter>> = vec![Vec::with_capacity(word.len())];
    for l in word {
        let choices: &[Species] = match l.species {
            Species::B => &[Species::B1, Species::B2Dag],
            Species::BDag => &[Species::B1Dag, Species::B2],
            Species::B1 => &[Species::B1],
            Species::B1Dag => &[Species::B1Dag],
            Species::B2 => &[Species::B2],
            Species::B2Dag => &[Species::B2Dag],
        };
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |&species| {
                    let mut w = prefix.clone();
                    w.push(MasterLetter { species, ..*l });
                    w
                })
            })
            .collect();
    }
    out
}

/// Value of an adjacent annihilator–creator pair, or `None` if they are of
/// different species.
fn contraction(ann: &MasterLetter, cre: &MasterLetter) -> Option<ScalarMonomial> {
    let (sign, offset) = match (ann.species, cre.species) {
        (Species::B1, Species::B1Dag) => (1, 1),
        (Species::B2, Species::B2Dag) => (-1, 0),
        _ => return None,
    };
    Some(
        ScalarMonomial::from_factors([
            ScalarFactor::TimeDelta(TimeComb::difference(ann.time, cre.time)),
            ScalarFactor::EnergyDelta(EnergyComb::kinetic(ann.wave, sign)),
            ScalarFactor::occupation(ann.wave, offset),
            ScalarFactor::delta_k(ann.wave, cre.wave),
        ])
        .with_2pi(1),
    )
}

/// Contraction at `i`, with its energy moved to the far left of the word.
fn shifted_contraction(word: &[MasterLetter], i: usize) -> Option<ScalarMonomial> {
    let mut value = contraction(&word[i], &word[i + 1])?;
    for f in value.factors.iter_mut() {
        if let ScalarFactor::EnergyDelta(e) = f {
            for l in word[..i].iter().rev() {
                *e = e.shift_p(l.wave, l.species.p_shift());
            }
        }
    }
    Some(value)
}

fn contractible(word: &[MasterLetter]) -> Vec<usize> {
    (0..word.len().saturating_sub(1))
        .filter(|&i| word[i].species.is_annihilator() && word[i + 1].species.is_creator())
        .collect()
}

/// Reduces one word of primitive letters, picking the contraction with `choose`.
fn reduce(
    mut word: Vec<MasterLetter>,
    choose: &mut dyn FnMut(&[usize]) -> usize,
) -> ScalarMonomial {
    let mut acc = ScalarMonomial::unit();
    loop {
        if word.is_empty() {
            return acc;
        }
        let candidates = contractible(&word);
        if candidates.is_empty() {
            return ScalarMonomial::zero();
        }
        let i = candidates[choose(&candidates)];
        let Some(value) = shifted_contraction(&word, i) else {
            return ScalarMonomial::zero();
        };
        acc = acc.mul_raw(&value);
        word.drain(i..i + 2);
    }
}

/// Free-Fock expectation of a master-field word.
pub fn free_correlator(word: &[MasterLetter], state: &StateSpec) -> ScalarSum {
    free_correlator_with(word, state, &mut |_| 0)
}

/// As [`free_correlator`], with the contraction order chosen by `choose`, which
/// receives the admissible positions and returns an index into them.
pub fn free_correlator_with(
    word: &[MasterLetter],
    state: &StateSpec,
    choose: &mut dyn FnMut(&[usize]) -> usize,
) -> ScalarSum {
    let terms: Vec<ScalarMonomial> = expand(word)
        .into_iter()
        .map(|w| reduce(w, choose))
        .collect();
    state.evaluate(&ScalarSum::from_terms(terms))
}

/// Every distinct result obtainable by varying the contraction order. A
/// confluent evaluator yields exactly one.
pub fn free_correlator_all_orders(word: &[MasterLetter], state: &StateSpec) -> Vec<ScalarSum> {
    fn explore(word: Vec<MasterLetter>, acc: ScalarMonomial, out: &mut Vec<ScalarMonomial>) {
        if word.is_empty() {
            out.push(acc);
            return;
        }
        let candidates = contractible(&word);
        if candidates.is_empty() {
            out.push(ScalarMonomial::zero());
            return;
        }
        for &i in &candidates {
            let Some(value) = shifted_contraction(&word, i) else {
                out.push(ScalarMonomial::zero());
                continue;
            };
            let mut w = word.clone();
            w.drain(i..i + 2);
            explore(w, acc.mul_raw(&value), out);
        }
    }

    // Per expanded word, collect every reachable value; combine across words by
    // taking the cartesian product of choices.
    let mut partial: Vec<ScalarSum> = vec![ScalarSum::zero()];
    for w in expand(word) {
        let mut reachable: Vec<ScalarMonomial> = Vec::new();
        explore(w, ScalarMonomial::unit(), &mut reachable);
        let mut distinct: Vec<ScalarSum> = Vec::new();
        for m in reachable {
            let s = ScalarSum::from(m);
            if !distinct.contains(&s) {
                distinct.push(s);
            }
        }
        let mut next = Vec::new();
        for p in &partial {
            for d in &distinct {
                let s = p.add(d);
                if !next.contains(&s) {
                    next.push(s);
                }
            }
        }
        partial = next;
    }
    partial.iter().map(|s| state.evaluate(s)).collect()
}

/// Outcome of comparing the diagrammatic limit with the free algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Theorem2Report {
    pub equal: bool,
    pub limit: ScalarSum,
    pub free: ScalarSum,
    pub only_in_limit: Vec<ScalarMonomial>,
    pub only_in_free: Vec<ScalarMonomial>,
}

/// Compares [`limit_correlator`] with [`free_correlator`] on the mapped word.
pub fn theorem2_check(word: &OperatorWord, state: &StateSpec) -> Theorem2Report {
    let limit = limit_correlator(word, state);
    let free = free_correlator(&master_word(word), state);
    let (only_in_limit, only_in_free) = limit.symmetric_difference(&free);
    Theorem2Report {
        equal: limit == free,
        limit,
        free,
        only_in_limit,
        only_in_free,
    }
}

pub mod bosonic {
    //! Bogoliubov doubling `a(k) ↦ u a1(k) + v a2†(k)` of a single Bose mode with
    //! both auxiliary modes in the vacuum.

    use num_rational::Rational64;
    use num_traits::Zero;
    use serde::{Deserialize, Serialize};

    /// Affine expression `c + n·N(k)` in the occupation symbol.
    #[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
    pub struct Affine {
        #[serde(with = "crate::symcore::ratio_serde")]
        pub constant: Rational64,
        #[serde(with = "crate::symcore::ratio_serde")]
        pub occupation: Rational64,
    }

    impl Affine {
        pub fn constant(c: i64) -> Self {
            Affine {
                constant: Rational64::from_integer(c),
                occupation: Rational64::zero(),
            }
        }

        /// `N(k) + c`
        pub fn occupation_plus(c: i64) -> Self {
            Affine {
                constant: Rational64::from_integer(c),
                occupation: Rational64::from_integer(1),
            }
        }
    }

    /// Value ring for the moduli `|u|²`, `|v|²`.
    pub trait Modulus: Copy + std::fmt::Debug {
        fn zero() -> Self;
        fn one() -> Self;
        fn add(self, other: Self) -> Self;
        fn sub(self, other: Self) -> Self;
        fn equals(self, other: Self) -> bool;
    }

    impl Modulus for Affine {
        fn zero() -> Self {
            Affine::constant(0)
        }
        fn one() -> Self {
            Affine::constant(1)
        }
        fn add(self, o: Self) -> Self {
            Affine {
                constant: self.constant + o.constant,
                occupation: self.occupation + o.occupation,
            }
        }
        fn sub(self, o: Self) -> Self {
            Affine {
                constant: self.constant - o.constant,
                occupation: self.occupation - o.occupation,
            }
        }
        fn equals(self, o: Self) -> bool {
            self == o
        }
    }

    /// Numeric moduli compared to `1e-12` relative.
    impl Modulus for f64 {
        fn zero() -> Self {
            0.0
        }
        fn one() -> Self {
            1.0
        }
        fn add(self, o: Self) -> Self {
            self + o
        }
        fn sub(self, o: Self) -> Self {
            self - o
        }
        fn equals(self, o: Self) -> bool {
            (self - o).abs() <= 1e-12 * (1.0 + self.abs().max(o.abs()))
        }
    }

    #[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
    pub struct BogoliubovCoeffs<M> {
        pub u2: M,
        pub v2: M,
    }

    #[derive(Copy, Clone, Debug, PartialEq, Eq)]
    enum Mode {
        One,
        Two,
    }

    /// A field operator after substitution: coefficient tag and Fock-mode operator.
    #[derive(Copy, Clone, Debug)]
    struct Term {
        mode: Mode,
        dagger: bool,
    }

    fn substitute(dagger: bool) -> [Term; 2] {
        if dagger {
            // a† ↦ u a1† + v a2
            [
                Term {
                    mode: Mode::One,
                    dagger: true,
                },
                Term {
                    mode: Mode::Two,
                    dagger: false,
                },
            ]
        } else {
            // a ↦ u a1 + v a2†
            [
                Term {
                    mode: Mode::One,
                    dagger: false,
                },
                Term {
                    mode: Mode::Two,
                    dagger: true,
                },
            ]
        }
    }

    /// `⟨x y⟩` in the double vacuum for `x, y ∈ {a, a†}`, with the `δ(k-k')`
    /// factor implied.
    pub fn two_point<M: Modulus>(
        coeffs: &BogoliubovCoeffs<M>,
        left_dagger: bool,
        right_dagger: bool,
    ) -> M {
        let mut total = M::zero();
        for x in substitute(left_dagger) {
            for y in substitute(right_dagger) {
                // vacuum value of a single product of mode operators
                if x.mode == y.mode && !x.dagger && y.dagger {
                    // the coefficients are u·ū = |u|² (mode 1) or v·v̄ = |v|² (mode 2)
                    total = total.add(match x.mode {
                        Mode::One => coeffs.u2,
                        Mode::Two => coeffs.v2,
                    });
                }
            }
        }
        total
    }

    #[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
    #[serde(rename_all = "camelCase")]
    pub struct DoubleReport<M> {
        pub normalization: bool,
        pub adag_a: M,
        pub a_adag: M,
        pub a_a: M,
        pub adag_adag: M,
        pub commutator: M,
        pub passed: bool,
    }

    /// Checks `|u|² - |v|² = 1`, `⟨a†a⟩ = |v|²`, `⟨aa†⟩ = |v|² + 1`,
    /// `⟨aa⟩ = ⟨a†a†⟩ = 0` and `⟨[a, a†]⟩ = 1`.
    pub fn bosonic_double_check<M: Modulus>(coeffs: &BogoliubovCoeffs<M>) -> DoubleReport<M> {
        let normalization = coeffs.u2.sub(coeffs.v2).equals(M::one());
        let adag_a = two_point(coeffs, true, false);
        let a_adag = two_point(coeffs, false, true);
        let a_a = two_point(coeffs, false, false);
        let adag_adag = two_point(coeffs, true, true);
        let commutator = a_adag.sub(adag_a);
        let passed = normalization
            && adag_a.equals(coeffs.v2)
            && a_adag.equals(coeffs.v2.add(M::one()))
            && a_a.equals(M::zero())
            && adag_adag.equals(M::zero())
            && commutator.equals(M::one());
        DoubleReport {
            normalization,
            adag_a,
            a_adag,
            a_a,
            adag_adag,
            commutator,
            passed,
        }
    }
}
