//! Fock-state normal ordering by the raw q-deformed exchange relations.
//!
//! ```text
//! a(t,k) a†(t',k') = a†(t',k') a(t,k) q(t-t', k·k') + λ⁻² q(t-t', ω(k) + ½k² + k·p) δ(k-k')
//! a(t,k) a(t',k')  = a(t',k') a(t,k) q⁻¹(t-t', k·k')
//! ```
//!
//! A scalar `f(p)` produced at position `i` is moved to the far left with
//! [`SHIFT_RULES`].

use crate::error::{Error, Result};
use crate::symcore::{
    EnergyComb, Eps, Letter, OperatorWord, ScalarFactor, ScalarMonomial, ScalarSum, TimeComb,
};

/// Sign `s` in `X f(p) = f(p + s·k) X` for each kind of letter `X`:
/// `a f(p) = f(p+k) a` and `a† f(p) = f(p-k) a†`.
pub const SHIFT_RULES: [(Eps, i64); 2] = [(Eps::Annihilation, 1), (Eps::Creation, -1)];

fn shift_sign(eps: Eps) -> i64 {
    SHIFT_RULES
        .iter()
        .find(|(e, _)| *e == eps)
        .map(|(_, s)| *s)
        .expect("both letter kinds are listed")
}

/// Moves an energy argument sitting right after `prefix` to the left of it.
pub(crate) fn pull_left(mut energy: EnergyComb, prefix: &[Letter]) -> EnergyComb {
    for l in prefix.iter().rev() {
        energy = energy.shift_p(l.wave, shift_sign(l.eps));
    }
    energy
}

#[derive(Clone, Debug)]
struct Branch {
    scalar: ScalarMonomial,
    letters: Vec<Letter>,
}

/// (length, annihilator-before-creator inversions); every rewrite decreases it.
fn measure(letters: &[Letter]) -> (usize, usize) {
    let mut inversions = 0;
    let mut annihilators_seen = 0;
    for l in letters {
        match l.eps {
            Eps::Annihilation => annihilators_seen += 1,
            Eps::Creation => inversions += annihilators_seen,
        }
    }
    (letters.len(), inversions)
}

fn adjacencies(letters: &[Letter]) -> Vec<usize> {
    (0..letters.len().saturating_sub(1))
        .filter(|&i| letters[i].eps == Eps::Annihilation && letters[i + 1].eps == Eps::Creation)
        .collect()
}

/// Vacuum expectation is zero once a creator reaches the left end or an
/// annihilator the right end.
fn dead(letters: &[Letter]) -> bool {
    matches!(letters.first(), Some(l) if l.eps == Eps::Creation)
        || matches!(letters.last(), Some(l) if l.eps == Eps::Annihilation)
}

fn rewrite(b: &Branch, i: usize) -> [Branch; 2] {
    let (ann, cre) = (b.letters[i], b.letters[i + 1]);
    let time = TimeComb::difference(ann.time, cre.time);

    let mut exchanged = b.letters.clone();
    exchanged.swap(i, i + 1);
    let exchange = Branch {
        scalar: b.scalar.clone().with_factor(ScalarFactor::q(
            time.clone(),
            EnergyComb::dot(ann.wave, cre.wave),
        )),
        letters: exchanged,
    };

    let energy = pull_left(EnergyComb::kinetic(ann.wave, 1), &b.letters[..i]);
    let mut contracted = b.letters.clone();
    contracted.drain(i..i + 2);
    let contraction = Branch {
        scalar: b
            .scalar
            .clone()
            .with_lambda(-2)
            .with_factor(ScalarFactor::OscExp {
                time,
                energy: -energy,
                budget: 1,
            })
            .with_factor(ScalarFactor::delta_k(ann.wave, cre.wave)),
        letters: contracted,
    };
    [exchange, contraction]
}

/// Unsimplified terms of the vacuum expectation, rewriting the adjacency picked
/// by `choose` (an index into the admissible positions).
pub fn qdef_terms_with(
    word: &OperatorWord,
    choose: &mut dyn FnMut(&[usize]) -> usize,
) -> Vec<ScalarMonomial> {
    let mut out = Vec::new();
    let mut stack = vec![Branch {
        scalar: ScalarMonomial::unit(),
        letters: word.letters().to_vec(),
    }];
    while let Some(b) = stack.pop() {
        if b.letters.is_empty() {
            out.push(b.scalar);
            continue;
        }
        if dead(&b.letters) {
            continue;
        }
        let candidates = adjacencies(&b.letters);
        if candidates.is_empty() {
            continue;
        }
        let i = candidates[choose(&candidates)];
        let before = measure(&b.letters);
        for next in rewrite(&b, i) {
            assert!(
                measure(&next.letters) < before,
                "rewrite did not decrease the measure"
            );
            stack.push(next);
        }
    }
    out
}

/// Leftmost-adjacency strategy, unsimplified.
pub fn qdef_terms(word: &OperatorWord) -> Vec<ScalarMonomial> {
    qdef_terms_with(word, &mut |_| 0)
}

/// Fock vacuum expectation of an entangled-operator word.
pub fn qdef_normal_order(word: &OperatorWord) -> ScalarSum {
    ScalarSum::from_terms(qdef_terms(word))
}

/// Results of every rewriting strategy, deduplicated.
pub fn qdef_all_orders(word: &OperatorWord) -> Vec<ScalarSum> {
    fn outcomes(b: Branch) -> Vec<ScalarSum> {
        if b.letters.is_empty() {
            return vec![ScalarSum::from(b.scalar)];
        }
        if dead(&b.letters) {
            return vec![ScalarSum::zero()];
        }
        let mut out: Vec<ScalarSum> = Vec::new();
        for i in adjacencies(&b.letters) {
            let [exchange, contraction] = rewrite(&b, i);
            let right = outcomes(contraction);
            for l in outcomes(exchange) {
                for r in &right {
                    let s = l.add(r);
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
            }
        }
        if out.is_empty() {
            out.push(ScalarSum::zero());
        }
        out
    }

    outcomes(Branch {
        scalar: ScalarMonomial::unit(),
        letters: word.letters().to_vec(),
    })
}

/// Swaps the annihilators at 1-based positions `i`, `i+1` and returns the factor
/// `q⁻¹(t_i - t_{i+1}, k_i·k_{i+1})` with `w = w' · factor`.
pub fn reorder_annihilators(word: &OperatorWord, i: usize) -> Result<(OperatorWord, ScalarFactor)> {
    if i == 0 || i + 1 > word.len() {
        return Err(Error::InvalidReorder { position: i });
    }
    let (l, r) = (word.at(i), word.at(i + 1));
    if l.eps != Eps::Annihilation || r.eps != Eps::Annihilation {
        return Err(Error::InvalidReorder { position: i });
    }
    let factor = ScalarFactor::q_inv(
        TimeComb::difference(l.time, r.time),
        EnergyComb::dot(l.wave, r.wave),
    );
    Ok((word.swapped(i - 1), factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::{balanced_patterns, TimeLabel, WaveLabel};
    use Eps::{Annihilation as A, Creation as C};

    fn t(i: u32) -> TimeLabel {
        TimeLabel(i)
    }
    fn k(i: u32) -> WaveLabel {
        WaveLabel(i)
    }

    #[test]
    fn two_point_is_the_scalar_term() {
        let s = qdef_normal_order(&OperatorWord::from_pattern(&[A, C]));
        let expected = ScalarMonomial::from_factors([
            ScalarFactor::kernel(
                TimeComb::difference(t(1), t(2)),
                -EnergyComb::kinetic(k(1), 1),
            ),
            ScalarFactor::delta_k(k(1), k(2)),
        ])
        .with_lambda(-2);
        assert_eq!(s, ScalarSum::from(expected));
    }

    #[test]
    fn vacuum_kills_reversed_and_unbalanced() {
        assert!(qdef_normal_order(&OperatorWord::from_pattern(&[C, A])).is_zero());
        assert!(qdef_normal_order(&OperatorWord::from_pattern(&[A, C, C])).is_zero());
        assert!(qdef_normal_order(&OperatorWord::from_pattern(&[A])).is_zero());
        assert_eq!(
            qdef_normal_order(&OperatorWord::from_pattern(&[])),
            ScalarSum::one()
        );
    }

    #[test]
    fn nested_contraction_picks_up_outer_momentum() {
        let terms = qdef_terms(&OperatorWord::from_pattern(&[A, A, C, C]));
        assert_eq!(terms.len(), 2);
        let shifted = -(EnergyComb::kinetic(k(2), 1) + EnergyComb::dot(k(1), k(2)));
        assert!(terms.iter().any(|m| m.factors.iter().any(|f| matches!(
            f,
            ScalarFactor::OscExp { energy, budget: 1, .. } if *energy == shifted
        ))));
    }

    #[test]
    fn strategies_agree_up_to_four_points() {
        for len in [2, 4] {
            for p in balanced_patterns(len) {
                let w = OperatorWord::from_pattern(&p);
                let all = qdef_all_orders(&w);
                assert_eq!(all.len(), 1, "{p:?}");
                assert_eq!(all[0], qdef_normal_order(&w));
            }
        }
    }

    #[test]
    fn reorder_checks_position_and_kinds() {
        let w = OperatorWord::from_pattern(&[A, A, C, C]);
        assert!(reorder_annihilators(&w, 1).is_ok());
        assert_eq!(
            reorder_annihilators(&w, 2),
            Err(Error::InvalidReorder { position: 2 })
        );
        assert_eq!(
            reorder_annihilators(&w, 4),
            Err(Error::InvalidReorder { position: 4 })
        );
        assert_eq!(
            reorder_annihilators(&w, 0),
            Err(Error::InvalidReorder { position: 0 })
        );
    }

    #[test]
    fn swap_back_gives_unit_factor() {
        let w = OperatorWord::from_pattern(&[A, A, C, C]);
        let (once, f1) = reorder_annihilators(&w, 1).unwrap();
        let (twice, f2) = reorder_annihilators(&once, 1).unwrap();
        assert_eq!(twice, w);
        let product = ScalarMonomial::from_factors([f1, f2]).canonical();
        assert_eq!(product, ScalarMonomial::unit());
    }

    #[test]
    fn exchange_coherence() {
        for p in [
            vec![A, A, C, C],
            vec![A, A, C, A, C, C],
            vec![A, A, A, C, C, C],
        ] {
            let w = OperatorWord::from_pattern(&p);
            let (swapped, f) = reorder_annihilators(&w, 1).unwrap();
            let via_swap = qdef_normal_order(&swapped).mul_factor(&f);
            assert_eq!(via_swap, qdef_normal_order(&w), "{p:?}");
        }
    }
}
