//! The 4-point rainbow term carries no exchange phase between its own
//! contractions. A variant that multiplies it by q(t2-t2', k2k2') is
//! rejected by both the diagram sum and the rewriting oracle.

use qdeform::correlator::{finite_lambda_correlator, StateSpec};
use qdeform::oracle::qdef_normal_order;
use qdeform::symcore::{
    EnergyComb, Eps, OperatorWord, ScalarFactor, ScalarMonomial, ScalarSum, TimeComb, TimeLabel,
    WaveLabel,
};

fn kq(a: u32, b: u32, x: EnergyComb) -> ScalarFactor {
    ScalarFactor::kernel(TimeComb::difference(TimeLabel(a), TimeLabel(b)), -x)
}

fn kin(i: u32) -> EnergyComb {
    EnergyComb::kinetic(WaveLabel(i), 1)
}

fn dk(a: u32, b: u32) -> ScalarFactor {
    ScalarFactor::delta_k(WaveLabel(a), WaveLabel(b))
}

fn phase(a: u32, b: u32) -> ScalarFactor {
    ScalarFactor::q(
        TimeComb::difference(TimeLabel(a), TimeLabel(b)),
        EnergyComb::dot(WaveLabel(a), WaveLabel(b)),
    )
}

fn rainbow() -> ScalarMonomial {
    ScalarMonomial::from_factors([
        kq(2, 3, kin(2) + EnergyComb::dot(WaveLabel(2), WaveLabel(1))),
        dk(2, 3),
        kq(1, 4, kin(1)),
        dk(1, 4),
    ])
    .with_lambda(-4)
}

fn crossing() -> ScalarMonomial {
    ScalarMonomial::from_factors([
        kq(1, 3, kin(1)),
        dk(1, 3),
        kq(2, 4, kin(2)),
        dk(2, 4),
        phase(2, 3),
    ])
    .with_lambda(-4)
}

#[test]
fn rainbow_has_no_exchange_phase() {
    let w = OperatorWord::from_pattern(&[
        Eps::Annihilation,
        Eps::Annihilation,
        Eps::Creation,
        Eps::Creation,
    ]);
    let derived = finite_lambda_correlator(&w, &StateSpec::Fock);
    assert_eq!(derived, qdef_normal_order(&w));
    assert_eq!(derived, ScalarSum::from_terms([rainbow(), crossing()]));

    let with_phase = ScalarSum::from_terms([rainbow().with_factor(phase(2, 3)), crossing()]);
    let (only_derived, only_variant) = derived.symmetric_difference(&with_phase);
    assert_eq!(only_derived, vec![rainbow().canonical()]);
    assert_eq!(
        only_variant,
        vec![rainbow().with_factor(phase(2, 3)).canonical()]
    );
}

#[test]
fn crossing_shift_is_not_nested() {
    // k1(p+k2) in the first kernel of the crossing term is not produced.
    let w = OperatorWord::from_pattern(&[
        Eps::Annihilation,
        Eps::Annihilation,
        Eps::Creation,
        Eps::Creation,
    ]);
    let shifted = ScalarMonomial::from_factors([
        kq(1, 3, kin(1) + EnergyComb::dot(WaveLabel(1), WaveLabel(2))),
        dk(1, 3),
        kq(2, 4, kin(2)),
        dk(2, 4),
        phase(2, 3),
    ])
    .with_lambda(-4);
    let derived = finite_lambda_correlator(&w, &StateSpec::Fock);
    assert!(!derived.iter().any(|m| *m == shifted.canonical()));
}
