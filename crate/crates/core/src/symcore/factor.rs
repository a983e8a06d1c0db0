use serde::{Deserialize, Serialize};

use super::comb::{EnergyComb, TimeComb};
use super::label::WaveLabel;

/// One commuting scalar factor of a correlator term.
///
/// `OscExp { time: T, energy: E, .. }` denotes `exp(i·T·E/λ²)`. The oscillating
/// exponent `q_λ(T, x) = exp(-i·T·x/λ²)` is therefore `OscExp(T, -x)`.
///
/// `budget` counts how many `1/λ²` prefactors of the enclosing monomial belong to
/// this exponent. A pairing kernel owns exactly one; exchange and crossing phases
/// own none. The limit evaluator uses the budget to decide which exponents turn
/// into delta functions and which ones vanish.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ScalarFactor {
    OscExp {
        time: TimeComb,
        energy: EnergyComb,
        budget: u32,
    },
    /// `δ(k - k')`
    DeltaK(WaveLabel, WaveLabel),
    /// `δ(T)`, limit objects only.
    TimeDelta(TimeComb),
    /// `δ(E)`, a function of `p`; limit objects only.
    EnergyDelta(EnergyComb),
    /// `N(k) + offset`
    MFactor { k: WaveLabel, offset: u8 },
}

impl ScalarFactor {
    /// Exponent without a `1/λ²` budget.
    pub fn phase(time: TimeComb, energy: EnergyComb) -> Self {
        ScalarFactor::OscExp {
            time,
            energy,
            budget: 0,
        }
    }

    /// Exponent that owns one `1/λ²` of its monomial.
    pub fn kernel(time: TimeComb, energy: EnergyComb) -> Self {
        ScalarFactor::OscExp {
            time,
            energy,
            budget: 1,
        }
    }

    /// `q_λ(T, x)` in the convention of the q-deformed relations.
    pub fn q(time: TimeComb, x: EnergyComb) -> Self {
        Self::phase(time, -x)
    }

    /// `q_λ⁻¹(T, x)`.
    pub fn q_inv(time: TimeComb, x: EnergyComb) -> Self {
        Self::phase(time, x)
    }

    pub fn delta_k(a: WaveLabel, b: WaveLabel) -> Self {
        if a <= b {
            ScalarFactor::DeltaK(a, b)
        } else {
            ScalarFactor::DeltaK(b, a)
        }
    }

    pub fn occupation(k: WaveLabel, offset: u8) -> Self {
        ScalarFactor::MFactor { k, offset }
    }
}
