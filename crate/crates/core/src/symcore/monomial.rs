use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::comb::{EnergyComb, TimeComb};
use super::factor::ScalarFactor;
use super::label::{TimeLabel, WaveLabel};

/// `rational · (2π)^pow_2pi · λ^pow_lambda · Π factors`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScalarMonomial {
    #[serde(with = "crate::symcore::ratio_serde")]
    pub coeff: Rational64,
    pub pow_2pi: i32,
    pub pow_lambda: i32,
    pub factors: Vec<ScalarFactor>,
}

impl Default for ScalarMonomial {
    fn default() -> Self {
        Self::unit()
    }
}

impl ScalarMonomial {
    pub fn unit() -> Self {
        ScalarMonomial {
            coeff: Rational64::one(),
            pow_2pi: 0,
            pow_lambda: 0,
            factors: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        ScalarMonomial {
            coeff: Rational64::zero(),
            ..Self::unit()
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = ScalarFactor>) -> Self {
        ScalarMonomial {
            factors: factors.into_iter().collect(),
            ..Self::unit()
        }
    }

    pub fn with_factor(mut self, f: ScalarFactor) -> Self {
        self.factors.push(f);
        self
    }

    pub fn with_lambda(mut self, pow: i32) -> Self {
        self.pow_lambda += pow;
        self
    }

    pub fn with_2pi(mut self, pow: i32) -> Self {
        self.pow_2pi += pow;
        self
    }

    pub fn scaled(mut self, c: Rational64) -> Self {
        self.coeff *= c;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn count(&self, pred: impl Fn(&ScalarFactor) -> bool) -> usize {
        self.factors.iter().filter(|f| pred(f)).count()
    }

    /// Product without canonicalization.
    pub fn mul_raw(&self, other: &ScalarMonomial) -> ScalarMonomial {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        ScalarMonomial {
            coeff: self.coeff * other.coeff,
            pow_2pi: self.pow_2pi + other.pow_2pi,
            pow_lambda: self.pow_lambda + other.pow_lambda,
            factors,
        }
    }

    pub fn mul(&self, other: &ScalarMonomial) -> ScalarMonomial {
        self.mul_raw(other).canonical()
    }

    /// Key for merging like terms: everything except the rational coefficient.
    pub(crate) fn shape(&self) -> (i32, i32, &[ScalarFactor]) {
        (self.pow_2pi, self.pow_lambda, &self.factors)
    }

    /// Union-find representative map over the momentum deltas, smallest label wins.
    pub fn delta_representatives(&self) -> BTreeMap<WaveLabel, WaveLabel> {
        let mut parent: BTreeMap<WaveLabel, WaveLabel> = BTreeMap::new();
        fn find(parent: &BTreeMap<WaveLabel, WaveLabel>, mut k: WaveLabel) -> WaveLabel {
            while let Some(&p) = parent.get(&k) {
                if p == k {
                    break;
                }
                k = p;
            }
            k
        }
        for f in &self.factors {
            if let ScalarFactor::DeltaK(a, b) = *f {
                parent.entry(a).or_insert(a);
                parent.entry(b).or_insert(b);
                let (ra, rb) = (find(&parent, a), find(&parent, b));
                if ra != rb {
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    parent.insert(hi, lo);
                }
            }
        }
        let labels: Vec<WaveLabel> = parent.keys().copied().collect();
        labels.into_iter().map(|k| (k, find(&parent, k))).collect()
    }

    /// Canonical form.
    ///
    /// 1. Momentum deltas are closed under union-find and every other factor is
    ///    rewritten onto the smallest label of its class; the deltas themselves are
    ///    re-emitted as a star `δ(k_rep - k_x)`.
    /// 2. Exponents with a budget (kernels) are grouped by sign-normalized time
    ///    argument; energies of a group add.
    /// 3. All budget-free exponents are summed into one bilinear phase
    ///    `Σ_t t ⊗ R_t`. For each kernel time `τ` with a pivot label `p` (coefficient
    ///    ±1 and absent from other kernel times), the `p` component is absorbed into
    ///    the kernel: `p ⊗ R_p = τ ⊗ R_p/c_p - Σ_{t≠p} t ⊗ c_t R_p/c_p`.
    /// 4. What remains of the phase is emitted as one exponent per time label.
    ///
    /// The result depends only on the total phase and the set of kernel times, so
    /// different factorizations of the same exponential agree structurally.
    pub fn canonical(&self) -> ScalarMonomial {
        if self.coeff.is_zero() {
            return ScalarMonomial::zero();
        }
        let reps = self.delta_representatives();
        let rep = |k: WaveLabel| reps.get(&k).copied().unwrap_or(k);

        let mut kernels: BTreeMap<TimeComb, (EnergyComb, u32)> = BTreeMap::new();
        let mut residual: BTreeMap<TimeLabel, EnergyComb> = BTreeMap::new();
        let mut out: Vec<ScalarFactor> = Vec::new();

        for f in &self.factors {
            match f {
                ScalarFactor::OscExp {
                    time,
                    energy,
                    budget,
                } => {
                    let energy = energy.relabel(&rep);
                    if *budget == 0 {
                        for (t, c) in time.iter() {
                            *residual.entry(t).or_default() +=
                                energy.clone().scale(Rational64::from_integer(c));
                        }
                    } else {
                        let (time, flipped) = time.clone().sign_normalized();
                        let energy = if flipped { -energy } else { energy };
                        let slot = kernels.entry(time).or_default();
                        slot.0 += energy;
                        slot.1 += budget;
                    }
                }
                ScalarFactor::DeltaK(..) => {}
                ScalarFactor::TimeDelta(t) => {
                    out.push(ScalarFactor::TimeDelta(t.clone().sign_normalized().0))
                }
                ScalarFactor::EnergyDelta(e) => {
                    out.push(ScalarFactor::EnergyDelta(e.relabel(&rep).sign_normalized()))
                }
                ScalarFactor::MFactor { k, offset } => out.push(ScalarFactor::MFactor {
                    k: rep(*k),
                    offset: *offset,
                }),
            }
        }

        for (k, r) in &reps {
            if k != r {
                out.push(ScalarFactor::DeltaK(*r, *k));
            }
        }

        let times: Vec<TimeComb> = kernels.keys().cloned().collect();
        for (idx, tau) in times.iter().enumerate() {
            let pivot = tau.iter().find(|(t, c)| {
                c.abs() == 1
                    && times
                        .iter()
                        .enumerate()
                        .all(|(other, s)| other == idx || !s.contains(*t))
            });
            let Some((p, cp)) = pivot else { continue };
            let Some(rp) = residual.remove(&p) else {
                continue;
            };
            // cp = ±1, so dividing by it is multiplying by it.
            let share = rp.scale(Rational64::from_integer(cp));
            for (t, ct) in tau.iter() {
                if t != p {
                    let entry = residual.entry(t).or_default();
                    *entry += -share.clone().scale(Rational64::from_integer(ct));
                }
            }
            if let Some(slot) = kernels.get_mut(tau) {
                slot.0 += share;
            }
        }

        for (t, e) in residual {
            if !e.is_zero() {
                out.push(ScalarFactor::phase(TimeComb::label(t), e));
            }
        }
        for (time, (energy, budget)) in kernels {
            out.push(ScalarFactor::OscExp {
                time,
                energy,
                budget,
            });
        }
        out.sort();

        ScalarMonomial {
            coeff: self.coeff,
            pow_2pi: self.pow_2pi,
            pow_lambda: self.pow_lambda,
            factors: out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::comb::EnergyComb;

    fn t(i: u32) -> TimeLabel {
        TimeLabel(i)
    }
    fn k(i: u32) -> WaveLabel {
        WaveLabel(i)
    }

    #[test]
    fn delta_chain_unifies_to_smallest_label() {
        let m = ScalarMonomial::from_factors([
            ScalarFactor::delta_k(k(2), k(3)),
            ScalarFactor::delta_k(k(1), k(2)),
            ScalarFactor::phase(TimeComb::label(t(1)), EnergyComb::dot_p(k(3))),
        ])
        .canonical();
        let expected = ScalarMonomial::from_factors([
            ScalarFactor::DeltaK(k(1), k(2)),
            ScalarFactor::DeltaK(k(1), k(3)),
            ScalarFactor::phase(TimeComb::label(t(1)), EnergyComb::dot_p(k(1))),
        ])
        .canonical();
        assert_eq!(m, expected);
        assert!(m
            .factors
            .iter()
            .all(|f| !matches!(f, ScalarFactor::OscExp { energy, .. } if energy.waves().any(|w| w != k(1)))));
    }

    #[test]
    fn opposite_phases_cancel_to_unit() {
        let tau = TimeComb::difference(t(1), t(2));
        let e = EnergyComb::omega(k(1)) + EnergyComb::dot(k(1), k(2));
        let m = ScalarMonomial::from_factors([
            ScalarFactor::phase(tau.clone(), e.clone()),
            ScalarFactor::phase(tau, -e),
        ])
        .canonical();
        assert_eq!(m, ScalarMonomial::unit());
    }

    #[test]
    fn kernel_absorbs_phase_on_its_times() {
        let tau = TimeComb::difference(t(2), t(1));
        let m = ScalarMonomial::from_factors([
            ScalarFactor::kernel(tau.clone(), EnergyComb::omega(k(1))),
            ScalarFactor::phase(tau.clone(), EnergyComb::dot(k(1), k(2))),
        ])
        .with_lambda(-2)
        .canonical();
        let expected = ScalarMonomial::from_factors([ScalarFactor::kernel(
            tau,
            EnergyComb::omega(k(1)) + EnergyComb::dot(k(1), k(2)),
        )])
        .with_lambda(-2)
        .canonical();
        assert_eq!(m, expected);
        assert_eq!(m.factors.len(), 1);
    }

    #[test]
    fn canonical_is_idempotent_on_crossing_shape() {
        let m = ScalarMonomial::from_factors([
            ScalarFactor::kernel(
                TimeComb::difference(t(3), t(1)),
                EnergyComb::kinetic(k(1), 1),
            ),
            ScalarFactor::kernel(
                TimeComb::difference(t(4), t(2)),
                EnergyComb::kinetic(k(2), 1),
            ),
            ScalarFactor::phase(TimeComb::label(t(2)), -EnergyComb::dot(k(2), k(3))),
            ScalarFactor::phase(TimeComb::label(t(3)), EnergyComb::dot(k(1), k(3))),
            ScalarFactor::delta_k(k(1), k(3)),
            ScalarFactor::delta_k(k(2), k(4)),
        ])
        .with_lambda(-4);
        let once = m.canonical();
        assert_eq!(once.canonical(), once);
    }
}
