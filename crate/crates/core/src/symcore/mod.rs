//! Exact scalar expressions: labels, linear combinations, factors, monomials and
//! sums, plus operator words and the canonical text rendering.

pub mod comb;
pub mod factor;
pub mod label;
pub mod monomial;
pub(crate) mod ratio_serde;
pub mod render;
pub mod sum;
pub mod word;

pub use comb::{Basis, EnergyComb, TimeComb};
pub use factor::ScalarFactor;
pub use label::{DefaultNames, LabelNames, NameTable, TimeLabel, WaveLabel};
pub use monomial::ScalarMonomial;
pub use sum::ScalarSum;
pub use word::{balanced_patterns, Eps, Letter, OperatorWord};

/// Product of two sums in canonical form.
pub fn multiply(a: &ScalarSum, b: &ScalarSum) -> ScalarSum {
    a.mul(b)
}

/// `p → p + sign·k_j` applied to an energy argument.
pub fn shift_p(e: &EnergyComb, j: WaveLabel, sign: i64) -> EnergyComb {
    e.shift_p(j, sign)
}
