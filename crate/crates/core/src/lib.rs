//! Symbolic correlators of q-deformed entangled operators.
//!
//! The engine computes N-point functions of the operators
//! `a_λ(t,k) = λ⁻¹ e^{-i t/λ² (ω(k) + k²/2 + k·p)} e^{-ikq} a(k)` and their adjoints
//! in a Gaussian field state, takes the weak-coupling limit `λ → 0`, and compares
//! the result with a free (quantum Boltzmann) master-field algebra.
//!
//! Every route produces a canonical [`ScalarSum`], so agreement between routes is
//! plain `==`.

pub mod cli;
pub mod correlator;
pub mod diagrams;
pub mod error;
pub mod masterfield;
pub mod oracle;
pub mod symcore;

pub use correlator::{
    finite_lambda_correlator, limit_correlator, pairing_factor, take_limit, Dispersion, StateSpec,
};
pub use diagrams::{count_non_crossing, enumerate_pairings, Diagram, Edge, EdgeRelation};
pub use error::{Error, Result};
pub use masterfield::{free_correlator, theorem2_check, MasterLetter, Species};
pub use symcore::{Eps, OperatorWord, ScalarSum};
