//! Independent verification paths: raw q-deformed normal ordering (Fock),
//! Bogoliubov-doubled normal ordering (Gaussian), numeric evaluation and the
//! oscillation-lemma quadrature.

pub mod doubled;
pub mod numeric;
pub mod qdef;
pub mod quadrature;

pub use doubled::{doubled_normal_order, doubled_terms, DressedWord};
pub use numeric::{numeric_eval, numeric_eval_terms, relative_close, NumericAssignment};
pub use qdef::{qdef_all_orders, qdef_normal_order, qdef_terms, reorder_annihilators};
pub use quadrature::{oscillation_quadrature, sweep, to_csv, QuadraturePoint, TestFunction};
