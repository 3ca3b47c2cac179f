//! Ternary forms and the linear systems, jets and eliminants built from them.

pub mod hform;
pub mod ops;
pub mod resultant;
pub mod symbolic;
pub mod system;

pub use hform::{monomial_count, monomial_index, monomials, Exponent, HForm};
pub use ops::{form_exact_div, form_gcd};
pub use resultant::sylvester_resultant;
pub use symbolic::{
    det_forms, eval_form_matrix, gamma_minors, maximal_minors, monoidal_det, monoidal_det_with, symbolic_jet_matrix, DetStrategy,
    FormMatrix,
};
pub use system::{
    curves_through, expected_dim, fat_point_dim, fat_point_dim_in, fat_point_members, jet_matrix, vanishes_to_order,
    FatPointDim, LinearSystem,
};
