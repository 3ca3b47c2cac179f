//! Exact scalar fields, dense linear algebra and univariate polynomials.

pub mod field;
pub mod matrix;
pub mod upoly;

pub use field::{is_prime, Field, FieldSpec, FiniteField, PrimeField, Rationals};
pub use matrix::{det, identity, kernel_basis, linear_combination, mat_mul, mat_vec, rank, rref, solve, zeros, Mat, Rref};
pub(crate) use matrix::rank_in_place;
pub use upoly::{
    distinct_degree_profile, is_squarefree, roots_in_field, squarefree_part, upoly_divrem,
    upoly_exact_div, upoly_gcd, upoly_mul, UPoly,
};
