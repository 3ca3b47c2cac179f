//! Jumping lines of logarithmic bundles on the projective plane, computed
//! exactly from a configuration of points.

pub mod algebra;
pub mod error;
pub mod forms;
pub mod geom;
pub mod intersect;
pub mod jumping;
pub mod steiner;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/points.md")]
    mod points {}
    #[doc = include_str!("../../../book/src/forms-and-fat-points.md")]
    mod forms_and_fat_points {}
    #[doc = include_str!("../../../book/src/steiner-pencil.md")]
    mod steiner_pencil {}
    #[doc = include_str!("../../../book/src/jumping-lines.md")]
    mod jumping_lines {}
    #[doc = include_str!("../../../book/src/eight-points.md")]
    mod eight_points {}
    #[doc = include_str!("../../../book/src/intersection-numbers.md")]
    mod intersection_numbers {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
