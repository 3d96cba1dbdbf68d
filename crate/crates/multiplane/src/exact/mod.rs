//! Exact arithmetic: rationals, simple algebraic extensions of the
//! rationals, exact linear algebra and exact linear feasibility.

pub mod field;
pub mod fraction;
pub mod lp;
pub mod matrix;

pub use field::{FieldElement, NumberField};
pub use fraction::{dot, dot_int, Fraction};
pub use lp::{meets_half_open_unit_box, BoxProgram, Rel};
pub use matrix::{int_rank, leading_principal_minors, solve_affine, AffineSubspace, ExactMatrix};
