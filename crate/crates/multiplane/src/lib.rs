//! Exact computation of mixed multiplier ideals of plane-curve
//! configurations and of the irregularity of abelian coverings of the
//! projective plane.
//!
//! Everything is computed in exact arithmetic over the rationals or a
//! simple algebraic extension; there is no floating point in the crate.
//!
//! The narrative guide lives in the `book/` directory of the repository;
//! its code snippets are compiled and run as doctests through the
//! [`guide`] module.

// Index loops mirror the matrix notation throughout; local tuple types
// stay local.
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod counting;
pub mod covering;
pub mod error;
pub mod exact;
pub mod guide;
pub mod jumping;
pub mod singularity;
pub mod walls;

pub use error::{Error, Result};
pub use exact::Fraction;
