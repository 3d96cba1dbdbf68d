//! The chapters of the `book/` guide, attached here as documentation so
//! that `cargo test --doc` compiles and runs every code block the book
//! shows.  The book stays in sync with the library by construction.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/clusters.md")]
pub mod clusters {}

#[doc = include_str!("../../../book/src/multiplier-ideals.md")]
pub mod multiplier_ideals {}

#[doc = include_str!("../../../book/src/walls-and-faces.md")]
pub mod walls_and_faces {}

#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting_chapter {}

#[doc = include_str!("../../../book/src/cohomology.md")]
pub mod cohomology_chapter {}

#[doc = include_str!("../../../book/src/coverings.md")]
pub mod coverings_chapter {}

#[doc = include_str!("../../../book/src/catalog.md")]
pub mod catalog_chapter {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli_chapter {}
