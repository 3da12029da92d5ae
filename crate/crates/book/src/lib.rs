//! The gpdkit guide. Each module holds one chapter of `book/src`, so the
//! Rust snippets in the book run as doctests of this crate.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/groupoids.md")]
pub mod groupoids {}
#[doc = include_str!("../../../book/src/pushouts.md")]
pub mod pushouts {}
#[doc = include_str!("../../../book/src/factorizations.md")]
pub mod factorizations {}
#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}
#[doc = include_str!("../../../book/src/nerves.md")]
pub mod nerves {}
#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
#[doc = include_str!("../../../book/src/limits.md")]
pub mod limits {}
