//! Finite groupoids as a cofibration category, computed at desk scale.
//!
//! The crate is organised in layers:
//!
//! * [`groupoid`]: concrete finite groupoids, functors, the cofibration and
//!   equivalence predicates, and exhaustive functor enumeration;
//! * [`presentation`]: groupoids given by generators and relations, pushouts
//!   along cofibrations and bounded concretization;
//! * [`model`]: the cylinder functor, good-cylinder and good-subcategory
//!   checks, mapping-cylinder and Reedy factorizations;
//! * [`algebra`]: groupoid *-algebras with exact structure constants, their
//!   block decomposition, corners, full projections and K₀;
//! * [`nerve`]: truncated (bi)simplicial sets, nerves of sample categories,
//!   the double nerve `W`, classification-diagram levels and homology.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod groupoid;
pub mod model;
pub mod nerve;
pub mod presentation;
pub mod sample;

pub use error::{Error, Result};
pub use groupoid::{FiniteGroup, Groupoid, GroupoidFunctor};
