//! Nerves of sample categories and their low-degree homology.
//!
//! Simplicial sets here are truncated: only levels up to a cutoff are
//! stored, with every face and degeneracy tabulated. Degenerate simplices
//! are kept, and homology is computed on normalized chains.

mod bisimplicial;
mod category;
mod classification;
mod double;
mod homology;
mod simplicial;
mod zigzag;

pub use bisimplicial::{Operator, TruncatedBisimplicialSet};
pub use category::{Arrow, FiniteCategory, Marking};
pub use classification::{
    classification_level, classification_size, ClassificationLevel, LevelSize, DEFAULT_BUDGET, MAX_CLASSIFICATION_DIMENSION,
    MAX_CLASSIFICATION_LENGTH,
};
pub use double::{double_nerve_w, Diagonal, DiagonalChecks, DoubleNerve, RetractionCheck, MAX_DOUBLE_NERVE_DIMENSION};
pub use homology::{
    components, components_bijective, homology, homology_through, invariant_factors, normalized_boundary, HomologyGroup, HomologyProfile,
};
pub use simplicial::{nerve, Simplex, SimplicialMap, TruncatedSimplicialSet, MAX_NERVE_DIMENSION};
pub use zigzag::{zigzag_witness, Zigzag, ZigzagChecks, ZigzagOutcome};

pub const DEFAULT_DIMENSION: usize = 3;
