//! Graded modules over `R` or `R/I`: presentations, resolutions, Ext,
//! depth and classification of quotient rings.

mod classify;
mod ext;
mod graded;
mod presented;
mod resolution;

pub use classify::{
    auslander_buchsbaum, classify_ideal, cm_length_criterion, module_length, module_rank,
    Classification,
};
pub use ext::{canonical_module, dual_module, ext_into_base, ext_module, exterior_power};
pub use graded::{residue_field_betti, GradedPieces};
pub use presented::{k_subsets, PresentedModule};
pub use resolution::{
    depth, euler_rank, free_resolution, projective_dimension, resolve, BettiTable, ChainComplex,
    Resolution,
};
