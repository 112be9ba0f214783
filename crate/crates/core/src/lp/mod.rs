//! Dyadic decompositions and the Besov/Sobolev-type norms built on them.

pub mod blocks;
pub mod bony;
pub mod cutoff;
pub mod norms;
pub mod spec;

pub use blocks::{dyadic_block, BlockIndexRange, BlockKind, BlockMode};
pub use bony::bony_decompose;
pub use cutoff::{make_cutoffs, CutoffPair};
pub use norms::{norm, FieldNorms};
pub use spec::NormSpec;
