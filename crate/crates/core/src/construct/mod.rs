//! Structures derived from a given one: Casimir rescalings, products,
//! cosymplectic reductions, and the log-f classification of leaves.

mod cosymplectic;
mod derived;
mod logf;

pub use cosymplectic::{annihilator_rows, cosymplectic_reduce, induced_bivector_at, CosymplecticReduction};
pub use derived::{direct_product, direct_sum, scale_by_casimir, CasimirScaling};
pub use logf::{logf_classify, restrict_to_leaf, LeafRestriction, LogFClassification, LogFVerdict};
