//! The three classifying constructions and their inverses: lax monoidal
//! structures via spine-sum tensors, skew monoidal structures via the nested
//! 2-face composites with coherence-searched transformations, and
//! sigma-monoidal structures via a surjective naming of simplices.

mod etransform;
mod lax;
mod sigma;
mod skew;

pub use etransform::e_transform;
pub use lax::{
    gamma_pattern, gamma_shapes, hat, lax_axioms, lax_classify, lax_recover, recover_gamma,
    recover_gamma_with, GammaShape, GammaTable, LaxClassifier, LaxStructure, StrictReading,
};
pub use sigma::{
    constant, projection, sigma_axioms, sigma_classify, sigma_recover, HRule, RecoveredSigma,
    SigmaStructure,
};
pub use skew::{skew_axioms, skew_classify, skew_embed_injectivity_probe, SkewStructure};
