//! Scwols, complexes of groups over them, morphisms, and the covering verifier.

mod complex;
mod covering;
mod invariants;
mod scwol;
mod target;

pub use complex::ComplexOfGroups;
pub use covering::{
    identity_morphism, verify_covering, CheckTally, CogMorphism, CoveringCertificate, FiniteTarget, TargetComplex,
    Verdict, Witness,
};
pub use invariants::{
    component_count, concat, first_betti_number, free_rank_trivial, invert, presentation_over_cone, Presentation, Word,
};
pub use scwol::{build_chamber_scwol, morphism_problems, Scwol};
pub use target::TargetResidueFamily;
