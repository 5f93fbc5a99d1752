//! Finite model of Selmer groups cut out by local conditions.
//!
//! A [`SelmerSystem`] is a list of places, each carrying a nondegenerate
//! quadratic space `H_v` over F_{2^d} and a self-dual condition `L_v ⊂ H_v`,
//! together with a global image `G ⊂ ⊕H_v`. Two axioms stand in for the
//! arithmetic global duality: `G` is maximal isotropic, and the sum quadratic
//! form vanishes on `G`. The Selmer group is `G ∩ ⊕L_v`.

pub mod enumerate;
pub mod field;
pub mod json;
pub mod linalg;
pub mod quad;
pub mod random;
pub mod system;
pub mod walk;

pub use enumerate::{enumerate_verify, EnumerationReport};
pub use field::Gf2k;
pub use linalg::{FVec, Subspace};
pub use quad::QuadSpace;
pub use system::{Flavor, GlobalAxiom, Place, SelmerSystem, StepMode, StepOutcome, StepPlace, Want};
pub use walk::{rank_walk, standard_seed, WalkTrace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SelmerError {
    #[error("field: {0}")]
    Field(String),
    #[error("malformed system: {0}")]
    Malformed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("step inapplicable: {0}")]
    StepInapplicable(String),
    #[error("conclusion violated: {0}")]
    ConclusionViolated(String),
    #[error("no place labelled {0}")]
    UnknownPlace(String),
    #[error("enumeration bound exceeded: total dimension {requested} > {max}")]
    BoundExceeded { requested: usize, max: usize },
    #[error("json: {0}")]
    Json(String),
}
