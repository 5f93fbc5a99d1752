//! Curves over Q, their mod-2 representations, special prime searches and
//! the local conditions attached to them.

pub mod arith;
pub mod curves;
pub mod localcond;
pub mod mod2rep;
pub mod primescan;

pub use arith::{legendre, root_profile, squarefree_part, PrimePoly, RootProfile};
pub use curves::{ReductionData, ReductionKind, WeierstrassCurve};
pub use mod2rep::{Mod2Image, Mod2Profile, TwoDivisionCubic};
