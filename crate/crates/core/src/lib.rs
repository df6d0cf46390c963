//! Rough-set granular computing over finite universes.
//!
//! The crate covers relation- and cover-based approximation operators,
//! an abstract checker for granule and mereology axioms, dialectical
//! counting procedures with granule recovery, exact-rational dependency
//! measures, the partial algebra of low-level rough naturals, fuzzy level
//! chains, and the permutation-quotient representation of counts.

pub mod cipca;
pub mod counting;
pub mod cover;
pub mod error;
pub mod fuzzy;
pub mod measures;
pub mod ratio;
pub mod rel_approx;
pub mod roughnat;
pub mod rys;
pub mod theorems;
pub mod universe;

pub use cover::CoverSystem;
pub use error::{Error, Result};
pub use ratio::Ratio;
pub use universe::{ClosureKinds, ElementSet, Relation, Universe};
