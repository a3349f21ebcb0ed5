//! Exact combinatorics of abelian and metabelian Galois covers of curves.
//!
//! The crate models a cover type by its building data and computes the
//! discrete invariants of the attached Prym variety: the genus of the cover,
//! the Prym dimension, the polarization type and the character-by-character
//! decomposition of the space of holomorphic differentials. On top of that it
//! evaluates the known sufficient conditions for the differential of the Prym
//! map to be injective and analyses collisions of the Abel–Prym map inside
//! the integral group ring.
//!
//! All arithmetic is exact; nothing here touches floating point.

pub mod cover;
pub mod criteria;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod invariants;
pub mod metabelian;

pub use cover::{BuildingData, Connectivity, CoverSpec, ReducedBuildingData, ValidationReport};
pub use error::{Error, Result};
pub use group::{
    Automorphism, Character, FiniteAbelianGroup, GroupElement, GroupRingElement, RationalRotation,
};
pub use invariants::{InvariantsReport, SymSquareAudit};
