//! Exact enumeration for extended Catalan arrangements of crystallographic
//! root systems: ideal chains in the root poset, bounded dominant regions and
//! their maximal alcoves, coroot lattice points in dilated alcoves, and the
//! polygon models of generalized cluster complexes in types A and B/C.

pub mod alcove;
pub mod chains;
pub mod cluster;
pub mod error;
pub mod fm;
pub mod lattice;
pub mod poset;
pub mod regions;
pub mod rootset;
pub mod rootsys;
pub mod scalar;
pub mod stats;

pub use error::{AtlasError, Result};
pub use poset::{build_poset, Filter, Ideal, RootPoset};
pub use rootset::RootSet;
pub use rootsys::{build_root_system, CartanType, Family, RootSystem, RootVec};

/// Arbitrary-precision rational used throughout the exact core.
pub type Rational = num_rational::BigRational;
/// Rational with machine-word parts, for small hand-written systems.
pub type SmallRational = num_rational::Ratio<i64>;
/// Inequality system over exact rationals.
pub type ExactSystem = fm::LinearSystem<Rational>;
