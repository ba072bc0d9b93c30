//! Exact enumeration of lozenge tilings of halved hexagons and of hexagons
//! with a shamrock removed from the symmetry axis.

pub mod batch;
pub mod exact;
pub mod formulas;
pub mod lattice;
pub mod oracle;
pub mod properties;
pub mod regions;

pub use exact::ExactCount;
