//! Integral trace forms of number fields: trace-zero and perp lattices, their
//! isometries and automorphism groups, lifting of isometries to full trace
//! forms, and the formulas of the Bhargava parametrization of quartic rings.

pub mod error;
pub mod exact;

pub use error::{Error, Result};
pub mod numberfield;
mod serde_util;
pub mod fixtures;
pub mod sublattice;
pub mod isometry;
pub mod lifting;
pub mod bhargava;
pub mod casimir;
