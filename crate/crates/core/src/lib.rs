//! Dimension-equation solver and supporting machinery for global integrals
//! on `GL_m`.

pub mod catalog;
pub mod error;
pub mod expr;
pub mod inducing;
pub mod orbit;
pub mod partition;
pub mod roots;
pub mod solver;
pub mod tables;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use orbit::{
    contribution, half_dim, orbit_dim, ExceptionalGroup, ExceptionalTable, OrbitLabel,
};
pub use partition::{ClassicalFamily, ClassicalType, Partition};
