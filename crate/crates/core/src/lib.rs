//! Computations with ℤ/r spin structures on closed surfaces: tangent-lifted
//! homology, Arf parity, twist groups generated by curve systems, square-tiled
//! surfaces, and their finite symplectic shadows.

pub mod engine;
pub mod error;
pub mod graphs;
mod intlin;
pub mod modring;
pub mod spin;
pub mod systems;
pub mod tangent_lift;
pub mod veech;

pub use error::{Error, Result};
pub use modring::{BaseClass, Modulus, SpMatrix};
pub use spin::{Parity, QuadraticForm, SpinStructure};
pub use tangent_lift::{LiftedClass, LiftedTransvection};
