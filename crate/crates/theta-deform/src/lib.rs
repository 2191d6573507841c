//! Deformation quantization of torus algebras with finite cyclic symmetry.

pub mod crossed;
pub mod equiv_k;
pub mod error;
pub mod instance;
pub mod intmat;
pub mod projections;
pub mod symmetry;
pub mod theta_sphere;
pub mod weight_algebra;

pub use error::{Error, Result};
