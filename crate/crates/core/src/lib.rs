//! Equivariant Pieri coefficients for Grassmannians of classical Lie type.

pub mod error;
pub mod lie;
pub mod polyring;
pub mod schubert;
pub mod diagram;
pub mod restrict_a;
pub mod gkm;
pub mod pieri;

pub use error::{Error, Result};
pub use lie::LieType;
pub mod cli;
