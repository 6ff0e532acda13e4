//! Orbit closures in Grassmannians of submodules of a projective module over
//! a finite-dimensional path algebra, computed with exact arithmetic.

pub mod cli;
pub mod degen;
pub mod error;
pub mod exactfield;
pub mod grasslimit;
pub mod linalg;
pub mod modrep;
pub mod orbit;
pub mod pathalg;
pub mod surface_lab;

pub use error::{Error, Result};
