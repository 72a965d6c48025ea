pub mod error;
pub mod exactlin;
pub mod polygon;
pub mod polytope;
pub mod cluster;
pub mod secondary;
pub mod minkowski;
pub mod analysis;
pub mod sampling;
pub mod io;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
