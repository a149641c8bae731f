//! Coxeter complexes, typed flag simplicial complexes, their systolizations,
//! and exhaustive local verification of 6-largeness on finite balls.

pub mod complex;
pub mod coxeter;
pub mod error;
pub mod systolize;
pub mod verify;

pub use error::{Error, Result};
