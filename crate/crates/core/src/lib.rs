//! Clustering of polygonal curves under the Fréchet distance, with
//! ε-coreset constructions for the (k,l)-center and (k,l)-median objectives
//! and brute-force oracles that check them at small scale.
//!
//! The crate is `no_std` and only needs an allocator.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod clustering;
pub mod coreset;
pub mod curve;
pub mod error;
pub mod frechet;
pub mod geometry;
pub mod oracle;

pub use curve::{Curve, CurveSet};
pub use error::{Error, Result};
pub use frechet::{FrechetResult, DEFAULT_REL_TOL};
pub use geometry::{Point, Vector};
