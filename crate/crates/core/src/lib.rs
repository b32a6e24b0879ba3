//! Exact constructions around Calogero-Moser spaces of smooth affine plane
//! curves: matrix points and their defining relations, the ring of
//! differential operators as a skew polynomial ring, explicit left-ideal
//! generators, fractional ideals of the coordinate ring, and primary
//! decomposable subspaces with their divisors.

pub mod cmspace;
pub mod codec;
pub mod curve;
pub mod dmod;
pub mod error;
pub mod funcfield;
pub mod kernel;
pub mod pdspace;
pub mod sample;

pub use error::{Error, Result};
