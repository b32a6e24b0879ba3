//! Exact arithmetic: rationals, polynomials in one and two variables,
//! rational functions in `x`, matrices over these rings, and the two matrix
//! normal forms the rest of the crate leans on (characteristic polynomial with
//! adjugate, and Hermite normal form over `Q[x]`).
//!
//! Nothing in here touches floating point.

mod bivar;
mod charpoly;
mod hnf;
mod matrix;
mod ratfunc;
mod rational;
mod series;
mod unipoly;

pub use bivar::BivarPoly;
pub use charpoly::{charpoly_adjugate, CharpolyAdjugate};
pub use hnf::{hnf_qx, lattice_reduce, Hnf};
pub use matrix::Matrix;
pub use ratfunc::RatFuncX;
pub use rational::{parse_rational, q, qi, rational_roots, Rational};
pub use series::{Laurent, Series};
pub use unipoly::UniPoly;

use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Commutative ring with identity, as used by [`Matrix`].
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring + std::ops::Div<Output = Self> {}

impl Field for Rational {}
impl Field for RatFuncX {}

/// Integral domain with exact division, enough for fraction-free elimination.
pub trait ExactDiv: Ring {
    /// `self / rhs`, where the caller guarantees `rhs` divides `self`.
    fn exact_div(&self, rhs: &Self) -> Self;
}

impl ExactDiv for Rational {
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl ExactDiv for UniPoly {
    fn exact_div(&self, rhs: &Self) -> Self {
        let (quo, rem) = self.div_rem(rhs);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        quo
    }
}

impl ExactDiv for RatFuncX {
    fn exact_div(&self, rhs: &Self) -> Self {
        self.clone() / rhs.clone()
    }
}
