//! Scalar abstraction for filtration values.
//!
//! Every endpoint, action value and distance in this crate is a [`Scalar`]:
//! an ordered field element with exact comparisons. The canonical instance is
//! [`num_rational::BigRational`] (re-exported as [`crate::Rational`]); any
//! ordered exact field type with the same trait surface works.

use std::fmt::Debug;

use num_traits::{Num, Signed};

/// An exactly comparable field scalar.
///
/// The blanket impl covers `BigRational` and friends. Floating point types do
/// not implement `Ord` and are deliberately excluded: strict inequalities in
/// the matching and deletion rules must be decidable.
pub trait Scalar: Num + Signed + Ord + Clone + Debug {
    /// `self / 2`, exact.
    fn half(&self) -> Self {
        let two = Self::one() + Self::one();
        self.clone() / two
    }

    /// `|self - other|`.
    fn abs_diff(&self, other: &Self) -> Self {
        (self.clone() - other.clone()).abs()
    }

    fn from_int(n: i64) -> Self {
        let mut acc = Self::zero();
        let one = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc + one.clone();
        }
        if n < 0 {
            -acc
        } else {
            acc
        }
    }
}

impl<T> Scalar for T where T: Num + Signed + Ord + Clone + Debug {}
