use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Coefficient ring for [`MultiPoly`](super::MultiPoly).
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(value: i64) -> Self;

    /// Real embedding.
    fn to_f64(&self) -> f64;

    /// Split into an explicit leading sign and a magnitude string for the
    /// canonical text form. Compound coefficients come back parenthesized
    /// with `negative == false`.
    fn sign_and_magnitude(&self) -> (bool, String);
}

impl Ring for f64 {
    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sign_and_magnitude(&self) -> (bool, String) {
        (self.is_sign_negative(), format!("{}", self.abs()))
    }
}
