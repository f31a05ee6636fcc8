//! Numeric abstraction used by the LP solver and the Chernoff helpers.
//!
//! Item sizes are always `f64`. Arithmetic that benefits from an exact
//! route (the covering LP) is written against [`Scalar`], which is
//! implemented for `f32`, `f64` and [`BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

/// A field-like number type usable by the simplex solver.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync
{
    /// Comparison slack: zero for exact types.
    fn tolerance() -> Self;

    /// Lossless (exact types) or nearest (floating types) conversion.
    fn from_f64_lossy(x: f64) -> Self;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_positive_tol(&self) -> bool {
        *self > Self::tolerance()
    }

    fn is_negative_tol(&self) -> bool {
        *self < -Self::tolerance()
    }

    fn is_zero_tol(&self) -> bool {
        !self.is_positive_tol() && !self.is_negative_tol()
    }

    /// Smallest integer not below `self`, snapping values within tolerance
    /// of an integer onto it.
    fn ceil_tol(&self) -> Self;
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }
    fn from_f64_lossy(x: f64) -> Self {
        x
    }
    fn ceil_tol(&self) -> Self {
        let r = self.round();
        if (self - r).abs() <= 1e-9 {
            r
        } else {
            self.ceil()
        }
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-4
    }
    fn from_f64_lossy(x: f64) -> Self {
        x as f32
    }
    fn ceil_tol(&self) -> Self {
        let r = self.round();
        if (self - r).abs() <= 1e-4 {
            r
        } else {
            self.ceil()
        }
    }
}

impl Scalar for BigRational {
    fn tolerance() -> Self {
        BigRational::zero()
    }
    fn from_f64_lossy(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }
    fn ceil_tol(&self) -> Self {
        self.ceil()
    }
}

/// Exact rational helper for tests and certificates.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
