//! Real scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use approx::AbsDiffEq;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar usable as the real part of matrix entries: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AbsDiffEq<Epsilon = Self>
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Lossless-enough widening used for serialization and reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar representable as f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Tolerance for direct comparisons of products of exact-angle exponentials.
///
/// `1e-12` in double precision; widened to a few hundred ulps for `f32`.
pub fn default_eq_tol<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(100.0))
}

/// Tolerance for results of iterative eigen computations.
pub fn default_eigen_tol<T: Real>() -> T {
    T::lit(1e-9).max(T::epsilon() * T::lit(1000.0))
}
