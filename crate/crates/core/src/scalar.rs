//! Floating-point scalar abstraction for the color math.

use std::fmt;

/// Scalar type the color math is generic over: `f32` or `f64`.
pub trait Scalar: num_traits::Float + fmt::Debug + fmt::Display + 'static {}

impl<T> Scalar for T where T: num_traits::Float + fmt::Debug + fmt::Display + 'static {}

/// Casts an `f64` constant into the scalar type.
#[inline]
pub(crate) fn num<T: Scalar>(v: f64) -> T {
    T::from(v).expect("constant representable in scalar type")
}

/// Widens a scalar to `f64` for reports and error messages.
#[inline]
pub(crate) fn wide<T: Scalar>(v: T) -> f64 {
    v.to_f64().expect("scalar convertible to f64")
}
