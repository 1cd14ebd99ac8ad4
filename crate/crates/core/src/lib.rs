//! Toolkit for driving a grass-pixel display with a perceptually even color
//! scale.
//!
//! A grass pixel shows an intermediate color between its fixed yellow grass
//! and a motor-actuated green grass whose protrusion length is adjustable.
//! This crate covers the full software path from photographs to motor
//! commands:
//!
//! * [`color`]: sRGB / XYZ / CIELAB conversions and the CIE76 / CIEDE2000
//!   color-difference formulas.
//! * [`calib`]: color-checker correction of developed photographs and mean
//!   patch measurement, producing measured grass color values in CIELAB.
//! * [`scale`]: the scale-setting procedure that places equally spaced
//!   target colors between the minimum- and maximum-length grass colors and
//!   assigns a grass length to every level of the scale.
//! * [`repeat`]: repeatability analysis of repeated measurements against
//!   their per-group mean reference.
//! * [`display`]: keyframe animation compilation to per-pixel lengths and
//!   stepper commands, plus a simulated rendering of the display.
//!
//! The color math is generic over the floating-point scalar (see
//! [`scalar::Scalar`]); the pipeline itself runs in `f64` through the
//! aliases below.

pub mod calib;
pub mod color;
pub mod display;
pub mod numfmt;
pub mod raster;
pub mod repeat;
pub mod scalar;
pub mod scale;
pub mod solve;

pub use color::{Ciede2000Params, ColorError, LabColor, SrgbColor, XyzColor};

/// Gamma-encoded sRGB color, `f64` pipeline alias.
pub type Srgb = SrgbColor<f64>;
/// CIE 1931 tristimulus value, `f64` pipeline alias.
pub type Xyz = XyzColor<f64>;
/// CIELAB color, `f64` pipeline alias.
pub type Lab = LabColor<f64>;
/// CIEDE2000 parametric coefficients, `f64` pipeline alias.
pub type DiffParams = Ciede2000Params<f64>;

/// Actuation range of the green grass in millimeters.
pub const GREEN_RANGE_MM: [f64; 2] = [0.0, 15.0];
