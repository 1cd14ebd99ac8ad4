//! Color types, exact color space conversions and color-difference formulas.
//!
//! All conversions assume the sRGB standard's D65/2° white point. Hue
//! arithmetic inside CIEDE2000 is carried out in degrees; radians appear
//! only at trigonometric call sites.

mod convert;
mod diff;

pub use convert::{
    lab_to_srgb, lab_to_xyz, linear_to_srgb, linear_to_xyz, srgb_to_lab, srgb_to_linear,
    xyz_to_lab, xyz_to_linear, D65_WHITE, SRGB_TO_XYZ, XYZ_TO_SRGB,
};
pub use diff::{delta_e00, delta_e00_default, delta_e76};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{num, wide, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ColorError {
    #[error("sRGB channel {channel} out of range: {value} (expected 0..=1)")]
    ChannelOutOfRange { channel: char, value: f64 },
    #[error("XYZ component {component} must be nonnegative and finite, got {value}")]
    BadTristimulus { component: char, value: f64 },
    #[error("CIEDE2000 coefficient {name} must be strictly positive, got {value}")]
    NonPositiveCoefficient { name: &'static str, value: f64 },
}

/// Gamma-encoded sRGB color with channels normalized to `[0, 1]`.
///
/// 8-bit and 16-bit inputs are divided by 255 and 65535 on ingestion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SrgbColor<T> {
    pub r: T,
    pub g: T,
    pub b: T,
}

impl<T: Scalar> SrgbColor<T> {
    /// Builds a color after checking every channel lies in `[0, 1]`.
    pub fn new(r: T, g: T, b: T) -> Result<Self, ColorError> {
        let c = Self { r, g, b };
        c.validate()?;
        Ok(c)
    }

    /// Builds a color, clamping each channel into `[0, 1]`.
    pub fn clamped(r: T, g: T, b: T) -> Self {
        let clamp = |v: T| v.max(T::zero()).min(T::one());
        Self {
            r: clamp(r),
            g: clamp(g),
            b: clamp(b),
        }
    }

    pub fn from_u8(r: u8, g: u8, b: u8) -> Self {
        let s = num::<T>(255.0);
        Self {
            r: num::<T>(r as f64) / s,
            g: num::<T>(g as f64) / s,
            b: num::<T>(b as f64) / s,
        }
    }

    pub fn from_u16(r: u16, g: u16, b: u16) -> Self {
        let s = num::<T>(65535.0);
        Self {
            r: num::<T>(r as f64) / s,
            g: num::<T>(g as f64) / s,
            b: num::<T>(b as f64) / s,
        }
    }

    pub fn validate(&self) -> Result<(), ColorError> {
        for (channel, v) in [('r', self.r), ('g', self.g), ('b', self.b)] {
            if !(v >= T::zero() && v <= T::one()) {
                return Err(ColorError::ChannelOutOfRange {
                    channel,
                    value: wide(v),
                });
            }
        }
        Ok(())
    }
}

/// CIE 1931 tristimulus value under D65, with Y normalized so that the
/// reference white has Y = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XyzColor<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> XyzColor<T> {
    /// Builds a tristimulus value after checking all components are
    /// nonnegative and finite.
    pub fn new(x: T, y: T, z: T) -> Result<Self, ColorError> {
        for (component, v) in [('x', x), ('y', y), ('z', z)] {
            if !(v >= T::zero() && v.is_finite()) {
                return Err(ColorError::BadTristimulus {
                    component,
                    value: wide(v),
                });
            }
        }
        Ok(Self { x, y, z })
    }
}

/// CIELAB color. `l` is lightness in `[0, 100]` for colors derived from a
/// valid tristimulus value; `a` and `b` are the unbounded opponent axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabColor<T> {
    pub l: T,
    pub a: T,
    pub b: T,
}

impl<T> LabColor<T> {
    pub fn new(l: T, a: T, b: T) -> Self {
        Self { l, a, b }
    }
}

/// Parametric coefficients of CIEDE2000. All three are 1 under the
/// standard observing conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ciede2000Params<T> {
    pub k_l: T,
    pub k_c: T,
    pub k_h: T,
}

impl<T: Scalar> Ciede2000Params<T> {
    pub fn new(k_l: T, k_c: T, k_h: T) -> Result<Self, ColorError> {
        let p = Self { k_l, k_c, k_h };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ColorError> {
        for (name, v) in [("k_l", self.k_l), ("k_c", self.k_c), ("k_h", self.k_h)] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(ColorError::NonPositiveCoefficient {
                    name,
                    value: wide(v),
                });
            }
        }
        Ok(())
    }
}

impl<T: Scalar> Default for Ciede2000Params<T> {
    fn default() -> Self {
        Self {
            k_l: T::one(),
            k_c: T::one(),
            k_h: T::one(),
        }
    }
}
