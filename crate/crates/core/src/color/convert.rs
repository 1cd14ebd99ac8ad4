//! Conversions between sRGB, linear RGB, CIE XYZ and CIELAB.
//!
//! Linear RGB triples are plain `[T; 3]` arrays. All conversions assume
//! channels in `[0, 1]` (sRGB) or nonnegative tristimulus components; the
//! validating constructors on the color types are the enforcement point.

use super::{LabColor, SrgbColor, XyzColor};
use crate::scalar::{num, Scalar};

/// sRGB reference white, D65/2°.
pub const D65_WHITE: [f64; 3] = [0.95047, 1.0, 1.08883];

/// Linear sRGB to XYZ (D65) matrix.
pub const SRGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
];

/// XYZ (D65) to linear sRGB matrix, inverse of [`SRGB_TO_XYZ`].
pub const XYZ_TO_SRGB: [[f64; 3]; 3] = [
    [3.2404542, -1.5371385, -0.4985314],
    [-0.9692660, 1.8760108, 0.0415560],
    [0.0556434, -0.2040259, 1.0572252],
];

// CIE f(t) constants, exact rational forms.
const LAB_EPSILON: f64 = 216.0 / 24389.0;
const LAB_KAPPA: f64 = 24389.0 / 27.0;

fn eotf<T: Scalar>(u: T) -> T {
    if u <= num(0.04045) {
        u / num(12.92)
    } else {
        ((u + num(0.055)) / num(1.055)).powf(num(2.4))
    }
}

fn oetf<T: Scalar>(u: T) -> T {
    if u <= num(0.0031308) {
        u * num(12.92)
    } else {
        num::<T>(1.055) * u.powf(T::one() / num(2.4)) - num(0.055)
    }
}

/// Decodes gamma-encoded sRGB into linear RGB, per channel.
pub fn srgb_to_linear<T: Scalar>(c: SrgbColor<T>) -> [T; 3] {
    [eotf(c.r), eotf(c.g), eotf(c.b)]
}

/// Encodes linear RGB into gamma-encoded sRGB, clamping into `[0, 1]`.
pub fn linear_to_srgb<T: Scalar>(rgb: [T; 3]) -> SrgbColor<T> {
    let clamp = |v: T| v.max(T::zero()).min(T::one());
    SrgbColor::clamped(
        oetf(clamp(rgb[0])),
        oetf(clamp(rgb[1])),
        oetf(clamp(rgb[2])),
    )
}

fn mat_mul<T: Scalar>(m: &[[f64; 3]; 3], v: [T; 3]) -> [T; 3] {
    let row = |r: &[f64; 3]| num::<T>(r[0]) * v[0] + num::<T>(r[1]) * v[1] + num::<T>(r[2]) * v[2];
    [row(&m[0]), row(&m[1]), row(&m[2])]
}

/// Linear RGB to CIE XYZ via the D65 sRGB primaries matrix.
pub fn linear_to_xyz<T: Scalar>(rgb: [T; 3]) -> XyzColor<T> {
    let [x, y, z] = mat_mul(&SRGB_TO_XYZ, rgb);
    XyzColor { x, y, z }
}

/// CIE XYZ to linear RGB. Out-of-gamut colors produce components outside
/// `[0, 1]`; encoding clamps them.
pub fn xyz_to_linear<T: Scalar>(c: XyzColor<T>) -> [T; 3] {
    mat_mul(&XYZ_TO_SRGB, [c.x, c.y, c.z])
}

fn lab_f<T: Scalar>(t: T) -> T {
    if t > num(LAB_EPSILON) {
        t.cbrt()
    } else {
        (num::<T>(LAB_KAPPA) * t + num(16.0)) / num(116.0)
    }
}

/// CIE XYZ to CIELAB under the D65 reference white.
pub fn xyz_to_lab<T: Scalar>(c: XyzColor<T>) -> LabColor<T> {
    let fx = lab_f(c.x / num(D65_WHITE[0]));
    let fy = lab_f(c.y / num(D65_WHITE[1]));
    let fz = lab_f(c.z / num(D65_WHITE[2]));
    LabColor {
        l: num::<T>(116.0) * fy - num(16.0),
        a: num::<T>(500.0) * (fx - fy),
        b: num::<T>(200.0) * (fy - fz),
    }
}

/// CIELAB back to CIE XYZ under the D65 reference white.
pub fn lab_to_xyz<T: Scalar>(c: LabColor<T>) -> XyzColor<T> {
    let fy = (c.l + num(16.0)) / num(116.0);
    let fx = fy + c.a / num(500.0);
    let fz = fy - c.b / num(200.0);
    let inv = |f: T| {
        let f3 = f * f * f;
        if f3 > num(LAB_EPSILON) {
            f3
        } else {
            (num::<T>(116.0) * f - num(16.0)) / num(LAB_KAPPA)
        }
    };
    // kappa * epsilon = 8 exactly
    let yr = if c.l > num(8.0) {
        fy * fy * fy
    } else {
        c.l / num(LAB_KAPPA)
    };
    XyzColor {
        x: inv(fx) * num(D65_WHITE[0]),
        y: yr * num(D65_WHITE[1]),
        z: inv(fz) * num(D65_WHITE[2]),
    }
}

/// Full decode: gamma sRGB to CIELAB.
pub fn srgb_to_lab<T: Scalar>(c: SrgbColor<T>) -> LabColor<T> {
    xyz_to_lab(linear_to_xyz(srgb_to_linear(c)))
}

/// Full encode: CIELAB to gamma sRGB, clamping out-of-gamut colors.
pub fn lab_to_srgb<T: Scalar>(c: LabColor<T>) -> SrgbColor<T> {
    linear_to_srgb(xyz_to_linear(lab_to_xyz(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gray(v: f64) -> SrgbColor<f64> {
        SrgbColor::new(v, v, v).unwrap()
    }

    #[test]
    fn linear_fixed_points() {
        assert_eq!(srgb_to_linear(gray(0.0)), [0.0, 0.0, 0.0]);
        assert_eq!(srgb_to_linear(gray(1.0)), [1.0, 1.0, 1.0]);
    }

    #[test]
    fn linear_mid_gray_matches_published_transfer_function() {
        // ((0.5 + 0.055) / 1.055)^2.4 evaluated independently
        let expected = 0.21404114048223255;
        for ch in srgb_to_linear(gray(0.5)) {
            assert!((ch - expected).abs() < 1e-12, "got {ch}");
        }
    }

    #[test]
    fn xyz_white_is_matrix_row_sums() {
        let w = linear_to_xyz([1.0, 1.0, 1.0]);
        for (got, row) in [w.x, w.y, w.z].into_iter().zip(&SRGB_TO_XYZ) {
            let sum: f64 = row.iter().sum();
            assert!((got - sum).abs() < 1e-15);
        }
        assert!((w.x - 0.9505).abs() < 1e-3);
        assert!((w.y - 1.0).abs() < 1e-3);
        assert!((w.z - 1.0890).abs() < 1e-3);
    }

    #[test]
    fn xyz_red_is_first_matrix_column() {
        let r = linear_to_xyz([1.0, 0.0, 0.0]);
        assert_eq!(
            [r.x, r.y, r.z],
            [SRGB_TO_XYZ[0][0], SRGB_TO_XYZ[1][0], SRGB_TO_XYZ[2][0]]
        );
    }

    #[test]
    fn d65_white_maps_to_l100() {
        let lab = xyz_to_lab(XyzColor::new(D65_WHITE[0], D65_WHITE[1], D65_WHITE[2]).unwrap());
        assert_eq!(lab.l, 100.0);
        assert_eq!(lab.a, 0.0);
        assert_eq!(lab.b, 0.0);
    }

    #[test]
    fn black_maps_to_origin() {
        let lab = xyz_to_lab(XyzColor::new(0.0, 0.0, 0.0).unwrap());
        assert_eq!((lab.l, lab.a, lab.b), (0.0, 0.0, 0.0));
    }

    #[test]
    fn mid_gray_lightness_matches_composed_oracle() {
        // srgb 0.5 through the published transfer function and matrix,
        // then the CIELAB transform, evaluated independently.
        let lab = srgb_to_lab(gray(0.5));
        assert!((lab.l - 53.38896705407974).abs() < 1e-9, "l = {}", lab.l);
        assert!(lab.a.abs() < 1e-4);
        assert!(lab.b.abs() < 1e-4);
    }

    #[test]
    fn conversions_work_in_f32() {
        let lab: LabColor<f32> = srgb_to_lab(SrgbColor::new(0.5f32, 0.5, 0.5).unwrap());
        assert!((lab.l - 53.389).abs() < 1e-2);
    }

    proptest! {
        #[test]
        fn srgb_linear_round_trip(r in 0.0f64..=1.0, g in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let c = SrgbColor::new(r, g, b).unwrap();
            let back = linear_to_srgb(srgb_to_linear(c));
            prop_assert!((back.r - r).abs() < 1e-9);
            prop_assert!((back.g - g).abs() < 1e-9);
            prop_assert!((back.b - b).abs() < 1e-9);
        }

        #[test]
        fn xyz_lab_round_trip(r in 0.0f64..=1.0, g in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let xyz = linear_to_xyz(srgb_to_linear(SrgbColor::new(r, g, b).unwrap()));
            let back = lab_to_xyz(xyz_to_lab(xyz));
            prop_assert!((back.x - xyz.x).abs() < 1e-7);
            prop_assert!((back.y - xyz.y).abs() < 1e-7);
            prop_assert!((back.z - xyz.z).abs() < 1e-7);
        }
    }
}
