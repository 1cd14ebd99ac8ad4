//! CIE76 and CIEDE2000 color-difference formulas.

use super::{Ciede2000Params, LabColor};
use crate::scalar::{num, Scalar};

/// CIE76 color difference: Euclidean distance in CIELAB.
pub fn delta_e76<T: Scalar>(p: LabColor<T>, q: LabColor<T>) -> T {
    let dl = q.l - p.l;
    let da = q.a - p.a;
    let db = q.b - p.b;
    (dl * dl + da * da + db * db).sqrt()
}

/// CIEDE2000 color difference with the standard coefficients k_L = k_C = k_H = 1.
pub fn delta_e00_default<T: Scalar>(p: LabColor<T>, q: LabColor<T>) -> T {
    delta_e00(p, q, &Ciede2000Params::default())
}

/// Hue angle of (a', b*) in degrees, normalized to [0, 360). Zero when both
/// components are zero.
fn hue_deg<T: Scalar>(b: T, a_prime: T) -> T {
    if b == T::zero() && a_prime == T::zero() {
        return T::zero();
    }
    let h = b.atan2(a_prime).to_degrees();
    if h < T::zero() {
        h + num(360.0)
    } else {
        h
    }
}

/// CIEDE2000 color difference.
///
/// Hue arithmetic is in degrees throughout; angles are converted to radians
/// only where sines and cosines are taken.
pub fn delta_e00<T: Scalar>(p: LabColor<T>, q: LabColor<T>, params: &Ciede2000Params<T>) -> T {
    let half = num::<T>(0.5);
    let two = num::<T>(2.0);
    let d180 = num::<T>(180.0);
    let d360 = num::<T>(360.0);
    let pow25_7 = num::<T>(25.0).powi(7);

    // chroma of the raw a*, b* pairs and its mean
    let c1_ab = (p.a * p.a + p.b * p.b).sqrt();
    let c2_ab = (q.a * q.a + q.b * q.b).sqrt();
    let c_ab_mean = (c1_ab + c2_ab) * half;

    // a-axis rescaling
    let c_mean7 = c_ab_mean.powi(7);
    let g = half * (T::one() - (c_mean7 / (c_mean7 + pow25_7)).sqrt());
    let a1p = (T::one() + g) * p.a;
    let a2p = (T::one() + g) * q.a;

    let c1p = (a1p * a1p + p.b * p.b).sqrt();
    let c2p = (a2p * a2p + q.b * q.b).sqrt();

    let h1p = hue_deg(p.b, a1p);
    let h2p = hue_deg(q.b, a2p);

    let chroma_product_zero = c1p * c2p == T::zero();

    // hue difference
    let dh = if chroma_product_zero {
        T::zero()
    } else {
        let d = h2p - h1p;
        if d.abs() <= d180 {
            d
        } else if d > d180 {
            d - d360
        } else {
            d + d360
        }
    };

    let dl = q.l - p.l;
    let dc = c2p - c1p;
    let dh_big = two * (c1p * c2p).sqrt() * (dh.to_radians() * half).sin();

    // means
    let l_mean = (p.l + q.l) * half;
    let c_mean = (c1p + c2p) * half;
    let h_mean = if chroma_product_zero {
        h1p + h2p
    } else {
        let sum = h1p + h2p;
        if (h1p - h2p).abs() <= d180 {
            sum * half
        } else if sum < d360 {
            (sum + d360) * half
        } else {
            (sum - d360) * half
        }
    };

    let t = T::one() - num::<T>(0.17) * (h_mean - num(30.0)).to_radians().cos()
        + num::<T>(0.24) * (two * h_mean).to_radians().cos()
        + num::<T>(0.32) * (num::<T>(3.0) * h_mean + num(6.0)).to_radians().cos()
        - num::<T>(0.20) * (num::<T>(4.0) * h_mean - num(63.0)).to_radians().cos();

    let dtheta = num::<T>(30.0) * (-((h_mean - num(275.0)) / num(25.0)).powi(2)).exp();
    let c_mean7p = c_mean.powi(7);
    let r_c = two * (c_mean7p / (c_mean7p + pow25_7)).sqrt();
    let r_t = -(two * dtheta).to_radians().sin() * r_c;

    let l_shift = (l_mean - num(50.0)).powi(2);
    let s_l = T::one() + num::<T>(0.015) * l_shift / (num::<T>(20.0) + l_shift).sqrt();
    let s_c = T::one() + num::<T>(0.045) * c_mean;
    let s_h = T::one() + num::<T>(0.015) * c_mean * t;

    let term_l = dl / (params.k_l * s_l);
    let term_c = dc / (params.k_c * s_c);
    let term_h = dh_big / (params.k_h * s_h);

    (term_l * term_l + term_c * term_c + term_h * term_h + r_t * term_c * term_h).sqrt()
}
