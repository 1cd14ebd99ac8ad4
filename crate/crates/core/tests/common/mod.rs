//! Shared fixtures and independent oracles for the integration suites.

#![allow(dead_code)]

use std::path::PathBuf;

use grasscale::calib::{CameraPosition, MeasuredSample};
use grasscale::color::{delta_e00, delta_e00_default};
use grasscale::display::{MixModel, PixelGeometry};
use grasscale::scale::{segment_point, ScaleMapping, ScaleSpec};
use grasscale::{DiffParams, Lab, Srgb};

/// Supplementary CIEDE2000 test data published alongside the formula's
/// implementation notes: (lab1, lab2, expected ΔE00 to four decimals).
pub const CIEDE2000_CASES: &[([f64; 3], [f64; 3], f64)] = &[
    (
        [50.0000, 2.6772, -79.7751],
        [50.0000, 0.0000, -82.7485],
        2.0425,
    ),
    (
        [50.0000, 3.1571, -77.2803],
        [50.0000, 0.0000, -82.7485],
        2.8615,
    ),
    (
        [50.0000, 2.8361, -74.0200],
        [50.0000, 0.0000, -82.7485],
        3.4412,
    ),
    (
        [50.0000, -1.3802, -84.2814],
        [50.0000, 0.0000, -82.7485],
        1.0000,
    ),
    (
        [50.0000, -1.1848, -84.8006],
        [50.0000, 0.0000, -82.7485],
        1.0000,
    ),
    (
        [50.0000, -0.9009, -85.5211],
        [50.0000, 0.0000, -82.7485],
        1.0000,
    ),
    (
        [50.0000, 0.0000, 0.0000],
        [50.0000, -1.0000, 2.0000],
        2.3669,
    ),
    (
        [50.0000, -1.0000, 2.0000],
        [50.0000, 0.0000, 0.0000],
        2.3669,
    ),
    (
        [50.0000, 2.4900, -0.0010],
        [50.0000, -2.4900, 0.0009],
        7.1792,
    ),
    (
        [50.0000, 2.4900, -0.0010],
        [50.0000, -2.4900, 0.0010],
        7.1792,
    ),
    (
        [50.0000, 2.4900, -0.0010],
        [50.0000, -2.4900, 0.0011],
        7.2195,
    ),
    (
        [50.0000, 2.4900, -0.0010],
        [50.0000, -2.4900, 0.0012],
        7.2195,
    ),
    (
        [50.0000, -0.0010, 2.4900],
        [50.0000, 0.0009, -2.4900],
        4.8045,
    ),
    (
        [50.0000, -0.0010, 2.4900],
        [50.0000, 0.0010, -2.4900],
        4.8045,
    ),
    (
        [50.0000, -0.0010, 2.4900],
        [50.0000, 0.0011, -2.4900],
        4.7461,
    ),
    (
        [50.0000, 2.5000, 0.0000],
        [50.0000, 0.0000, -2.5000],
        4.3065,
    ),
    (
        [50.0000, 2.5000, 0.0000],
        [73.0000, 25.0000, -18.0000],
        27.1492,
    ),
    (
        [50.0000, 2.5000, 0.0000],
        [61.0000, -5.0000, 29.0000],
        22.8977,
    ),
    (
        [50.0000, 2.5000, 0.0000],
        [56.0000, -27.0000, -3.0000],
        31.9030,
    ),
    (
        [50.0000, 2.5000, 0.0000],
        [58.0000, 24.0000, 15.0000],
        19.4535,
    ),
    ([50.0000, 2.5000, 0.0000], [50.0000, 3.1736, 0.5854], 1.0000),
    ([50.0000, 2.5000, 0.0000], [50.0000, 3.2972, 0.0000], 1.0000),
    ([50.0000, 2.5000, 0.0000], [50.0000, 1.8634, 0.5757], 1.0000),
    ([50.0000, 2.5000, 0.0000], [50.0000, 3.2592, 0.3350], 1.0000),
    (
        [60.2574, -34.0099, 36.2677],
        [60.4626, -34.1751, 39.4387],
        1.2644,
    ),
    (
        [63.0109, -31.0961, -5.8663],
        [62.8187, -29.7946, -4.0864],
        1.2630,
    ),
    (
        [61.2901, 3.7196, -5.3901],
        [61.4292, 2.2480, -4.9620],
        1.8731,
    ),
    (
        [35.0831, -44.1164, 3.7933],
        [35.0232, -40.0716, 1.5901],
        1.8645,
    ),
    (
        [22.7233, 20.0904, -46.6940],
        [23.0331, 14.9730, -42.5619],
        2.0373,
    ),
    (
        [36.4612, 47.8580, 18.3852],
        [36.2715, 50.5065, 21.2231],
        1.4146,
    ),
    (
        [90.8027, -2.0831, 1.4410],
        [91.1528, -1.6435, 0.0447],
        1.4441,
    ),
    (
        [90.9257, -0.5406, -0.9208],
        [88.6381, -0.8985, -0.7239],
        1.5381,
    ),
    (
        [6.7747, -0.2908, -2.4247],
        [5.8714, -0.0985, -2.2286],
        0.6377,
    ),
    (
        [2.0776, 0.0795, -1.1350],
        [0.9033, -0.0636, -0.5514],
        0.9082,
    ),
];

/// Segment endpoints whose difference curve dips decisively: found by a
/// brute-force search over random CIELAB pairs with a reference CIEDE2000
/// implementation.
pub const NONMONO_PAIR: ([f64; 3], [f64; 3]) = (
    [62.1443527, 11.6597922, -73.3532282],
    [62.4651752, -3.1695864, 49.5070691],
);

pub fn lab(v: [f64; 3]) -> Lab {
    Lab::new(v[0], v[1], v[2])
}

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Straight-segment endpoints used by the synthetic calibration fixtures.
pub const STRAIGHT_G0: [f64; 3] = [40.0, -5.0, 20.0];
pub const STRAIGHT_G4: [f64; 3] = [55.0, -25.0, 5.0];

pub const FIXTURE_CAMERA: CameraPosition = CameraPosition {
    h_m: 1.2,
    d_m: 1.0,
    theta_deg: 0.0,
};

/// Test-side bisection, independent of the library solver.
pub fn bisect_local(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let lo_sign = f(lo) > 0.0;
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// 21 samples lying exactly on the straight CIELAB segment, spaced at equal
/// CIEDE2000 increments, with grass lengths on the 0.75 mm protocol grid.
///
/// The scale endpoints then fall on samples 0 and 20 and the interior
/// targets land exactly on samples 5, 10 and 15.
pub fn straight_fixture() -> Vec<MeasuredSample> {
    let g0 = lab(STRAIGHT_G0);
    let g4 = lab(STRAIGHT_G4);
    let span = delta_e00_default(g0, g4);
    assert!(span > 12.0, "fixture span {span} must clear the gate");

    let n = 21;
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let share = i as f64 / (n - 1) as f64 * span;
        let t = if i == 0 {
            0.0
        } else if i == n - 1 {
            1.0
        } else {
            bisect_local(
                |t| delta_e00_default(g0, segment_point(g0, g4, t).unwrap()) - share,
                0.0,
                1.0,
                80,
            )
        };
        let point = segment_point(g0, g4, t).unwrap();
        let length = 0.75 * i as f64;
        samples.push(MeasuredSample::new(length, point, FIXTURE_CAMERA, 0).unwrap());
    }
    samples
}

/// The straight fixture with every interior sample pushed sideways in
/// (a*, b*) far enough that no interior target keeps a candidate within the
/// 3.0 tolerance. Endpoints are untouched, so the span and monotonicity
/// gates still pass.
pub fn curved_fixture() -> Vec<MeasuredSample> {
    let mut samples = straight_fixture();
    let n = samples.len();
    // unit vector perpendicular to the segment direction in (a*, b*)
    let (da, db) = (
        STRAIGHT_G4[1] - STRAIGHT_G0[1],
        STRAIGHT_G4[2] - STRAIGHT_G0[2],
    );
    let norm = (da * da + db * db).sqrt();
    let (pa, pb) = (-db / norm, da / norm);
    let bump = 9.0;
    for (i, s) in samples.iter_mut().enumerate() {
        if i == 0 || i == n - 1 {
            continue;
        }
        let w = (std::f64::consts::PI * i as f64 / (n - 1) as f64).sin();
        s.lab.a += pa * bump * w;
        s.lab.b += pb * bump * w;
    }

    // construct-time check: every interior target must be missed by all
    // samples under the default tolerance
    let spec = ScaleSpec::<f64>::default();
    let mono =
        grasscale::scale::check_monotone(samples[0].lab, samples[n - 1].lab, &spec.params, 1e-3)
            .unwrap();
    let targets =
        grasscale::scale::compute_targets(samples[0].lab, samples[n - 1].lab, &spec, &mono)
            .unwrap();
    for level in 1..4 {
        let min = samples
            .iter()
            .map(|s| delta_e00(targets.targets[level], s.lab, &spec.params))
            .fold(f64::INFINITY, f64::min);
        assert!(
            min > spec.tolerance,
            "curved fixture: level {level} still has a candidate (min ΔE00 {min})"
        );
    }
    samples
}

/// Ten identical repetitions at one length and position.
pub fn identical_repetition_group() -> Vec<MeasuredSample> {
    let value = Lab::new(55.2, -12.4, 28.9);
    let camera = CameraPosition::new(1.2, 2.0, 0.0);
    (0..10)
        .map(|rep| MeasuredSample::new(3.75, value, camera, rep).unwrap())
        .collect()
}

/// Nine identical repetitions plus one displaced beyond the 2.0 tolerance.
pub fn outlier_repetition_group() -> Vec<MeasuredSample> {
    let base = Lab::new(55.2, -12.4, 28.9);
    let camera = CameraPosition::new(1.2, 2.0, 30.0);
    let mut samples: Vec<_> = (0..9)
        .map(|rep| MeasuredSample::new(3.75, base, camera, rep).unwrap())
        .collect();
    // displacement scaled until the outlier sits well past the tolerance
    // relative to the group mean
    let outlier = Lab::new(base.l + 2.0, base.a + 4.5, base.b - 3.0);
    samples.push(MeasuredSample::new(3.75, outlier, camera, 9).unwrap());

    let mean = Lab::new(
        base.l + (outlier.l - base.l) / 10.0,
        base.a + (outlier.a - base.a) / 10.0,
        base.b + (outlier.b - base.b) / 10.0,
    );
    let de_outlier = delta_e00_default(mean, outlier);
    let de_base = delta_e00_default(mean, base);
    assert!(
        de_outlier > 2.0,
        "outlier ΔE00 {de_outlier} must exceed 2.0"
    );
    assert!(de_base <= 2.0, "remaining members must stay within 2.0");
    samples
}

/// Pinned rendering setup shared by the golden tests and their regenerator.
pub fn golden_geometry() -> PixelGeometry {
    PixelGeometry::demo_display()
}

pub fn golden_mix() -> MixModel {
    MixModel::new(
        Srgb::new(0.85, 0.78, 0.20).unwrap(),
        Srgb::new(0.25, 0.55, 0.25).unwrap(),
        1.0,
    )
    .unwrap()
}

pub const GOLDEN_SCALE_PX: u32 = 16;

pub const GOLDEN_SCRIPTS: [&str; 4] = ["letter_n", "cross", "rain", "wave"];

pub fn demo_mapping() -> ScaleMapping {
    let path = fixtures_dir().join("mappings/demo_mapping.json");
    let text =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()));
    serde_json::from_str(&text).expect("demo mapping parses")
}

/// Brute-force minimum of the finite-difference derivative of
/// t -> ΔE00(g0, P(t)) on a uniform grid: the oracle for the monotonicity
/// checker.
pub fn brute_force_derivative_min(g0: Lab, g4: Lab, params: &DiffParams, step: f64) -> (f64, f64) {
    let n = (1.0 / step).round() as usize;
    let f: Vec<f64> = (0..=n)
        .map(|i| {
            let t = i as f64 / n as f64;
            delta_e00(g0, segment_point(g0, g4, t).unwrap(), params)
        })
        .collect();
    let h = 1.0 / n as f64;
    let mut min = f64::INFINITY;
    let mut argmin = 0.0;
    for i in 0..=n {
        let d = if i == 0 {
            (f[1] - f[0]) / h
        } else if i == n {
            (f[n] - f[n - 1]) / h
        } else {
            (f[i + 1] - f[i - 1]) / (2.0 * h)
        };
        if d < min {
            min = d;
            argmin = i as f64 / n as f64;
        }
    }
    (min, argmin)
}
