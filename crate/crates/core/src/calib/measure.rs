//! Mean color measurement over the evaluation region.

use serde::{Deserialize, Serialize};

use super::{CalibError, EvaluationRegion, Rect};
use crate::color::{linear_to_srgb, srgb_to_lab, srgb_to_linear};
use crate::raster::Raster;
use crate::{Lab, Srgb};

/// Space in which the region average is taken.
///
/// The capture pipeline averages the developed, gamma-encoded values;
/// averaging in linear RGB is available as an alternative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanSpace {
    #[default]
    Encoded,
    Linear,
}

/// Mean gamma-encoded sRGB over a rectangle.
pub(crate) fn region_mean(image: &Raster, rect: Rect) -> Result<Srgb, CalibError> {
    region_mean_in(image, rect, MeanSpace::Encoded)
}

pub(crate) fn region_mean_in(
    image: &Raster,
    rect: Rect,
    space: MeanSpace,
) -> Result<Srgb, CalibError> {
    rect.check_inside(image.width(), image.height())?;
    let mut sum = [0.0f64; 3];
    for y in rect.y..rect.y + rect.height {
        for x in rect.x..rect.x + rect.width {
            let p = image.pixel(x, y);
            let v = match space {
                MeanSpace::Encoded => [p.r, p.g, p.b],
                MeanSpace::Linear => srgb_to_linear(p),
            };
            for (s, c) in sum.iter_mut().zip(v) {
                *s += c;
            }
        }
    }
    let n = (rect.width as f64) * (rect.height as f64);
    let mean = [sum[0] / n, sum[1] / n, sum[2] / n];
    Ok(match space {
        MeanSpace::Encoded => Srgb::clamped(mean[0], mean[1], mean[2]),
        MeanSpace::Linear => linear_to_srgb(mean),
    })
}

/// Measures the evaluation region: averages the sRGB values over the square
/// crop, then converts the mean to CIELAB.
pub fn measure_patch(image: &Raster, region: &EvaluationRegion) -> Result<Lab, CalibError> {
    measure_patch_in(image, region, MeanSpace::Encoded)
}

/// [`measure_patch`] with an explicit averaging space.
pub fn measure_patch_in(
    image: &Raster,
    region: &EvaluationRegion,
    space: MeanSpace,
) -> Result<Lab, CalibError> {
    let mean = region_mean_in(image, region.rect(), space)?;
    Ok(srgb_to_lab(mean))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn region(x: u32, y: u32, side: u32) -> EvaluationRegion {
        EvaluationRegion::new(Rect::new(x, y, side, side)).unwrap()
    }

    #[test]
    fn uniform_white_measures_l100() {
        let img = Raster::filled(8, 8, Srgb::new(1.0, 1.0, 1.0).unwrap()).unwrap();
        let lab = measure_patch(&img, &region(2, 2, 4)).unwrap();
        assert!((lab.l - 100.0).abs() < 1e-4);
        assert!(lab.a.abs() < 1e-4);
        assert!(lab.b.abs() < 1e-4);
    }

    #[test]
    fn uniform_region_equals_direct_conversion() {
        let c = Srgb::new(0.37, 0.62, 0.18).unwrap();
        let img = Raster::filled(6, 6, c).unwrap();
        let lab = measure_patch(&img, &region(0, 0, 6)).unwrap();
        let direct = srgb_to_lab(c);
        assert!((lab.l - direct.l).abs() < 1e-12);
        assert!((lab.a - direct.a).abs() < 1e-12);
        assert!((lab.b - direct.b).abs() < 1e-12);
    }

    #[test]
    fn half_white_half_black_averages_in_encoded_space() {
        // mean of the gamma-encoded values is 0.5 per channel
        let img = Raster::from_fn(4, 4, |x, _| {
            if x < 2 {
                Srgb::new(0.0, 0.0, 0.0).unwrap()
            } else {
                Srgb::new(1.0, 1.0, 1.0).unwrap()
            }
        })
        .unwrap();
        let lab = measure_patch(&img, &region(0, 0, 4)).unwrap();
        assert!((lab.l - 53.38896705407974).abs() < 1e-9, "l = {}", lab.l);
    }

    #[test]
    fn linear_mean_differs_from_encoded_mean() {
        let img = Raster::from_fn(4, 4, |x, _| {
            if x < 2 {
                Srgb::new(0.0, 0.0, 0.0).unwrap()
            } else {
                Srgb::new(1.0, 1.0, 1.0).unwrap()
            }
        })
        .unwrap();
        let lab = measure_patch_in(&img, &region(0, 0, 4), MeanSpace::Linear).unwrap();
        // linear mean 0.5 encodes brighter than sRGB 0.5
        assert!(lab.l > 70.0);
    }

    #[test]
    fn out_of_bounds_region_is_rejected() {
        let img = Raster::filled(4, 4, Srgb::new(0.5, 0.5, 0.5).unwrap()).unwrap();
        assert!(matches!(
            measure_patch(&img, &region(2, 2, 4)),
            Err(CalibError::RegionOutOfBounds { .. })
        ));
    }

    proptest! {
        #[test]
        fn mean_is_invariant_under_pixel_permutation(seed in 0u64..1000) {
            use rand::prelude::*;
            let mut rng = StdRng::seed_from_u64(seed);
            let mut values: Vec<Srgb> = (0..16)
                .map(|_| Srgb::new(rng.gen(), rng.gen(), rng.gen()).unwrap())
                .collect();
            let img = Raster::new(4, 4, values.clone()).unwrap();
            let before = measure_patch(&img, &region(0, 0, 4)).unwrap();
            values.shuffle(&mut rng);
            let img2 = Raster::new(4, 4, values).unwrap();
            let after = measure_patch(&img2, &region(0, 0, 4)).unwrap();
            // mean commutes with shuffling up to summation order
            prop_assert!((before.l - after.l).abs() < 1e-9);
            prop_assert!((before.a - after.a).abs() < 1e-9);
            prop_assert!((before.b - after.b).abs() < 1e-9);
        }
    }
}
