//! Least-squares checker correction in linear RGB.

use nalgebra::DMatrix;

use super::{measure, CalibError, CheckerPatch, CheckerPatchSet, CorrectionMatrix, PatchRegion};
use crate::color::{linear_to_srgb, srgb_to_linear};
use crate::raster::Raster;

// Singular values below this fraction of the largest are treated as rank
// deficiency of the patch design.
const RANK_EPS: f64 = 1e-10;

/// Reads the 24 checker patches out of a frame by averaging each patch
/// rectangle in gamma-encoded sRGB.
pub fn extract_patches(
    image: &Raster,
    layout: &[PatchRegion],
) -> Result<CheckerPatchSet, CalibError> {
    let mut patches = Vec::with_capacity(layout.len());
    for region in layout {
        let color = measure::region_mean(image, region.rect)?;
        patches.push(CheckerPatch {
            id: region.id.clone(),
            color,
        });
    }
    CheckerPatchSet::new(patches)
}

/// Fits the affine correction that maps observed patch colors onto the
/// reference patch colors, in linear RGB, by least squares over all patches.
pub fn fit_correction(
    observed: &CheckerPatchSet,
    reference: &CheckerPatchSet,
) -> Result<CorrectionMatrix, CalibError> {
    let n = observed.patches().len();
    let mut design = DMatrix::zeros(n, 4);
    let mut target = DMatrix::zeros(n, 3);
    for (i, obs) in observed.patches().iter().enumerate() {
        let refp = reference
            .get(&obs.id)
            .ok_or_else(|| CalibError::PatchIdMismatch { id: obs.id.clone() })?;
        let x = srgb_to_linear(obs.color);
        let y = srgb_to_linear(refp.color);
        for c in 0..3 {
            design[(i, c)] = x[c];
            target[(i, c)] = y[c];
        }
        design[(i, 3)] = 1.0;
    }

    let svd = design.clone().svd(true, true);
    let sv_max = svd.singular_values.max();
    let sv_min = svd.singular_values.min();
    if sv_min <= sv_max * RANK_EPS {
        return Err(CalibError::RankDeficient);
    }
    let beta = svd
        .solve(&target, 0.0)
        .map_err(|_| CalibError::RankDeficient)?;

    let mut matrix = [[0.0; 3]; 3];
    let mut offset = [0.0; 3];
    for c in 0..3 {
        for j in 0..3 {
            matrix[c][j] = beta[(j, c)];
        }
        offset[c] = beta[(3, c)];
    }

    let residual = design * &beta - target;
    let residual_rms = (residual.norm_squared() / (n as f64 * 3.0)).sqrt();

    Ok(CorrectionMatrix {
        matrix,
        offset,
        residual_rms,
    })
}

/// Applies a correction to every pixel: decode to linear RGB, apply the
/// affine map, clamp to `[0, 1]`, re-encode to sRGB.
pub fn apply_correction(image: &Raster, correction: &CorrectionMatrix) -> Raster {
    Raster::from_fn(image.width(), image.height(), |x, y| {
        let lin = srgb_to_linear(image.pixel(x, y));
        let mapped = correction.apply(lin);
        linear_to_srgb(mapped)
    })
    .expect("source raster is non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Srgb;

    /// Deterministic 24-color set spanning the gamut well enough for the
    /// affine fit to be unique.
    pub(crate) fn synthetic_reference() -> CheckerPatchSet {
        let mut patches = Vec::new();
        for i in 0u32..24 {
            let r = 0.08 + 0.036 * i as f64;
            let g = 0.9 - 0.03 * i as f64;
            let b = 0.15 + 0.025 * ((i * 7) % 24) as f64;
            patches.push(CheckerPatch {
                id: format!("P{i:02}"),
                color: Srgb::new(r, g, b).unwrap(),
            });
        }
        CheckerPatchSet::new(patches).unwrap()
    }

    fn map_linear(set: &CheckerPatchSet, f: impl Fn([f64; 3]) -> [f64; 3]) -> CheckerPatchSet {
        let patches = set
            .patches()
            .iter()
            .map(|p| CheckerPatch {
                id: p.id.clone(),
                color: linear_to_srgb(f(srgb_to_linear(p.color))),
            })
            .collect();
        CheckerPatchSet::new(patches).unwrap()
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn identical_sets_fit_identity() {
        let reference = synthetic_reference();
        let m = fit_correction(&reference, &reference).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                assert_close(m.matrix[r][c], if r == c { 1.0 } else { 0.0 }, 1e-9);
            }
            assert_close(m.offset[r], 0.0, 1e-9);
        }
        assert!(m.residual_rms < 1e-12);
    }

    #[test]
    fn halved_channels_fit_a_pure_gain_of_two() {
        let reference = synthetic_reference();
        let observed = map_linear(&reference, |v| [v[0] / 2.0, v[1] / 2.0, v[2] / 2.0]);
        let m = fit_correction(&observed, &reference).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                assert_close(m.matrix[r][c], if r == c { 2.0 } else { 0.0 }, 1e-6);
            }
            assert_close(m.offset[r], 0.0, 1e-6);
        }
    }

    #[test]
    fn constant_shift_fits_identity_with_negative_offset() {
        let reference = synthetic_reference();
        let shift = 0.04;
        let observed = map_linear(&reference, |v| [v[0] + shift, v[1] + shift, v[2] + shift]);
        let m = fit_correction(&observed, &reference).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                assert_close(m.matrix[r][c], if r == c { 1.0 } else { 0.0 }, 1e-6);
            }
            assert_close(m.offset[r], -shift, 1e-6);
        }
    }

    #[test]
    fn identical_patches_are_rank_deficient() {
        let patches: Vec<_> = (0..24)
            .map(|i| CheckerPatch {
                id: format!("P{i:02}"),
                color: Srgb::new(0.5, 0.5, 0.5).unwrap(),
            })
            .collect();
        let set = CheckerPatchSet::new(patches).unwrap();
        assert!(matches!(
            fit_correction(&set, &set),
            Err(CalibError::RankDeficient)
        ));
    }

    #[test]
    fn round_trip_reproduces_reference_within_residual() {
        let reference = synthetic_reference();
        // gain, cross talk and a shift
        let observed = map_linear(&reference, |v| {
            [
                0.8 * v[0] + 0.05 * v[1] + 0.01,
                0.9 * v[1] + 0.03 * v[2] + 0.02,
                0.02 * v[0] + 0.85 * v[2] + 0.005,
            ]
        });
        let m = fit_correction(&observed, &reference).unwrap();
        assert!(m.residual_rms < 1e-9);
        for (obs, refp) in observed.patches().iter().zip(reference.patches()) {
            let corrected = m.apply(srgb_to_linear(obs.color));
            let want = srgb_to_linear(refp.color);
            for c in 0..3 {
                assert_close(corrected[c], want[c], 1e-6);
            }
        }
    }

    #[test]
    fn identity_correction_leaves_image_unchanged() {
        let img = Raster::from_fn(4, 4, |x, y| {
            Srgb::new(x as f64 / 4.0, y as f64 / 4.0, 0.3).unwrap()
        })
        .unwrap();
        let out = apply_correction(&img, &CorrectionMatrix::identity());
        for (a, b) in out.pixels().iter().zip(img.pixels()) {
            assert!((a.r - b.r).abs() <= 1.0 / 255.0);
            assert!((a.g - b.g).abs() <= 1.0 / 255.0);
            assert!((a.b - b.b).abs() <= 1.0 / 255.0);
        }
    }

    #[test]
    fn gain_correction_doubles_linear_values() {
        let half = linear_to_srgb([0.2, 0.15, 0.1]);
        let img = Raster::filled(2, 2, half).unwrap();
        let correction = CorrectionMatrix {
            matrix: [[2.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 2.0]],
            offset: [0.0, 0.0, 0.0],
            residual_rms: 0.0,
        };
        let out = apply_correction(&img, &correction);
        let lin = srgb_to_linear(out.pixel(0, 0));
        assert_close(lin[0], 0.4, 1e-9);
        assert_close(lin[1], 0.3, 1e-9);
        assert_close(lin[2], 0.2, 1e-9);
    }

    #[test]
    fn out_of_range_results_are_clamped() {
        let img = Raster::filled(1, 1, Srgb::new(0.9, 0.9, 0.9).unwrap()).unwrap();
        let correction = CorrectionMatrix {
            matrix: [[3.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 3.0]],
            offset: [0.0, 0.0, -5.0],
            residual_rms: 0.0,
        };
        let out = apply_correction(&img, &correction);
        let p = out.pixel(0, 0);
        assert!((p.r - 1.0).abs() < 1e-12);
        assert!((p.g - 1.0).abs() < 1e-12);
        assert_eq!(p.b, 0.0);
    }
}
