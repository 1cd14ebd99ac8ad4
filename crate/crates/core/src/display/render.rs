//! Simulated rendering of the display via spatial additive mixing.
//!
//! Each grass pixel becomes a square of `scale_px` image pixels whose color
//! is the linear RGB blend of the yellow and green grass colors, weighted
//! by the visible-green area fraction at the pixel's mapped length.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    animate::level_to_length, AnimationScript, DisplayError, LevelGrid, MixModel, PixelGeometry,
};
use crate::color::{linear_to_srgb, srgb_to_linear};
use crate::numfmt::{round_json, REPORT_SIG_DIGITS};
use crate::raster::Raster;
use crate::scale::ScaleMapping;
use crate::Srgb;

pub const FRAME_FILE_PREFIX: &str = "frame_";

/// Index entry for one rendered frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub index: usize,
    pub timestamp_s: f64,
    pub file: String,
}

/// Manifest accompanying a rendered frame sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameManifest {
    pub interval_s: f64,
    pub frames: Vec<ManifestEntry>,
}

fn blend(mix: &MixModel, fraction: f64) -> Srgb {
    let yellow = srgb_to_linear(mix.yellow);
    let green = srgb_to_linear(mix.green);
    let mut out = [0.0f64; 3];
    for c in 0..3 {
        out[c] = (1.0 - fraction) * yellow[c] + fraction * green[c];
    }
    linear_to_srgb(out)
}

/// Colors of every scale level under a mapping and mix model.
fn level_colors(
    n_levels: usize,
    mapping: &ScaleMapping,
    mix: &MixModel,
    geometry: &PixelGeometry,
) -> Result<Vec<Srgb>, DisplayError> {
    (0..n_levels)
        .map(|level| {
            let length = level_to_length(level as u8, mapping)?;
            Ok(blend(mix, mix.coverage(length, geometry.green_range_mm)))
        })
        .collect()
}

/// Renders one level grid. Every grass pixel becomes a `scale_px` sided
/// square.
pub fn render_frame(
    levels: &LevelGrid,
    mapping: &ScaleMapping,
    mix: &MixModel,
    geometry: &PixelGeometry,
    scale_px: u32,
) -> Result<Raster, DisplayError> {
    geometry.validate()?;
    mix.validate()?;
    if scale_px == 0 {
        return Err(DisplayError::Invalid {
            what: "scale_px",
            reason: "must be at least 1".to_string(),
        });
    }
    let colors = level_colors(mapping.n_levels(), mapping, mix, geometry)?;
    // validate the grid against the scale before touching pixels
    for &level in levels.levels() {
        if (level as usize) >= colors.len() {
            return Err(DisplayError::LevelOutOfRange {
                level,
                n_levels: colors.len(),
            });
        }
    }
    let width = levels.cols() as u32 * scale_px;
    let height = levels.rows() as u32 * scale_px;
    Ok(Raster::from_fn(width, height, |x, y| {
        let row = (y / scale_px) as usize;
        let col = (x / scale_px) as usize;
        colors[levels.level(row, col) as usize]
    })?)
}

/// Renders every keyframe of a script and builds the frame manifest.
pub fn render_animation(
    script: &AnimationScript,
    mapping: &ScaleMapping,
    mix: &MixModel,
    geometry: &PixelGeometry,
    scale_px: u32,
) -> Result<(Vec<Raster>, FrameManifest), DisplayError> {
    let mut frames = Vec::with_capacity(script.keyframes().len());
    let mut entries = Vec::with_capacity(script.keyframes().len());
    for (index, keyframe) in script.keyframes().iter().enumerate() {
        frames.push(render_frame(keyframe, mapping, mix, geometry, scale_px)?);
        entries.push(ManifestEntry {
            index,
            timestamp_s: index as f64 * script.interval_s(),
            file: format!("{FRAME_FILE_PREFIX}{index:03}.ppm"),
        });
    }
    Ok((
        frames,
        FrameManifest {
            interval_s: script.interval_s(),
            frames: entries,
        },
    ))
}

/// Writes frames as PPM files plus `manifest.json` into a directory.
pub fn save_animation(
    dir: &Path,
    frames: &[Raster],
    manifest: &FrameManifest,
) -> Result<(), DisplayError> {
    let io_err = |path: &Path, source: std::io::Error| DisplayError::Io {
        path: path.display().to_string(),
        source,
    };
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    for (frame, entry) in frames.iter().zip(&manifest.frames) {
        frame.save_ppm(&dir.join(&entry.file))?;
    }
    let mut json = serde_json::to_value(manifest)?;
    round_json(&mut json, REPORT_SIG_DIGITS);
    let path = dir.join("manifest.json");
    fs::write(&path, serde_json::to_string_pretty(&json)?).map_err(|e| io_err(&path, e))
}
