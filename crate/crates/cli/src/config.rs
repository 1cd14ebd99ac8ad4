//! Session and simulation configuration files.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use grasscale::calib::{CameraPosition, EvaluationRegion, MeanSpace, MeasuredSample, PatchRegion};
use grasscale::display::{MixModel, PixelGeometry};
use grasscale::scale::{ScaleSpec, DEFAULT_GRID_STEP};
use grasscale::Srgb;

use crate::errors::CliError;

/// One capture: the frame file, the grass length it was taken at and the
/// repetition index within the protocol.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageEntry {
    pub path: PathBuf,
    pub length_mm: f64,
    #[serde(default)]
    pub repetition: u32,
}

/// Optional scale parameter overrides carried in a session config.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleOverrides {
    pub n_levels: Option<usize>,
    pub tolerance: Option<f64>,
    pub min_span: Option<f64>,
    pub grid_step: Option<f64>,
}

impl ScaleOverrides {
    pub fn apply(&self, spec: &mut ScaleSpec<f64>, grid_step: &mut f64) {
        if let Some(n) = self.n_levels {
            spec.n_levels = n;
        }
        if let Some(t) = self.tolerance {
            spec.tolerance = t;
        }
        if let Some(m) = self.min_span {
            spec.min_span = m;
        }
        if let Some(g) = self.grid_step {
            *grid_step = g;
        }
    }
}

/// A measurement session: camera placement, the reference frame, where the
/// checker patches and the evaluation region sit, and the capture list.
///
/// Relative paths resolve against the directory of the config file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub camera: CameraPosition,
    pub reference_image: PathBuf,
    pub evaluation_region: EvaluationRegion,
    pub checker: Vec<PatchRegion>,
    pub images: Vec<ImageEntry>,
    #[serde(default)]
    pub mean_space: MeanSpace,
    #[serde(default)]
    pub scale: Option<ScaleOverrides>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

impl SessionConfig {
    pub fn load(path: &Path) -> Result<(Self, PathBuf), CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let config: SessionConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("malformed {}: {e}", path.display())))?;
        let base = path
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."));
        Ok((config, base))
    }

    pub fn resolve(base: &Path, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            base.join(path)
        }
    }
}

/// Simulation colors for rendering: the two grass colors plus an optional
/// ceiling on the visible-green fraction. Without a ceiling the slit share
/// of the pixel face is used.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixConfig {
    pub yellow: Srgb,
    pub green: Srgb,
    #[serde(default)]
    pub coverage_max: Option<f64>,
}

impl MixConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("malformed {}: {e}", path.display())))
    }

    pub fn into_model(self, geometry: &PixelGeometry) -> Result<MixModel, CliError> {
        let coverage = self
            .coverage_max
            .unwrap_or_else(|| geometry.slit_coverage());
        MixModel::new(self.yellow, self.green, coverage)
            .map_err(|e| CliError::Config(e.to_string()))
    }
}

pub fn load_geometry(path: Option<&Path>) -> Result<PixelGeometry, CliError> {
    let Some(path) = path else {
        return Ok(PixelGeometry::demo_display());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let geometry: PixelGeometry = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("malformed {}: {e}", path.display())))?;
    geometry
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(geometry)
}

/// Assembles the effective scale spec: defaults, then config overrides,
/// then explicit flags.
#[derive(Debug, Clone, Copy, Default)]
pub struct SpecFlags {
    pub levels: Option<usize>,
    pub tolerance: Option<f64>,
    pub min_span: Option<f64>,
    pub grid_step: Option<f64>,
}

pub fn effective_spec(
    config_overrides: Option<&ScaleOverrides>,
    flags: SpecFlags,
) -> (ScaleSpec<f64>, f64) {
    let mut spec = ScaleSpec::default();
    let mut grid_step = DEFAULT_GRID_STEP;
    if let Some(overrides) = config_overrides {
        overrides.apply(&mut spec, &mut grid_step);
    }
    if let Some(n) = flags.levels {
        spec.n_levels = n;
    }
    if let Some(t) = flags.tolerance {
        spec.tolerance = t;
    }
    if let Some(m) = flags.min_span {
        spec.min_span = m;
    }
    if let Some(g) = flags.grid_step {
        grid_step = g;
    }
    (spec, grid_step)
}

/// Groups samples by camera position, preserving first-seen order.
pub fn positions_of(samples: &[MeasuredSample]) -> Vec<CameraPosition> {
    let mut seen: Vec<CameraPosition> = Vec::new();
    for s in samples {
        if !seen.contains(&s.camera) {
            seen.push(s.camera);
        }
    }
    seen
}
