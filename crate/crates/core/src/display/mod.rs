//! Keyframe animation compilation and display simulation.
//!
//! A grayscale keyframe script indexes the color scale; compilation turns
//! each level into the mapped grass length and an absolute stepper
//! position. The simulator renders each keyframe by blending the yellow and
//! green grass colors in linear RGB according to the visible-green area
//! fraction.

mod animate;
mod render;

pub use animate::{
    compile_script, length_to_steps, level_to_length, write_schedule_csv, Command, CommandSchedule,
};
pub use render::{
    render_animation, render_frame, save_animation, FrameManifest, ManifestEntry, FRAME_FILE_PREFIX,
};

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::raster::RasterError;
use crate::{Srgb, GREEN_RANGE_MM};

#[derive(Debug, Error)]
pub enum DisplayError {
    #[error("mapping is not feasible; no level-to-length assignment available")]
    InfeasibleMapping,
    #[error("level {level} outside the scale (0..{n_levels})")]
    LevelOutOfRange { level: u8, n_levels: usize },
    #[error("length {length_mm} mm outside the green range {min}..={max} mm")]
    LengthOutOfRange { length_mm: f64, min: f64, max: f64 },
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },
    #[error("keyframe {index} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    KeyframeShape {
        index: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("script has no keyframes")]
    EmptyScript,
    #[error(transparent)]
    Raster(#[from] RasterError),
    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("bad script json: {0}")]
    ScriptJson(#[from] serde_json::Error),
}

fn invalid(what: &'static str, reason: impl Into<String>) -> DisplayError {
    DisplayError::Invalid {
        what,
        reason: reason.into(),
    }
}

/// Physical dimensions of one grass pixel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PixelGeometry {
    /// Edge length of the square pixel face, mm.
    pub surface_mm: f64,
    /// Width of one slit in the yellow grass surface, mm.
    pub slit_width_mm: f64,
    /// Fixed length of the yellow grass, mm.
    pub yellow_length_mm: f64,
    /// Travel range of the green grass, mm.
    pub green_range_mm: [f64; 2],
}

impl Default for PixelGeometry {
    /// The single-pixel unit used for calibration captures.
    fn default() -> Self {
        Self {
            surface_mm: 24.0,
            slit_width_mm: 5.4,
            yellow_length_mm: 10.0,
            green_range_mm: GREEN_RANGE_MM,
        }
    }
}

impl PixelGeometry {
    /// The larger pixel face of the 3x3 demonstration display.
    pub fn demo_display() -> Self {
        Self {
            surface_mm: 40.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), DisplayError> {
        if !(self.surface_mm > 0.0 && self.slit_width_mm > 0.0 && self.yellow_length_mm > 0.0) {
            return Err(invalid("geometry", "all dimensions must be positive"));
        }
        if self.slit_width_mm >= self.surface_mm {
            return Err(invalid(
                "geometry",
                format!(
                    "slit width {} must be smaller than the pixel face {}",
                    self.slit_width_mm, self.surface_mm
                ),
            ));
        }
        let [min, max] = self.green_range_mm;
        if !(min >= 0.0 && min < max && max.is_finite()) {
            return Err(invalid(
                "geometry",
                "green range must satisfy 0 <= min < max",
            ));
        }
        Ok(())
    }

    /// Fraction of the pixel face one fully raised slit row can cover;
    /// the default ceiling of the coverage model.
    pub fn slit_coverage(&self) -> f64 {
        self.slit_width_mm / self.surface_mm
    }
}

/// Stepper geometry: full steps per rotation and leadscrew travel per
/// rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotorSpec {
    pub steps_per_rotation: u32,
    pub lead_mm: f64,
}

impl Default for MotorSpec {
    fn default() -> Self {
        Self {
            steps_per_rotation: 200,
            lead_mm: 6.0,
        }
    }
}

impl MotorSpec {
    pub fn validate(&self) -> Result<(), DisplayError> {
        if self.steps_per_rotation == 0 || !self.lead_mm.is_finite() || self.lead_mm <= 0.0 {
            return Err(invalid("motor", "steps and lead must be positive"));
        }
        Ok(())
    }
}

/// One keyframe: a grid of color scale levels, row-major from the top left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelGrid {
    rows: usize,
    cols: usize,
    levels: Vec<u8>,
}

impl LevelGrid {
    pub fn new(rows: usize, cols: usize, levels: Vec<u8>) -> Result<Self, DisplayError> {
        if rows == 0 || cols == 0 || levels.len() != rows * cols {
            return Err(invalid(
                "level grid",
                format!("{} levels for a {rows}x{cols} grid", levels.len()),
            ));
        }
        Ok(Self { rows, cols, levels })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn level(&self, row: usize, col: usize) -> u8 {
        self.levels[row * self.cols + col]
    }

    pub fn levels(&self) -> &[u8] {
        &self.levels
    }
}

/// Ordered keyframes plus their fixed time spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct AnimationScript {
    rows: usize,
    cols: usize,
    keyframes: Vec<LevelGrid>,
    keyframe_interval_s: f64,
}

pub const DEFAULT_KEYFRAME_INTERVAL_S: f64 = 1.0;

impl AnimationScript {
    pub fn new(keyframes: Vec<LevelGrid>, keyframe_interval_s: f64) -> Result<Self, DisplayError> {
        let first = keyframes.first().ok_or(DisplayError::EmptyScript)?;
        let (rows, cols) = (first.rows(), first.cols());
        for (index, frame) in keyframes.iter().enumerate() {
            if frame.rows() != rows || frame.cols() != cols {
                return Err(DisplayError::KeyframeShape {
                    index,
                    rows: frame.rows(),
                    cols: frame.cols(),
                    expected_rows: rows,
                    expected_cols: cols,
                });
            }
        }
        if !(keyframe_interval_s > 0.0 && keyframe_interval_s.is_finite()) {
            return Err(invalid(
                "script",
                format!("keyframe interval must be positive, got {keyframe_interval_s}"),
            ));
        }
        Ok(Self {
            rows,
            cols,
            keyframes,
            keyframe_interval_s,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn keyframes(&self) -> &[LevelGrid] {
        &self.keyframes
    }

    pub fn interval_s(&self) -> f64 {
        self.keyframe_interval_s
    }

    pub fn with_interval(mut self, interval_s: f64) -> Result<Self, DisplayError> {
        if !(interval_s > 0.0 && interval_s.is_finite()) {
            return Err(invalid(
                "script",
                format!("keyframe interval must be positive, got {interval_s}"),
            ));
        }
        self.keyframe_interval_s = interval_s;
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<Self, DisplayError> {
        let file: ScriptFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn load(path: &Path) -> Result<Self, DisplayError> {
        let text = fs::read_to_string(path).map_err(|source| DisplayError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ScriptFile::from(self)).expect("script serializes")
    }
}

/// On-disk script form: grid shape, nested level rows per keyframe and the
/// keyframe interval.
#[derive(Debug, Serialize, Deserialize)]
struct ScriptFile {
    grid: [usize; 2],
    #[serde(default = "default_interval")]
    interval_s: f64,
    keyframes: Vec<Vec<Vec<u8>>>,
}

fn default_interval() -> f64 {
    DEFAULT_KEYFRAME_INTERVAL_S
}

impl TryFrom<ScriptFile> for AnimationScript {
    type Error = DisplayError;

    fn try_from(file: ScriptFile) -> Result<Self, Self::Error> {
        let [rows, cols] = file.grid;
        let mut keyframes = Vec::with_capacity(file.keyframes.len());
        for (index, frame) in file.keyframes.into_iter().enumerate() {
            let got_rows = frame.len();
            let got_cols = frame.first().map_or(0, Vec::len);
            if got_rows != rows || frame.iter().any(|r| r.len() != cols) {
                return Err(DisplayError::KeyframeShape {
                    index,
                    rows: got_rows,
                    cols: got_cols,
                    expected_rows: rows,
                    expected_cols: cols,
                });
            }
            keyframes.push(LevelGrid::new(rows, cols, frame.concat())?);
        }
        AnimationScript::new(keyframes, file.interval_s)
    }
}

impl From<&AnimationScript> for ScriptFile {
    fn from(script: &AnimationScript) -> Self {
        ScriptFile {
            grid: [script.rows, script.cols],
            interval_s: script.keyframe_interval_s,
            keyframes: script
                .keyframes
                .iter()
                .map(|frame| {
                    (0..frame.rows())
                        .map(|r| {
                            (0..frame.cols())
                                .map(|c| frame.level(r, c))
                                .collect::<Vec<u8>>()
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Simulation colors and the visible-green coverage model.
///
/// Coverage grows linearly from zero at the minimum length to
/// `coverage_max` at the maximum; the ceiling defaults to the slit share of
/// the pixel face. A radiometric model of the real grass is out of scope,
/// so this is explicitly a simulation assumption.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixModel {
    pub yellow: Srgb,
    pub green: Srgb,
    pub coverage_max: f64,
}

impl MixModel {
    pub fn new(yellow: Srgb, green: Srgb, coverage_max: f64) -> Result<Self, DisplayError> {
        let model = Self {
            yellow,
            green,
            coverage_max,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<(), DisplayError> {
        self.yellow
            .validate()
            .and(self.green.validate())
            .map_err(|e| invalid("mix model", e.to_string()))?;
        if !(0.0..=1.0).contains(&self.coverage_max) {
            return Err(invalid(
                "mix model",
                format!("coverage_max {} outside [0, 1]", self.coverage_max),
            ));
        }
        Ok(())
    }

    /// Visible-green area fraction at a given length.
    pub fn coverage(&self, length_mm: f64, range_mm: [f64; 2]) -> f64 {
        let [min, max] = range_mm;
        let t = ((length_mm - min) / (max - min)).clamp(0.0, 1.0);
        self.coverage_max * t
    }
}
