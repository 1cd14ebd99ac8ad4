//! Checker-based color correction and grass color measurement.
//!
//! A capture session photographs the grass pixel next to a 24-patch color
//! checker. The frame taken at the minimum green length serves as the
//! correction reference; every other frame is corrected toward it in linear
//! RGB before the evaluation region is averaged and converted to CIELAB.

mod correction;
mod io;
mod measure;

pub use correction::{apply_correction, extract_patches, fit_correction};
pub use io::{read_samples_csv, write_samples_csv, SAMPLES_CSV_HEADER};
pub use measure::{measure_patch, measure_patch_in, MeanSpace};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{ColorError, Lab, Srgb, GREEN_RANGE_MM};

/// Number of patches on the supported color checker.
pub const CHECKER_PATCHES: usize = 24;

#[derive(Debug, Error)]
pub enum CalibError {
    #[error("expected {CHECKER_PATCHES} checker patches, got {found}")]
    WrongPatchCount { found: usize },
    #[error("duplicate checker patch id {id:?}")]
    DuplicatePatchId { id: String },
    #[error("checker patch ids of the two sets do not match (missing {id:?})")]
    PatchIdMismatch { id: String },
    #[error("checker patch colors are rank deficient; cannot fit a correction")]
    RankDeficient,
    #[error(
        "region {x},{y} {width}x{height} does not fit in a {image_width}x{image_height} image"
    )]
    RegionOutOfBounds {
        x: u32,
        y: u32,
        width: u32,
        height: u32,
        image_width: u32,
        image_height: u32,
    },
    #[error("region is empty")]
    EmptyRegion,
    #[error("evaluation region must be square, got {width}x{height}")]
    RegionNotSquare { width: u32, height: u32 },
    #[error("green length {value} mm outside device range {min}..={max} mm")]
    LengthOutOfRange { value: f64, min: f64, max: f64 },
    #[error(transparent)]
    Color(#[from] ColorError),
    #[error("CSV read failed: {0}")]
    CsvRead(#[from] csv::Error),
    #[error("CSV write failed: {0}")]
    CsvWrite(std::io::Error),
    #[error("CSV row {row}: {reason}")]
    CsvRow { row: usize, reason: String },
}

/// Axis-aligned pixel rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    pub x: u32,
    pub y: u32,
    pub width: u32,
    pub height: u32,
}

impl Rect {
    pub fn new(x: u32, y: u32, width: u32, height: u32) -> Self {
        Self {
            x,
            y,
            width,
            height,
        }
    }

    pub(crate) fn check_inside(
        &self,
        image_width: u32,
        image_height: u32,
    ) -> Result<(), CalibError> {
        if self.width == 0 || self.height == 0 {
            return Err(CalibError::EmptyRegion);
        }
        let fits = self
            .x
            .checked_add(self.width)
            .is_some_and(|r| r <= image_width)
            && self
                .y
                .checked_add(self.height)
                .is_some_and(|b| b <= image_height);
        if !fits {
            return Err(CalibError::RegionOutOfBounds {
                x: self.x,
                y: self.y,
                width: self.width,
                height: self.height,
                image_width,
                image_height,
            });
        }
        Ok(())
    }
}

/// Square crop of the frame covering only the grass pixel surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Rect", into = "Rect")]
pub struct EvaluationRegion(Rect);

impl EvaluationRegion {
    pub fn new(rect: Rect) -> Result<Self, CalibError> {
        if rect.width == 0 || rect.height == 0 {
            return Err(CalibError::EmptyRegion);
        }
        if rect.width != rect.height {
            return Err(CalibError::RegionNotSquare {
                width: rect.width,
                height: rect.height,
            });
        }
        Ok(Self(rect))
    }

    pub fn rect(&self) -> Rect {
        self.0
    }
}

impl TryFrom<Rect> for EvaluationRegion {
    type Error = CalibError;

    fn try_from(rect: Rect) -> Result<Self, Self::Error> {
        Self::new(rect)
    }
}

impl From<EvaluationRegion> for Rect {
    fn from(r: EvaluationRegion) -> Self {
        r.0
    }
}

/// Named rectangle locating one checker patch in a frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchRegion {
    pub id: String,
    #[serde(flatten)]
    pub rect: Rect,
}

/// One checker patch: identifier plus its mean sRGB color.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckerPatch {
    pub id: String,
    pub color: Srgb,
}

/// The 24 patches of a color checker, extracted from one frame.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckerPatchSet {
    patches: Vec<CheckerPatch>,
}

impl CheckerPatchSet {
    pub fn new(patches: Vec<CheckerPatch>) -> Result<Self, CalibError> {
        if patches.len() != CHECKER_PATCHES {
            return Err(CalibError::WrongPatchCount {
                found: patches.len(),
            });
        }
        for (i, p) in patches.iter().enumerate() {
            if patches[..i].iter().any(|q| q.id == p.id) {
                return Err(CalibError::DuplicatePatchId { id: p.id.clone() });
            }
        }
        Ok(Self { patches })
    }

    pub fn patches(&self) -> &[CheckerPatch] {
        &self.patches
    }

    pub fn get(&self, id: &str) -> Option<&CheckerPatch> {
        self.patches.iter().find(|p| p.id == id)
    }
}

/// Affine map from observed linear RGB to reference linear RGB.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionMatrix {
    pub matrix: [[f64; 3]; 3],
    pub offset: [f64; 3],
    /// Root mean square of the per-channel patch residuals of the fit.
    pub residual_rms: f64,
}

impl CorrectionMatrix {
    pub fn identity() -> Self {
        Self {
            matrix: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            offset: [0.0, 0.0, 0.0],
            residual_rms: 0.0,
        }
    }

    pub(crate) fn apply(&self, rgb: [f64; 3]) -> [f64; 3] {
        let mut out = self.offset;
        for (row, o) in self.matrix.iter().zip(out.iter_mut()) {
            *o += row[0] * rgb[0] + row[1] * rgb[1] + row[2] * rgb[2];
        }
        out
    }
}

/// Camera placement relative to the grass pixel: height and distance in
/// meters, horizontal angle in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CameraPosition {
    pub h_m: f64,
    pub d_m: f64,
    pub theta_deg: f64,
}

impl CameraPosition {
    pub fn new(h_m: f64, d_m: f64, theta_deg: f64) -> Self {
        Self {
            h_m,
            d_m,
            theta_deg,
        }
    }
}

/// One measured grass color value: the green length that produced it, the
/// CIELAB measurement and capture provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasuredSample {
    pub green_length_mm: f64,
    pub lab: Lab,
    pub camera: CameraPosition,
    pub repetition: u32,
}

impl MeasuredSample {
    pub fn new(
        green_length_mm: f64,
        lab: Lab,
        camera: CameraPosition,
        repetition: u32,
    ) -> Result<Self, CalibError> {
        let [min, max] = GREEN_RANGE_MM;
        if !(green_length_mm >= min && green_length_mm <= max) {
            return Err(CalibError::LengthOutOfRange {
                value: green_length_mm,
                min,
                max,
            });
        }
        Ok(Self {
            green_length_mm,
            lab,
            camera,
            repetition,
        })
    }
}
