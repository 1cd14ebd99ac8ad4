//! The color scale setting procedure.
//!
//! Given measured grass color values over the actuation range, the
//! procedure anchors the scale endpoints to the minimum- and maximum-length
//! colors, places the interior targets at equal CIEDE2000 spacing along the
//! CIELAB segment between them, and assigns each scale level the measured
//! grass length closest to its target, gated by an industrial color
//! tolerance.

mod procedure;

pub use procedure::{
    check_monotone, check_span, compute_targets, map_lengths, run_procedure, run_procedure_with,
    segment_point,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{num, Scalar};
use crate::solve::SolveError;
use crate::{Ciede2000Params, LabColor};

/// Grid step used for the monotonicity gate when none is given explicitly.
pub const DEFAULT_GRID_STEP: f64 = 1e-3;
/// Residual tolerance of the target placement bisection.
pub const BISECT_TOLERANCE: f64 = 1e-9;
/// Iteration budget of the target placement bisection.
pub const MAX_BISECT_ITERATIONS: usize = 200;
/// Largest permitted monotonicity grid step.
pub const MAX_GRID_STEP: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScaleError {
    #[error("need at least 2 samples, got {found}")]
    TooFewSamples { found: usize },
    #[error("duplicate sample length {length_mm} mm")]
    DuplicateLength { length_mm: f64 },
    #[error("scale endpoints are identical; the segment is degenerate")]
    DegenerateSegment,
    #[error("grid step {value} outside (0, {MAX_GRID_STEP}]")]
    BadGridStep { value: f64 },
    #[error("segment parameter {t} outside [0, 1]")]
    ParameterOutsideUnit { t: f64 },
    #[error("invalid scale spec: {reason}")]
    BadSpec { reason: String },
    #[error(
        "color difference along the segment is not strictly increasing: \
         min derivative {min_derivative} at t = {argmin_t} (grid step {grid_step})"
    )]
    NotMonotone {
        min_derivative: f64,
        argmin_t: f64,
        grid_step: f64,
    },
    #[error("target placement failed: {0}")]
    Solve(#[from] SolveError),
}

/// Parameters of the scale: level count, per-level color tolerance, the
/// minimum admissible end-to-end color difference and the CIEDE2000
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleSpec<T> {
    pub n_levels: usize,
    pub tolerance: T,
    pub min_span: T,
    pub params: Ciede2000Params<T>,
}

impl<T: Scalar> Default for ScaleSpec<T> {
    fn default() -> Self {
        Self {
            n_levels: 5,
            tolerance: num(3.0),
            min_span: num(12.0),
            params: Ciede2000Params::default(),
        }
    }
}

impl<T: Scalar> ScaleSpec<T> {
    pub fn validate(&self) -> Result<(), ScaleError> {
        if self.n_levels < 2 {
            return Err(ScaleError::BadSpec {
                reason: format!("n_levels must be at least 2, got {}", self.n_levels),
            });
        }
        if !(self.tolerance > T::zero() && self.tolerance.is_finite()) {
            return Err(ScaleError::BadSpec {
                reason: format!("tolerance must be positive, got {}", self.tolerance),
            });
        }
        if !(self.min_span >= T::zero() && self.min_span.is_finite()) {
            return Err(ScaleError::BadSpec {
                reason: format!("min_span must be nonnegative, got {}", self.min_span),
            });
        }
        self.params.validate().map_err(|e| ScaleError::BadSpec {
            reason: e.to_string(),
        })
    }

    /// The admissibility predicate on the end-to-end color difference:
    /// strictly greater than `min_span`.
    pub fn span_passes(&self, span: T) -> bool {
        span > self.min_span
    }
}

/// Outcome of the end-to-end color difference gate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpanGate<T> {
    pub span: T,
    pub min_span: T,
    pub passed: bool,
}

/// Result of probing d/dt of the color difference along the segment on a
/// uniform grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport<T> {
    pub is_monotone: bool,
    pub min_derivative: T,
    pub argmin_t: T,
    pub grid_step: T,
    /// Set when the minimum derivative is positive but smaller than
    /// 1e-6 of the span, i.e. too close to zero to trust the grid.
    pub near_zero: bool,
}

/// The target colors of the scale and the segment parameters they sit at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetSet<T> {
    pub targets: Vec<LabColor<T>>,
    pub t: Vec<T>,
    pub total_span: T,
}

impl<T: Scalar> TargetSet<T> {
    pub fn n_levels(&self) -> usize {
        self.targets.len()
    }
}

/// Assignment of one scale level to candidate grass lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelAssignment {
    pub level: usize,
    /// Endpoint levels are fixed to the minimum / maximum length samples
    /// rather than matched by tolerance.
    pub anchored: bool,
    /// Lengths of all samples within tolerance of the target, ascending.
    pub candidate_lengths_mm: Vec<f64>,
    /// Length with the smallest color difference to the target; ties go to
    /// the shorter length. Absent when no sample is within tolerance.
    pub chosen_length_mm: Option<f64>,
    /// Smallest color difference over all samples, within tolerance or not.
    pub min_delta_e00: f64,
}

/// Reason a mapping could not be completed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MappingFailure {
    SpanGate { span: f64, min_span: f64 },
    LevelsWithoutCandidates { levels: Vec<usize> },
}

/// Level-to-length assignment over the whole scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleMapping {
    pub levels: Vec<LevelAssignment>,
    pub feasible: bool,
    pub failure: Option<MappingFailure>,
}

impl ScaleMapping {
    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    /// Chosen length of a level, when the mapping is feasible.
    pub fn chosen_length(&self, level: usize) -> Option<f64> {
        self.levels.get(level).and_then(|l| l.chosen_length_mm)
    }
}

/// Stage at which the procedure stopped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "stage", rename_all = "snake_case")]
pub enum StageFailure {
    SpanGate {
        span: f64,
        min_span: f64,
    },
    NonMonotone {
        min_derivative: f64,
        argmin_t: f64,
    },
    Mapping {
        levels_without_candidates: Vec<usize>,
    },
}

/// Full record of one run of the scale setting procedure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcedureReport {
    pub spec: ScaleSpec<f64>,
    pub sample_count: usize,
    pub span_gate: SpanGate<f64>,
    pub monotonicity: Option<MonotonicityReport<f64>>,
    pub targets: Option<TargetSet<f64>>,
    pub mapping: Option<ScaleMapping>,
    pub feasible: bool,
    pub failure: Option<StageFailure>,
}
