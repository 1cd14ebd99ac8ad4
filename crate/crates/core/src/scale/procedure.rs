//! Operations of the scale setting procedure.

use super::{
    LevelAssignment, MappingFailure, MonotonicityReport, ProcedureReport, ScaleError, ScaleMapping,
    ScaleSpec, SpanGate, StageFailure, TargetSet, BISECT_TOLERANCE, DEFAULT_GRID_STEP,
    MAX_BISECT_ITERATIONS, MAX_GRID_STEP,
};
use crate::calib::MeasuredSample;
use crate::color::delta_e00;
use crate::scalar::{num, wide, Scalar};
use crate::solve::bisect;
use crate::{Ciede2000Params, LabColor};

/// Point on the CIELAB segment between `g0` and `g_last`, by componentwise
/// linear interpolation.
pub fn segment_point<T: Scalar>(
    g0: LabColor<T>,
    g_last: LabColor<T>,
    t: T,
) -> Result<LabColor<T>, ScaleError> {
    if !(t >= T::zero() && t <= T::one()) {
        return Err(ScaleError::ParameterOutsideUnit { t: wide(t) });
    }
    Ok(lerp(g0, g_last, t))
}

fn lerp<T: Scalar>(g0: LabColor<T>, g_last: LabColor<T>, t: T) -> LabColor<T> {
    LabColor {
        l: t * (g_last.l - g0.l) + g0.l,
        a: t * (g_last.a - g0.a) + g0.a,
        b: t * (g_last.b - g0.b) + g0.b,
    }
}

/// Estimates d/dt of the color difference from `g0` along the segment on a
/// uniform grid: central differences inside, one-sided at the endpoints.
///
/// The scale levels can only be placed uniquely when this derivative stays
/// positive over the whole segment.
pub fn check_monotone<T: Scalar>(
    g0: LabColor<T>,
    g_last: LabColor<T>,
    params: &Ciede2000Params<T>,
    grid_step: T,
) -> Result<MonotonicityReport<T>, ScaleError> {
    if g0 == g_last {
        return Err(ScaleError::DegenerateSegment);
    }
    if !(grid_step > T::zero() && grid_step <= num(MAX_GRID_STEP)) {
        return Err(ScaleError::BadGridStep {
            value: wide(grid_step),
        });
    }
    let steps = wide(grid_step).recip().ceil() as usize;
    let n = num::<T>(steps as f64);
    let h = T::one() / n;
    let f = |t: T| delta_e00(g0, lerp(g0, g_last, t), params);

    let values: Vec<T> = (0..=steps).map(|i| f(num::<T>(i as f64) / n)).collect();

    let mut min_derivative = T::infinity();
    let mut argmin = T::zero();
    for i in 0..=steps {
        let d = if i == 0 {
            (values[1] - values[0]) / h
        } else if i == steps {
            (values[steps] - values[steps - 1]) / h
        } else {
            (values[i + 1] - values[i - 1]) / (h + h)
        };
        if d < min_derivative {
            min_derivative = d;
            argmin = num::<T>(i as f64) / n;
        }
    }

    let span = values[steps];
    Ok(MonotonicityReport {
        is_monotone: min_derivative > T::zero(),
        min_derivative,
        argmin_t: argmin,
        grid_step: h,
        near_zero: min_derivative > T::zero() && min_derivative < num::<T>(1e-6) * span,
    })
}

/// Evaluates the end-to-end color difference against the admissibility
/// threshold of the spec.
pub fn check_span<T: Scalar>(
    g0: LabColor<T>,
    g_last: LabColor<T>,
    spec: &ScaleSpec<T>,
) -> SpanGate<T> {
    let span = delta_e00(g0, g_last, &spec.params);
    SpanGate {
        span,
        min_span: spec.min_span,
        passed: spec.span_passes(span),
    }
}

/// Places the scale targets so that the color difference from `g0` grows by
/// an equal share of the total span at every level.
///
/// Interior parameters are found by bisection; the endpoints are fixed at
/// t = 0 and t = 1. Refuses when `monotonicity` does not report a strictly
/// increasing difference.
pub fn compute_targets<T: Scalar>(
    g0: LabColor<T>,
    g_last: LabColor<T>,
    spec: &ScaleSpec<T>,
    monotonicity: &MonotonicityReport<T>,
) -> Result<TargetSet<T>, ScaleError> {
    spec.validate()?;
    if !monotonicity.is_monotone {
        return Err(ScaleError::NotMonotone {
            min_derivative: wide(monotonicity.min_derivative),
            argmin_t: wide(monotonicity.argmin_t),
            grid_step: wide(monotonicity.grid_step),
        });
    }
    let span = delta_e00(g0, g_last, &spec.params);
    let span_usable = span.is_finite() && span > T::zero();
    if !span_usable {
        return Err(ScaleError::DegenerateSegment);
    }

    let intervals = num::<T>((spec.n_levels - 1) as f64);
    let mut t_values = Vec::with_capacity(spec.n_levels);
    let mut targets = Vec::with_capacity(spec.n_levels);

    t_values.push(T::zero());
    targets.push(g0);
    for n in 1..spec.n_levels - 1 {
        let share = num::<T>(n as f64) / intervals * span;
        let f = |t: T| delta_e00(g0, lerp(g0, g_last, t), &spec.params) - share;
        let root = bisect(
            f,
            T::zero(),
            T::one(),
            num(BISECT_TOLERANCE),
            MAX_BISECT_ITERATIONS,
        )?;
        t_values.push(root.t);
        targets.push(lerp(g0, g_last, root.t));
    }
    t_values.push(T::one());
    targets.push(g_last);

    Ok(TargetSet {
        targets,
        t: t_values,
        total_span: span,
    })
}

fn sorted_by_length(samples: &[MeasuredSample]) -> Result<Vec<MeasuredSample>, ScaleError> {
    if samples.len() < 2 {
        return Err(ScaleError::TooFewSamples {
            found: samples.len(),
        });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.green_length_mm.total_cmp(&b.green_length_mm));
    for pair in sorted.windows(2) {
        if pair[0].green_length_mm == pair[1].green_length_mm {
            return Err(ScaleError::DuplicateLength {
                length_mm: pair[0].green_length_mm,
            });
        }
    }
    Ok(sorted)
}

fn assign_levels(
    sorted: &[MeasuredSample],
    targets: &TargetSet<f64>,
    spec: &ScaleSpec<f64>,
) -> ScaleMapping {
    let last = targets.n_levels() - 1;
    let mut levels = Vec::with_capacity(targets.n_levels());
    for (level, target) in targets.targets.iter().enumerate() {
        if level == 0 || level == last {
            let anchor = if level == 0 {
                &sorted[0]
            } else {
                &sorted[sorted.len() - 1]
            };
            levels.push(LevelAssignment {
                level,
                anchored: true,
                candidate_lengths_mm: vec![anchor.green_length_mm],
                chosen_length_mm: Some(anchor.green_length_mm),
                min_delta_e00: delta_e00(*target, anchor.lab, &spec.params),
            });
            continue;
        }
        let mut candidates = Vec::new();
        let mut best: Option<(f64, f64)> = None;
        for s in sorted {
            let de = delta_e00(*target, s.lab, &spec.params);
            if de <= spec.tolerance {
                candidates.push(s.green_length_mm);
            }
            // strict comparison keeps the shorter length on exact ties,
            // since samples are scanned in ascending length order
            if best.is_none_or(|(b, _)| de < b) {
                best = Some((de, s.green_length_mm));
            }
        }
        let (min_de, best_len) = best.expect("at least two samples");
        levels.push(LevelAssignment {
            level,
            anchored: false,
            candidate_lengths_mm: candidates,
            chosen_length_mm: (min_de <= spec.tolerance).then_some(best_len),
            min_delta_e00: min_de,
        });
    }

    let missing: Vec<usize> = levels
        .iter()
        .filter(|l| l.chosen_length_mm.is_none())
        .map(|l| l.level)
        .collect();
    let feasible = missing.is_empty();
    ScaleMapping {
        levels,
        feasible,
        failure: (!feasible).then_some(MappingFailure::LevelsWithoutCandidates { levels: missing }),
    }
}

/// Runs the whole procedure: span gate, monotonicity gate, target
/// placement, then level assignment. Stops at the first failed gate and
/// records the failure in the report.
pub fn run_procedure(
    samples: &[MeasuredSample],
    spec: &ScaleSpec<f64>,
) -> Result<ProcedureReport, ScaleError> {
    run_procedure_with(samples, spec, DEFAULT_GRID_STEP)
}

/// [`run_procedure`] with an explicit monotonicity grid step.
pub fn run_procedure_with(
    samples: &[MeasuredSample],
    spec: &ScaleSpec<f64>,
    grid_step: f64,
) -> Result<ProcedureReport, ScaleError> {
    spec.validate()?;
    let sorted = sorted_by_length(samples)?;
    let g0 = sorted[0].lab;
    let g_last = sorted[sorted.len() - 1].lab;

    let span_gate = check_span(g0, g_last, spec);
    if !span_gate.passed {
        return Ok(ProcedureReport {
            spec: *spec,
            sample_count: sorted.len(),
            span_gate,
            monotonicity: None,
            targets: None,
            mapping: None,
            feasible: false,
            failure: Some(StageFailure::SpanGate {
                span: span_gate.span,
                min_span: span_gate.min_span,
            }),
        });
    }

    let monotonicity = check_monotone(g0, g_last, &spec.params, grid_step)?;
    if !monotonicity.is_monotone {
        return Ok(ProcedureReport {
            spec: *spec,
            sample_count: sorted.len(),
            span_gate,
            monotonicity: Some(monotonicity),
            targets: None,
            mapping: None,
            feasible: false,
            failure: Some(StageFailure::NonMonotone {
                min_derivative: monotonicity.min_derivative,
                argmin_t: monotonicity.argmin_t,
            }),
        });
    }

    let targets = compute_targets(g0, g_last, spec, &monotonicity)?;
    let mapping = assign_levels(&sorted, &targets, spec);
    let feasible = mapping.feasible;
    let failure = match &mapping.failure {
        Some(MappingFailure::LevelsWithoutCandidates { levels }) => Some(StageFailure::Mapping {
            levels_without_candidates: levels.clone(),
        }),
        Some(MappingFailure::SpanGate { span, min_span }) => Some(StageFailure::SpanGate {
            span: *span,
            min_span: *min_span,
        }),
        None => None,
    };

    Ok(ProcedureReport {
        spec: *spec,
        sample_count: sorted.len(),
        span_gate,
        monotonicity: Some(monotonicity),
        targets: Some(targets),
        mapping: Some(mapping),
        feasible,
        failure,
    })
}

/// Assigns grass lengths to scale levels.
///
/// Endpoint levels anchor to the minimum and maximum length samples;
/// interior levels collect every sample within tolerance of their target
/// and choose the one with the smallest difference. A failed span gate
/// yields an infeasible mapping rather than an error; a non-monotone
/// segment is refused.
pub fn map_lengths(
    samples: &[MeasuredSample],
    spec: &ScaleSpec<f64>,
) -> Result<ScaleMapping, ScaleError> {
    let report = run_procedure(samples, spec)?;
    match report.failure {
        Some(StageFailure::SpanGate { span, min_span }) => Ok(ScaleMapping {
            levels: Vec::new(),
            feasible: false,
            failure: Some(MappingFailure::SpanGate { span, min_span }),
        }),
        Some(StageFailure::NonMonotone {
            min_derivative,
            argmin_t,
        }) => Err(ScaleError::NotMonotone {
            min_derivative,
            argmin_t,
            grid_step: DEFAULT_GRID_STEP,
        }),
        _ => Ok(report.mapping.expect("mapping present past the gates")),
    }
}
