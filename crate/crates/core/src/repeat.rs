//! Repeatability analysis of repeated measurements.
//!
//! Samples are grouped by camera position and grass length. Each group's
//! per-channel mean CIELAB value acts as the reference; every repetition is
//! compared to it under CIEDE2000 and counted against the tolerance.

use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calib::{CameraPosition, MeasuredSample};
use crate::color::delta_e00_default;
use crate::numfmt::{fmt_sig, REPORT_SIG_DIGITS};
use crate::Lab;

/// Default tolerance: the tightest industrial class, for the most
/// color-critical applications.
pub const DEFAULT_REPEAT_TOLERANCE: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepeatError {
    #[error(
        "group at h={h_m} d={d_m} theta={theta_deg} length={length_mm} mm \
         has {found} repetition(s); need at least 2"
    )]
    GroupTooSmall {
        h_m: f64,
        d_m: f64,
        theta_deg: f64,
        length_mm: f64,
        found: usize,
    },
    #[error("tolerance must be positive and finite, got {value}")]
    BadTolerance { value: f64 },
    #[error("no samples to analyze")]
    Empty,
}

/// Color difference of one repetition to the group reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepeatDelta {
    pub repetition: u32,
    pub delta_e00: f64,
}

/// One (camera position, grass length) group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepeatGroup {
    pub camera: CameraPosition,
    pub green_length_mm: f64,
    /// Per-channel arithmetic mean of the repetitions.
    pub reference: Lab,
    pub deltas: Vec<RepeatDelta>,
    pub within_tolerance: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepeatabilityReport {
    pub tolerance: f64,
    pub groups: Vec<RepeatGroup>,
}

/// Per-channel arithmetic mean. Summation runs over offsets from the first
/// value so that identical repetitions reproduce their value exactly.
fn mean_lab(labs: &[Lab]) -> Lab {
    let first = labs[0];
    let n = labs.len() as f64;
    let mut acc = [0.0f64; 3];
    for lab in labs {
        acc[0] += lab.l - first.l;
        acc[1] += lab.a - first.a;
        acc[2] += lab.b - first.b;
    }
    Lab::new(
        first.l + acc[0] / n,
        first.a + acc[1] / n,
        first.b + acc[2] / n,
    )
}

/// Groups samples by camera position and length, compares every repetition
/// to the group mean and counts how many fall within the tolerance.
pub fn analyze_repeats(
    samples: &[MeasuredSample],
    tolerance: f64,
) -> Result<RepeatabilityReport, RepeatError> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(RepeatError::BadTolerance { value: tolerance });
    }
    if samples.is_empty() {
        return Err(RepeatError::Empty);
    }

    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| {
        a.camera
            .h_m
            .total_cmp(&b.camera.h_m)
            .then(a.camera.d_m.total_cmp(&b.camera.d_m))
            .then(a.camera.theta_deg.total_cmp(&b.camera.theta_deg))
            .then(a.green_length_mm.total_cmp(&b.green_length_mm))
            .then(a.repetition.cmp(&b.repetition))
    });

    let same_group = |a: &MeasuredSample, b: &MeasuredSample| {
        a.camera == b.camera && a.green_length_mm == b.green_length_mm
    };

    let mut groups = Vec::new();
    let mut start = 0;
    while start < sorted.len() {
        let mut end = start + 1;
        while end < sorted.len() && same_group(&sorted[start], &sorted[end]) {
            end += 1;
        }
        let members = &sorted[start..end];
        if members.len() < 2 {
            let s = &members[0];
            return Err(RepeatError::GroupTooSmall {
                h_m: s.camera.h_m,
                d_m: s.camera.d_m,
                theta_deg: s.camera.theta_deg,
                length_mm: s.green_length_mm,
                found: members.len(),
            });
        }
        let labs: Vec<Lab> = members.iter().map(|s| s.lab).collect();
        let reference = mean_lab(&labs);
        let deltas: Vec<RepeatDelta> = members
            .iter()
            .map(|s| RepeatDelta {
                repetition: s.repetition,
                delta_e00: delta_e00_default(reference, s.lab),
            })
            .collect();
        let within_tolerance = deltas.iter().filter(|d| d.delta_e00 <= tolerance).count();
        groups.push(RepeatGroup {
            camera: members[0].camera,
            green_length_mm: members[0].green_length_mm,
            reference,
            deltas,
            within_tolerance,
        });
        start = end;
    }

    Ok(RepeatabilityReport { tolerance, groups })
}

/// Writes the per-repetition differences as CSV:
/// `h,d,theta,length_mm,repetition,delta_e00,within_tolerance`.
pub fn write_deltas_csv<W: Write>(
    writer: W,
    report: &RepeatabilityReport,
) -> Result<(), std::io::Error> {
    let mut w = csv::Writer::from_writer(writer);
    let io_err = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::other(format!("{other:?}")),
    };
    w.write_record([
        "h",
        "d",
        "theta",
        "length_mm",
        "repetition",
        "delta_e00",
        "within_tolerance",
    ])
    .map_err(io_err)?;
    let f = |v: f64| fmt_sig(v, REPORT_SIG_DIGITS);
    for g in &report.groups {
        for d in &g.deltas {
            w.write_record([
                f(g.camera.h_m),
                f(g.camera.d_m),
                f(g.camera.theta_deg),
                f(g.green_length_mm),
                d.repetition.to_string(),
                f(d.delta_e00),
                (d.delta_e00 <= report.tolerance).to_string(),
            ])
            .map_err(io_err)?;
        }
    }
    w.flush()
}
