//! Script compilation into a timed per-pixel command schedule.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{AnimationScript, DisplayError, MotorSpec, PixelGeometry};
use crate::numfmt::{fmt_sig, REPORT_SIG_DIGITS};
use crate::scale::ScaleMapping;

/// One motor command: absolute target for one pixel at one keyframe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Command {
    pub timestamp_s: f64,
    pub row: usize,
    pub col: usize,
    pub length_mm: f64,
    pub steps: i64,
}

/// Ordered command list plus compile-time warnings.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CommandSchedule {
    pub commands: Vec<Command>,
    pub warnings: Vec<String>,
}

/// Grass length assigned to a scale level by a feasible mapping.
pub fn level_to_length(level: u8, mapping: &ScaleMapping) -> Result<f64, DisplayError> {
    if !mapping.feasible {
        return Err(DisplayError::InfeasibleMapping);
    }
    let n_levels = mapping.n_levels();
    if (level as usize) >= n_levels {
        return Err(DisplayError::LevelOutOfRange { level, n_levels });
    }
    mapping
        .chosen_length(level as usize)
        .ok_or(DisplayError::InfeasibleMapping)
}

/// Absolute step position for a grass length, rounding half away from zero.
pub fn length_to_steps(
    length_mm: f64,
    motor: &MotorSpec,
    range_mm: [f64; 2],
) -> Result<i64, DisplayError> {
    motor.validate()?;
    let [min, max] = range_mm;
    if !(length_mm >= min && length_mm <= max) {
        return Err(DisplayError::LengthOutOfRange {
            length_mm,
            min,
            max,
        });
    }
    Ok((length_mm / motor.lead_mm * motor.steps_per_rotation as f64).round() as i64)
}

/// Compiles a script against a mapping: per keyframe and pixel, the target
/// length and absolute step position, timestamped at multiples of the
/// keyframe interval.
///
/// With a step rate given, transitions whose travel time exceeds the
/// keyframe interval produce a warning.
pub fn compile_script(
    script: &AnimationScript,
    mapping: &ScaleMapping,
    motor: &MotorSpec,
    geometry: &PixelGeometry,
    step_rate_hz: Option<f64>,
) -> Result<CommandSchedule, DisplayError> {
    geometry.validate()?;
    motor.validate()?;
    let interval = script.interval_s();

    let mut commands = Vec::with_capacity(script.keyframes().len() * script.rows() * script.cols());
    for (k, frame) in script.keyframes().iter().enumerate() {
        let timestamp_s = k as f64 * interval;
        for row in 0..frame.rows() {
            for col in 0..frame.cols() {
                let length_mm = level_to_length(frame.level(row, col), mapping)?;
                let steps = length_to_steps(length_mm, motor, geometry.green_range_mm)?;
                commands.push(Command {
                    timestamp_s,
                    row,
                    col,
                    length_mm,
                    steps,
                });
            }
        }
    }

    let mut warnings = Vec::new();
    if let Some(rate) = step_rate_hz {
        if rate > 0.0 {
            let pixels = script.rows() * script.cols();
            let chunks: Vec<&[Command]> = commands.chunks(pixels).collect();
            let mut worst: i64 = 0;
            for window in chunks.windows(2) {
                for (prev, next) in window[0].iter().zip(window[1].iter()) {
                    worst = worst.max((next.steps - prev.steps).abs());
                }
            }
            let travel_time = worst as f64 / rate;
            if travel_time > interval {
                warnings.push(format!(
                    "worst keyframe transition needs {worst} steps \
                     ({travel_time:.3} s at {rate} steps/s), longer than \
                     the {interval} s keyframe interval"
                ));
            }
        }
    }

    Ok(CommandSchedule { commands, warnings })
}

/// Writes the schedule as CSV: `timestamp_s,row,col,length_mm,steps`.
pub fn write_schedule_csv<W: Write>(
    writer: W,
    schedule: &CommandSchedule,
) -> Result<(), std::io::Error> {
    let mut w = csv::Writer::from_writer(writer);
    let io_err = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::other(format!("{other:?}")),
    };
    w.write_record(["timestamp_s", "row", "col", "length_mm", "steps"])
        .map_err(io_err)?;
    for c in &schedule.commands {
        w.write_record([
            fmt_sig(c.timestamp_s, REPORT_SIG_DIGITS),
            c.row.to_string(),
            c.col.to_string(),
            fmt_sig(c.length_mm, REPORT_SIG_DIGITS),
            c.steps.to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush()
}
