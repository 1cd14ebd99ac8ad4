//! `grasscale fit`: samples CSV to scale report JSON.

use std::fs::File;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use grasscale::calib::{read_samples_csv, CameraPosition};
use grasscale::scale::{run_procedure_with, ProcedureReport, ScaleError, StageFailure};

use crate::config::{effective_spec, positions_of, SessionConfig, SpecFlags};
use crate::errors::CliError;
use crate::FitArgs;

/// `h,d,theta` triple from the command line.
#[derive(Debug, Clone, Copy)]
pub struct PositionArg(pub CameraPosition);

impl FromStr for PositionArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("expected h,d,theta, got {s:?}"));
        }
        let mut v = [0.0f64; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|e| format!("bad number {part:?}: {e}"))?;
        }
        Ok(PositionArg(CameraPosition::new(v[0], v[1], v[2])))
    }
}

pub fn parse_position(s: &str) -> Result<PositionArg, String> {
    PositionArg::from_str(s)
}

#[derive(Serialize)]
struct FitReportFile {
    camera: CameraPosition,
    #[serde(flatten)]
    report: ProcedureReport,
}

fn classify(e: ScaleError) -> CliError {
    CliError::Validation(e.to_string())
}

fn describe_position(p: &CameraPosition) -> String {
    format!("{},{},{}", p.h_m, p.d_m, p.theta_deg)
}

pub fn run(out_dir: &Path, args: FitArgs) -> Result<(), CliError> {
    let file = File::open(&args.samples)
        .map_err(|e| CliError::Io(format!("open {}: {e}", args.samples.display())))?;
    let mut samples = read_samples_csv(file)
        .map_err(|e| CliError::Validation(format!("{}: {e}", args.samples.display())))?;

    if let Some(PositionArg(position)) = args.position {
        samples.retain(|s| s.camera == position);
        if samples.is_empty() {
            return Err(CliError::Validation(format!(
                "no samples at position {}",
                describe_position(&position)
            )));
        }
    } else {
        let positions = positions_of(&samples);
        if positions.len() > 1 {
            let list: Vec<String> = positions.iter().map(describe_position).collect();
            return Err(CliError::Validation(format!(
                "CSV holds {} camera positions ({}); pick one with --position",
                positions.len(),
                list.join(" / ")
            )));
        }
    }

    let config_overrides = match &args.config {
        Some(path) => SessionConfig::load(path)?.0.scale,
        None => None,
    };
    let (spec, grid_step) = effective_spec(
        config_overrides.as_ref(),
        SpecFlags {
            levels: args.levels,
            tolerance: args.tolerance,
            min_span: args.min_span,
            grid_step: args.grid_step,
        },
    );

    let camera = samples[0].camera;
    let report = run_procedure_with(&samples, &spec, grid_step).map_err(classify)?;

    let output = args
        .output
        .unwrap_or_else(|| out_dir.join("scale_report.json"));
    super::write_report_json(
        &output,
        &FitReportFile {
            camera,
            report: report.clone(),
        },
    )?;
    println!("wrote scale report to {}", output.display());

    if report.feasible {
        let lengths: Vec<String> = report
            .mapping
            .as_ref()
            .map(|m| {
                m.levels
                    .iter()
                    .filter_map(|l| l.chosen_length_mm)
                    .map(|len| format!("{len}"))
                    .collect()
            })
            .unwrap_or_default();
        println!("feasible: level lengths {} mm", lengths.join(", "));
        Ok(())
    } else {
        Err(CliError::Gate(gate_message(&report)))
    }
}

fn gate_message(report: &ProcedureReport) -> String {
    match &report.failure {
        Some(StageFailure::SpanGate { span, min_span }) => {
            format!("span gate failed: end-to-end color difference {span} is not above {min_span}")
        }
        Some(StageFailure::NonMonotone {
            min_derivative,
            argmin_t,
        }) => {
            format!("monotonicity gate failed: min derivative {min_derivative} at t = {argmin_t}")
        }
        Some(StageFailure::Mapping {
            levels_without_candidates,
        }) => {
            let minima: Vec<String> = report
                .mapping
                .iter()
                .flat_map(|m| m.levels.iter())
                .filter(|l| levels_without_candidates.contains(&l.level))
                .map(|l| format!("level {}: min ΔE00 {}", l.level, l.min_delta_e00))
                .collect();
            format!(
                "mapping infeasible, no candidate within tolerance for levels {:?} ({})",
                levels_without_candidates,
                minima.join("; ")
            )
        }
        None => "infeasible for an unreported reason".to_string(),
    }
}
