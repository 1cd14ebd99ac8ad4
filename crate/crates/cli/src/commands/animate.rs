//! `grasscale animate` and `grasscale render`: script plus mapping to a
//! motor schedule and simulated frames.

use std::fs::{self, File};
use std::path::{Path, PathBuf};

use grasscale::display::{
    compile_script, render_animation, save_animation, write_schedule_csv, AnimationScript,
    DisplayError, MotorSpec,
};
use grasscale::scale::ScaleMapping;

use crate::config::{load_geometry, MixConfig};
use crate::errors::CliError;
use crate::{AnimateArgs, RenderArgs};

fn classify(e: DisplayError) -> CliError {
    match e {
        DisplayError::InfeasibleMapping => CliError::Gate(e.to_string()),
        DisplayError::Io { .. } | DisplayError::Raster(_) => CliError::Io(e.to_string()),
        other => CliError::Validation(other.to_string()),
    }
}

/// Accepts either a `fit` report (its `mapping` field) or a bare mapping.
fn load_mapping(path: &Path) -> Result<ScaleMapping, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("malformed {}: {e}", path.display())))?;
    let mapping_value = match value.get("mapping") {
        Some(serde_json::Value::Null) => {
            return Err(CliError::Gate(format!(
                "report {} carries no mapping (the procedure failed before assignment)",
                path.display()
            )))
        }
        Some(inner) => inner.clone(),
        None => value,
    };
    let mapping: ScaleMapping = serde_json::from_value(mapping_value)
        .map_err(|e| CliError::Config(format!("malformed mapping in {}: {e}", path.display())))?;
    if !mapping.feasible {
        return Err(CliError::Gate(format!(
            "mapping {} is not feasible",
            path.display()
        )));
    }
    Ok(mapping)
}

fn load_script(path: &Path, interval: Option<f64>) -> Result<AnimationScript, CliError> {
    let script = AnimationScript::load(path)
        .map_err(|e| CliError::Config(format!("script {}: {e}", path.display())))?;
    match interval {
        Some(seconds) => script
            .with_interval(seconds)
            .map_err(|e| CliError::Config(e.to_string())),
        None => Ok(script),
    }
}

pub fn run_animate(out_dir: &Path, args: AnimateArgs) -> Result<(), CliError> {
    let script = load_script(&args.script, args.interval)?;
    let mapping = load_mapping(&args.mapping)?;
    let geometry = load_geometry(args.geometry.as_deref())?;
    let mix = MixConfig::load(&args.mix)?.into_model(&geometry)?;
    let motor = MotorSpec::default();

    let dir = args.out.unwrap_or_else(|| out_dir.join("animation"));
    fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("create {}: {e}", dir.display())))?;

    let schedule =
        compile_script(&script, &mapping, &motor, &geometry, args.step_rate).map_err(classify)?;
    for warning in &schedule.warnings {
        eprintln!("warning: {warning}");
    }
    let schedule_path = dir.join("schedule.csv");
    let file = File::create(&schedule_path)
        .map_err(|e| CliError::Io(format!("create {}: {e}", schedule_path.display())))?;
    write_schedule_csv(file, &schedule).map_err(|e| CliError::Io(e.to_string()))?;

    let (frames, manifest) =
        render_animation(&script, &mapping, &mix, &geometry, args.scale_px).map_err(classify)?;
    save_animation(&dir, &frames, &manifest).map_err(classify)?;

    println!(
        "compiled {} commands and rendered {} frames into {}",
        schedule.commands.len(),
        frames.len(),
        dir.display()
    );
    Ok(())
}

pub fn run_render(out_dir: &Path, args: RenderArgs) -> Result<(), CliError> {
    let script = load_script(&args.script, args.interval)?;
    let mapping = load_mapping(&args.mapping)?;
    let geometry = load_geometry(args.geometry.as_deref())?;
    let mix = MixConfig::load(&args.mix)?.into_model(&geometry)?;

    let dir: PathBuf = args.out.unwrap_or_else(|| out_dir.join("frames"));
    let (frames, manifest) =
        render_animation(&script, &mapping, &mix, &geometry, args.scale_px).map_err(classify)?;
    save_animation(&dir, &frames, &manifest).map_err(classify)?;

    println!("rendered {} frames into {}", frames.len(), dir.display());
    Ok(())
}
