//! `grasscale measure`: frames plus checker to measured samples CSV.

use std::fs::File;
use std::path::{Path, PathBuf};

use grasscale::calib::{
    apply_correction, extract_patches, fit_correction, measure_patch_in, write_samples_csv,
    CalibError, MeasuredSample,
};
use grasscale::raster::Raster;

use crate::config::SessionConfig;
use crate::errors::CliError;
use crate::MeasureArgs;

fn classify(e: CalibError) -> CliError {
    match e {
        CalibError::CsvWrite(io) => CliError::Io(io.to_string()),
        other => CliError::Validation(other.to_string()),
    }
}

pub fn run(out_dir: &Path, args: MeasureArgs) -> Result<(), CliError> {
    let (config, base) = SessionConfig::load(&args.config)?;
    if config.images.is_empty() {
        return Err(CliError::Validation("image list is empty".to_string()));
    }

    let reference_path = SessionConfig::resolve(&base, &config.reference_image);
    let reference_image = Raster::load(&reference_path).map_err(|e| {
        CliError::Config(format!("reference image {}: {e}", reference_path.display()))
    })?;
    let reference_patches = extract_patches(&reference_image, &config.checker).map_err(classify)?;

    let mut samples = Vec::with_capacity(config.images.len());
    for entry in &config.images {
        let path = SessionConfig::resolve(&base, &entry.path);
        let image = Raster::load(&path)
            .map_err(|e| CliError::Io(format!("image {}: {e}", path.display())))?;
        let observed = extract_patches(&image, &config.checker).map_err(classify)?;
        let correction = fit_correction(&observed, &reference_patches).map_err(classify)?;
        let corrected = apply_correction(&image, &correction);
        let lab = measure_patch_in(&corrected, &config.evaluation_region, config.mean_space)
            .map_err(classify)?;
        samples.push(
            MeasuredSample::new(entry.length_mm, lab, config.camera, entry.repetition)
                .map_err(classify)?,
        );
    }

    let output = output_path(out_dir, &args.output, &config, &base);
    if let Some(parent) = output.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::Io(format!("create {}: {e}", parent.display())))?;
        }
    }
    let file = File::create(&output)
        .map_err(|e| CliError::Io(format!("create {}: {e}", output.display())))?;
    write_samples_csv(file, &samples).map_err(classify)?;
    println!("wrote {} samples to {}", samples.len(), output.display());
    Ok(())
}

fn output_path(
    out_dir: &Path,
    flag: &Option<PathBuf>,
    config: &SessionConfig,
    base: &Path,
) -> PathBuf {
    if let Some(path) = flag {
        return path.clone();
    }
    if let Some(dir) = &config.output_dir {
        return SessionConfig::resolve(base, dir).join("samples.csv");
    }
    out_dir.join("samples.csv")
}
