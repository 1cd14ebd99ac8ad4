//! `grasscale repeat`: samples CSV to repeatability report.

use std::fs::File;
use std::path::Path;

use grasscale::calib::read_samples_csv;
use grasscale::repeat::{analyze_repeats, write_deltas_csv};

use crate::errors::CliError;
use crate::RepeatArgs;

pub fn run(out_dir: &Path, args: RepeatArgs) -> Result<(), CliError> {
    let file = File::open(&args.samples)
        .map_err(|e| CliError::Io(format!("open {}: {e}", args.samples.display())))?;
    let samples = read_samples_csv(file)
        .map_err(|e| CliError::Validation(format!("{}: {e}", args.samples.display())))?;

    let report = analyze_repeats(&samples, args.tolerance)
        .map_err(|e| CliError::Validation(e.to_string()))?;

    let output = args
        .output
        .unwrap_or_else(|| out_dir.join("repeatability.json"));
    super::write_report_json(&output, &report)?;
    println!("wrote repeatability report to {}", output.display());

    if let Some(path) = &args.deltas_csv {
        let file = File::create(path)
            .map_err(|e| CliError::Io(format!("create {}: {e}", path.display())))?;
        write_deltas_csv(file, &report).map_err(|e| CliError::Io(e.to_string()))?;
        println!("wrote per-repetition deltas to {}", path.display());
    }

    let total: usize = report.groups.iter().map(|g| g.deltas.len()).sum();
    let within: usize = report.groups.iter().map(|g| g.within_tolerance).sum();
    println!(
        "{within}/{total} repetitions within tolerance {} across {} groups",
        report.tolerance,
        report.groups.len()
    );
    Ok(())
}
