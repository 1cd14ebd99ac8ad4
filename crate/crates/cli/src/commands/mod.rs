pub mod animate;
pub mod fit;
pub mod measure;
pub mod repeat;

use std::fs;
use std::path::Path;

use serde::Serialize;

use grasscale::numfmt::{round_json, REPORT_SIG_DIGITS};

use crate::errors::CliError;

/// Serializes a report with all floats rounded to the fixed report
/// precision and writes it as pretty JSON.
pub fn write_report_json<T: Serialize>(path: &Path, report: &T) -> Result<(), CliError> {
    let mut value =
        serde_json::to_value(report).map_err(|e| CliError::Io(format!("serialize report: {e}")))?;
    round_json(&mut value, REPORT_SIG_DIGITS);
    let text = serde_json::to_string_pretty(&value)
        .map_err(|e| CliError::Io(format!("serialize report: {e}")))?;
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::Io(format!("create {}: {e}", parent.display())))?;
        }
    }
    fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("write {}: {e}", path.display())))
}
