//! CSV serialization of measured samples.
//!
//! Columns: `length_mm,L,a,b,h,d,theta,repetition`. Floats are written with
//! nine significant digits.

use std::io::{Read, Write};

use serde::Deserialize;

use super::{CalibError, CameraPosition, MeasuredSample};
use crate::numfmt::{fmt_sig, REPORT_SIG_DIGITS};
use crate::LabColor;

pub const SAMPLES_CSV_HEADER: [&str; 8] =
    ["length_mm", "L", "a", "b", "h", "d", "theta", "repetition"];

pub fn write_samples_csv<W: Write>(
    writer: W,
    samples: &[MeasuredSample],
) -> Result<(), CalibError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(SAMPLES_CSV_HEADER).map_err(csv_io_error)?;
    for s in samples {
        let f = |v: f64| fmt_sig(v, REPORT_SIG_DIGITS);
        w.write_record([
            f(s.green_length_mm),
            f(s.lab.l),
            f(s.lab.a),
            f(s.lab.b),
            f(s.camera.h_m),
            f(s.camera.d_m),
            f(s.camera.theta_deg),
            s.repetition.to_string(),
        ])
        .map_err(csv_io_error)?;
    }
    w.flush().map_err(CalibError::CsvWrite)
}

fn csv_io_error(e: csv::Error) -> CalibError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CalibError::CsvWrite(io),
        other => CalibError::CsvWrite(std::io::Error::other(format!("{other:?}"))),
    }
}

#[derive(Debug, Deserialize)]
struct SampleRow {
    length_mm: f64,
    #[serde(rename = "L")]
    l: f64,
    a: f64,
    b: f64,
    h: f64,
    d: f64,
    theta: f64,
    repetition: u32,
}

pub fn read_samples_csv<R: Read>(reader: R) -> Result<Vec<MeasuredSample>, CalibError> {
    let mut r = csv::Reader::from_reader(reader);
    let mut samples = Vec::new();
    for (i, row) in r.deserialize::<SampleRow>().enumerate() {
        let row = row?;
        let sample = MeasuredSample::new(
            row.length_mm,
            LabColor::new(row.l, row.a, row.b),
            CameraPosition::new(row.h, row.d, row.theta),
            row.repetition,
        )
        .map_err(|e| CalibError::CsvRow {
            row: i + 2,
            reason: e.to_string(),
        })?;
        samples.push(sample);
    }
    Ok(samples)
}
