//! `x,y` sample files.
//!
//! One header line `x,y`, then one pair per row in plain decimal or
//! exponent notation. Written values use Rust's shortest round-trip float
//! formatting, so a written sample reads back bit for bit.

use std::io::{Read, Write};

use frontier_core::estimators::Sample;

use crate::{Error, Result};

pub fn read_sample<R: Read>(reader: R) -> Result<Sample> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(Error::EmptySample);
    }
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "y" {
        return Err(Error::Csv {
            line: 1,
            message: format!("expected header `x,y`, found `{}`", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut lines = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(Error::Csv {
                line,
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let parse = |field: &str, name: &str| {
            field.parse::<f64>().map_err(|_| Error::Csv {
                line,
                message: format!("{name} is not a number: `{field}`"),
            })
        };
        xs.push(parse(&record[0], "x")?);
        ys.push(parse(&record[1], "y")?);
        lines.push(line);
    }
    if ys.is_empty() {
        return Err(Error::EmptySample);
    }
    Sample::univariate(xs, ys).map_err(|e| match e {
        frontier_core::Error::InvalidPoint { index, reason } => Error::Csv {
            line: lines[index],
            message: reason.to_string(),
        },
        other => other.into(),
    })
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        kind => Error::Csv {
            line,
            message: format!("{kind:?}"),
        },
    }
}

/// Writes a univariate sample with header `x,y`.
pub fn write_sample<W: Write>(sample: &Sample, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "y"]).map_err(csv_error)?;
    for (x, y) in sample.iter() {
        w.write_record([x[0].to_string(), y.to_string()]).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}
