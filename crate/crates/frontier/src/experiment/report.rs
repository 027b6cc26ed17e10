use std::fmt::Write as _;
use std::io::Write;

use super::{CellStats, EstimatorKind};
use crate::Result;

/// Column header of the report CSV.
pub const REPORT_HEADER: [&str; 7] = ["estimator", "n", "gamma", "mean_l1", "min_l1", "max_l1", "undefined_fraction"];

/// Column header of the per-replication trace CSV.
pub const TRACE_HEADER: [&str; 5] = ["estimator", "n", "gamma", "rep", "l1"];

#[derive(Debug, Clone, PartialEq)]
pub struct CellRecord {
    pub estimator: EstimatorKind,
    pub n: usize,
    pub gamma: f64,
    pub outcome: std::result::Result<CellStats, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub cells: Vec<CellRecord>,
}

impl ExperimentReport {
    pub fn cell(&self, estimator: EstimatorKind, n: usize, gamma: f64) -> Option<&CellRecord> {
        self.cells
            .iter()
            .find(|c| c.estimator == estimator && c.n == n && c.gamma == gamma)
    }

    pub fn stats(&self, estimator: EstimatorKind, n: usize, gamma: f64) -> Option<&CellStats> {
        self.cell(estimator, n, gamma).and_then(|c| c.outcome.as_ref().ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = (&CellRecord, &str)> {
        self.cells
            .iter()
            .filter_map(|c| c.outcome.as_ref().err().map(|e| (c, e.as_str())))
    }

    pub fn all_failed(&self) -> bool {
        self.cells.iter().all(|c| c.outcome.is_err())
    }

    /// Successful cells as CSV; failed cells are omitted (see
    /// [`ExperimentReport::failures`]).
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(REPORT_HEADER).map_err(csv_io)?;
        for c in &self.cells {
            if let Ok(s) = &c.outcome {
                w.write_record([
                    c.estimator.name().to_string(),
                    c.n.to_string(),
                    c.gamma.to_string(),
                    s.mean_l1.to_string(),
                    s.min_l1.to_string(),
                    s.max_l1.to_string(),
                    s.undefined_fraction.to_string(),
                ])
                .map_err(csv_io)?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_trace_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(TRACE_HEADER).map_err(csv_io)?;
        for c in &self.cells {
            if let Ok(s) = &c.outcome {
                for (i, e) in s.errors.iter().enumerate() {
                    w.write_record([
                        c.estimator.name().to_string(),
                        c.n.to_string(),
                        c.gamma.to_string(),
                        (i + 1).to_string(),
                        e.to_string(),
                    ])
                    .map_err(csv_io)?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    /// One block per gamma, one row per n, one column per estimator, each
    /// entry `mean [min, max]`.
    pub fn render_table(&self) -> String {
        let mut gammas: Vec<f64> = Vec::new();
        let mut ns: Vec<usize> = Vec::new();
        let mut estimators: Vec<EstimatorKind> = Vec::new();
        for c in &self.cells {
            if !gammas.contains(&c.gamma) {
                gammas.push(c.gamma);
            }
            if !ns.contains(&c.n) {
                ns.push(c.n);
            }
            if !estimators.contains(&c.estimator) {
                estimators.push(c.estimator);
            }
        }
        const WIDTH: usize = 24;
        let mut out = String::new();
        for gamma in gammas {
            let _ = writeln!(out, "gamma = {gamma}");
            let _ = write!(out, "{:>6}", "n");
            for e in &estimators {
                let _ = write!(out, " | {:^WIDTH$}", e.name());
            }
            out.push('\n');
            for &n in &ns {
                let _ = write!(out, "{n:>6}");
                for &e in &estimators {
                    let entry = match self.cell(e, n, gamma).map(|c| &c.outcome) {
                        Some(Ok(s)) => format!("{:.3} [{:.3}, {:.3}]", s.mean_l1, s.min_l1, s.max_l1),
                        Some(Err(_)) => "failed".to_string(),
                        None => "-".to_string(),
                    };
                    let _ = write!(out, " | {entry:^WIDTH$}");
                }
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }
}

fn csv_io(e: csv::Error) -> crate::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io.into(),
        other => crate::Error::InvalidConfig(format!("{other:?}")),
    }
}
