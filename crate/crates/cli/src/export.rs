//! CSV exports: matrix entries and residual traces.

use std::path::Path;

use dirichlet_core::dynamics::TracePoint;
use dirichlet_core::oracle::DenseMatrix;

use crate::CliError;

fn err(e: impl std::fmt::Display) -> CliError {
    CliError::Output(e.to_string())
}

/// Every entry as `row,col,re,im` with 1-based indices.
pub fn write_matrix(path: &Path, m: &DenseMatrix) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    w.write_record(["row", "col", "re", "im"]).map_err(err)?;
    for (i, j, re, im) in m.entries() {
        w.serialize((i, j, re, im)).map_err(err)?;
    }
    w.flush().map_err(err)
}

pub fn write_trace(path: &Path, trace: &[TracePoint]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    for p in trace {
        w.serialize(p).map_err(err)?;
    }
    w.flush().map_err(err)
}
