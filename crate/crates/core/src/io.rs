//! CSV and JSON artifacts. Numbers are written with 17 significant digits so
//! every double round-trips exactly.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{ExciteError, Result};
use crate::grid::Grid;
use crate::groundstate::GroundState;
use crate::potential::Potential;

pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// Write a header plus one row per index; every column must have the same length.
pub fn write_columns(path: &Path, header: &[String], columns: &[&[f64]]) -> Result<()> {
    let rows = columns.first().map_or(0, |c| c.len());
    if columns.len() != header.len() || columns.iter().any(|c| c.len() != rows) {
        return Err(ExciteError::Malformed("ragged CSV columns".into()));
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path)?;
    w.write_record(header)?;
    let mut record = Vec::with_capacity(columns.len());
    for i in 0..rows {
        record.clear();
        record.extend(columns.iter().map(|c| fmt17(c[i])));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Read every column of a numeric CSV, checking the header.
pub fn read_columns(path: &Path, expected_header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let header: Vec<String> = r.headers()?.iter().map(|s| s.trim().to_string()).collect();
    if header != expected_header {
        return Err(ExciteError::Malformed(format!(
            "{}: header {header:?}, expected {expected_header:?}",
            path.display()
        )));
    }
    let mut cols = vec![Vec::new(); expected_header.len()];
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != cols.len() {
            return Err(ExciteError::Malformed(format!("row {} has {} fields", line + 2, rec.len())));
        }
        for (col, field) in cols.iter_mut().zip(rec.iter()) {
            let v: f64 = field.trim().parse().map_err(|_| {
                ExciteError::Malformed(format!("row {}: bad number {field:?}", line + 2))
            })?;
            col.push(v);
        }
    }
    Ok(cols)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundStateSidecar {
    pub e_gd: f64,
    pub gauge: f64,
    pub potential: Potential,
    pub grid: Grid,
}

pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

/// `x,S,Sprime` rows plus a JSON sidecar next to the CSV.
pub fn write_groundstate(gs: &GroundState, csv_path: &Path) -> Result<()> {
    let header = ["x", "S", "Sprime"].map(String::from);
    let x = gs.grid().nodes();
    write_columns(csv_path, &header, &[&x, gs.s(), gs.s_prime()])?;
    let sidecar = GroundStateSidecar {
        e_gd: gs.e_gd(),
        gauge: gs.gauge(),
        potential: gs.potential(),
        grid: *gs.grid(),
    };
    fs::write(sidecar_path(csv_path), serde_json::to_string_pretty(&sidecar)? + "\n")?;
    Ok(())
}

pub fn read_groundstate(csv_path: &Path) -> Result<GroundState> {
    let sidecar: GroundStateSidecar = serde_json::from_str(&fs::read_to_string(sidecar_path(csv_path))?)?;
    let mut cols = read_columns(csv_path, &["x", "S", "Sprime"])?;
    let s_prime = cols.pop().expect("three columns");
    let s = cols.pop().expect("three columns");
    let x = cols.pop().expect("three columns");
    let grid = sidecar.grid;
    if x.len() != grid.n_points()
        || x.iter().enumerate().any(|(i, xi)| (xi - grid.x(i)).abs() > 1e-12 * grid.x_max())
    {
        return Err(ExciteError::Malformed("ground-state nodes do not match the sidecar grid".into()));
    }
    let gs = GroundState::from_samples(sidecar.potential, grid, s, s_prime, sidecar.e_gd)?;
    if gs.gauge() != sidecar.gauge {
        return Err(ExciteError::Malformed("sidecar gauge disagrees with S(0)".into()));
    }
    Ok(gs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundstate::soluble_groundstate;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt17(f64::INFINITY), "inf");
        for v in [std::f64::consts::PI, 1.0 / 3.0, -2.5e-300, 7.0e300] {
            assert_eq!(fmt17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn groundstate_round_trip_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gs.csv");
        let gs = soluble_groundstate(0.1, Grid::new(1.0, 101).unwrap()).unwrap();
        write_groundstate(&gs, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("x,S,Sprime\n"));
        assert!(!text.contains('\r'));
        assert_eq!(read_groundstate(&path).unwrap(), gs);
    }

    #[test]
    fn malformed_header_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        fs::write(&path, "x,T\n0,1\n").unwrap();
        assert!(read_columns(&path, &["x", "S"]).is_err());
    }
}
