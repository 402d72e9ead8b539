//! CSV and JSON forms of scan and convergence results.
//!
//! Floats are written in shortest round-trip form, so reading a grid back
//! reproduces every cell exactly.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use fpcap_core::asymptotics::ConvergenceRow;
use fpcap_core::optimize::OptimizerOptions;

use crate::scan::{GridCell, GridScan, SweepRow};
use crate::Error;

/// Serializable mirror of [`OptimizerOptions`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptionsRecord {
    pub grid_points: usize,
    pub refine_tolerance_p: f64,
    pub near_optimal_band: f64,
    pub small_p_augmentation: bool,
}

impl From<OptimizerOptions> for OptionsRecord {
    fn from(o: OptimizerOptions) -> Self {
        OptionsRecord {
            grid_points: o.grid_points,
            refine_tolerance_p: o.refine_tolerance_p,
            near_optimal_band: o.near_optimal_band,
            small_p_augmentation: o.small_p_augmentation,
        }
    }
}

#[derive(Serialize)]
struct GridDocument<'a> {
    c: usize,
    decoder: String,
    gap: String,
    options: OptionsRecord,
    cells: &'a [GridCell],
}

/// Convergence row under the CSV column names.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub c: usize,
    #[serde(rename = "numeric_C")]
    pub numeric_capacity: f64,
    #[serde(rename = "predicted_C")]
    pub predicted_capacity: f64,
    pub scaled_residual: f64,
    #[serde(rename = "c_p_numeric")]
    pub numeric_p_times_c: f64,
    #[serde(rename = "c_p_predicted")]
    pub predicted_p_times_c: Option<f64>,
}

impl From<&ConvergenceRow> for ConvergenceRecord {
    fn from(r: &ConvergenceRow) -> Self {
        ConvergenceRecord {
            c: r.c,
            numeric_capacity: r.numeric_capacity,
            predicted_capacity: r.predicted_capacity,
            scaled_residual: r.scaled_residual,
            numeric_p_times_c: r.numeric_p_times_c,
            predicted_p_times_c: r.predicted_p_times_c,
        }
    }
}

fn write_records<T: Serialize>(rows: impl IntoIterator<Item = T>, out: impl Write) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `l,u,scaled_capacity` rows.
pub fn write_grid_csv(grid: &GridScan, out: impl Write) -> Result<(), Error> {
    if grid.cells.is_empty() {
        let mut out = out;
        writeln!(out, "l,u,scaled_capacity")?;
        return Ok(());
    }
    write_records(&grid.cells, out)
}

/// Reads cells written by [`write_grid_csv`].
pub fn read_grid_csv(input: impl Read) -> Result<Vec<GridCell>, Error> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers != vec!["l", "u", "scaled_capacity"] {
        return Err(Error::Format(format!("unexpected grid header `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

pub fn write_grid_json(grid: &GridScan, mut out: impl Write) -> Result<(), Error> {
    let doc = GridDocument {
        c: grid.c,
        decoder: grid.decoder.to_string(),
        gap: grid.gap.to_string(),
        options: grid.options.into(),
        cells: &grid.cells,
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    Ok(())
}

/// Writes `c,model,decoder,capacity,p_star,scaled_capacity` rows.
pub fn write_sweep_csv(rows: &[SweepRow], out: impl Write) -> Result<(), Error> {
    write_records(rows, out)
}

pub fn write_sweep_json(rows: &[SweepRow], mut out: impl Write) -> Result<(), Error> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    Ok(())
}

/// Writes `c,numeric_C,predicted_C,scaled_residual,c_p_numeric,c_p_predicted` rows.
pub fn write_convergence_csv(rows: &[ConvergenceRow], out: impl Write) -> Result<(), Error> {
    write_records(rows.iter().map(ConvergenceRecord::from), out)
}

pub fn read_convergence_csv(input: impl Read) -> Result<Vec<ConvergenceRecord>, Error> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}
