use std::ops::RangeInclusive;
use std::path::Path;

use rayon::prelude::*;
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use super::{eval_runtime, invert_depth, standard_horizons, Horizon, RuntimeError, RuntimeParams};
use crate::bounds::depth_interval;

pub const HEATMAP_FILE: &str = "heatmap.csv";
pub const INTERVAL_FILE: &str = "interval.csv";
pub const CONTOURS_FILE: &str = "contours.csv";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatCell {
    pub qubits: usize,
    pub depth: u64,
    pub log10_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalPoint {
    pub qubits: usize,
    pub lower: f64,
    pub upper: f64,
}

/// Continuous depth at which the runtime reaches a horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourPoint {
    pub label: String,
    pub qubits: usize,
    pub depth: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct HeatmapData {
    /// Row-major: qubits outer, depth inner.
    pub cells: Vec<HeatCell>,
    pub interval: Vec<IntervalPoint>,
    pub contours: Vec<ContourPoint>,
}

/// Runtime grid over `(qubits, depth)` plus the entanglement interval curve and
/// the iso-runtime contours for the standard horizons.
pub fn heatmap(
    p: &RuntimeParams,
    qubits: RangeInclusive<usize>,
    depths: RangeInclusive<u64>,
    step: usize,
) -> Result<HeatmapData, RuntimeError> {
    heatmap_with_horizons(p, qubits, depths, step, &standard_horizons())
}

pub fn heatmap_with_horizons(
    p: &RuntimeParams,
    qubits: RangeInclusive<usize>,
    depths: RangeInclusive<u64>,
    step: usize,
    horizons: &[Horizon],
) -> Result<HeatmapData, RuntimeError> {
    if step == 0 {
        return Err(RuntimeError::EmptyRange("step must be positive".into()));
    }
    if qubits.is_empty() {
        return Err(RuntimeError::EmptyRange(format!("qubits {}:{}", qubits.start(), qubits.end())));
    }
    if depths.is_empty() {
        return Err(RuntimeError::EmptyRange(format!("depth {}:{}", depths.start(), depths.end())));
    }
    if *qubits.start() < 2 {
        return Err(RuntimeError::TooFewQubits(*qubits.start()));
    }
    if *depths.start() < 1 {
        return Err(RuntimeError::InvalidDepth(0.0));
    }
    let ns: Vec<usize> = qubits.step_by(step).collect();
    let gs: Vec<u64> = depths.step_by(step).collect();

    let rows: Vec<(Vec<HeatCell>, Vec<ContourPoint>)> = ns
        .par_iter()
        .map(|&n| {
            let cells = gs
                .iter()
                .map(|&g| {
                    let est = eval_runtime(p, n, g as f64)?;
                    Ok(HeatCell { qubits: n, depth: g, log10_seconds: est.log10_seconds() })
                })
                .collect::<Result<Vec<_>, RuntimeError>>()?;
            let contours = horizons
                .iter()
                .filter_map(|h| {
                    invert_depth(p, n, h.seconds)
                        .ok()
                        .map(|depth| ContourPoint { label: h.label.clone(), qubits: n, depth })
                })
                .collect();
            Ok((cells, contours))
        })
        .collect::<Result<Vec<_>, RuntimeError>>()?;

    let mut data = HeatmapData::default();
    for (cells, contours) in rows {
        data.cells.extend(cells);
        data.contours.extend(contours);
    }
    data.interval = ns
        .iter()
        .map(|&n| {
            let (lower, upper) = depth_interval(n);
            IntervalPoint { qubits: n, lower, upper }
        })
        .collect();
    Ok(data)
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), RuntimeError> {
    let io = |e: csv::Error| RuntimeError::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| RuntimeError::Io(format!("{}: {e}", path.display())))
}

/// Writes `heatmap.csv`, `interval.csv` and `contours.csv` into `dir`.
pub fn write_heatmap_dir(data: &HeatmapData, dir: impl AsRef<Path>) -> Result<(), RuntimeError> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| RuntimeError::Io(format!("{}: {e}", dir.display())))?;
    // Empty lists still get a header so readers see the schema.
    if data.cells.is_empty() {
        std::fs::write(dir.join(HEATMAP_FILE), "qubits,depth,log10_seconds\n")
            .map_err(|e| RuntimeError::Io(e.to_string()))?;
    } else {
        write_csv(&dir.join(HEATMAP_FILE), &data.cells)?;
    }
    write_csv(&dir.join(INTERVAL_FILE), &data.interval)?;
    if data.contours.is_empty() {
        std::fs::write(dir.join(CONTOURS_FILE), "label,qubits,depth\n")
            .map_err(|e| RuntimeError::Io(e.to_string()))?;
    } else {
        write_csv(&dir.join(CONTOURS_FILE), &data.contours)?;
    }
    Ok(())
}

fn read_csv<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, RuntimeError> {
    let mut r = csv::Reader::from_path(path)
        .map_err(|e| RuntimeError::Io(format!("{}: {e}", path.display())))?;
    r.deserialize()
        .map(|rec| {
            rec.map_err(|e| RuntimeError::Schema {
                line: e.position().map_or(0, |p| p.line()),
                msg: e.to_string(),
            })
        })
        .collect()
}

pub fn read_heatmap_csv(path: impl AsRef<Path>) -> Result<Vec<HeatCell>, RuntimeError> {
    read_csv(path.as_ref())
}

pub fn read_interval_csv(path: impl AsRef<Path>) -> Result<Vec<IntervalPoint>, RuntimeError> {
    read_csv(path.as_ref())
}

pub fn read_contours_csv(path: impl AsRef<Path>) -> Result<Vec<ContourPoint>, RuntimeError> {
    read_csv(path.as_ref())
}
