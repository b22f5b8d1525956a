use std::fmt;

use serde::Serialize;

use super::{ceil_depth, invert_depth, RuntimeError, RuntimeParams};

/// Mean Gregorian year in seconds.
pub const YEAR: f64 = 365.2425 * 24.0 * 3600.0;
pub const MONTH: f64 = YEAR / 12.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Horizon {
    pub label: String,
    pub seconds: f64,
}

impl Horizon {
    pub fn new(label: impl Into<String>, seconds: f64) -> Self {
        Horizon { label: label.into(), seconds }
    }
}

/// 1 month, 1 year, 10 years and 100 years.
pub fn standard_horizons() -> Vec<Horizon> {
    vec![
        Horizon::new("1 month", MONTH),
        Horizon::new("1 year", YEAR),
        Horizon::new("10 years", 10.0 * YEAR),
        Horizon::new("100 years", 100.0 * YEAR),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DepthRow {
    pub label: String,
    pub seconds: f64,
    /// One entry per qubit count of the table.
    pub depths: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DepthTable {
    pub qubits: Vec<usize>,
    pub halved: bool,
    pub rows: Vec<DepthRow>,
}

/// Achievable depth per horizon and qubit count. With `halve`, the continuous
/// depth is halved before rounding up (the iSwap benchmark variant).
pub fn depth_table(
    p: &RuntimeParams,
    qubit_counts: &[usize],
    horizons: &[Horizon],
    halve: bool,
) -> Result<DepthTable, RuntimeError> {
    let mut rows = Vec::with_capacity(horizons.len());
    for h in horizons {
        let depths = qubit_counts
            .iter()
            .map(|&n| {
                let g = invert_depth(p, n, h.seconds)?;
                Ok(ceil_depth(if halve { g / 2.0 } else { g }))
            })
            .collect::<Result<Vec<_>, RuntimeError>>()?;
        rows.push(DepthRow { label: h.label.clone(), seconds: h.seconds, depths });
    }
    Ok(DepthTable { qubits: qubit_counts.to_vec(), halved: halve, rows })
}

impl fmt::Display for DepthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label_w = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(0).max("runtime".len());
        let headers: Vec<String> = self.qubits.iter().map(|n| format!("{n} qubits")).collect();
        write!(f, "{:<label_w$}", "runtime")?;
        for h in &headers {
            write!(f, "  {h:>10}")?;
        }
        writeln!(f)?;
        for row in &self.rows {
            write!(f, "{:<label_w$}", row.label)?;
            for d in &row.depths {
                write!(f, "  {d:>10}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
