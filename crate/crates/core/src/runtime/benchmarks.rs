use std::path::Path;

use serde::{Deserialize, Serialize};

use super::RuntimeError;

pub const BENCHMARK_HEADER: [&str; 5] = ["source", "qubits", "depth", "seconds", "amplitudes"];

/// One published classical simulation time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkPoint {
    pub source: String,
    pub qubits: usize,
    pub depth: u64,
    pub seconds: f64,
    /// e.g. `single` or `all`.
    pub amplitudes: String,
}

pub fn ingest_benchmarks(path: impl AsRef<Path>) -> Result<Vec<BenchmarkPoint>, RuntimeError> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| RuntimeError::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_benchmarks(&text)
}

pub fn parse_benchmarks(text: &str) -> Result<Vec<BenchmarkPoint>, RuntimeError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| RuntimeError::Schema { line: 1, msg: e.to_string() })?;
    let found: Vec<&str> = header.iter().collect();
    if found != BENCHMARK_HEADER {
        return Err(RuntimeError::Schema {
            line: 1,
            msg: format!("expected header `{}`, found `{}`", BENCHMARK_HEADER.join(","), found.join(",")),
        });
    }

    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| RuntimeError::Schema {
            line: e.position().map_or(0, |p| p.line()),
            msg: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let err = |msg: String| RuntimeError::Schema { line, msg };
        if record.len() != BENCHMARK_HEADER.len() {
            return Err(err(format!(
                "expected {} columns, found {}",
                BENCHMARK_HEADER.len(),
                record.len()
            )));
        }
        let qubits: usize = record[1]
            .parse()
            .map_err(|_| err(format!("qubits `{}` is not a non-negative integer", &record[1])))?;
        let depth: u64 = record[2]
            .parse()
            .map_err(|_| err(format!("depth `{}` is not a non-negative integer", &record[2])))?;
        let seconds: f64 =
            record[3].parse().map_err(|_| err(format!("seconds `{}` is not a number", &record[3])))?;
        if qubits < 1 {
            return Err(err("qubits must be >= 1".into()));
        }
        if depth < 1 {
            return Err(err("depth must be >= 1".into()));
        }
        if !(seconds.is_finite() && seconds > 0.0) {
            return Err(err(format!("seconds must be positive, got {seconds}")));
        }
        points.push(BenchmarkPoint {
            source: record[0].to_string(),
            qubits,
            depth,
            seconds,
            amplitudes: record[4].to_string(),
        });
    }
    Ok(points)
}
