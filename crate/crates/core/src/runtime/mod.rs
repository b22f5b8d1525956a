//! Classical-simulation runtime model
//! `t(n, g) = M(n, g)^a1 * 2^(a2 g sqrt(n)) / flops`, with
//! `M(n, g) = 2 (sqrt(n) - 1) sqrt(n) g` the number of couplers times depth.
//!
//! Everything is evaluated on `ln t`; `(144, 100)` already overflows `f64`
//! seconds for moderately larger parameters, and the inversion and fit are
//! naturally linear in log space.

mod benchmarks;
mod fit;
mod heatmap;
mod table;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use benchmarks::{ingest_benchmarks, parse_benchmarks, BenchmarkPoint, BENCHMARK_HEADER};
pub use fit::{fit_params, FitResult};
pub use heatmap::{
    heatmap, read_contours_csv, read_heatmap_csv, read_interval_csv, write_heatmap_dir,
    ContourPoint, HeatCell, HeatmapData, IntervalPoint, CONTOURS_FILE, HEATMAP_FILE,
    INTERVAL_FILE,
};
pub use table::{depth_table, standard_horizons, DepthRow, DepthTable, Horizon, MONTH, YEAR};

/// Bisection bracket upper end for the depth.
pub const MAX_DEPTH: f64 = 1_048_576.0;
const BISECTION_ITERS: usize = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RuntimeError {
    #[error("runtime model needs at least 2 qubits, got {0}")]
    TooFewQubits(usize),
    #[error("depth must be positive and finite, got {0}")]
    InvalidDepth(f64),
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("target runtime 10^{target_log10:.6} s is below the depth-1 runtime 10^{min_log10:.6} s")]
    BelowRange { target_log10: f64, min_log10: f64 },
    #[error("target runtime 10^{target_log10:.6} s exceeds the runtime at depth {MAX_DEPTH}")]
    AboveRange { target_log10: f64 },
    #[error("a1 = a2 = 0 gives a depth-independent runtime; nothing to invert")]
    NotInvertible,
    #[error("invalid target runtime {0} s")]
    InvalidTarget(f64),
    #[error("fit needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error("empty range: {0}")]
    EmptyRange(String),
    #[error("line {line}: {msg}")]
    Schema { line: u64, msg: String },
    #[error("i/o: {0}")]
    Io(String),
}

/// Exponents of the runtime model and the machine speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuntimeParams {
    pub a1: f64,
    pub a2: f64,
    /// Floating-point operations per second.
    pub flops: f64,
}

impl RuntimeParams {
    /// Fit against single-amplitude simulations on a 1e17 flop/s machine.
    pub const PAPER: RuntimeParams = RuntimeParams { a1: 4.36063901, a2: 0.04315488, flops: 1e17 };

    pub fn new(a1: f64, a2: f64, flops: f64) -> Result<Self, RuntimeError> {
        let p = RuntimeParams { a1, a2, flops };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), RuntimeError> {
        if !(self.a1.is_finite() && self.a1 >= 0.0) {
            return Err(RuntimeError::InvalidParams(format!("a1 = {} must be >= 0", self.a1)));
        }
        if !(self.a2.is_finite() && self.a2 >= 0.0) {
            return Err(RuntimeError::InvalidParams(format!("a2 = {} must be >= 0", self.a2)));
        }
        if !(self.flops.is_finite() && self.flops > 0.0) {
            return Err(RuntimeError::InvalidParams(format!("flops = {} must be > 0", self.flops)));
        }
        Ok(())
    }
}

impl Default for RuntimeParams {
    fn default() -> Self {
        RuntimeParams::PAPER
    }
}

/// A runtime held as its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RuntimeEstimate {
    pub ln_seconds: f64,
}

impl RuntimeEstimate {
    /// Seconds, when representable as a finite `f64`.
    pub fn seconds(&self) -> Option<f64> {
        let t = self.ln_seconds.exp();
        (t.is_finite() && t > 0.0).then_some(t)
    }

    pub fn log10_seconds(&self) -> f64 {
        self.ln_seconds / std::f64::consts::LN_10
    }

    pub fn is_representable(&self) -> bool {
        self.seconds().is_some()
    }
}

/// `M(n, g) = 2 (sqrt(n) - 1) sqrt(n) g`, with real `sqrt(n)`.
pub fn gate_total(n: usize, g: f64) -> f64 {
    let s = (n as f64).sqrt();
    2.0 * (s - 1.0) * s * g
}

fn check_inputs(n: usize, g: f64) -> Result<(), RuntimeError> {
    if n < 2 {
        return Err(RuntimeError::TooFewQubits(n));
    }
    if !(g.is_finite() && g > 0.0) {
        return Err(RuntimeError::InvalidDepth(g));
    }
    Ok(())
}

fn ln_runtime(p: &RuntimeParams, n: usize, g: f64) -> f64 {
    let s = (n as f64).sqrt();
    p.a1 * gate_total(n, g).ln() + p.a2 * g * s * std::f64::consts::LN_2 - p.flops.ln()
}

pub fn eval_runtime(p: &RuntimeParams, n: usize, g: f64) -> Result<RuntimeEstimate, RuntimeError> {
    check_inputs(n, g)?;
    Ok(RuntimeEstimate { ln_seconds: ln_runtime(p, n, g) })
}

/// Depth whose runtime equals `t_seconds`.
pub fn invert_depth(p: &RuntimeParams, n: usize, t_seconds: f64) -> Result<f64, RuntimeError> {
    if !(t_seconds.is_finite() && t_seconds > 0.0) {
        return Err(RuntimeError::InvalidTarget(t_seconds));
    }
    invert_depth_ln(p, n, t_seconds.ln())
}

/// As [`invert_depth`] with the target given as `ln(seconds)`, for targets
/// beyond `f64` range.
pub fn invert_depth_ln(p: &RuntimeParams, n: usize, ln_target: f64) -> Result<f64, RuntimeError> {
    check_inputs(n, 1.0)?;
    if !ln_target.is_finite() {
        return Err(RuntimeError::InvalidTarget(ln_target.exp()));
    }
    if p.a1 == 0.0 && p.a2 == 0.0 {
        return Err(RuntimeError::NotInvertible);
    }
    let residual = |g: f64| ln_runtime(p, n, g) - ln_target;
    let to_log10 = |ln: f64| ln / std::f64::consts::LN_10;

    let at_one = residual(1.0);
    if at_one > 1e-12 * ln_target.abs().max(1.0) {
        return Err(RuntimeError::BelowRange {
            target_log10: to_log10(ln_target),
            min_log10: to_log10(ln_target + at_one),
        });
    }
    if at_one >= 0.0 {
        return Ok(1.0);
    }
    if residual(MAX_DEPTH) < 0.0 {
        return Err(RuntimeError::AboveRange { target_log10: to_log10(ln_target) });
    }

    let (mut lo, mut hi) = (1.0f64, MAX_DEPTH);
    for _ in 0..BISECTION_ITERS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if residual(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Both ends agree to the last ulp; take the one with the smaller residual.
    Ok(if residual(lo).abs() <= residual(hi).abs() { lo } else { hi })
}

/// Continuous depths within this distance of an integer count as that integer
/// before rounding up, so `achievable_depth(eval_runtime(g)) == g`.
const SNAP: f64 = 1e-9;

pub(crate) fn ceil_depth(g: f64) -> u64 {
    let r = g.round();
    if (g - r).abs() <= SNAP * g.max(1.0) {
        r as u64
    } else {
        g.ceil() as u64
    }
}

/// Largest depth simulable within `t_seconds`, rounded up to an integer.
pub fn achievable_depth(p: &RuntimeParams, n: usize, t_seconds: f64) -> Result<u64, RuntimeError> {
    invert_depth(p, n, t_seconds).map(ceil_depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: RuntimeParams = RuntimeParams::PAPER;

    #[test]
    fn gate_total_examples() {
        assert_eq!(gate_total(49, 10.0), 840.0);
        assert_eq!(gate_total(4, 1.0), 4.0);
        // 150 * (50 - sqrt 50)
        let want = 150.0 * (50.0 - 50f64.sqrt());
        assert!((gate_total(50, 75.0) - want).abs() < 1e-9);
        assert!((gate_total(50, 75.0) - 6439.339).abs() < 1e-3);
    }

    #[test]
    fn frontier_brackets_one_month_at_fifty_qubits() {
        let t75 = eval_runtime(&P, 50, 75.0).unwrap().seconds().unwrap();
        assert!(t75 > MONTH && t75 < YEAR, "{t75}");
        let t74 = eval_runtime(&P, 50, 74.0).unwrap().seconds().unwrap();
        assert!(t74 < MONTH, "{t74}");
    }

    #[test]
    fn degenerate_params_give_unit_runtime() {
        let p = RuntimeParams::new(0.0, 0.0, 1.0).unwrap();
        for (n, g) in [(2, 1.0), (50, 75.0), (1000, 1e5)] {
            assert_eq!(eval_runtime(&p, n, g).unwrap().seconds(), Some(1.0));
        }
        assert_eq!(invert_depth(&p, 50, 1.0), Err(RuntimeError::NotInvertible));
    }

    #[test]
    fn log_space_matches_direct_evaluation() {
        for n in [2usize, 9, 50, 72, 100] {
            for g in [1.0, 5.0, 20.0, 60.0] {
                let direct = 1e-17 * gate_total(n, g).powf(P.a1) * 2f64.powf(P.a2 * g * (n as f64).sqrt());
                let t = eval_runtime(&P, n, g).unwrap().seconds().unwrap();
                assert!((t / direct - 1.0).abs() < 1e-12, "{n} {g}: {t} vs {direct}");
            }
        }
    }

    #[test]
    fn overflow_is_reported_in_log_form() {
        let p = RuntimeParams::new(4.0, 2.0, 1e17).unwrap();
        let est = eval_runtime(&p, 144, 100.0).unwrap();
        assert!(!est.is_representable());
        assert!(est.log10_seconds() > 308.0);
    }

    #[test]
    fn input_validation() {
        assert_eq!(eval_runtime(&P, 1, 3.0), Err(RuntimeError::TooFewQubits(1)));
        assert!(matches!(eval_runtime(&P, 4, 0.0), Err(RuntimeError::InvalidDepth(_))));
        assert!(RuntimeParams::new(-1.0, 0.1, 1e17).is_err());
        assert!(RuntimeParams::new(1.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn inversion_examples() {
        let t40 = eval_runtime(&P, 50, 40.0).unwrap().seconds().unwrap();
        assert!((invert_depth(&P, 50, t40).unwrap() - 40.0).abs() < 1e-6);

        let g = invert_depth(&P, 50, MONTH).unwrap();
        assert!(g > 74.0 && g <= 75.0, "{g}");
        let g = invert_depth(&P, 72, MONTH).unwrap();
        assert!(g > 59.0 && g <= 60.0, "{g}");
    }

    #[test]
    fn inversion_residual_is_tiny() {
        for t in [1e3, MONTH, YEAR, 1e12] {
            let g = invert_depth(&P, 60, t).unwrap();
            let back = eval_runtime(&P, 60, g).unwrap().seconds().unwrap();
            assert!((back / t - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn inversion_range_errors() {
        let t1 = eval_runtime(&P, 50, 1.0).unwrap().seconds().unwrap();
        assert!(matches!(invert_depth(&P, 50, t1 / 2.0), Err(RuntimeError::BelowRange { .. })));
        assert_eq!(invert_depth(&P, 50, t1).unwrap(), 1.0);
        assert!(matches!(invert_depth_ln(&P, 50, 1e9), Err(RuntimeError::AboveRange { .. })));
    }

    #[test]
    fn achievable_examples() {
        assert_eq!(achievable_depth(&P, 50, YEAR).unwrap(), 84);
        assert_eq!(achievable_depth(&P, 72, 100.0 * YEAR).unwrap(), 82);
        assert_eq!(achievable_depth(&P, 50, 10.0 * YEAR).unwrap(), 93);
    }

    #[test]
    fn achievable_depth_steps_at_integer_runtimes() {
        for n in [9usize, 50, 72] {
            for g in 1..=120u64 {
                let t = eval_runtime(&P, n, g as f64).unwrap().seconds().unwrap();
                assert_eq!(achievable_depth(&P, n, t).unwrap(), g);
                if g > 1 {
                    assert_eq!(achievable_depth(&P, n, t * (1.0 - 1e-6)).unwrap(), g);
                }
                assert_eq!(achievable_depth(&P, n, t * (1.0 + 1e-6)).unwrap(), g + 1);
            }
        }
    }

    #[test]
    fn runtime_is_strictly_increasing() {
        let h = 1e-3;
        for n in (2..=200).step_by(3) {
            for g in (1..=150).step_by(7) {
                let g = g as f64;
                let here = eval_runtime(&P, n, g).unwrap().ln_seconds;
                assert!(eval_runtime(&P, n, g + h).unwrap().ln_seconds > here);
                assert!(eval_runtime(&P, n + 1, g).unwrap().ln_seconds > here);
            }
        }
    }
}
