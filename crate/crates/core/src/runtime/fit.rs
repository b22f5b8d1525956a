use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{gate_total, BenchmarkPoint, RuntimeError, RuntimeParams};

/// Smallest accepted ratio of singular values of the design matrix.
const CONDITION_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub params: RuntimeParams,
    /// Euclidean norm of the residuals in `ln(seconds)`.
    pub residual_norm: f64,
    pub points: usize,
}

/// Least squares on `ln t + ln flops = a1 ln M(n, g) + a2 (g sqrt n) ln 2`.
pub fn fit_params(points: &[BenchmarkPoint], flops: f64) -> Result<FitResult, RuntimeError> {
    if !(flops.is_finite() && flops > 0.0) {
        return Err(RuntimeError::InvalidParams(format!("flops = {flops} must be > 0")));
    }
    if points.len() < 2 {
        return Err(RuntimeError::TooFewPoints(points.len()));
    }
    let m = points.len();
    let mut design = DMatrix::<f64>::zeros(m, 2);
    let mut target = DVector::<f64>::zeros(m);
    for (i, pt) in points.iter().enumerate() {
        if pt.qubits < 2 {
            return Err(RuntimeError::TooFewQubits(pt.qubits));
        }
        let g = pt.depth as f64;
        design[(i, 0)] = gate_total(pt.qubits, g).ln();
        design[(i, 1)] = g * (pt.qubits as f64).sqrt() * std::f64::consts::LN_2;
        target[i] = pt.seconds.ln() + flops.ln();
    }

    let svd = design.clone().svd(true, true);
    let (smax, smin) = (svd.singular_values.max(), svd.singular_values.min());
    if smin.is_nan() || smin <= CONDITION_FLOOR * smax {
        return Err(RuntimeError::Degenerate(format!(
            "features ln M(n,g) and g*sqrt(n)*ln2 are collinear across the {m} points \
             (singular values {smax:e}, {smin:e}); vary qubits and depth independently"
        )));
    }
    let coef = svd
        .solve(&target, 0.0)
        .map_err(|e| RuntimeError::Degenerate(e.to_string()))?;
    let residual_norm = (&design * &coef - &target).norm();
    Ok(FitResult {
        params: RuntimeParams { a1: coef[0], a2: coef[1], flops },
        residual_norm,
        points: m,
    })
}
