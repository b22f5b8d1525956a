//! Closed-form entanglement-scaling bounds.
//!
//! A balanced cut crossed by `f` edges of bond dimension `chi` can carry at
//! most `f * log2(chi)` ebits, so reaching `n/2` ebits forces
//! `log2(chi) >= n / (2f)`; spending that many entangling gates on each of the
//! `e` edges gives at least `n e / (2f)` gates. Every identity here is kept in
//! exact rationals and only converted to `f64` for reporting.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{deformed_dims, exact_sqrt, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("cut crosses no edges: a disconnected bipartition supports no ebits")]
    DegenerateCut,
    #[error("edge count {e} is smaller than the cut size {f}")]
    EdgesBelowCut { e: usize, f: usize },
    #[error("qubit count must be positive")]
    NoQubits,
    #[error("{n} is not a perfect square")]
    NotPerfectSquare { n: usize },
    #[error("grid bounds need n >= 4, got {n}")]
    GridTooSmall { n: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Lower bounds for one topology and cut.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub e: usize,
    pub f: usize,
    pub log2_chi_lb: f64,
    pub chi_lb: f64,
    pub gate_lb: f64,
    pub depth_interval: (f64, f64),
}

/// The rational core of a [`BoundReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactBounds {
    pub log2_chi_lb: BigRational,
    pub gate_lb: BigRational,
}

impl ExactBounds {
    pub fn report(&self, n: usize, e: usize, f: usize) -> BoundReport {
        let log2_chi_lb = to_f64(&self.log2_chi_lb);
        BoundReport {
            n,
            e,
            f,
            log2_chi_lb,
            chi_lb: log2_chi_lb.exp2(),
            gate_lb: to_f64(&self.gate_lb),
            depth_interval: depth_interval(n),
        }
    }
}

/// Partial sums of the Taylor expansions of the deformed-grid bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesBound {
    pub order: usize,
    /// `log2_chi_terms[s]` is the partial sum through power `s`.
    pub log2_chi_terms: Vec<f64>,
    pub gate_terms: Vec<f64>,
}

fn rat(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn prop1_exact(n: usize, e: usize, f: usize) -> Result<ExactBounds, BoundsError> {
    if n == 0 {
        return Err(BoundsError::NoQubits);
    }
    if f == 0 {
        return Err(BoundsError::DegenerateCut);
    }
    if e < f {
        return Err(BoundsError::EdgesBelowCut { e, f });
    }
    let log2_chi_lb = rat(n) / rat(2 * f);
    let gate_lb = &log2_chi_lb * rat(e);
    Ok(ExactBounds { log2_chi_lb, gate_lb })
}

/// Bond-dimension and gate-count lower bounds for `n` vertices, `e` edges and a
/// balanced cut crossed by `f` edges.
pub fn prop1_bounds(n: usize, e: usize, f: usize) -> Result<BoundReport, BoundsError> {
    Ok(prop1_exact(n, e, f)?.report(n, e, f))
}

/// Specialisation to the `sqrt(n) x sqrt(n)` grid: `chi >= 2^(sqrt(n)/2)`,
/// gates `>= n (sqrt(n) - 1)`.
pub fn grid_bounds(n: usize) -> Result<BoundReport, BoundsError> {
    let s = exact_sqrt(n).ok_or(BoundsError::NotPerfectSquare { n })?;
    if n < 4 {
        return Err(BoundsError::GridTooSmall { n });
    }
    prop1_bounds(n, 2 * s * (s - 1), s)
}

/// `2 sqrt(n)(sqrt(n) - 1) - (k^2 / sqrt(n)) (1 - k/sqrt(n))^-1`, exactly.
pub fn deformed_edge_formula(n: usize, k: usize) -> Result<BigRational, BoundsError> {
    deformed_dims(n, k)?;
    let s = rat(exact_sqrt(n).expect("checked by deformed_dims"));
    let k = rat(k);
    let x = &k / &s;
    let one = BigRational::one();
    Ok(rat(2) * &s * (&s - &one) - (&k * &k / &s) / (one - x))
}

/// Closed-form deformed-grid bounds:
/// `log2 chi >= (sqrt(n)/2)(1 - x)^-1` and
/// `gates >= n(sqrt(n) - 1)(1 - x)^-1 - (k^2/2)(1 - x)^-2` with `x = k/sqrt(n)`.
pub fn deformed_exact(n: usize, k: usize) -> Result<ExactBounds, BoundsError> {
    deformed_dims(n, k)?;
    let s = rat(exact_sqrt(n).expect("checked by deformed_dims"));
    let kr = rat(k);
    let one = BigRational::one();
    let inv = one.clone() / (one.clone() - &kr / &s);
    let log2_chi_lb = &s / rat(2) * &inv;
    let gate_lb = rat(n) * (&s - &one) * &inv - &kr * &kr / rat(2) * &inv * &inv;
    Ok(ExactBounds { log2_chi_lb, gate_lb })
}

pub fn deformed_bounds(n: usize, k: usize) -> Result<BoundReport, BoundsError> {
    let (rows, cols) = deformed_dims(n, k)?;
    let e = rows * (cols - 1) + cols * (rows - 1);
    Ok(deformed_exact(n, k)?.report(n, e, rows))
}

/// Exact partial sums `[0..=order]` of both Taylor series.
pub fn deformed_series_exact(
    n: usize,
    k: usize,
    order: usize,
) -> Result<(Vec<BigRational>, Vec<BigRational>), BoundsError> {
    deformed_dims(n, k)?;
    let s = rat(exact_sqrt(n).expect("checked by deformed_dims"));
    let x = rat(k) / &s;
    let half_s = &s / rat(2);
    let lead = rat(n) * (&s - BigRational::one());
    let k2_half = rat(k * k) / rat(2);

    let mut chi = Vec::with_capacity(order + 1);
    let mut gate = Vec::with_capacity(order + 1);
    let mut power = BigRational::one();
    let mut chi_acc = BigRational::zero();
    let mut gate_acc = BigRational::zero();
    for j in 0..=order {
        chi_acc += &half_s * &power;
        gate_acc += (&lead - &k2_half * rat(j + 1)) * &power;
        chi.push(chi_acc.clone());
        gate.push(gate_acc.clone());
        power *= &x;
    }
    Ok((chi, gate))
}

pub fn deformed_bounds_series(n: usize, k: usize, order: usize) -> Result<SeriesBound, BoundsError> {
    let (chi, gate) = deformed_series_exact(n, k, order)?;
    Ok(SeriesBound {
        order,
        log2_chi_terms: chi.iter().map(to_f64).collect(),
        gate_terms: gate.iter().map(to_f64).collect(),
    })
}

/// Tail bounds after truncating at `order`: `(chi, gate)`.
///
/// The chi tail is geometric, so `first omitted term / (1 - x)` is exact. The
/// gate terms are `(A - B(j+1)) x^j`; their absolute tail is bounded by
/// `A x^m/(1-x) + B x^m ((m+1)/(1-x) + x/(1-x)^2)` with `m = order + 1`.
pub fn deformed_series_tail_bounds(
    n: usize,
    k: usize,
    order: usize,
) -> Result<(BigRational, BigRational), BoundsError> {
    deformed_dims(n, k)?;
    let s = rat(exact_sqrt(n).expect("checked by deformed_dims"));
    let x = rat(k) / &s;
    let one = BigRational::one();
    let q = &one - &x;
    let m = order + 1;
    let xm = pow(&x, m);
    let chi_tail = &s / rat(2) * &xm / &q;
    let a = rat(n) * (&s - &one);
    let b = rat(k * k) / rat(2);
    let gate_tail = &a * &xm / &q + b * &xm * (rat(m + 1) / &q + &x / (&q * &q));
    Ok((chi_tail, gate_tail))
}

/// Partial sums against the closed forms over orders `0..=max_order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub n: usize,
    pub k: usize,
    pub max_order: usize,
    /// `|chi error|` never increases with the order.
    pub chi_monotone: bool,
    pub chi_within_tail: bool,
    /// `|gate error|` never increases once the terms turn negative.
    pub gate_monotone: bool,
    pub gate_within_tail: bool,
}

impl SeriesCheck {
    pub fn passed(&self) -> bool {
        self.chi_monotone && self.chi_within_tail && self.gate_monotone && self.gate_within_tail
    }
}

pub fn series_check(n: usize, k: usize, max_order: usize) -> Result<SeriesCheck, BoundsError> {
    let closed = deformed_exact(n, k)?;
    let (chi, gate) = deformed_series_exact(n, k, max_order)?;
    let s = exact_sqrt(n).expect("checked by deformed_exact");
    // Terms (A - B(j+1)) x^j are negative from this index on.
    let first_negative = if k == 0 { usize::MAX } else { (2 * n * (s - 1)) / (k * k) };

    let mut out = SeriesCheck {
        n,
        k,
        max_order,
        chi_monotone: true,
        chi_within_tail: true,
        gate_monotone: true,
        gate_within_tail: true,
    };
    let mut prev: Option<(BigRational, BigRational)> = None;
    for order in 0..=max_order {
        let chi_err = (&closed.log2_chi_lb - &chi[order]).abs();
        let gate_err = (&closed.gate_lb - &gate[order]).abs();
        let (chi_tail, gate_tail) = deformed_series_tail_bounds(n, k, order)?;
        out.chi_within_tail &= chi_err <= chi_tail;
        out.gate_within_tail &= gate_err <= gate_tail;
        if let Some((pc, pg)) = &prev {
            out.chi_monotone &= chi_err <= *pc;
            if order >= first_negative {
                out.gate_monotone &= gate_err <= *pg;
            }
        }
        prev = Some((chi_err, gate_err));
    }
    Ok(out)
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// Depth window `(sqrt(4n), 8 sqrt(n))`: stacked entangling layers at the low
/// end, a further factor of four for interleaved local gates at the high end.
pub fn depth_interval(n: usize) -> (f64, f64) {
    let n = n as f64;
    ((4.0 * n).sqrt(), 8.0 * n.sqrt())
}

/// Ebits a depth-`g` circuit on `n` qubits can place across a balanced cut.
pub fn ebit_cap(n: usize, g: usize) -> usize {
    n.div_ceil(2).min(g)
}

/// Bytes to store a dense `n`-qubit state: `2^(n+1) * 16`.
pub fn memory_bytes(n: usize) -> BigUint {
    BigUint::one() << (n + 5)
}
