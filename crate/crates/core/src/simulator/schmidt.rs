use ndarray::Array2;
use ndarray_linalg::SVD;
use serde::Serialize;

use super::gate::{GateKind, C64};
use super::{SimError, StateVector};
use crate::lattice::Cut;

/// Relative singular-value threshold for counting Schmidt rank.
pub const RANK_TOLERANCE: f64 = 1e-10;
/// Squared singular values below this contribute nothing to the entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-24;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtSpectrum {
    pub cut: Cut,
    /// Descending.
    pub values: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn weight(&self) -> f64 {
        self.values.iter().map(|s| s * s).sum()
    }
}

/// Bit positions of each side; row index uses side A's qubits in ascending
/// order, column index side B's.
fn reshape(state: &StateVector, cut: &Cut) -> Result<Array2<C64>, SimError> {
    if cut.n() != state.n() {
        return Err(SimError::CutMismatch { cut: cut.n(), state: state.n() });
    }
    let (a, b) = (cut.side_a(), cut.side_b());
    let spread = |bits: &[usize], x: usize| -> usize {
        bits.iter().enumerate().fold(0, |acc, (j, &q)| acc | (((x >> j) & 1) << q))
    };
    let row_offsets: Vec<usize> = (0..1usize << a.len()).map(|r| spread(a, r)).collect();
    let col_offsets: Vec<usize> = (0..1usize << b.len()).map(|c| spread(b, c)).collect();
    let amps = state.amplitudes();
    Ok(Array2::from_shape_fn((row_offsets.len(), col_offsets.len()), |(r, c)| {
        amps[row_offsets[r] | col_offsets[c]]
    }))
}

/// Sets flush-to-zero and denormals-are-zero on this thread until dropped.
///
/// Low-rank Schmidt matrices (product states in particular) push the
/// bidiagonal QR sweep through subnormal numbers, which runs about a hundred
/// times slower on x86. Nothing below 1e-300 matters to rank or entropy.
struct FlushSubnormals {
    #[cfg(target_arch = "x86_64")]
    saved: u32,
}

impl FlushSubnormals {
    #[allow(deprecated)]
    fn enable() -> Self {
        #[cfg(target_arch = "x86_64")]
        {
            use std::arch::x86_64::{_mm_getcsr, _mm_setcsr};
            // SAFETY: only the FTZ (bit 15) and DAZ (bit 6) flags change.
            let saved = unsafe { _mm_getcsr() };
            unsafe { _mm_setcsr(saved | 0x8040) };
            FlushSubnormals { saved }
        }
        #[cfg(not(target_arch = "x86_64"))]
        FlushSubnormals {}
    }
}

impl Drop for FlushSubnormals {
    #[allow(deprecated)]
    fn drop(&mut self) {
        #[cfg(target_arch = "x86_64")]
        // SAFETY: restores the control word read in `enable`.
        unsafe {
            std::arch::x86_64::_mm_setcsr(self.saved)
        };
    }
}

pub fn schmidt_spectrum(state: &StateVector, cut: &Cut) -> Result<SchmidtSpectrum, SimError> {
    let m = reshape(state, cut)?;
    let sigma = {
        let _ftz = FlushSubnormals::enable();
        m.svd(false, false).map_err(|e| SimError::Svd(e.to_string()))?.1
    };
    let mut values = sigma.to_vec();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(SchmidtSpectrum { cut: cut.clone(), values })
}

/// Von Neumann entropy of the reduced state, in ebits.
pub fn entropy_ebits(spectrum: &SchmidtSpectrum) -> f64 {
    let h: f64 = spectrum
        .values
        .iter()
        .map(|s| s * s)
        .filter(|&p| p >= ENTROPY_CUTOFF)
        .map(|p| -p * p.log2())
        .sum();
    h.max(0.0)
}

pub fn schmidt_rank(spectrum: &SchmidtSpectrum, tol: f64) -> usize {
    let top = spectrum.values.first().copied().unwrap_or(0.0);
    spectrum.values.iter().filter(|&&s| s > tol * top).count()
}

/// Largest change in the sorted Schmidt values after applying a single-qubit
/// gate to `qubit`.
pub fn local_gate_invariance_check(
    state: &StateVector,
    cut: &Cut,
    kind: GateKind,
    qubit: usize,
) -> Result<f64, SimError> {
    if !kind.is_local() {
        return Err(SimError::NotLocal(kind));
    }
    if qubit >= state.n() {
        return Err(SimError::QubitOutOfRange { layer: 0, qubit, n: state.n() });
    }
    let before = schmidt_spectrum(state, cut)?;
    let mut moved = state.clone();
    moved.apply_local(kind, qubit);
    let after = schmidt_spectrum(&moved, cut)?;
    Ok(max_deviation(&before.values, &after.values))
}

pub(crate) fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}
