use super::gate::{Gate, GateKind, Matrix2, C64};
use super::{Circuit, Layer, SimError};
use crate::bounds::memory_bytes;

/// Norm drift tolerated after any layer.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Dense state; qubit `q` is bit `q` of the amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0...0>`.
    pub fn zero(n: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[0] = C64::new(1.0, 0.0);
        StateVector { n, amps }
    }

    pub fn from_amplitudes(n: usize, amps: Vec<C64>) -> Result<Self, SimError> {
        if amps.len() != 1 << n {
            return Err(SimError::AmplitudeCount { n, got: amps.len() });
        }
        let s = StateVector { n, amps };
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimError::NotNormalised(norm));
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply_single(&mut self, m: &Matrix2, q: usize) {
        let stride = 1usize << q;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = m[0][0] * x + m[0][1] * y;
                *b = m[1][0] * x + m[1][1] * y;
            }
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        let mask = (1usize << a) | (1usize << b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
    }

    pub fn apply(&mut self, gate: &Gate) {
        match *gate {
            Gate::Single { kind, qubit } => {
                let m = kind.matrix().expect("single-qubit kind");
                self.apply_single(&m, qubit);
            }
            Gate::Cz(a, b) => self.apply_cz(a, b),
        }
    }

    pub fn apply_layer(&mut self, layer: &Layer) {
        for g in &layer.gates {
            self.apply(g);
        }
    }

    pub fn apply_local(&mut self, kind: GateKind, qubit: usize) {
        if let Some(m) = kind.matrix() {
            self.apply_single(&m, qubit);
        }
    }
}

/// Default statevector size limit; `ENTSCALE_MAX_QUBITS` overrides it.
pub const DEFAULT_MAX_QUBITS: usize = 20;
pub const MAX_QUBITS_ENV: &str = "ENTSCALE_MAX_QUBITS";

pub fn max_qubits_from_env() -> usize {
    std::env::var(MAX_QUBITS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_QUBITS)
}

pub(crate) fn check_limit(n: usize, max_qubits: usize) -> Result<(), SimError> {
    if n > max_qubits {
        return Err(SimError::TooManyQubits { n, limit: max_qubits, bytes: memory_bytes(n).to_string() });
    }
    Ok(())
}

/// Applies every layer to `|0...0>`, calling `hook(layer_index, layer, state)`
/// after each one.
pub fn run_with<F>(circuit: &Circuit, max_qubits: usize, mut hook: F) -> Result<StateVector, SimError>
where
    F: FnMut(usize, &Layer, &StateVector) -> Result<(), SimError>,
{
    let n = circuit.graph().n();
    check_limit(n, max_qubits)?;
    let mut state = StateVector::zero(n);
    for (i, layer) in circuit.layers().iter().enumerate() {
        state.apply_layer(layer);
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimError::NormDrift { layer: i, norm });
        }
        hook(i, layer, &state)?;
    }
    Ok(state)
}

pub fn run(circuit: &Circuit, max_qubits: usize) -> Result<StateVector, SimError> {
    run_with(circuit, max_qubits, |_, _, _| Ok(()))
}
