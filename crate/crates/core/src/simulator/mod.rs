//! Statevector simulation of random nearest-neighbour circuits on grids, with
//! Schmidt analysis across balanced cuts after every layer.

mod circuit;
mod gate;
mod schmidt;
mod state;
mod verify;

use thiserror::Error;

use crate::lattice::LatticeError;

pub use circuit::{build_random_circuit, cz_pattern, layer_rng, Circuit, Layer};
pub use gate::{Gate, GateKind, Matrix2, C64};
pub use schmidt::{
    entropy_ebits, local_gate_invariance_check, schmidt_rank, schmidt_spectrum, SchmidtSpectrum, ENTROPY_CUTOFF,
    RANK_TOLERANCE,
};
pub use state::{max_qubits_from_env, run, run_with, StateVector, DEFAULT_MAX_QUBITS, MAX_QUBITS_ENV, NORM_TOLERANCE};
pub use verify::{
    read_records_csv, suite_cuts, verify_caps, write_records_csv, write_records_file, CapSummary, CheckKind,
    CheckTally, EbitRecord, VerifyOptions, Violation, ENTROPY_SLACK, INVARIANCE_TOLERANCE, RECORD_HEADER,
    WEIGHT_SLACK,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("random circuits need a grid lattice, not a custom graph")]
    UnsupportedTopology,
    #[error("{n} qubits exceed the simulator limit of {limit} (statevector needs {bytes} bytes); raise it with --max-qubits or ENTSCALE_MAX_QUBITS")]
    TooManyQubits { n: usize, limit: usize, bytes: String },
    #[error("cut covers {cut} qubits but the state has {state}")]
    CutMismatch { cut: usize, state: usize },
    #[error("norm drifted to {norm} after layer {layer}")]
    NormDrift { layer: usize, norm: f64 },
    #[error("a {n}-qubit state needs {} amplitudes, got {got}", 1usize << n)]
    AmplitudeCount { n: usize, got: usize },
    #[error("amplitudes have norm {0}, expected 1")]
    NotNormalised(f64),
    #[error("layer {layer}: CZ on ({a}, {b}) is not a lattice edge")]
    NotAnEdge { layer: usize, a: usize, b: usize },
    #[error("layer {layer}: CZ must act on two qubits")]
    InvalidGate { layer: usize },
    #[error("layer {layer}: qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { layer: usize, qubit: usize, n: usize },
    #[error("layer {layer}: qubit {qubit} acted on twice")]
    Overlap { layer: usize, qubit: usize },
    #[error("{0:?} is not a single-qubit gate")]
    NotLocal(GateKind),
    #[error("singular value decomposition did not converge: {0}")]
    Svd(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("report line {line}: {msg}")]
    Report { line: u64, msg: String },
    #[error("report i/o: {0}")]
    Io(String),
}
