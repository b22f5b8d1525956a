//! Fixtures shared by the benchmarks.

use entscale::lattice::{build_grid, min_balanced_cut, Cut, CutMode, LatticeGraph};
use entscale::simulator::{build_random_circuit, run, StateVector};

/// A `rows x cols` grid, its exact min cut and the state after a depth-`depth`
/// random circuit.
pub fn entangled_fixture(rows: usize, cols: usize, depth: usize) -> (LatticeGraph, Cut, StateVector) {
    let graph = build_grid(rows, cols).expect("grid");
    let cut = min_balanced_cut(&graph, CutMode::Exact).expect("cut");
    let circuit = build_random_circuit(&graph, depth, 1).expect("circuit");
    let state = run(&circuit, 24).expect("run");
    (graph, cut, state)
}
