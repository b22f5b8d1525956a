//! Entanglement-scaling bounds for nearest-neighbour qubit lattices.
//!
//! - [`lattice`]: grid coupling graphs and balanced min cuts.
//! - [`bounds`]: bond-dimension, gate-count and depth-interval lower bounds.
//! - [`runtime`]: the empirical classical-simulation runtime model, its
//!   inversion, fitting, depth tables and heatmap data.
//! - [`simulator`]: a small statevector simulator that checks the ebit caps on
//!   random grid circuits.

pub mod bounds;
pub mod lattice;
pub mod runtime;
pub mod simulator;

pub use bounds::{BoundReport, BoundsError, SeriesCheck};
pub use lattice::{Cut, CutMode, LatticeError, LatticeGraph, LatticeKind};
pub use runtime::{RuntimeError, RuntimeParams};
pub use simulator::SimError;
