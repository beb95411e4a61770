//! Thermal graph states and their entanglement.
//!
//! Builds thermal states of graph-state Hamiltonians through the local
//! dephasing construction, computes bipartite negativities on
//! boundary-reduced problems, solves critical separability temperatures in
//! closed form and numerically, and reports bound-entanglement temperature
//! windows.
//!
//! Modules:
//! - [`graph`]: graphs, couplings, bipartitions, boundary reduction.
//! - [`densop`]: dense state-vector / density-matrix kernel with Hermitian
//!   eigenvalues.
//! - [`states`]: graph states, Hamiltonians, thermal and dephased states,
//!   spectral equivalence check.
//! - [`entanglement`]: negativities, critical temperatures, sweeps, windows.

pub mod densop;
mod eigen;
pub mod entanglement;
pub mod error;
pub mod graph;
pub mod states;

pub use error::{Error, Result};
