//! Graph states, graph-basis eigenstates, Hamiltonians, and thermal states.
//!
//! Thermal states are never built by matrix exponentiation. A thermal state
//! of a graph Hamiltonian equals the graph state dephased qubit by qubit
//! with probabilities `p_i = 2 / (1 + exp(B_i / T))`, so the construction is
//! a row of Kraus pairs on `|+><+|^n` followed by one CZ conjugation per
//! edge: `O(4^n)` work and no eigendecomposition. The exponential route
//! survives only inside [`equivalence_check`], where it serves as the
//! independent oracle for that identity.

use num_complex::Complex64;
use serde::Serialize;

use crate::densop::{self, DensityMatrix, StateVector};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph accepted by [`equivalence_check`] (the spectral oracle
/// diagonalizes the full Hamiltonian with eigenvectors).
pub const EQUIVALENCE_CHECK_MAX_QUBITS: usize = 8;

/// Temperatures below `1e-9 * min(B_i)` are snapped to the exact `T = 0`
/// path instead of evaluating `exp(B/T)`.
const ZERO_TEMPERATURE_SNAP: f64 = 1e-9;

/// Dephasing probability `p = 2 / (1 + exp(B/T))` of a qubit with coupling
/// `B` at temperature `T`. `p(0) = 0` as the limit, and `p -> 1` as
/// `T -> infinity`.
pub fn dephasing_probability(b: f64, t: f64) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::NonPositiveCoupling(b));
    }
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTemperature(t));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let x = b / t;
    if x > 700.0 {
        // exp(x) would overflow; same value in underflow-safe form.
        let em = (-x).exp();
        Ok(2.0 * em / (1.0 + em))
    } else {
        Ok(2.0 / (1.0 + x.exp()))
    }
}

/// Which qubits carry a `Z` dressing on top of the ground graph state; the
/// bit string indexing the Hamiltonian eigenbasis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcitationPattern {
    bits: Vec<bool>,
}

impl ExcitationPattern {
    pub fn new(bits: Vec<bool>) -> Self {
        ExcitationPattern { bits }
    }

    /// Pattern from a basis index under the MSB-first qubit convention.
    pub fn from_index(n: usize, index: usize) -> Self {
        let bits = (0..n).map(|q| index & (1 << (n - 1 - q)) != 0).collect();
        ExcitationPattern { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Eigenenergy of this pattern: `-(1/2) sum_i B_i (-1)^{mu_i}`.
    pub fn energy(&self, g: &Graph) -> Result<f64> {
        if self.bits.len() != g.n() {
            return Err(Error::PatternLengthMismatch { expected: g.n(), got: self.bits.len() });
        }
        Ok(self
            .bits
            .iter()
            .zip(g.couplings())
            .map(|(&bit, &b)| if bit { 0.5 * b } else { -0.5 * b })
            .sum())
    }
}

/// `|+>^n` followed by one CZ per edge. All CZ gates commute, so the edge
/// order is irrelevant.
pub fn graph_state_vector(g: &Graph) -> Result<StateVector> {
    let mut state = StateVector::plus_product(g.n())?;
    for &(a, b) in g.edges() {
        state.apply_cz(a, b)?;
    }
    Ok(state)
}

/// Graph-basis eigenstate: `Z^{mu_i}` applied per qubit to the graph state.
/// Distinct patterns give orthogonal states.
pub fn excited_graph_state(g: &Graph, mu: &ExcitationPattern) -> Result<StateVector> {
    if mu.len() != g.n() {
        return Err(Error::PatternLengthMismatch { expected: g.n(), got: mu.len() });
    }
    let mut state = graph_state_vector(g)?;
    for (qubit, &bit) in mu.bits().iter().enumerate() {
        if bit {
            state.apply_z(qubit)?;
        }
    }
    Ok(state)
}

/// Dense Hamiltonian `H = -(1/2) sum_i B_i X_i (x) Z_{neighbors(i)}`.
/// All terms commute; the ground energy is `-(1/2) sum_i B_i`.
pub fn hamiltonian_operator(g: &Graph) -> Result<DensityMatrix> {
    let n = g.n();
    // Probe the cap through the cheap constructor before allocating 4^n.
    StateVector::plus_product(n)?;
    let dim = 1usize << n;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..n {
        let flip = densop::qubit_bit(n, i);
        let mut neighbor_mask = 0usize;
        for j in g.neighbors(i) {
            neighbor_mask |= densop::qubit_bit(n, j);
        }
        let weight = -0.5 * g.coupling(i);
        for col in 0..dim {
            let row = col ^ flip;
            let sign = if (col & neighbor_mask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            entries[row * dim + col] += Complex64::new(weight * sign, 0.0);
        }
    }
    DensityMatrix::from_entries(n, entries)
}

/// Thermal state of the graph Hamiltonian at temperature `t >= 0`, built by
/// dephasing `|+><+|^n` and conjugating with the CZ layer. Trace-preserving
/// by construction; `t = 0` returns the pure graph-state projector.
pub fn thermal_state(g: &Graph, t: f64) -> Result<DensityMatrix> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTemperature(t));
    }
    let min_coupling = g.couplings().iter().copied().fold(f64::INFINITY, f64::min);
    let t_eff = if t < ZERO_TEMPERATURE_SNAP * min_coupling { 0.0 } else { t };

    let mut rho = StateVector::plus_product(g.n())?.outer_product();
    for (qubit, &b) in g.couplings().iter().enumerate() {
        rho.apply_dephasing(qubit, dephasing_probability(b, t_eff)?)?;
    }
    for &(a, b) in g.edges() {
        rho.apply_cz(a, b)?;
    }
    Ok(rho)
}

/// Locally dephased graph state: the channel row applied after the CZ layer,
/// with an explicit probability per qubit. The channel order is irrelevant.
pub fn dephased_graph_state(g: &Graph, probs: &[f64]) -> Result<DensityMatrix> {
    if probs.len() != g.n() {
        return Err(Error::PatternLengthMismatch { expected: g.n(), got: probs.len() });
    }
    let mut rho = graph_state_vector(g)?.outer_product();
    for (qubit, &p) in probs.iter().enumerate() {
        rho.apply_dephasing(qubit, p)?;
    }
    Ok(rho)
}

/// Result of comparing the spectral and dephasing constructions.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub trace_distance: f64,
    pub pass: bool,
}

/// Build the thermal state two independent ways and report their trace
/// distance: (a) diagonalize the Hamiltonian and normalize `exp(-H/T)`;
/// (b) the dephasing construction. Requires `t > 0` and at most
/// [`EQUIVALENCE_CHECK_MAX_QUBITS`] qubits.
pub fn equivalence_check(g: &Graph, t: f64, tol: f64) -> Result<EquivalenceReport> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTemperature(t));
    }
    if g.n() > EQUIVALENCE_CHECK_MAX_QUBITS {
        return Err(Error::CapExceeded { qubits: g.n(), cap: EQUIVALENCE_CHECK_MAX_QUBITS });
    }

    // Route (a): spectral. Energies are shifted by the ground energy before
    // exponentiating so large B/T cannot overflow.
    let hamiltonian = hamiltonian_operator(g)?;
    let (vals, vecs) = densop::jacobi_eigh(&hamiltonian)?;
    let dim = 1usize << g.n();
    let ground = vals[0];
    let weights: Vec<f64> = vals.iter().map(|&e| (-(e - ground) / t).exp()).collect();
    let partition: f64 = weights.iter().sum();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..dim {
                acc += vecs[r * dim + k] * (weights[k] / partition) * vecs[c * dim + k].conj();
            }
            entries[r * dim + c] = acc;
        }
    }
    let spectral = DensityMatrix::from_entries(g.n(), entries)?;

    // Route (b): dephasing.
    let probs: Vec<f64> = g
        .couplings()
        .iter()
        .map(|&b| dephasing_probability(b, t))
        .collect::<Result<_>>()?;
    let dephased = dephased_graph_state(g, &probs)?;

    let trace_distance = densop::trace_distance(&spectral, &dephased)?;
    Ok(EquivalenceReport { trace_distance, pass: trace_distance < tol })
}
