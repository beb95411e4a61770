//! Negativity of thermal graph states, critical temperatures, temperature
//! sweeps, and bound-entanglement windows.
//!
//! Everything here runs on the boundary-reduced problem whenever the caller
//! allows it, so the cost of a sweep depends on the boundary size, not on
//! the number of qubits in the original graph.

use rayon::prelude::*;
use serde::Serialize;

use crate::densop::{DensityMatrix, MAX_DENSE_QUBITS};
use crate::error::{Error, Result};
use crate::graph::{boundary_reduce, Bipartition, BoundaryReduction, Graph, ReducedProblem};
use crate::states::thermal_state;

/// Eigenvalues of a partial transpose below minus this count as negative.
/// Two orders above the eigensolver tolerance, so a state that has just
/// turned separable does not show spurious negativity.
pub const NEGATIVITY_ZERO_THRESHOLD: f64 = 1e-10;

/// Default coarse-grid resolution used to bracket the largest zero crossing.
pub const DEFAULT_TC_GRID_POINTS: usize = 200;

const PAIR_BISECTION_REL_TOL: f64 = 1e-10;
const NUMERIC_BISECTION_ABS_TOL: f64 = 1e-9;

/// Sum of the magnitudes of the negative eigenvalues of the partial
/// transpose of `rho` over side A. Transposing side B instead gives the
/// same spectrum, so the choice of side does not matter.
pub fn negativity(rho: &DensityMatrix, p: &Bipartition) -> Result<f64> {
    if p.n() != rho.n_qubits() {
        return Err(Error::DimensionMismatch { expected: rho.n_qubits(), got: p.n() });
    }
    let pt = rho.partial_transpose(p.side_a())?;
    let spectrum = pt.hermitian_eigenvalues()?;
    // Explicit fold from +0.0: an empty `Sum` would yield -0.0.
    let mut total = 0.0;
    for &x in spectrum.eigenvalues() {
        if x < -NEGATIVITY_ZERO_THRESHOLD {
            total -= x;
        }
    }
    Ok(total)
}

/// Closed-form negativity of a two-qubit dephased graph state with
/// dephasing probabilities `p_i`, `p_j`:
/// `max(0, (2 - 2 p_i - 2 p_j + p_i p_j) / 4)`.
/// The raw expression goes negative once both qubits are strongly dephased;
/// negativity is clamped at zero there.
pub fn pair_negativity_closed_form(p_i: f64, p_j: f64) -> Result<f64> {
    for p in [p_i, p_j] {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
    }
    // Canonical argument order makes the symmetry bit-exact.
    let (lo, hi) = if p_i <= p_j { (p_i, p_j) } else { (p_j, p_i) };
    let raw = 0.25 * (2.0 - 2.0 * lo - 2.0 * hi + lo * hi);
    Ok(raw.max(0.0))
}

fn check_reduced_cap(rp: &ReducedProblem) -> Result<()> {
    let n = rp.reduced_graph.n();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::CapExceeded { qubits: n, cap: MAX_DENSE_QUBITS });
    }
    Ok(())
}

/// Negativity of the thermal state across `p`, computed on the boundary
/// problem. The original graph may be arbitrarily large; only the reduced
/// problem must fit the dense cap. Returns zero immediately when no edge
/// crosses the partition.
pub fn reduced_negativity(g: &Graph, p: &Bipartition, t: f64) -> Result<f64> {
    match boundary_reduce(g, p)? {
        BoundaryReduction::Disconnected => Ok(0.0),
        BoundaryReduction::Reduced(rp) => {
            check_reduced_cap(&rp)?;
            let rho = thermal_state(&rp.reduced_graph, t)?;
            negativity(&rho, &rp.reduced_partition)
        }
    }
}

/// How a critical temperature was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverMethod {
    ClosedForm,
    PairBisection,
    NegativityBisection,
}

/// A solved critical temperature together with the bracket and tolerance
/// that produced it. For `PairBisection` the tolerance is relative; for
/// `NegativityBisection` it is absolute in `T`.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalTemperature {
    pub value: f64,
    pub method: SolverMethod,
    pub bracket: [f64; 2],
    pub tolerance: f64,
}

/// Critical temperature of a boundary pair with equal couplings:
/// `T_c = -B / ln(sqrt(2) - 1)`, about `1.1346 B`.
pub fn critical_temperature_equal(b: f64) -> Result<CriticalTemperature> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::NonPositiveCoupling(b));
    }
    let value = -b / (std::f64::consts::SQRT_2 - 1.0).ln();
    Ok(CriticalTemperature {
        value,
        method: SolverMethod::ClosedForm,
        bracket: [value, value],
        tolerance: 0.0,
    })
}

/// Critical temperature of a boundary pair with couplings `b_i`, `b_j`: the
/// unique root in `T` of
/// `1 = exp(-b_i/T) + exp(-b_j/T) + exp(-(b_i + b_j)/T)`.
/// The right-hand side grows strictly from 0 toward 3 with `T`, so a single
/// sign change exists; it is found by bisection to relative tolerance 1e-10.
/// Exactly symmetric in its arguments.
pub fn critical_temperature_pair(b_i: f64, b_j: f64) -> Result<CriticalTemperature> {
    for b in [b_i, b_j] {
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::NonPositiveCoupling(b));
        }
    }
    let (a, b) = if b_i <= b_j { (b_i, b_j) } else { (b_j, b_i) };
    let f = |t: f64| (-a / t).exp() + (-b / t).exp() + (-(a + b) / t).exp() - 1.0;

    // f(lo) = -1 up to underflow; f(a + b) >= 3/e - 1 > 0.
    let mut lo = 1e-8 * (a + b);
    let mut hi = a + b;
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    let bracket = [lo, hi];
    while hi - lo > PAIR_BISECTION_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CriticalTemperature {
        value: 0.5 * (lo + hi),
        method: SolverMethod::PairBisection,
        bracket,
        tolerance: PAIR_BISECTION_REL_TOL,
    })
}

/// Temperature where the reduced negativity across `p` vanishes for good.
///
/// A coarse scan with `grid_points` samples over `(0, t_max]` brackets the
/// largest zero crossing (so a non-monotone curve cannot fool the solver
/// into reporting an early dip), then bisection refines it. Errors if the
/// negativity is zero on the whole grid, or still positive at `t_max`.
pub fn critical_temperature_numeric(
    g: &Graph,
    p: &Bipartition,
    t_max: f64,
    grid_points: usize,
) -> Result<CriticalTemperature> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidGrid(format!("t_max must be positive, got {t_max}")));
    }
    if grid_points < 2 {
        return Err(Error::InvalidGrid("need at least 2 grid points".into()));
    }
    let rp = match boundary_reduce(g, p)? {
        BoundaryReduction::Disconnected => return Err(Error::SeparableAtAllProbed),
        BoundaryReduction::Reduced(rp) => rp,
    };
    check_reduced_cap(&rp)?;
    let eval = |t: f64| -> Result<f64> {
        let rho = thermal_state(&rp.reduced_graph, t)?;
        negativity(&rho, &rp.reduced_partition)
    };

    let grid: Vec<f64> = (1..=grid_points).map(|k| t_max * k as f64 / grid_points as f64).collect();
    let mut last_positive = None;
    for (k, &t) in grid.iter().enumerate() {
        if eval(t)? > 0.0 {
            last_positive = Some(k);
        }
    }
    let k = last_positive.ok_or(Error::SeparableAtAllProbed)?;
    if k + 1 == grid.len() {
        return Err(Error::ExceedsTMax(t_max));
    }

    let bracket = [grid[k], grid[k + 1]];
    let (mut lo, mut hi) = (bracket[0], bracket[1]);
    while hi - lo > NUMERIC_BISECTION_ABS_TOL {
        let mid = 0.5 * (lo + hi);
        if eval(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CriticalTemperature {
        value: 0.5 * (lo + hi),
        method: SolverMethod::NegativityBisection,
        bracket,
        tolerance: NUMERIC_BISECTION_ABS_TOL,
    })
}

/// Negativity sampled over a temperature grid for one partition.
#[derive(Debug, Clone, Serialize)]
pub struct NegativityCurve {
    pub temperatures: Vec<f64>,
    pub values: Vec<f64>,
    pub graph_id: String,
    pub partition: String,
    pub reduced: bool,
}

/// Inclusive linear grid from `start` to `stop` with `steps >= 2` points.
pub fn temperature_grid(start: f64, stop: f64, steps: usize) -> Result<Vec<f64>> {
    if !(start >= 0.0) || !start.is_finite() || !stop.is_finite() || start >= stop {
        return Err(Error::InvalidGrid(format!(
            "need 0 <= start < stop, got start={start}, stop={stop}"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidGrid("need at least 2 grid points".into()));
    }
    let h = (stop - start) / (steps - 1) as f64;
    let mut grid: Vec<f64> = (0..steps).map(|k| start + h * k as f64).collect();
    grid[steps - 1] = stop;
    Ok(grid)
}

/// One negativity evaluation per grid point, in parallel; the result is
/// deterministic and independent of the worker count. With `reduce` set the
/// boundary problem is computed once and reused across the grid; without it
/// the full state is built at every temperature (the partition and graph
/// must then fit the dense cap).
pub fn negativity_sweep(
    g: &Graph,
    p: &Bipartition,
    t_grid: &[f64],
    reduce: bool,
) -> Result<NegativityCurve> {
    if t_grid.is_empty() {
        return Err(Error::InvalidGrid("empty temperature grid".into()));
    }
    if t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid("temperatures must be strictly increasing".into()));
    }

    let values: Vec<f64> = if reduce {
        match boundary_reduce(g, p)? {
            BoundaryReduction::Disconnected => vec![0.0; t_grid.len()],
            BoundaryReduction::Reduced(rp) => {
                check_reduced_cap(&rp)?;
                t_grid
                    .par_iter()
                    .map(|&t| {
                        let rho = thermal_state(&rp.reduced_graph, t)?;
                        negativity(&rho, &rp.reduced_partition)
                    })
                    .collect::<Result<_>>()?
            }
        }
    } else {
        t_grid
            .par_iter()
            .map(|&t| {
                let rho = thermal_state(g, t)?;
                negativity(&rho, p)
            })
            .collect::<Result<_>>()?
    };

    Ok(NegativityCurve {
        temperatures: t_grid.to_vec(),
        values,
        graph_id: g.hash_id(),
        partition: p.descriptor(),
        reduced: reduce,
    })
}

/// Temperature window in which the state is nondistillable across every
/// probed cut yet still entangled across some single-site partition.
#[derive(Debug, Clone, Serialize)]
pub struct BoundWindowReport {
    /// Nondistillability threshold: largest pair critical temperature over
    /// the probed cuts.
    pub t_lo: f64,
    /// Entanglement-vanishing threshold over the probed single-site family.
    pub t_hi: f64,
    pub lo_witness: String,
    pub hi_witness: String,
    pub nonempty: bool,
}

/// Probe a family of cuts and single-site partitions.
///
/// Each cut must reduce to a product of independent boundary pairs (true
/// for contiguous chain cuts and lattice slices); its separability
/// temperature is then the largest pair root among its crossing edges,
/// solved in closed form by bisection. `t_hi` is the largest numeric
/// critical temperature over the probed sites. The window is nonempty when
/// `t_hi > t_lo`; configurations where the ordering fails are reported, not
/// rejected.
pub fn bound_entanglement_window(
    g: &Graph,
    probe_cuts: &[Bipartition],
    probe_sites: &[Bipartition],
) -> Result<BoundWindowReport> {
    if probe_cuts.is_empty() || probe_sites.is_empty() {
        return Err(Error::EmptyProbes);
    }

    let mut t_lo = f64::NEG_INFINITY;
    let mut lo_witness = String::new();
    for cut in probe_cuts {
        let cut_tc = match boundary_reduce(g, cut)? {
            // Nothing crosses: separable at every temperature.
            BoundaryReduction::Disconnected => 0.0,
            BoundaryReduction::Reduced(rp) => {
                if (0..rp.reduced_graph.n()).any(|v| rp.reduced_graph.degree(v) != 1) {
                    return Err(Error::BoundaryNotPairProduct(cut.descriptor()));
                }
                let mut worst = 0.0f64;
                for &(a, b) in rp.reduced_graph.edges() {
                    let tc = critical_temperature_pair(
                        rp.reduced_graph.coupling(a),
                        rp.reduced_graph.coupling(b),
                    )?;
                    worst = worst.max(tc.value);
                }
                worst
            }
        };
        if cut_tc > t_lo {
            t_lo = cut_tc;
            // A one-element cut is also a site; label it by its probe role.
            lo_witness = match cut.cut_position() {
                Some(i) => format!("cut:{i}"),
                None => cut.descriptor(),
            };
        }
    }

    let max_coupling = g.couplings().iter().copied().fold(0.0f64, f64::max);
    let t_max = 10.0 * max_coupling;
    // Site probes are independent; solve them in parallel and take the max
    // in probe order so the witness is deterministic.
    let site_values: Vec<f64> = probe_sites
        .par_iter()
        .map(|site| match critical_temperature_numeric(g, site, t_max, DEFAULT_TC_GRID_POINTS) {
            Ok(tc) => Ok(tc.value),
            Err(Error::SeparableAtAllProbed) => Ok(0.0),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let mut t_hi = f64::NEG_INFINITY;
    let mut hi_witness = String::new();
    for (site, &site_tc) in probe_sites.iter().zip(&site_values) {
        if site_tc > t_hi {
            t_hi = site_tc;
            hi_witness = site.descriptor();
        }
    }

    Ok(BoundWindowReport { t_lo, t_hi, lo_witness, hi_witness, nonempty: t_hi > t_lo })
}
