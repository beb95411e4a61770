//! Dense complex-operator kernel: state vectors, density matrices, gate and
//! channel application, partial transpose, partial trace, and Hermitian
//! eigenvalues.
//!
//! Qubit ordering is fixed throughout the crate: qubit 0 is the most
//! significant bit of the basis index, so `|b0 b1 .. b{n-1}>` has index
//! `sum_k b_k * 2^(n-1-k)`.
//!
//! Gates act in place on basis-index strides; no `2^n x 2^n` gate matrix is
//! ever formed. Dense storage is capped at [`MAX_DENSE_QUBITS`] qubits.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::eigen;
pub use crate::eigen::JACOBI_CHECK_MAX_DIM;
use crate::error::{Error, Result};

/// Hard cap on dense objects: a 2^14-dim density matrix is the refusal
/// boundary (a 4096-dim complex-double matrix is already ~256 MB).
pub const MAX_DENSE_QUBITS: usize = 14;

/// Tolerance for accepting an operator as Hermitian before eigensolving.
pub const HERMITICITY_TOL: f64 = 1e-10;

fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::InvalidGraph("need at least one qubit".into()));
    }
    if n_qubits > MAX_DENSE_QUBITS {
        return Err(Error::CapExceeded { qubits: n_qubits, cap: MAX_DENSE_QUBITS });
    }
    Ok(())
}

/// Index bit carrying `qubit` under the MSB-first convention.
#[inline]
pub(crate) fn qubit_bit(n_qubits: usize, qubit: usize) -> usize {
    1 << (n_qubits - 1 - qubit)
}

/// Pure state on `n` qubits as 2^n complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|+>^n`: every amplitude `2^(-n/2)`.
    pub fn plus_product(n_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        let amp = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(StateVector { n_qubits, amplitudes: vec![amp; dim] })
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, got: index });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn check_qubit(&self, qubit: usize) -> Result<usize> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: qubit, n: self.n_qubits });
        }
        Ok(qubit_bit(self.n_qubits, qubit))
    }

    /// Controlled-Z between `i` and `j`: negates amplitudes with both bits set.
    pub fn apply_cz(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(Error::QubitCollision(i));
        }
        let mi = self.check_qubit(i)?;
        let mj = self.check_qubit(j)?;
        let both = mi | mj;
        for (idx, amp) in self.amplitudes.iter_mut().enumerate() {
            if idx & both == both {
                *amp = -*amp;
            }
        }
        Ok(())
    }

    /// Pauli Z on `i`: negates amplitudes with the bit set.
    pub fn apply_z(&mut self, i: usize) -> Result<()> {
        let mi = self.check_qubit(i)?;
        for (idx, amp) in self.amplitudes.iter_mut().enumerate() {
            if idx & mi != 0 {
                *amp = -*amp;
            }
        }
        Ok(())
    }

    /// Pauli X on `i`: swaps the bit-0 and bit-1 amplitude of every pair.
    pub fn apply_x(&mut self, i: usize) -> Result<()> {
        let mi = self.check_qubit(i)?;
        for idx in 0..self.amplitudes.len() {
            if idx & mi == 0 {
                self.amplitudes.swap(idx, idx | mi);
            }
        }
        Ok(())
    }

    /// Rank-1 projector `|s><s|`.
    pub fn outer_product(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            let ar = self.amplitudes[r];
            for c in 0..dim {
                entries[r * dim + c] = ar * self.amplitudes[c].conj();
            }
        }
        DensityMatrix { n_qubits: self.n_qubits, entries }
    }
}

/// Dense Hermitian operator on `n` qubits (2^n x 2^n, row-major). Also used
/// for Hermitian non-states such as partial transposes and differences.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn from_entries(n_qubits: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: entries.len() });
        }
        Ok(DensityMatrix { n_qubits, entries })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dim() + c]
    }

    pub fn trace(&self) -> Complex64 {
        let dim = self.dim();
        (0..dim).map(|k| self.entries[k * dim + k]).sum()
    }

    fn check_qubit(&self, qubit: usize) -> Result<usize> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: qubit, n: self.n_qubits });
        }
        Ok(qubit_bit(self.n_qubits, qubit))
    }

    /// Conjugation by controlled-Z: `rho <- CZ rho CZ`.
    pub fn apply_cz(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(Error::QubitCollision(i));
        }
        let mi = self.check_qubit(i)?;
        let mj = self.check_qubit(j)?;
        let both = mi | mj;
        let dim = self.dim();
        for r in 0..dim {
            let sr = r & both == both;
            for c in 0..dim {
                if sr != (c & both == both) {
                    self.entries[r * dim + c] = -self.entries[r * dim + c];
                }
            }
        }
        Ok(())
    }

    /// Conjugation by Pauli Z on `i`: `rho <- Z_i rho Z_i`.
    pub fn apply_z(&mut self, i: usize) -> Result<()> {
        let mi = self.check_qubit(i)?;
        let dim = self.dim();
        for r in 0..dim {
            for c in 0..dim {
                if (r & mi != 0) != (c & mi != 0) {
                    self.entries[r * dim + c] = -self.entries[r * dim + c];
                }
            }
        }
        Ok(())
    }

    /// Local dephasing channel on qubit `i`:
    /// `rho <- (1 - p/2) rho + (p/2) Z_i rho Z_i`,
    /// which damps every entry whose row and column disagree on bit `i` by
    /// `(1 - p)`.
    pub fn apply_dephasing(&mut self, i: usize, p: f64) -> Result<()> {
        if !valid_probability(p) {
            return Err(Error::InvalidProbability(p));
        }
        let mi = self.check_qubit(i)?;
        let damp = 1.0 - p;
        let dim = self.dim();
        for r in 0..dim {
            for c in 0..dim {
                if (r & mi != 0) != (c & mi != 0) {
                    self.entries[r * dim + c] *= damp;
                }
            }
        }
        Ok(())
    }

    /// Transpose the indices of the given qubit subset. Preserves trace and
    /// Hermiticity; applying it twice is the identity.
    pub fn partial_transpose(&self, subset: &BTreeSet<usize>) -> Result<DensityMatrix> {
        let mut mask = 0usize;
        for &q in subset {
            mask |= self.check_qubit(q)?;
        }
        let dim = self.dim();
        let keep = !mask;
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let rr = (r & keep) | (c & mask);
                let cc = (c & keep) | (r & mask);
                out[rr * dim + cc] = self.entries[r * dim + c];
            }
        }
        Ok(DensityMatrix { n_qubits: self.n_qubits, entries: out })
    }

    /// Trace out every qubit not in `keep`.
    pub fn partial_trace(&self, keep: &BTreeSet<usize>) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidPartition("cannot trace out every qubit".into()));
        }
        let mut kept_bits = Vec::new();
        for &q in keep {
            kept_bits.push(self.check_qubit(q)?);
        }
        let traced_bits: Vec<usize> = (0..self.n_qubits)
            .filter(|q| !keep.contains(q))
            .map(|q| qubit_bit(self.n_qubits, q))
            .collect();

        let k = kept_bits.len();
        let out_dim = 1usize << k;
        let expand = |compact: usize, bits: &[usize]| -> usize {
            let width = bits.len();
            let mut full = 0;
            for (pos, &bit) in bits.iter().enumerate() {
                if compact & (1 << (width - 1 - pos)) != 0 {
                    full |= bit;
                }
            }
            full
        };

        let dim = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); out_dim * out_dim];
        let traced_dim = 1usize << traced_bits.len();
        for a in 0..out_dim {
            let ra = expand(a, &kept_bits);
            for b in 0..out_dim {
                let cb = expand(b, &kept_bits);
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..traced_dim {
                    let tt = expand(t, &traced_bits);
                    acc += self.entries[(ra | tt) * dim + (cb | tt)];
                }
                out[a * out_dim + b] = acc;
            }
        }
        Ok(DensityMatrix { n_qubits: k, entries: out })
    }

    /// Largest elementwise deviation from `m = m^dagger`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for r in 0..dim {
            for c in r..dim {
                let dev = (self.entries[r * dim + c] - self.entries[c * dim + r].conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    fn symmetrized(&self) -> Result<Vec<Complex64>> {
        let dev = self.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let dim = self.dim();
        let mut work = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                work[r * dim + c] =
                    (self.entries[r * dim + c] + self.entries[c * dim + r].conj()) * 0.5;
            }
        }
        Ok(work)
    }

    /// All 2^n eigenvalues, ascending. Rejects operators farther than
    /// [`HERMITICITY_TOL`] from Hermitian; inside the tolerance the operator
    /// is symmetrized as `(m + m^dagger)/2` before the solve.
    pub fn hermitian_eigenvalues(&self) -> Result<Spectrum> {
        let work = self.symmetrized()?;
        let vals = eigen::hermitian_eigenvalues_dense(work, self.dim())?;
        Ok(Spectrum { eigenvalues: vals })
    }

    /// Entrywise difference, for distance computations.
    pub fn difference(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(DensityMatrix { n_qubits: self.n_qubits, entries })
    }
}

#[inline]
fn valid_probability(p: f64) -> bool {
    p.is_finite() && (0.0..=1.0).contains(&p)
}

/// Real eigenvalues of a Hermitian operator, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.eigenvalues
    }
}

/// `(1/2) sum |eigenvalues of a - b|`; zero iff the operators coincide.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    let diff = a.difference(b)?;
    let spectrum = diff.hermitian_eigenvalues()?;
    Ok(0.5 * spectrum.eigenvalues().iter().map(|x| x.abs()).sum::<f64>())
}

/// Independent cross-check eigensolver: cyclic Jacobi over the full matrix,
/// accepted up to dimension [`JACOBI_CHECK_MAX_DIM`].
pub fn jacobi_eigenvalues(m: &DensityMatrix) -> Result<Spectrum> {
    if m.dim() > eigen::JACOBI_CHECK_MAX_DIM {
        return Err(Error::CapExceeded { qubits: m.n_qubits(), cap: 6 });
    }
    let mut work = m.symmetrized()?;
    let (vals, _) = eigen::jacobi_hermitian(&mut work, m.dim(), false)?;
    Ok(Spectrum { eigenvalues: vals })
}

/// Small-matrix eigendecomposition (values ascending, unit eigenvectors as
/// columns), used by the spectral construction oracle.
pub(crate) fn jacobi_eigh(m: &DensityMatrix) -> Result<(Vec<f64>, Vec<Complex64>)> {
    if m.dim() > eigen::JACOBI_EIGH_MAX_DIM {
        return Err(Error::CapExceeded { qubits: m.n_qubits(), cap: 8 });
    }
    let mut work = m.symmetrized()?;
    let (vals, vecs) = eigen::jacobi_hermitian(&mut work, m.dim(), true)?;
    Ok((vals, vecs.expect("vectors requested")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Kronecker product of two density matrices, test oracle only.
    fn kron(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
        let (da, db) = (a.dim(), b.dim());
        let dim = da * db;
        let mut entries = vec![c(0.0, 0.0); dim * dim];
        for ra in 0..da {
            for ca in 0..da {
                for rb in 0..db {
                    for cb in 0..db {
                        entries[(ra * db + rb) * dim + (ca * db + cb)] =
                            a.entry(ra, ca) * b.entry(rb, cb);
                    }
                }
            }
        }
        DensityMatrix::from_entries(a.n_qubits() + b.n_qubits(), entries).unwrap()
    }

    fn bell_projector() -> DensityMatrix {
        // (|00> + |11>)/sqrt(2)
        let mut amps = vec![c(0.0, 0.0); 4];
        amps[0] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[3] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        StateVector { n_qubits: 2, amplitudes: amps }.outer_product()
    }

    fn random_state(n: usize, seed: u64) -> StateVector {
        let mut state = seed | 1;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let dim = 1usize << n;
        let mut amplitudes: Vec<Complex64> = (0..dim).map(|_| c(next(), next())).collect();
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amplitudes {
            *a /= norm;
        }
        StateVector { n_qubits: n, amplitudes }
    }

    #[test]
    fn plus_product_amplitudes() {
        let s = StateVector::plus_product(1).unwrap();
        assert!((s.amplitudes()[0].re - std::f64::consts::FRAC_1_SQRT_2).abs() < TOL);
        assert!((s.amplitudes()[1].re - std::f64::consts::FRAC_1_SQRT_2).abs() < TOL);

        let s = StateVector::plus_product(2).unwrap();
        assert!(s.amplitudes().iter().all(|a| (a.re - 0.5).abs() < TOL && a.im == 0.0));

        let s = StateVector::plus_product(3).unwrap();
        assert!((s.norm() - 1.0).abs() < TOL);

        assert!(StateVector::plus_product(0).is_err());
        assert!(StateVector::plus_product(MAX_DENSE_QUBITS + 1).is_err());
    }

    #[test]
    fn cz_is_self_inverse_and_signs_11() {
        let mut s = random_state(3, 7);
        let original = s.clone();
        s.apply_cz(0, 2).unwrap();
        s.apply_cz(2, 0).unwrap();
        for (a, b) in s.amplitudes().iter().zip(original.amplitudes()) {
            assert!((a - b).norm() < TOL);
        }

        let mut s = StateVector::basis(2, 0b11).unwrap();
        s.apply_cz(0, 1).unwrap();
        assert!((s.amplitudes()[3] - c(-1.0, 0.0)).norm() < TOL);

        assert!(s.apply_cz(0, 0).is_err());
        assert!(s.apply_cz(0, 2).is_err());
    }

    #[test]
    fn pauli_actions() {
        let mut s = random_state(2, 13);
        let original = s.clone();
        s.apply_z(1).unwrap();
        s.apply_z(1).unwrap();
        for (a, b) in s.amplitudes().iter().zip(original.amplitudes()) {
            assert!((a - b).norm() < TOL);
        }

        let mut s = StateVector::basis(1, 0).unwrap();
        s.apply_x(0).unwrap();
        assert!((s.amplitudes()[1] - c(1.0, 0.0)).norm() < TOL);

        // Z|+> = |-> is orthogonal to |+>
        let plus = StateVector::plus_product(1).unwrap();
        let mut minus = plus.clone();
        minus.apply_z(0).unwrap();
        assert!(plus.inner(&minus).unwrap().norm() < TOL);

        assert!(minus.apply_z(1).is_err());
    }

    #[test]
    fn gates_preserve_norm() {
        let mut s = random_state(4, 21);
        s.apply_cz(1, 3).unwrap();
        s.apply_z(0).unwrap();
        s.apply_x(2).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cz_commutes_with_z() {
        for qubit in 0..3 {
            let mut a = random_state(3, 100 + qubit as u64);
            let mut b = a.clone();
            a.apply_cz(0, 1).unwrap();
            a.apply_z(qubit).unwrap();
            b.apply_z(qubit).unwrap();
            b.apply_cz(0, 1).unwrap();
            for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                assert!((x - y).norm() < TOL);
            }
        }
    }

    #[test]
    fn outer_product_shapes() {
        let rho = StateVector::basis(1, 0).unwrap().outer_product();
        assert!((rho.entry(0, 0) - c(1.0, 0.0)).norm() < TOL);
        assert!(rho.entry(1, 1).norm() < TOL);

        let rho = StateVector::plus_product(1).unwrap().outer_product();
        for r in 0..2 {
            for ccol in 0..2 {
                assert!((rho.entry(r, ccol) - c(0.5, 0.0)).norm() < TOL);
            }
        }

        // any projector is idempotent
        let rho = random_state(3, 3).outer_product();
        let dim = rho.dim();
        for r in 0..dim {
            for ccol in 0..dim {
                let mut acc = c(0.0, 0.0);
                for k in 0..dim {
                    acc += rho.entry(r, k) * rho.entry(k, ccol);
                }
                assert!((acc - rho.entry(r, ccol)).norm() < 1e-12);
            }
        }
        assert!((rho.trace() - c(1.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn partial_transpose_bell_spectrum() {
        let rho = bell_projector();
        let pt = rho.partial_transpose(&BTreeSet::from([1])).unwrap();
        let spectrum = pt.hermitian_eigenvalues().unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (a, b) in spectrum.eigenvalues().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn partial_transpose_properties() {
        let rho = random_state(3, 17).outer_product();
        let subset = BTreeSet::from([0, 2]);
        let pt = rho.partial_transpose(&subset).unwrap();
        assert!((pt.trace() - rho.trace()).norm() < TOL);
        assert!(pt.hermiticity_deviation() < TOL);

        let back = pt.partial_transpose(&subset).unwrap();
        assert_eq!(back, rho);

        // empty subset is the identity map
        let id = rho.partial_transpose(&BTreeSet::new()).unwrap();
        assert_eq!(id, rho);

        // transposing the complement gives the same spectrum
        let pt2 = rho.partial_transpose(&BTreeSet::from([1])).unwrap();
        let e1 = pt.hermitian_eigenvalues().unwrap();
        let e2 = pt2.hermitian_eigenvalues().unwrap();
        for (a, b) in e1.eigenvalues().iter().zip(e2.eigenvalues()) {
            assert!((a - b).abs() < 1e-10);
        }

        assert!(rho.partial_transpose(&BTreeSet::from([5])).is_err());
    }

    #[test]
    fn product_state_stays_positive_under_partial_transpose() {
        let a = random_state(1, 5).outer_product();
        let b = random_state(2, 9).outer_product();
        let rho = kron(&a, &b);
        let pt = rho.partial_transpose(&BTreeSet::from([1, 2])).unwrap();
        let spectrum = pt.hermitian_eigenvalues().unwrap();
        assert!(spectrum.min() >= -1e-10);
    }

    #[test]
    fn eigenvalues_diagonal_and_cross_checked() {
        let entries = vec![
            c(3.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(-2.0, 0.0),
        ];
        let m = DensityMatrix::from_entries(1, entries).unwrap();
        let s = m.hermitian_eigenvalues().unwrap();
        assert_eq!(s.eigenvalues(), &[-2.0, 3.0]);

        // random Hermitian 8x8 against the Jacobi cross-check
        let mut state = 42u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let dim = 8;
        let mut entries = vec![c(0.0, 0.0); dim * dim];
        for r in 0..dim {
            entries[r * dim + r] = c(next(), 0.0);
            for ccol in 0..r {
                let z = c(next(), next());
                entries[r * dim + ccol] = z;
                entries[ccol * dim + r] = z.conj();
            }
        }
        let m = DensityMatrix::from_entries(3, entries).unwrap();
        let ql = m.hermitian_eigenvalues().unwrap();
        let jac = jacobi_eigenvalues(&m).unwrap();
        for (a, b) in ql.eigenvalues().iter().zip(jac.eigenvalues()) {
            assert!((a - b).abs() < 1e-8);
        }

        let trace = m.trace().re;
        assert!((ql.sum() - trace).abs() < 1e-9);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let entries = vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let m = DensityMatrix::from_entries(1, entries).unwrap();
        assert!(matches!(m.hermitian_eigenvalues(), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn jacobi_cap() {
        let m = random_state(7, 19).outer_product();
        assert!(matches!(jacobi_eigenvalues(&m), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn partial_trace_factors_products() {
        let a = random_state(1, 31).outer_product();
        let b = random_state(2, 37).outer_product();
        let rho = kron(&a, &b);

        let ta = rho.partial_trace(&BTreeSet::from([0])).unwrap();
        for r in 0..2 {
            for ccol in 0..2 {
                assert!((ta.entry(r, ccol) - a.entry(r, ccol)).norm() < 1e-12);
            }
        }

        let tb = rho.partial_trace(&BTreeSet::from([1, 2])).unwrap();
        for r in 0..4 {
            for ccol in 0..4 {
                assert!((tb.entry(r, ccol) - b.entry(r, ccol)).norm() < 1e-12);
            }
        }

        assert!((ta.trace() - rho.trace()).norm() < TOL);
    }

    #[test]
    fn partial_trace_bell_and_identity() {
        let rho = bell_projector();
        let reduced = rho.partial_trace(&BTreeSet::from([0])).unwrap();
        assert!((reduced.entry(0, 0) - c(0.5, 0.0)).norm() < TOL);
        assert!((reduced.entry(1, 1) - c(0.5, 0.0)).norm() < TOL);
        assert!(reduced.entry(0, 1).norm() < TOL);

        let all = rho.partial_trace(&BTreeSet::from([0, 1])).unwrap();
        assert_eq!(all, rho);

        assert!(rho.partial_trace(&BTreeSet::new()).is_err());
    }

    #[test]
    fn trace_distance_values() {
        let zero = StateVector::basis(1, 0).unwrap().outer_product();
        let one = StateVector::basis(1, 1).unwrap().outer_product();
        let plus = StateVector::plus_product(1).unwrap().outer_product();

        assert!(trace_distance(&zero, &zero).unwrap() < TOL);
        assert!((trace_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-12);
        let expected = std::f64::consts::FRAC_1_SQRT_2;
        assert!((trace_distance(&zero, &plus).unwrap() - expected).abs() < 1e-12);

        let bigger = bell_projector();
        assert!(trace_distance(&zero, &bigger).is_err());
    }

    #[test]
    fn dephasing_channel_damps_coherences() {
        let mut rho = StateVector::plus_product(1).unwrap().outer_product();
        rho.apply_dephasing(0, 0.5).unwrap();
        assert!((rho.entry(0, 0) - c(0.5, 0.0)).norm() < TOL);
        assert!((rho.entry(0, 1) - c(0.25, 0.0)).norm() < TOL);
        assert!((rho.trace() - c(1.0, 0.0)).norm() < TOL);

        assert!(rho.apply_dephasing(0, 1.5).is_err());
        assert!(rho.apply_dephasing(0, -0.1).is_err());

        // p = 0 is the identity channel; p = 1 kills the coherence
        let mut id = StateVector::plus_product(1).unwrap().outer_product();
        id.apply_dephasing(0, 0.0).unwrap();
        assert!((id.entry(0, 1) - c(0.5, 0.0)).norm() < TOL);
        let mut dead = StateVector::plus_product(1).unwrap().outer_product();
        dead.apply_dephasing(0, 1.0).unwrap();
        assert!(dead.entry(0, 1).norm() < TOL);
    }

    #[test]
    fn density_conjugations_match_vector_gates() {
        let s = random_state(3, 51);
        let mut rho = s.outer_product();
        rho.apply_cz(0, 2).unwrap();
        rho.apply_z(1).unwrap();

        let mut sv = s.clone();
        sv.apply_cz(0, 2).unwrap();
        sv.apply_z(1).unwrap();
        let direct = sv.outer_product();

        for (a, b) in rho.entries().iter().zip(direct.entries()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
