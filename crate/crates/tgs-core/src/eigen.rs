//! Hermitian eigenvalue kernels.
//!
//! The main path is Householder reduction to a real symmetric tridiagonal
//! followed by implicit-shift QL iteration, eigenvalues only, so a 4096-dim
//! operator never needs more than one extra matrix of workspace. Operators
//! with exactly zero imaginary part (every state built by this crate) take a
//! real symmetric reduction at half the arithmetic cost; general Hermitian
//! input takes the complex reduction.
//!
//! A cyclic Jacobi sweep over the full matrix is kept as an independent
//! cross-check for small dimensions, and doubles as the small-matrix
//! eigendecomposition (values and vectors) behind the spectral oracle.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest dimension accepted by the Jacobi cross-check entry point.
pub const JACOBI_CHECK_MAX_DIM: usize = 64;

/// Largest dimension for the Jacobi eigendecomposition with vectors.
pub(crate) const JACOBI_EIGH_MAX_DIM: usize = 256;

const MAX_QL_ITERATIONS: usize = 60;
const MAX_JACOBI_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric matrix (row-major, lower triangle
/// authoritative), ascending. Destroys `a`.
pub(crate) fn symmetric_eigenvalues(a: &mut [f64], dim: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), dim * dim);
    let mut d = vec![0.0; dim];
    let mut e = vec![0.0; dim];
    householder_tridiagonal_real(a, dim, &mut d, &mut e);
    tridiagonal_ql(&mut d, &mut e)?;
    Ok(d)
}

/// Eigenvalues of a complex Hermitian matrix (row-major), ascending.
/// Consumes `a`. Input with exactly zero imaginary parts is routed through
/// the real symmetric reduction, and the complex buffer is released before
/// that solve starts.
pub(crate) fn hermitian_eigenvalues_dense(mut a: Vec<Complex64>, dim: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), dim * dim);
    if a.iter().all(|z| z.im == 0.0) {
        let mut re: Vec<f64> = a.iter().map(|z| z.re).collect();
        drop(a);
        return symmetric_eigenvalues(&mut re, dim);
    }
    let mut d = vec![0.0; dim];
    let mut e = vec![0.0; dim];
    householder_tridiagonal_complex(&mut a, dim, &mut d, &mut e);
    tridiagonal_ql(&mut d, &mut e)?;
    Ok(d)
}

/// Householder reduction of a real symmetric matrix to tridiagonal form,
/// eigenvalues-only variant: no transformation accumulation. On exit `d`
/// holds the diagonal and `e[1..]` the subdiagonal (`e[i]` couples `i-1, i`).
///
/// Classic tred-style reduction working on the lower triangle in place.
fn householder_tridiagonal_real(a: &mut [f64], dim: usize, d: &mut [f64], e: &mut [f64]) {
    for i in (1..dim).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += a[i * dim + k].abs();
            }
            if scale == 0.0 {
                e[i] = a[i * dim + l];
            } else {
                for k in 0..=l {
                    a[i * dim + k] /= scale;
                    h += a[i * dim + k] * a[i * dim + k];
                }
                let f = a[i * dim + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * dim + l] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    let mut g_acc = 0.0;
                    for k in 0..=j {
                        g_acc += a[j * dim + k] * a[i * dim + k];
                    }
                    for k in (j + 1)..=l {
                        g_acc += a[k * dim + j] * a[i * dim + k];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * a[i * dim + j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let fj = a[i * dim + j];
                    let gj = e[j] - hh * fj;
                    e[j] = gj;
                    for k in 0..=j {
                        a[j * dim + k] -= fj * e[k] + gj * a[i * dim + k];
                    }
                }
            }
        } else {
            e[i] = a[i * dim + l];
        }
    }
    e[0] = 0.0;
    for i in 0..dim {
        d[i] = a[i * dim + i];
    }
}

/// Householder reduction of a complex Hermitian matrix to a real symmetric
/// tridiagonal with the same spectrum (the off-diagonal phases are absorbed
/// by a diagonal unitary similarity, so only magnitudes are kept).
fn householder_tridiagonal_complex(a: &mut [Complex64], dim: usize, d: &mut [f64], e: &mut [f64]) {
    let zero = Complex64::new(0.0, 0.0);
    for i in (2..dim).rev() {
        // Annihilate column i above the subdiagonal: entries a[k][i], k < i-1.
        let mut scale = 0.0;
        for k in 0..i {
            let z = a[k * dim + i];
            scale += z.re.abs() + z.im.abs();
        }
        if scale == 0.0 {
            e[i] = 0.0;
            continue;
        }
        let inv_scale = 1.0 / scale;
        let mut u: Vec<Complex64> = (0..i).map(|k| a[k * dim + i] * inv_scale).collect();
        let h: f64 = u.iter().map(|z| z.norm_sqr()).sum();
        let g = h.sqrt();
        let f = u[i - 1];
        let f_abs = f.norm();
        let phi = if f_abs > 0.0 { f / f_abs } else { Complex64::new(1.0, 0.0) };
        e[i] = scale * g;
        u[i - 1] += phi * g;
        // tau = |u|^2 / 2; strictly positive because scale > 0.
        let tau = h + g * f_abs;

        // Similarity update of the leading i x i block:
        //   p = B u / tau,  K = u'p / (2 tau),  q = p - K u,
        //   B <- B - u q' - q u'.
        let mut p = vec![zero; i];
        for r in 0..i {
            let mut acc = zero;
            for c in 0..i {
                acc += a[r * dim + c] * u[c];
            }
            p[r] = acc / tau;
        }
        let u_dot_p: Complex64 = u.iter().zip(&p).map(|(uu, pp)| uu.conj() * pp).sum();
        let k_scalar = u_dot_p / (2.0 * tau);
        for r in 0..i {
            p[r] -= k_scalar * u[r];
        }
        for r in 0..i {
            let ur = u[r];
            let qr = p[r];
            let row = &mut a[r * dim..r * dim + i];
            for c in 0..i {
                row[c] -= ur * p[c].conj() + qr * u[c].conj();
            }
        }
    }
    if dim > 1 {
        e[1] = a[dim].norm();
    }
    e[0] = 0.0;
    for k in 0..dim {
        d[k] = a[k * dim + k].re;
    }
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix,
/// eigenvalues only. `d` is the diagonal, `e[i]` couples `i-1, i` on entry.
/// Returns `d` sorted ascending in place.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iterations = 0;
        loop {
            // Split at a negligible subdiagonal element.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::EigenNoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_unstable_by(|a, b| a.total_cmp(b));
    Ok(())
}

/// Cyclic Jacobi diagonalization of a complex Hermitian matrix.
/// Returns eigenvalues ascending and, when requested, the matching unit
/// eigenvectors as columns of a row-major matrix.
pub(crate) fn jacobi_hermitian(
    a: &mut [Complex64],
    dim: usize,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<Complex64>>)> {
    debug_assert_eq!(a.len(), dim * dim);
    let zero = Complex64::new(0.0, 0.0);
    let mut v = if want_vectors {
        let mut id = vec![zero; dim * dim];
        for k in 0..dim {
            id[k * dim + k] = Complex64::new(1.0, 0.0);
        }
        Some(id)
    } else {
        None
    };

    let fro_sq: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let target = (1e-13 * (1.0 + fro_sq.sqrt())).powi(2);

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off_sq = 0.0;
        for p in 0..dim {
            for q in (p + 1)..dim {
                off_sq += a[p * dim + q].norm_sqr();
            }
        }
        if off_sq <= target {
            let mut order: Vec<usize> = (0..dim).collect();
            let diag: Vec<f64> = (0..dim).map(|k| a[k * dim + k].re).collect();
            order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
            let values: Vec<f64> = order.iter().map(|&k| diag[k]).collect();
            let vectors = v.map(|v| {
                let mut sorted = vec![zero; dim * dim];
                for (new_col, &old_col) in order.iter().enumerate() {
                    for row in 0..dim {
                        sorted[row * dim + new_col] = v[row * dim + old_col];
                    }
                }
                sorted
            });
            return Ok((values, vectors));
        }

        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = a[p * dim + q];
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                let phase = apq / b;
                let alpha = a[p * dim + p].re;
                let gamma = a[q * dim + q].re;
                // Small root of t^2 - 2 theta t - 1 = 0 for this rotation
                // convention, in cancellation-free form.
                let theta = (gamma - alpha) / (2.0 * b);
                let t = -theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let s_phase = phase * s;
                for k in 0..dim {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    let new_kp = akp * c + akq * s_phase.conj();
                    let new_kq = akq * c - akp * s_phase;
                    a[k * dim + p] = new_kp;
                    a[p * dim + k] = new_kp.conj();
                    a[k * dim + q] = new_kq;
                    a[q * dim + k] = new_kq.conj();
                }
                let app = alpha * c * c + 2.0 * b * c * s + gamma * s * s;
                let aqq = alpha * s * s - 2.0 * b * c * s + gamma * c * c;
                a[p * dim + p] = Complex64::new(app, 0.0);
                a[q * dim + q] = Complex64::new(aqq, 0.0);
                a[p * dim + q] = zero;
                a[q * dim + p] = zero;

                if let Some(v) = v.as_mut() {
                    for k in 0..dim {
                        let vkp = v[k * dim + p];
                        let vkq = v[k * dim + q];
                        v[k * dim + p] = vkp * c + vkq * s_phase.conj();
                        v[k * dim + q] = vkq * c - vkp * s_phase;
                    }
                }
            }
        }
    }
    Err(Error::EigenNoConvergence)
}
