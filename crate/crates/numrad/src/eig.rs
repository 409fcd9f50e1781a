//! Hermitian eigendecomposition, extreme-eigenvalue enclosures, and the
//! functional calculus built on top of them.
//!
//! Two solver paths:
//! * [`herm_eig`] — cyclic complex Jacobi with eigenvectors. Unconditionally
//!   stable at the dimensions this crate targets (n <= 64).
//! * [`lambda_range`] — Householder tridiagonalization plus Sturm-count
//!   bisection. No vectors, but returns certified enclosures for the extreme
//!   eigenvalues; this is the workhorse for norms and the radius sweep.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Jacobi sweep cap; the off-diagonal mass shrinks quadratically, so this is
/// never reached in practice.
const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix: `h = V diag(lambda) V*` with the
/// eigenvalues ascending and the columns of `eigenvectors` orthonormal.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermEig {
    /// Rebuild `V diag(phi(lambda)) V*`.
    pub fn apply<F: Fn(f64) -> f64>(&self, phi: F) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let w = phi(self.eigenvalues[k]);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                for j in 0..n {
                    let t = vik * v[(j, k)].conj();
                    out[(i, j)] += t;
                }
            }
        }
        out
    }
}

fn hermitian_gate(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    h.ensure_square()?;
    let scale = h.frobenius_norm().max(1.0);
    let asym = h.asymmetry();
    let tol = 1e-10 * scale;
    if asym > tol {
        return Err(Error::NotHermitian {
            asymmetry: asym,
            tol,
        });
    }
    // Symmetrize before solving so the rotations see an exactly Hermitian input.
    let adj = h.adjoint();
    Ok((h + &adj).scale_re(0.5))
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// The input may deviate from exact Hermitian symmetry by at most
/// `1e-10 * max(1, ||h||_F)`; it is symmetrized to `(h + h*)/2` before the solve.
pub fn herm_eig(h: &ComplexMatrix) -> Result<HermEig> {
    let a = hermitian_gate(h)?;
    let n = a.rows();
    let mut a = a;
    let mut v = ComplexMatrix::identity(n);
    let fro = a.frobenius_norm();
    let threshold = 1e-13 * fro;

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[(i, j)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| diag[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, new_col)] = v[(row, old_col)];
        }
    }
    Ok(HermEig {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// One Jacobi rotation zeroing the (p, q) entry of the Hermitian matrix `a`,
/// accumulating the unitary into `v`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let u = apq / r; // phase of the pivot
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    let su = u * s;
    let su_conj = u.conj() * s;

    // Rows p and q of A (columns follow by Hermitian symmetry).
    for j in 0..n {
        if j == p || j == q {
            continue;
        }
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        let new_pj = apj * c - aqj * su;
        let new_qj = apj * su_conj + aqj * c;
        a[(p, j)] = new_pj;
        a[(j, p)] = new_pj.conj();
        a[(q, j)] = new_qj;
        a[(j, q)] = new_qj.conj();
    }
    let new_pp = c * c * app + s * s * aqq - 2.0 * s * c * r;
    let new_qq = s * s * app + c * c * aqq + 2.0 * s * c * r;
    a[(p, p)] = Complex64::new(new_pp, 0.0);
    a[(q, q)] = Complex64::new(new_qq, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    // V <- V G with G mixing columns p, q.
    for i in 0..a.rows() {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c - viq * su;
        v[(i, q)] = vip * su_conj + viq * c;
    }
}

/// Real symmetric tridiagonal form of a Hermitian matrix: diagonal `d` and
/// squared off-diagonal magnitudes `e2` (the Sturm recurrence only needs |e|^2).
fn tridiagonalize(h: &ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = h.rows();
    let mut a = h.clone();
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the diagonal.
        let mut norm_sqr = 0.0;
        for i in (k + 1)..n {
            norm_sqr += a[(i, k)].norm_sqr();
        }
        let norm = norm_sqr.sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm;
        // v = x - alpha e1, normalized
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        let mut vnorm_sqr = 0.0;
        for i in (k + 1)..n {
            let mut vi = a[(i, k)];
            if i == k + 1 {
                vi -= alpha;
            }
            vnorm_sqr += vi.norm_sqr();
            v[i] = vi;
        }
        let vnorm = vnorm_sqr.sqrt();
        if vnorm < 1e-300 {
            continue;
        }
        for vi in v.iter_mut() {
            *vi /= vnorm;
        }
        // A <- (I - 2vv*) A (I - 2vv*) = A - 2vp* - 2pv* + 4(v*p)vv*, p = Av.
        let mut p = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in (k + 1)..n {
                acc += a[(i, j)] * v[j];
            }
            p[i] = acc;
        }
        let vp: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        for i in 0..n {
            for j in 0..n {
                let upd = -2.0 * (v[i] * p[j].conj() + p[i] * v[j].conj())
                    + 4.0 * vp * (v[i] * v[j].conj());
                a[(i, j)] += upd;
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let e2: Vec<f64> = (0..n.saturating_sub(1))
        .map(|i| a[(i + 1, i)].norm_sqr())
        .collect();
    (d, e2)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn sturm_count(d: &[f64], e2: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0f64;
    for i in 0..d.len() {
        q = if i == 0 {
            d[0] - x
        } else {
            d[i] - x - e2[i - 1] / q
        };
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Certified enclosures for the smallest and largest eigenvalues of a
/// Hermitian matrix: returns `((lo_min, hi_min), (lo_max, hi_max))`.
///
/// The input is trusted to be Hermitian (callers symmetrize first); only the
/// lower triangle and diagonal feed the reduction through the Hermitian update.
pub(crate) fn lambda_range(h: &ComplexMatrix) -> ((f64, f64), (f64, f64)) {
    let n = h.rows();
    if n == 1 {
        let x = h[(0, 0)].re;
        return ((x, x), (x, x));
    }
    if n == 2 {
        let a = h[(0, 0)].re;
        let c = h[(1, 1)].re;
        let b = 0.5 * (h[(0, 1)] + h[(1, 0)].conj());
        let mid = 0.5 * (a + c);
        let rad = ((0.5 * (a - c)).powi(2) + b.norm_sqr()).sqrt();
        let scale = (a.abs() + c.abs() + rad).max(1e-300);
        let fudge = 4.0 * f64::EPSILON * scale;
        return (
            (mid - rad - fudge, mid - rad + fudge),
            (mid + rad - fudge, mid + rad + fudge),
        );
    }
    let (d, e2) = tridiagonalize(h);
    let e: Vec<f64> = e2.iter().map(|&x| x.sqrt()).collect();
    let mut glo = f64::INFINITY;
    let mut ghi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { e[i - 1] } else { 0.0 };
        let right = if i < n - 1 { e[i] } else { 0.0 };
        glo = glo.min(d[i] - left - right);
        ghi = ghi.max(d[i] + left + right);
    }
    let scale = ghi.abs().max(glo.abs()).max(1.0);
    let pivmin = 1e-290 * scale;
    let eps_target = 1e-15 * scale;

    let bisect = |want_below: usize| -> (f64, f64) {
        // Smallest x with sturm_count(x) >= want_below encloses eigenvalue
        // number (want_below - 1) in ascending order.
        let mut lo = glo - eps_target;
        let mut hi = ghi + eps_target;
        for _ in 0..80 {
            if hi - lo <= eps_target {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if sturm_count(&d, &e2, mid, pivmin) >= want_below {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    };

    // Backward-error allowance for the reduction itself.
    let fudge = 1e-13 * scale;
    let (lo_max, hi_max) = bisect(n);
    let (lo_min, hi_min) = bisect(1);
    (
        (lo_min - fudge, hi_min + fudge),
        (lo_max - fudge, hi_max + fudge),
    )
}

/// Certified enclosure of the largest eigenvalue of a Hermitian matrix.
pub(crate) fn lambda_max_range(h: &ComplexMatrix) -> (f64, f64) {
    lambda_range(h).1
}

/// Largest singular value, `sqrt(lambda_max(m* m))`. Relative accuracy ~1e-14;
/// well inside the 1e-10 contract.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    let gram = &m.adjoint() * m;
    let (_, (lo, hi)) = lambda_range(&gram);
    let lam = 0.5 * (lo + hi);
    lam.max(0.0).sqrt()
}

/// Eigendecomposition of `m* m` with eigenvalues clamped at zero, shared by the
/// absolute-value and singular-function paths.
fn gram_eig(m: &ComplexMatrix) -> Result<HermEig> {
    let gram = &m.adjoint() * m;
    let mut eig = herm_eig(&gram)?;
    for lam in eig.eigenvalues.iter_mut() {
        if *lam < 0.0 {
            *lam = 0.0;
        }
    }
    Ok(eig)
}

/// `|m| = (m* m)^(1/2)`, the PSD absolute value.
pub fn abs_value(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    m.ensure_square()?;
    Ok(gram_eig(m)?.apply(|lam| lam.sqrt()))
}

/// Apply `phi` to the singular values of `m`: `V diag(phi(sigma_i)) V*` where
/// `m* m = V diag(sigma_i^2) V*`. Equivalent to `matfun_psd(abs_value(m), phi)`
/// with a single eigensolve.
pub fn singular_fun(m: &ComplexMatrix, phi: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    m.ensure_square()?;
    Ok(gram_eig(m)?.apply(|lam| phi(lam.sqrt())))
}

/// Functional calculus on a Hermitian PSD matrix: `V diag(phi(lambda)) V*`.
///
/// Eigenvalues in `[-1e-10 * max(1, ||p||), 0)` are rounding debris and clamp
/// to zero; anything below that band is a caller bug and errors out.
pub fn matfun_psd(p: &ComplexMatrix, phi: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let mut eig = herm_eig(p)?;
    let scale = eig
        .eigenvalues
        .iter()
        .fold(1.0f64, |acc, &l| acc.max(l.abs()));
    let band = -1e-10 * scale;
    for lam in eig.eigenvalues.iter_mut() {
        if *lam < band {
            return Err(Error::NegativeSpectrum { eigenvalue: *lam });
        }
        if *lam < 0.0 {
            *lam = 0.0;
        }
    }
    Ok(eig.apply(phi))
}

/// Polar decomposition `m = w p` with `p = |m|` and `w` a partial isometry on
/// the range of `p` (extended to a unitary by basis completion on the null
/// space; only the `w p = m` reconstruction is contract-bound).
pub fn polar_decompose(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = m.ensure_square()?;
    let eig = gram_eig(m)?;
    let p = eig.apply(|lam| lam.sqrt());

    let rank_tol = 1e-10 * eig.eigenvalues.last().copied().unwrap_or(0.0).sqrt().max(1.0);
    let v = &eig.eigenvectors;

    // Columns of U: m v_i / sigma_i on the range, completed on the null space.
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut fill_cols: Vec<usize> = Vec::new();
    for k in 0..n {
        let sigma = eig.eigenvalues[k].sqrt();
        if sigma > rank_tol {
            let vk: Vec<Complex64> = (0..n).map(|i| v[(i, k)]).collect();
            let mut col = vec![Complex64::new(0.0, 0.0); n];
            m.matvec_into(&vk, &mut col);
            for z in col.iter_mut() {
                *z /= sigma;
            }
            u_cols.push(col);
        } else {
            fill_cols.push(k);
            u_cols.push(vec![Complex64::new(0.0, 0.0); n]);
        }
    }
    // Gram-Schmidt completion against the range columns.
    let mut basis_idx = 0usize;
    for &k in &fill_cols {
        'candidates: while basis_idx < 2 * n {
            let mut cand = vec![Complex64::new(0.0, 0.0); n];
            cand[basis_idx % n] = if basis_idx < n {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 1.0)
            };
            basis_idx += 1;
            for (j, col) in u_cols.iter().enumerate() {
                if j == k {
                    continue;
                }
                let proj: Complex64 = col.iter().zip(&cand).map(|(a, b)| a.conj() * b).sum();
                for (ci, ai) in cand.iter_mut().zip(col.iter()) {
                    *ci -= proj * ai;
                }
            }
            let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                for z in cand.iter_mut() {
                    *z /= norm;
                }
                u_cols[k] = cand;
                break 'candidates;
            }
        }
    }

    // w = U V*
    let mut u = ComplexMatrix::zeros(n, n);
    for (k, col) in u_cols.iter().enumerate() {
        for i in 0..n {
            u[(i, k)] = col[i];
        }
    }
    let w = &u * &v.adjoint();
    Ok((w, p))
}
