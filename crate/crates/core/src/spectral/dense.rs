//! Dense symmetric eigenvalues: Householder reduction to tridiagonal form on
//! packed lower-triangular storage, then implicit-shift QL.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result, Tree};

const MAX_QL_SWEEPS: usize = 64;

#[inline]
fn packed(i: usize, j: usize) -> usize {
    i * (i + 1) / 2 + j
}

/// Eigenvalues of the adjacency matrix of `t`, ascending.
pub(crate) fn adjacency_eigenvalues(t: &Tree) -> Result<Vec<f64>> {
    let n = t.n();
    let mut a = vec![0.0f64; n * (n + 1) / 2];
    for &(u, v) in t.edges() {
        let (hi, lo) = if u > v { (u, v) } else { (v, u) };
        a[packed(hi, lo)] = 1.0;
    }
    let (mut diag, mut off) = tridiagonalize(n, &mut a);
    drop(a);
    tridiagonal_ql(&mut diag, &mut off)
        .map_err(|sweeps| Error::Invariant(format!("QL iteration did not converge after {sweeps} sweeps (n={n})")))?;
    diag.sort_by(f64::total_cmp);
    Ok(diag)
}

/// Reduces the symmetric matrix held in `a` (packed lower triangle) to
/// tridiagonal form. Returns the diagonal and the sub-diagonal, where
/// `off[k]` couples `k` and `k + 1` and `off[n - 1] = 0`. `a` is destroyed.
pub(crate) fn tridiagonalize(n: usize, a: &mut [f64]) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n {
        diag[k] = a[packed(k, k)];
        if k + 1 >= n {
            break;
        }
        let m = n - k - 1;
        let x0 = a[packed(k + 1, k)];
        let mut sigma = 0.0;
        for i in 1..m {
            let x = a[packed(k + 1 + i, k)];
            sigma += x * x;
        }
        if sigma == 0.0 {
            off[k] = x0;
            continue;
        }
        let norm = libm::sqrt(x0 * x0 + sigma);
        let alpha = if x0 > 0.0 { -norm } else { norm };
        v[0] = x0 - alpha;
        for i in 1..m {
            v[i] = a[packed(k + 1 + i, k)];
        }
        let tau = 2.0 / (v[0] * v[0] + sigma);
        off[k] = alpha;

        // p = tau * S v, with S the trailing block, read from its lower triangle.
        let p = &mut w[..m];
        p.fill(0.0);
        for i in 0..m {
            let start = packed(k + 1 + i, k + 1);
            let row = &a[start..=start + i];
            let vi = v[i];
            let mut acc = row[i] * vi;
            for j in 0..i {
                acc += row[j] * v[j];
                p[j] += row[j] * vi;
            }
            p[i] += acc;
        }
        let mut pv = 0.0;
        for i in 0..m {
            p[i] *= tau;
            pv += p[i] * v[i];
        }
        let half = 0.5 * tau * pv;
        for i in 0..m {
            p[i] -= half * v[i];
        }
        // S -= v w^T + w v^T.
        for i in 0..m {
            let start = packed(k + 1 + i, k + 1);
            let row = &mut a[start..=start + i];
            let (vi, wi) = (v[i], p[i]);
            for j in 0..=i {
                row[j] -= vi * p[j] + wi * v[j];
            }
        }
    }
    (diag, off)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson-style shifts; overwrites `diag` with the (unsorted) eigenvalues.
/// On failure returns the sweep count reached.
pub(crate) fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64]) -> core::result::Result<(), usize> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    off[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let mut shift_total = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(diag[l].abs() + off[l].abs());
        let mut m = l;
        while m < n && off[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_QL_SWEEPS {
                    return Err(sweeps);
                }
                let g = diag[l];
                let mut p = (diag[l + 1] - g) / (2.0 * off[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                diag[l] = off[l] / (p + r);
                diag[l + 1] = off[l] * (p + r);
                let dl1 = diag[l + 1];
                let mut h = g - diag[l];
                for d in diag.iter_mut().skip(l + 2) {
                    *d -= h;
                }
                shift_total += h;

                p = diag[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = off[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * off[i];
                    h = c * p;
                    r = libm::hypot(p, off[i]);
                    off[i + 1] = s * r;
                    s = off[i] / r;
                    c = p / r;
                    p = c * diag[i] - s * g;
                    diag[i + 1] = h + s * (c * g + s * diag[i]);
                }
                p = -s * s2 * c3 * el1 * off[l] / dl1;
                off[l] = s * p;
                diag[l] = c * p;
                if off[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        diag[l] += shift_total;
        off[l] = 0.0;
    }
    Ok(())
}
