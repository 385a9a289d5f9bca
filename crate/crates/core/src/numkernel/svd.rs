// SPDX-License-Identifier: Apache-2.0

//! One-sided (Hestenes) Jacobi SVD for small complex matrices, used for
//! numerical kernels and rank decisions.

use super::cmat::{CMat, CScalar, ONE, ZERO};

/// Right singular vectors and singular values of an `m × n` matrix given by
/// its `n` columns (each of length `m`). Values are returned unsorted and
/// paired with the matching column of `V`.
pub(crate) struct Svd {
    pub sigma: Vec<f64>,
    pub v: Vec<Vec<CScalar>>,
}

fn dot(a: &[CScalar], b: &[CScalar]) -> CScalar {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm2(a: &[CScalar]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

pub(crate) fn jacobi_svd(columns: &[Vec<CScalar>]) -> Svd {
    let n = columns.len();
    let mut a: Vec<Vec<CScalar>> = columns.to_vec();
    let mut v: Vec<Vec<CScalar>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect())
        .collect();

    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm2(&a[p]);
                let beta = norm2(&a[q]);
                let gamma = dot(&a[p], &a[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate the phase of column q so the coupling becomes real.
                let phase = gamma / g;
                let pinv = phase.conj();
                for z in a[q].iter_mut() {
                    *z *= pinv;
                }
                for z in v[q].iter_mut() {
                    *z *= pinv;
                }
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for k in 0..a[p].len() {
                    let x = a[p][k];
                    let y = a[q][k];
                    a[p][k] = x * cs - y * sn;
                    a[q][k] = x * sn + y * cs;
                }
                for k in 0..n {
                    let x = v[p][k];
                    let y = v[q][k];
                    v[p][k] = x * cs - y * sn;
                    v[q][k] = x * sn + y * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma = a.iter().map(|col| norm2(col).sqrt()).collect();
    Svd { sigma, v }
}

/// Orthonormal basis of the numerical kernel of an `m × n` matrix given by
/// columns: right singular vectors whose singular value is at most
/// `tol · σ_max`. A zero matrix has the whole space as kernel.
pub(crate) fn kernel_of_columns(columns: &[Vec<CScalar>], tol: f64) -> Vec<Vec<CScalar>> {
    let svd = jacobi_svd(columns);
    let smax = svd.sigma.iter().cloned().fold(0.0, f64::max);
    let mut idx: Vec<usize> = (0..svd.sigma.len())
        .filter(|&j| smax == 0.0 || svd.sigma[j] <= tol * smax)
        .collect();
    idx.sort_by(|&x, &y| svd.sigma[x].total_cmp(&svd.sigma[y]));
    idx.into_iter().map(|j| svd.v[j].clone()).collect()
}

/// Right singular vector for the smallest singular value, with that value.
pub(crate) fn smallest_singular(columns: &[Vec<CScalar>]) -> (f64, Vec<CScalar>) {
    let svd = jacobi_svd(columns);
    let j = (0..svd.sigma.len())
        .min_by(|&x, &y| svd.sigma[x].total_cmp(&svd.sigma[y]))
        .expect("at least one column");
    (svd.sigma[j], svd.v[j].clone())
}

#[cfg(test)]
pub(crate) fn singular_values(m: &CMat) -> Vec<f64> {
    let cols: Vec<Vec<CScalar>> = (0..m.dim()).map(|j| m.column(j)).collect();
    let mut s = jacobi_svd(&cols).sigma;
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Columns of `[top; bottom]` for two square matrices of equal size.
pub(crate) fn stacked_columns(top: &CMat, bottom: &CMat) -> Vec<Vec<CScalar>> {
    (0..top.dim())
        .map(|j| {
            let mut col = top.column(j);
            col.extend(bottom.column(j));
            col
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::cmat::c;

    #[test]
    fn singular_values_of_diagonal() {
        let m = CMat::diag(&[c(3.0, 0.0), c(0.0, -2.0), c(0.5, 0.0)]);
        let s = singular_values(&m);
        assert!((s[0] - 3.0).abs() < 1e-15);
        assert!((s[1] - 2.0).abs() < 1e-15);
        assert!((s[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn singular_values_match_gram_eigenvalues() {
        // [[1, i], [0, 1]]: σ² are the eigenvalues of [[1, i], [-i, 2]],
        // i.e. (3 ± √5)/2.
        let m = CMat::from_array([[c(1.0, 0.0), c(0.0, 1.0)], [ZERO, ONE]]);
        let s = singular_values(&m);
        let r5 = 5f64.sqrt();
        assert!((s[0] * s[0] - (3.0 + r5) / 2.0).abs() < 1e-14);
        assert!((s[1] * s[1] - (3.0 - r5) / 2.0).abs() < 1e-14);
    }
}
