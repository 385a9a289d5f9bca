// SPDX-License-Identifier: Apache-2.0

//! Closed-form eigenproblems for d ≤ 3.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::cmat::{cr, CMat, CScalar, ONE, ZERO};
use super::svd;
use crate::error::{Error, Result};

/// Relative clustering tolerance deciding when two eigenvalues are equal.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Relative tolerance for recognising an eigenvalue as `iπk`.
pub const SNAP_TOL: f64 = 1e-8;
/// Kernel threshold used when extracting eigenvectors.
const EIGVEC_KERNEL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: CScalar,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Distinct eigenvalues with algebraic multiplicities.
    pub eigenvalues: Vec<Eigenvalue>,
    /// Independent eigenvectors, as unit columns.
    pub eigenvectors: Option<Vec<Vec<CScalar>>>,
    /// `k_i` with `eigenvalue_i ≈ iπ·k_i`, when every eigenvalue snaps.
    pub snap: Option<Vec<i64>>,
}

impl Spectrum {
    /// Clusters raw values with the absolute tolerance `cluster_tol`.
    pub fn from_values(values: &[CScalar], cluster_tol: f64) -> Spectrum {
        let eigenvalues = cluster(values, cluster_tol);
        let snap = snap_all(&eigenvalues);
        Spectrum { eigenvalues, eigenvectors: None, snap }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    /// Number of distinct eigenvalues, `#(u)`.
    pub fn distinct_count(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvalues repeated according to multiplicity.
    pub fn values(&self) -> Vec<CScalar> {
        self.eigenvalues
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity))
            .collect()
    }

    pub fn eigenvector_rank(&self) -> usize {
        match &self.eigenvectors {
            None => 0,
            Some(vs) if vs.is_empty() => 0,
            Some(vs) => {
                let s = svd::jacobi_svd(vs).sigma;
                let smax = s.iter().cloned().fold(0.0, f64::max);
                s.iter().filter(|&&x| x > 1e-8 * smax).count()
            }
        }
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.eigenvector_rank() == self.dim()
    }

    /// Frobenius condition number of the eigenvector basis, infinite when the
    /// basis is incomplete.
    pub fn eigenvector_condition(&self) -> f64 {
        let Some(vs) = &self.eigenvectors else { return f64::INFINITY };
        if vs.len() != self.dim() {
            return f64::INFINITY;
        }
        let v = CMat::from_columns(vs);
        match v.inverse() {
            Some(inv) if inv.is_finite() => v.frobenius_norm() * inv.frobenius_norm(),
            _ => f64::INFINITY,
        }
    }
}

/// Monic characteristic polynomial `det(x·I − M)`, highest degree first.
pub fn char_poly(m: &CMat) -> Result<Vec<CScalar>> {
    let m = m.expanded();
    let a = |i, j| m.get(i, j);
    match m.dim() {
        1 => Ok(vec![ONE, -a(0, 0)]),
        2 => Ok(vec![ONE, -m.trace(), m.determinant()]),
        3 => {
            let e2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2)
                - a(0, 2) * a(2, 0)
                + a(1, 1) * a(2, 2)
                - a(1, 2) * a(2, 1);
            Ok(vec![ONE, -m.trace(), e2, -m.determinant()])
        }
        d => Err(Error::Dimension(format!("characteristic polynomial needs d <= 3, got {d}"))),
    }
}

pub fn poly_eval(coeffs: &[CScalar], x: CScalar) -> CScalar {
    coeffs.iter().fold(ZERO, |acc, &c| acc * x + c)
}

/// Evaluates a polynomial (highest degree first) at a matrix.
pub fn poly_eval_matrix(coeffs: &[CScalar], m: &CMat) -> CMat {
    let m = m.expanded();
    let mut acc = CMat::zeros(m.dim());
    for &c in coeffs {
        acc = (&acc * &m).shift(c);
    }
    acc
}

/// Roots of the characteristic polynomial, unclustered.
pub fn raw_eigenvalues(m: &CMat) -> Result<Vec<CScalar>> {
    let m = m.expanded();
    match m.dim() {
        1 => Ok(vec![m.get(0, 0)]),
        2 => {
            let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
            let mid = (a + d) * 0.5;
            let half = (a - d) * 0.5;
            let r = (half * half + b * c).sqrt();
            Ok(vec![mid + r, mid - r])
        }
        3 => {
            let shift = m.trace() / 3.0;
            let n = m.shift(-shift);
            let cp = char_poly(&n)?;
            let roots = depressed_cubic_roots(cp[2], cp[3]);
            let full = char_poly(&m)?;
            Ok(roots.iter().map(|&y| polish(&full, y + shift)).collect())
        }
        d => Err(Error::Dimension(format!("closed-form eigenvalues need d <= 3, got {d}"))),
    }
}

/// Roots of `y³ + p·y + q`.
fn depressed_cubic_roots(p: CScalar, q: CScalar) -> [CScalar; 3] {
    let scale = p.norm().sqrt().max(q.norm().cbrt());
    if scale == 0.0 {
        return [ZERO; 3];
    }
    let omega = CScalar::from_polar(1.0, 2.0 * PI / 3.0);
    // Trigonometric form unless p is negligible against q, where it overflows.
    if p.norm() > 1e-4 * scale * scale {
        let a = (-p / 3.0).sqrt();
        let w = -q / (a * a * a * 2.0);
        let theta = w.acos() / 3.0;
        let two_a = a * 2.0;
        [0.0, 1.0, 2.0].map(|k| two_a * (theta - cr(2.0 * PI * k / 3.0)).cos())
    } else {
        let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
        let s1 = -q / 2.0 + disc;
        let s2 = -q / 2.0 - disc;
        let s = if s1.norm() >= s2.norm() { s1 } else { s2 };
        let u = s.powf(1.0 / 3.0);
        if u == ZERO {
            return [ZERO; 3];
        }
        let mut out = [ZERO; 3];
        let mut uk = u;
        for slot in out.iter_mut() {
            *slot = uk - p / (uk * 3.0);
            uk *= omega;
        }
        out
    }
}

/// A few guarded Newton steps on the characteristic polynomial.
fn polish(coeffs: &[CScalar], mut x: CScalar) -> CScalar {
    let deriv: Vec<CScalar> = {
        let deg = coeffs.len() - 1;
        coeffs[..deg].iter().enumerate().map(|(i, &c)| c * (deg - i) as f64).collect()
    };
    let mut fx = poly_eval(coeffs, x);
    for _ in 0..3 {
        let dfx = poly_eval(&deriv, x);
        if dfx == ZERO {
            break;
        }
        let cand = x - fx / dfx;
        let fc = poly_eval(coeffs, cand);
        if fc.norm() < fx.norm() {
            x = cand;
            fx = fc;
        } else {
            break;
        }
    }
    x
}

fn cluster(values: &[CScalar], tol: f64) -> Vec<Eigenvalue> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    // Single-linkage grouping.
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol {
                let (li, lj) = (label[i], label[j]);
                for l in label.iter_mut() {
                    if *l == lj {
                        *l = li;
                    }
                }
            }
        }
    }
    let mut out: Vec<Eigenvalue> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for i in 0..n {
        if seen.contains(&label[i]) {
            continue;
        }
        seen.push(label[i]);
        let members: Vec<CScalar> =
            (0..n).filter(|&j| label[j] == label[i]).map(|j| values[j]).collect();
        let mean = members.iter().sum::<CScalar>() / members.len() as f64;
        out.push(Eigenvalue { value: mean, multiplicity: members.len() });
    }
    out
}

/// Integer `k` with `|λ − iπk| ≤ SNAP_TOL·max(1, |λ|)`, if any.
pub fn snap_to_i_pi(lambda: CScalar) -> Option<i64> {
    let k = (lambda.im / PI).round();
    if !k.is_finite() || k.abs() > 9.0e15 {
        return None;
    }
    let err = (lambda - CScalar::new(0.0, PI * k)).norm();
    (err <= SNAP_TOL * lambda.norm().max(1.0)).then_some(k as i64)
}

fn snap_all(eigs: &[Eigenvalue]) -> Option<Vec<i64>> {
    eigs.iter().map(|e| snap_to_i_pi(e.value)).collect()
}

/// Eigenvalues with multiplicities, eigenvectors and iπ-snap metadata.
pub fn eigen_decompose(m: &CMat) -> Result<Spectrum> {
    let m = m.expanded();
    let raw = raw_eigenvalues(&m)?;
    let tol = CLUSTER_TOL * m.frobenius_norm().max(1.0);
    let eigenvalues = cluster(&raw, tol);
    let mut vectors = Vec::new();
    for e in &eigenvalues {
        let shifted = m.shift(-e.value);
        let cols: Vec<Vec<CScalar>> = (0..m.dim()).map(|j| shifted.column(j)).collect();
        let mut kern = svd::kernel_of_columns(&cols, EIGVEC_KERNEL_TOL);
        if kern.is_empty() {
            kern.push(svd::smallest_singular(&cols).1);
        }
        kern.truncate(e.multiplicity);
        vectors.extend(kern);
    }
    let snap = snap_all(&eigenvalues);
    Ok(Spectrum { eigenvalues, eigenvectors: Some(vectors), snap })
}

/// Orthonormal basis of the numerical kernel: right singular vectors with
/// singular value at most `tol` times the largest.
pub fn null_space(m: &CMat, tol: f64) -> Vec<Vec<CScalar>> {
    let m = m.expanded();
    let cols: Vec<Vec<CScalar>> = (0..m.dim()).map(|j| m.column(j)).collect();
    svd::kernel_of_columns(&cols, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::cmat::c;

    #[test]
    fn diagonal_spectrum() {
        let s = eigen_decompose(&CMat::diag(&[cr(1.0), cr(2.0), cr(3.0)])).unwrap();
        assert_eq!(s.distinct_count(), 3);
        let mut v: Vec<f64> = s.values().iter().map(|z| z.re).collect();
        v.sort_by(f64::total_cmp);
        for (got, want) in v.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(s.is_diagonalizable());
    }

    #[test]
    fn nilpotent_has_one_eigenvector() {
        let s = eigen_decompose(&CMat::from_real([[0.0, 1.0], [0.0, 0.0]])).unwrap();
        assert_eq!(s.distinct_count(), 1);
        assert_eq!(s.eigenvalues[0].multiplicity, 2);
        assert_eq!(s.eigenvector_rank(), 1);
        let v = &s.eigenvectors.as_ref().unwrap()[0];
        assert!((v[0].norm() - 1.0).abs() < 1e-12 && v[1].norm() < 1e-12);
    }

    #[test]
    fn intro_a_snaps() {
        let a = CMat::diag(&[c(0.0, 60.0), c(0.0, -60.0)]).into_pi_scaled();
        let s = eigen_decompose(&a).unwrap();
        let mut snap = s.snap.clone().unwrap();
        snap.sort();
        assert_eq!(snap, vec![-60, 60]);
    }

    #[test]
    fn null_space_examples() {
        assert_eq!(null_space(&CMat::zeros(2), 1e-12).len(), 2);
        assert!(null_space(&CMat::identity(2), 1e-12).is_empty());
        let k = null_space(&CMat::from_real([[0.0, 1.0], [0.0, 0.0]]), 1e-12);
        assert_eq!(k.len(), 1);
        assert!((k[0][0].norm() - 1.0).abs() < 1e-14 && k[0][1].norm() < 1e-14);
    }

    #[test]
    fn triple_and_double_roots_cluster() {
        // Jordan block of size 3 at 2i.
        let j = CMat::from_array([
            [c(0.0, 2.0), ONE, ZERO],
            [ZERO, c(0.0, 2.0), ONE],
            [ZERO, ZERO, c(0.0, 2.0)],
        ]);
        let s = eigen_decompose(&j).unwrap();
        assert_eq!(s.distinct_count(), 1);
        assert!((s.eigenvalues[0].value - c(0.0, 2.0)).norm() < 1e-12);
        assert_eq!(s.eigenvector_rank(), 1);

        let d = CMat::diag(&[cr(1.0), cr(1.0), cr(-4.0)]);
        let s = eigen_decompose(&d).unwrap();
        assert_eq!(s.distinct_count(), 2);
        assert!(s.is_diagonalizable());
    }

    #[test]
    fn cubic_with_complex_coefficients() {
        let m = CMat::from_array([
            [c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0)],
            [c(0.5, 0.0), c(-1.0, 2.0), c(3.0, 0.0)],
            [c(0.0, 1.0), c(1.0, 1.0), c(2.0, -0.5)],
        ]);
        let vals = raw_eigenvalues(&m).unwrap();
        let cp = char_poly(&m).unwrap();
        for v in &vals {
            assert!(poly_eval(&cp, *v).norm() < 1e-12, "{v}");
        }
        let sum: CScalar = vals.iter().sum();
        assert!((sum - m.trace()).norm() < 1e-12);
    }
}
