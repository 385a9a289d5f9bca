// SPDX-License-Identifier: Apache-2.0

//! Simultaneous triangularizability of a pair over ℂ.
//!
//! A pair is triangularizable iff the commutator `[F, G]` lies in the
//! radical of the algebra it generates, i.e. iff `tr([F, G]·w) = 0` for every
//! word `w` in `F` and `G`. That test is finite: the algebra has dimension at
//! most `d²`. A positive verdict is backed by an explicit unitary basis built
//! by common-eigenvector deflation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::svd::{smallest_singular, stacked_columns};
use crate::numkernel::{
    check_same_dim, raw_eigenvalues, CMat, CScalar, Spectrum, CLUSTER_TOL, ONE, ZERO,
};

pub const DEFAULT_TOL: f64 = 1e-8;
/// Relative residual below which a word is linearly dependent on the basis.
const INDEPENDENCE_TOL: f64 = 1e-10;
/// Relative smallest singular value accepted for a common eigenvector.
const DEFLATION_TOL: f64 = 1e-6;
/// Relative strictly-lower mass accepted in the returned basis.
const TRIANGULAR_TOL: f64 = 1e-8;

/// A word in `F` and `G` (read left to right as a matrix product, `"I"` for
/// the empty word) with `tr([F, G]·w)` evaluated on the original inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceWitness {
    pub word: String,
    pub trace: CScalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigVerdict {
    pub triangularizable: bool,
    /// Unitary `T` with `T⁻¹FT` and `T⁻¹GT` upper triangular.
    pub basis: Option<CMat>,
    pub witness: Option<TraceWitness>,
    /// `max |tr([F̂, Ĝ]·ŵ)|` over an orthonormal basis of the algebra, with
    /// `F̂, Ĝ` normalized to unit Frobenius norm.
    pub max_trace: f64,
    pub algebra_dim: usize,
}

fn normalized(m: &CMat) -> CMat {
    let n = m.frobenius_norm();
    if n == 0.0 {
        m.expanded()
    } else {
        m.expanded().scale_real(1.0 / n)
    }
}

fn inner(a: &CMat, b: &CMat) -> CScalar {
    a.data().iter().zip(b.data()).map(|(x, y)| x.conj() * y).sum()
}

/// Evaluates a word over `{F, G}`; the empty word is `I`.
pub fn eval_word(word: &str, f: &CMat, g: &CMat) -> CMat {
    let mut acc = CMat::identity(f.dim());
    for ch in word.chars() {
        acc = match ch {
            'F' => &acc * f,
            'G' => &acc * g,
            _ => acc,
        };
    }
    acc
}

struct Algebra {
    words: Vec<String>,
    orthonormal: Vec<CMat>,
}

/// Closes `{I}` under left multiplication by `F` and `G`, keeping the words
/// that are linearly independent of those already kept.
fn generate_algebra(f: &CMat, g: &CMat) -> Algebra {
    let d = f.dim();
    let id = CMat::identity(d);
    let mut words = vec![String::new()];
    let mut raw = vec![id.clone()];
    let mut orthonormal = vec![id.scale_real(1.0 / (d as f64).sqrt())];
    let mut next = 0;
    while next < raw.len() && orthonormal.len() < d * d {
        let (w, m) = (words[next].clone(), raw[next].clone());
        next += 1;
        for (letter, gen) in [('F', f), ('G', g)] {
            if orthonormal.len() == d * d {
                break;
            }
            let cand = gen * &m;
            let size = cand.frobenius_norm();
            if size == 0.0 {
                continue;
            }
            let mut r = cand.clone();
            for q in &orthonormal {
                r = &r - &q.scale(inner(q, &r));
            }
            let rn = r.frobenius_norm();
            if rn > INDEPENDENCE_TOL * size {
                orthonormal.push(r.scale_real(1.0 / rn));
                words.push(format!("{letter}{w}"));
                raw.push(cand);
            }
        }
    }
    Algebra { words, orthonormal }
}

/// Unit vector `v` with `Fv = λv` and `Gv = μv` within `tol`, relative to
/// `max(1, ‖F‖ + ‖G‖)`. Eigenvalue pairs are tried in `(|λ|, |μ|)` order.
pub fn common_eigenvector(f: &CMat, g: &CMat, tol: f64) -> Result<Option<Vec<CScalar>>> {
    check_same_dim(f, g)?;
    let (f, g) = (f.expanded(), g.expanded());
    let scale = (f.frobenius_norm() + g.frobenius_norm()).max(1.0);
    let distinct = |m: &CMat| -> Result<Vec<CScalar>> {
        let tol = CLUSTER_TOL * m.frobenius_norm().max(1.0);
        Ok(Spectrum::from_values(&raw_eigenvalues(m)?, tol).eigenvalues.iter().map(|e| e.value).collect())
    };
    let mut pairs = Vec::new();
    for &l in &distinct(&f)? {
        for &m in &distinct(&g)? {
            pairs.push((l, m));
        }
    }
    pairs.sort_by(|a, b| a.0.norm().total_cmp(&b.0.norm()).then(a.1.norm().total_cmp(&b.1.norm())));
    for (l, m) in pairs {
        let cols = stacked_columns(&f.shift(-l), &g.shift(-m));
        let (sigma, v) = smallest_singular(&cols);
        if sigma <= tol * scale {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Unitary matrix whose first column is the unit vector `v`.
fn complete_to_unitary(v: &[CScalar]) -> CMat {
    let n = v.len();
    let mut cols = vec![v.to_vec()];
    for k in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e: Vec<CScalar> = (0..n).map(|i| if i == k { ONE } else { ZERO }).collect();
        for q in &cols {
            let p: CScalar = q.iter().zip(&e).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in e.iter_mut().zip(q) {
                *x -= p * y;
            }
        }
        let norm = e.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.5 {
            cols.push(e.iter().map(|z| z / norm).collect());
        }
    }
    CMat::from_columns(&cols)
}

fn trailing_block(m: &CMat) -> CMat {
    let n = m.dim() - 1;
    let mut out = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, m.get(i + 1, j + 1));
        }
    }
    out
}

fn deflate(f: &CMat, g: &CMat) -> Result<CMat> {
    let n = f.dim();
    if n == 1 {
        return Ok(CMat::identity(1));
    }
    let v = common_eigenvector(f, g, DEFLATION_TOL)?.ok_or(Error::DeflationFailure(n))?;
    let q = complete_to_unitary(&v);
    let qh = q.conj_transpose();
    let (fq, gq) = (&(&qh * f) * &q, &(&qh * g) * &q);
    let inner_t = deflate(&trailing_block(&fq), &trailing_block(&gq))?;
    let mut lift = CMat::identity(n);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            lift.set(i + 1, j + 1, inner_t.get(i, j));
        }
    }
    Ok(&q * &lift)
}

pub fn sim_triangularizable(f: &CMat, g: &CMat, tol: f64) -> Result<TrigVerdict> {
    check_same_dim(f, g)?;
    if f.dim() > 3 {
        return Err(Error::Dimension(format!("simtrig needs d <= 3, got {}", f.dim())));
    }
    let (fx, gx) = (f.expanded(), g.expanded());
    let (fh, gh) = (normalized(&fx), normalized(&gx));
    let comm = &(&fh * &gh) - &(&gh * &fh);
    let alg = generate_algebra(&fh, &gh);
    let max_trace = alg
        .orthonormal
        .iter()
        .map(|w| (&comm * w).trace().norm())
        .fold(0.0, f64::max);

    if max_trace > tol {
        let comm_raw = &(&fx * &gx) - &(&gx * &fx);
        let best = alg
            .words
            .iter()
            .map(|w| {
                let m = eval_word(w, &fh, &gh);
                let r = (&comm * &m).trace().norm() / m.frobenius_norm();
                (r, w)
            })
            .max_by(|a, b| a.0.total_cmp(&b.0))
            .map(|(_, w)| w.clone())
            .unwrap_or_default();
        let trace = (&comm_raw * &eval_word(&best, &fx, &gx)).trace();
        let word = if best.is_empty() { "I".to_string() } else { best };
        return Ok(TrigVerdict {
            triangularizable: false,
            basis: None,
            witness: Some(TraceWitness { word, trace }),
            max_trace,
            algebra_dim: alg.orthonormal.len(),
        });
    }

    let t = deflate(&fx, &gx)?;
    let th = t.conj_transpose();
    for m in [&fx, &gx] {
        let conj = &(&th * m) * &t;
        if conj.strictly_lower_norm() > TRIANGULAR_TOL * m.frobenius_norm() {
            return Err(Error::DeflationFailure(m.dim()));
        }
    }
    Ok(TrigVerdict {
        triangularizable: true,
        basis: Some(t),
        witness: None,
        max_trace,
        algebra_dim: alg.orthonormal.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{c, cr};

    fn intro() -> (CMat, CMat) {
        let a = CMat::diag(&[c(0.0, 60.0), c(0.0, -60.0)]).into_pi_scaled();
        let b = CMat::from_array([[c(0.0, -150.0), cr(-91.0)], [cr(391.0), c(0.0, 150.0)]])
            .into_pi_scaled();
        (a, b)
    }

    #[test]
    fn intro_pair_has_witness() {
        let (a, b) = intro();
        let v = sim_triangularizable(&a, &b, DEFAULT_TOL).unwrap();
        assert!(!v.triangularizable && v.basis.is_none());
        let w = v.witness.unwrap();
        assert!(w.trace.norm() > 1.0, "{w:?}");
        let comm = &(&a * &b) - &(&b * &a);
        let check = (&comm * &eval_word(&w.word.replace('I', ""), &a, &b)).trace();
        assert!((check - w.trace).norm() <= 1e-9 * w.trace.norm());
        assert_eq!(common_eigenvector(&a, &b, 1e-6).unwrap(), None);
    }

    #[test]
    fn canonical_pair_is_triangular() {
        let u = c(2.0888, 7.4615);
        let a = CMat::from_real([[0.0, 1.0], [0.0, 0.0]]);
        let b = CMat::from_array([[u, cr(0.0)], [cr(0.0), cr(0.0)]]);
        let v = sim_triangularizable(&a, &b, DEFAULT_TOL).unwrap();
        assert!(v.triangularizable && v.witness.is_none());
        let e = common_eigenvector(&a, &b, 1e-8).unwrap().unwrap();
        assert!(e[1].norm() < 1e-12 && (e[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_pair() {
        let f = CMat::diag(&[cr(1.0), cr(2.0)]);
        let g = CMat::diag(&[cr(3.0), cr(4.0)]);
        let e = common_eigenvector(&f, &g, 1e-8).unwrap().unwrap();
        assert!(e[0].norm() < 1e-12 || e[1].norm() < 1e-12);
        assert!(sim_triangularizable(&f, &g, DEFAULT_TOL).unwrap().triangularizable);
    }

    #[test]
    fn conjugated_triangular_pair() {
        let u1 = CMat::from_array([
            [cr(1.0), c(2.0, 1.0), cr(-1.0)],
            [cr(0.0), cr(-2.0), c(0.5, 0.5)],
            [cr(0.0), cr(0.0), c(0.0, 3.0)],
        ]);
        let u2 = CMat::from_array([
            [cr(4.0), cr(1.0), c(0.0, 1.0)],
            [cr(0.0), cr(4.0), cr(2.0)],
            [cr(0.0), cr(0.0), cr(-1.0)],
        ]);
        let s = CMat::from_array([
            [cr(1.0), cr(0.5), c(0.0, 0.2)],
            [cr(-0.3), cr(1.0), cr(0.4)],
            [c(0.1, 0.1), cr(0.2), cr(1.0)],
        ]);
        let si = s.inverse().unwrap();
        let (f, g) = (&(&s * &u1) * &si, &(&s * &u2) * &si);
        let v = sim_triangularizable(&f, &g, DEFAULT_TOL).unwrap();
        assert!(v.triangularizable);
        let t = v.basis.unwrap();
        let th = t.conj_transpose();
        assert!((&(&th * &f) * &t).strictly_lower_norm() <= 1e-8 * f.frobenius_norm());
        assert!((&(&th * &g) * &t).strictly_lower_norm() <= 1e-8 * g.frobenius_norm());
    }

    #[test]
    fn generic_pair_spans_full_algebra() {
        let f = CMat::from_real([[1.0, 2.0], [0.0, 3.0]]);
        let g = CMat::from_real([[0.0, 0.0], [1.0, 0.0]]);
        let v = sim_triangularizable(&f, &g, DEFAULT_TOL).unwrap();
        assert!(!v.triangularizable);
        assert_eq!(v.algebra_dim, 4);
    }
}
