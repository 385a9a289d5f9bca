// SPDX-License-Identifier: Apache-2.0

//! Three-dimensional cases. Matrices are the `1/(2iπ)`-scaled
//! representatives; [`two_i_pi`] restores the actual pair.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{cr, CMat, CScalar};
use crate::wide;

/// `2iπ·M`.
pub fn two_i_pi(m: &CMat) -> CMat {
    m.scale(CScalar::new(0.0, 2.0 * std::f64::consts::PI))
}

/// Case with `#(f) = 2`, `#(g) = #(f+g) = 3`: `A` has spectrum `{l₁, 0, 0}`,
/// `B = diag(m₁, m₂, m₃)` and `A + B` has spectrum `{n₁, n₂, 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct III2Params {
    pub l1: i64,
    pub m: [i64; 3],
    pub n: [i64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum III2Form {
    SymmetricRank1,
    A1,
    /// Conjugate transpose of `A1`.
    A2,
    A3,
    A4,
}

impl III2Params {
    pub fn new(l1: i64, m: [i64; 3], n: [i64; 2]) -> Result<Self> {
        let p = III2Params { l1, m, n };
        p.validate()?;
        Ok(p)
    }

    /// `l₁` forced by `tr A + tr B = tr(A + B)`.
    pub fn consistent(m: [i64; 3], n: [i64; 2]) -> Result<Self> {
        Self::new(n[0] + n[1] - m.iter().sum::<i64>(), m, n)
    }

    pub fn validate(&self) -> Result<()> {
        let [m1, m2, m3] = self.m;
        let [n1, n2] = self.n;
        if self.l1 == 0 {
            return Err(Error::Constraint("l1 must be nonzero".into()));
        }
        if m1 == m2 || m2 == m3 || m1 == m3 {
            return Err(Error::Constraint(format!("m = {:?} must be pairwise distinct", self.m)));
        }
        if n1 == 0 || n2 == 0 || n1 == n2 {
            return Err(Error::Constraint(format!("n = {:?} must be distinct and nonzero", self.n)));
        }
        if m1 + m2 + m3 == n1 + n2 {
            return Err(Error::Constraint("m1 + m2 + m3 = n1 + n2".into()));
        }
        Ok(())
    }

    fn q(&self, x: i64) -> i64 {
        x * (x - self.n[0]) * (x - self.n[1])
    }

    /// `a_ii = −q(m_i)/Π_{j≠i}(m_i − m_j)` with `q(x) = x(x − n₁)(x − n₂)`.
    pub fn diagonal(&self) -> [Ratio<i64>; 3] {
        let m = self.m;
        std::array::from_fn(|i| {
            let den: i64 = (0..3).filter(|&j| j != i).map(|j| m[i] - m[j]).product();
            Ratio::new(-self.q(m[i]), den)
        })
    }

    /// Diagonal of `A1` (with `m₃ = 0`): `(m₁−n₁)(m₁−n₂)/(m₂−m₁)` and
    /// `(m₂−n₁)(m₂−n₂)/(m₁−m₂)`.
    pub fn a1_diagonal(&self) -> [Ratio<i64>; 2] {
        let [m1, m2, _] = self.m;
        let [n1, n2] = self.n;
        [
            Ratio::new((m1 - n1) * (m1 - n2), m2 - m1),
            Ratio::new((m2 - n1) * (m2 - n2), m1 - m2),
        ]
    }

    fn check_trace(&self, trace: Ratio<i64>) -> Result<()> {
        if trace != Ratio::from_integer(self.l1) {
            return Err(Error::Constraint(format!("tr A = {trace} but l1 = {}", self.l1)));
        }
        Ok(())
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Largest `|2×2 minor|` relative to `‖A‖²_F`.
pub fn rank1_defect(a: &CMat) -> f64 {
    let d = a.dim();
    let mut worst: f64 = 0.0;
    for r in 0..d {
        for s in r + 1..d {
            for i in 0..d {
                for j in i + 1..d {
                    let minor = a.get(r, i) * a.get(s, j) - a.get(r, j) * a.get(s, i);
                    worst = worst.max(minor.norm());
                }
            }
        }
    }
    worst / a.frobenius_norm().powi(2).max(1.0)
}

const RANK_TOL: f64 = 1e-10;

pub fn case3_iii2_matrix(p: &III2Params, form: III2Form) -> Result<(CMat, CMat)> {
    p.validate()?;
    let [m1, m2, m3] = p.m;
    let b = CMat::diag(&[cr(m1 as f64), cr(m2 as f64), cr(m3 as f64)]);
    let l1 = cr(p.l1 as f64);
    let (one, zero) = (cr(1.0), cr(0.0));
    let a = match form {
        III2Form::SymmetricRank1 => {
            let diag = p.diagonal();
            if diag.iter().any(|x| *x.numer() == 0) {
                return Err(Error::Constraint(format!("a11·a22·a33 = 0 for {p:?}")));
            }
            p.check_trace(diag.iter().sum())?;
            let v: Vec<CScalar> = diag.iter().map(|&x| cr(ratio_f64(x)).sqrt()).collect();
            let mut a = CMat::zeros(3);
            for i in 0..3 {
                for j in 0..3 {
                    a.set(i, j, v[i] * v[j]);
                }
            }
            for i in 0..3 {
                a.set(i, i, cr(ratio_f64(diag[i])));
            }
            a
        }
        III2Form::A1 | III2Form::A2 => {
            if m3 != 0 {
                return Err(Error::Constraint("forms A1 and A2 take m3 = 0".into()));
            }
            let [a11, a22] = p.a1_diagonal();
            if *a11.numer() == 0 || *a22.numer() == 0 {
                return Err(Error::Constraint(format!("a11·a22 = 0 for {p:?}")));
            }
            p.check_trace(a11 + a22)?;
            let (a11, a22) = (cr(ratio_f64(a11)), cr(ratio_f64(a22)));
            let s = (a11 * a22).sqrt();
            let a1 = CMat::from_array([[a11, s, s], [s, a22, a22], [zero, zero, zero]]);
            if form == III2Form::A1 {
                a1
            } else {
                a1.conj_transpose()
            }
        }
        III2Form::A3 => CMat::from_array([[l1, one, zero], [zero, zero, zero], [l1, one, zero]]),
        III2Form::A4 => CMat::from_array([[l1, zero, one], [l1, zero, one], [zero, zero, zero]]),
    };
    let defect = rank1_defect(&a);
    if defect > RANK_TOL {
        return Err(Error::Rank(defect));
    }
    Ok((a, b))
}

/// Coefficients of `det(x·I − (nA + B))` for the `III₂(i)` case, highest
/// degree first, in exact integers:
/// `x³ + ((n−1)Σm − n(n₁+n₂))x² + (−(n−1)e₂(m) + n·n₁n₂)x + (n−1)m₁m₂m₃`.
///
/// `A` has rank one, so every coefficient is affine in `n`.
pub fn char_poly_nab(p: &III2Params, n: i64) -> Result<[i128; 4]> {
    use wide::{add, mul, sub};
    let [m1, m2, m3] = p.m.map(i128::from);
    let [n1, n2] = p.n.map(i128::from);
    let n = n as i128;
    let s1 = wide::sum(&[m1, m2, m3])?;
    let e2 = wide::sum(&[mul(m1, m2)?, mul(m2, m3)?, mul(m3, m1)?])?;
    let e3 = wide::prod(&[m1, m2, m3])?;
    let c2 = sub(mul(n - 1, s1)?, mul(n, add(n1, n2)?)?)?;
    let c1 = add(-mul(n - 1, e2)?, wide::prod(&[n, n1, n2])?)?;
    let c0 = mul(n - 1, e3)?;
    Ok([1, c2, c1, c0])
}

/// Case with `#(f) = #(g) = 2`, `#(f+g) = 3`: `A = a·bᵀ`, `B = diag(m, 0, 0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct III2iiParams {
    pub l1: i64,
    pub m: i64,
    pub n1: i64,
    pub n2: i64,
    pub alpha: CScalar,
    pub a_vector: [CScalar; 3],
    pub b_vector: [CScalar; 3],
}

const PRODUCT_TOL: f64 = 1e-10;

impl III2iiParams {
    /// `(a₁b₁, a₂b₂, a₃b₃)` required by the case.
    pub fn products(m: i64, n1: i64, n2: i64, alpha: CScalar) -> [CScalar; 3] {
        let (mf, n1f, n2f) = (m as f64, n1 as f64, n2 as f64);
        [
            cr(-(mf - n1f) * (mf - n2f) / mf),
            -alpha + n1f * n2f / mf,
            alpha,
        ]
    }

    /// Exact products for rational `α`.
    pub fn exact_products(m: i64, n1: i64, n2: i64, alpha: Ratio<i64>) -> [Ratio<i64>; 3] {
        [
            Ratio::new(-(m - n1) * (m - n2), m),
            -alpha + Ratio::new(n1 * n2, m),
            alpha,
        ]
    }

    pub fn new(
        l1: i64,
        m: i64,
        n1: i64,
        n2: i64,
        alpha: CScalar,
        a_vector: [CScalar; 3],
        b_vector: [CScalar; 3],
    ) -> Result<Self> {
        let p = III2iiParams { l1, m, n1, n2, alpha, a_vector, b_vector };
        p.validate()?;
        Ok(p)
    }

    /// Derives `b` from `a` (`b_i = p_i/a_i`, zero where `a_i = 0`, which
    /// then needs `p_i = 0`) and `l₁ = n₁ + n₂ − m`.
    pub fn from_left_vector(m: i64, n1: i64, n2: i64, alpha: CScalar, a_vector: [CScalar; 3]) -> Result<Self> {
        if m == 0 {
            return Err(Error::Constraint("m must be nonzero".into()));
        }
        let prods = Self::products(m, n1, n2, alpha);
        let mut b_vector = [cr(0.0); 3];
        for i in 0..3 {
            if a_vector[i].norm() == 0.0 {
                if prods[i].norm() > PRODUCT_TOL * prods.iter().map(|z| z.norm()).fold(1.0, f64::max) {
                    return Err(Error::Constraint(format!("a{} = 0 needs a{}b{} = 0", i + 1, i + 1, i + 1)));
                }
            } else {
                b_vector[i] = prods[i] / a_vector[i];
            }
        }
        Self::new(n1 + n2 - m, m, n1, n2, alpha, a_vector, b_vector)
    }

    pub fn validate(&self) -> Result<()> {
        let (l1, m, n1, n2) = (self.l1, self.m, self.n1, self.n2);
        if l1 == 0 || m == 0 || n1 == 0 || n2 == 0 {
            return Err(Error::Constraint("l1, m, n1, n2 must be nonzero".into()));
        }
        if n1 == n2 || m == n1 + n2 {
            return Err(Error::Constraint("need n1 ≠ n2 and m ≠ n1 + n2".into()));
        }
        if l1 != n1 + n2 - m {
            return Err(Error::Constraint(format!("tr A = n1 + n2 − m = {} but l1 = {l1}", n1 + n2 - m)));
        }
        let want = Self::products(m, n1, n2, self.alpha);
        let scale = want.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for i in 0..3 {
            let got = self.a_vector[i] * self.b_vector[i];
            if (got - want[i]).norm() > PRODUCT_TOL * scale {
                return Err(Error::Constraint(format!("a{}b{} = {got} but the case needs {}", i + 1, i + 1, want[i])));
            }
        }
        Ok(())
    }
}

pub fn case3_iii2ii_matrix(p: &III2iiParams) -> Result<(CMat, CMat)> {
    p.validate()?;
    let mut a = CMat::zeros(3);
    for i in 0..3 {
        for j in 0..3 {
            a.set(i, j, p.a_vector[i] * p.b_vector[j]);
        }
    }
    Ok((a, CMat::diag(&[cr(p.m as f64), cr(0.0), cr(0.0)])))
}

/// Case with `#(f) = #(f+g) = 3`: spectra `{l₁, l₂, 0}`, `{m₁, m₂, m₃}`,
/// `{n₁, n₂, 0}`, and the two free parameters `ρ, σ` of six entries of `A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct III4Params {
    pub l: [i64; 2],
    pub m: [i64; 3],
    pub n: [i64; 2],
    pub rho: CScalar,
    pub sigma: CScalar,
}

/// Integer spectra of the `III₄` case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct III4Spectra {
    pub l: [i64; 2],
    pub m: [i64; 3],
    pub n: [i64; 2],
}

impl III4Spectra {
    pub fn validate(&self) -> Result<()> {
        let [l1, l2] = self.l;
        let [n1, n2] = self.n;
        if l1 == 0 || l2 == 0 || l1 == l2 {
            return Err(Error::Constraint(format!("l = {:?} must be distinct and nonzero", self.l)));
        }
        if self.m[0] == self.m[1] {
            return Err(Error::Constraint("m1 = m2".into()));
        }
        if n1 == 0 || n2 == 0 || n1 == n2 {
            return Err(Error::Constraint(format!("n = {:?} must be distinct and nonzero", self.n)));
        }
        Ok(())
    }

    /// `tr A + tr B = tr(A + B)`, i.e. `l₁ + l₂ + Σm = n₁ + n₂`.
    pub fn trace_consistent(&self) -> bool {
        self.l[0] + self.l[1] + self.m.iter().sum::<i64>() == self.n[0] + self.n[1]
    }

    /// The spectra of `(nA, B + λI, nA + B + λI)`, with `ñ` supplied.
    pub fn scaled(&self, lambda_shift: i64, n: i64, n_tilde: [i64; 2]) -> III4Spectra {
        III4Spectra {
            l: self.l.map(|x| n * x),
            m: self.m.map(|x| x + lambda_shift),
            n: n_tilde,
        }
    }
}

impl III4Params {
    pub fn spectra(&self) -> III4Spectra {
        III4Spectra { l: self.l, m: self.m, n: self.n }
    }
}

/// An entry `(ρ·rho + σ·sigma + constant)/denominator` with integer parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineEntry {
    pub rho: i128,
    pub sigma: i128,
    pub constant: i128,
}

impl AffineEntry {
    pub fn eval(&self, rho: CScalar, sigma: CScalar, denominator: i128) -> CScalar {
        (rho * self.rho as f64 + sigma * self.sigma as f64 + cr(self.constant as f64)) / denominator as f64
    }
}

/// Labels of the six determined entries, in the order used throughout.
pub const III4_ENTRIES: [&str; 6] = ["a33", "a12", "a23", "a31", "a11", "a22"];

/// The six entries of `A` fixed by the spectra, as affine forms in `(ρ, σ)`
/// over the common denominator `d = m₁ − m₂` (returned alongside).
pub fn iii4_entry_forms(s: &III4Spectra) -> Result<([AffineEntry; 6], i128)> {
    use wide::{add, mul, sub};
    let [l1, l2] = s.l.map(i128::from);
    let [m1, m2, m3] = s.m.map(i128::from);
    let [n1, n2] = s.n.map(i128::from);
    let d = sub(m1, m2)?;
    if d == 0 {
        return Err(Error::Constraint("m1 = m2".into()));
    }
    let sq_diff = |x: i128, y: i128| -> Result<i128> { mul(sub(x, y)?, add(x, y)?) };
    let l12 = mul(l1, l2)?;
    let tail = wide::prod(&[m3, sub(m3, n1)?, sub(m3, n2)?])?;
    let e2 = wide::sum(&[mul(m1, m2)?, mul(m2, m3)?, mul(m3, m1)?])?;
    let n12 = mul(n1, n2)?;
    let lsum = add(l1, l2)?;
    let diag_tail = |ms: i128| -> Result<i128> { wide::sum(&[mul(lsum, ms)?, l12, e2, -n12]) };
    let entry = |rho: i128, sigma: i128, constant: i128| AffineEntry { rho, sigma, constant };
    Ok((
        [
            entry(mul(d, d)?, 0, 0),
            entry(mul(sq_diff(m1, m2)?, d)?, mul(d, d)?, 0),
            entry(
                mul(sq_diff(m2, m3)?, d)?,
                mul(sub(m2, m3)?, d)?,
                -add(mul(sub(m2, m3)?, l12)?, tail)?,
            ),
            entry(
                mul(sq_diff(m3, m1)?, d)?,
                mul(sub(m3, m1)?, d)?,
                add(mul(sub(m1, m3)?, l12)?, tail)?,
            ),
            entry(mul(sub(m2, m3)?, d)?, 0, diag_tail(add(m1, m3)?)?),
            entry(mul(sub(m3, m1)?, d)?, 0, -diag_tail(add(m2, m3)?)?),
        ],
        d,
    ))
}

/// Residuals `n·a_ij − ã_ij` between the base entries and the entries of
/// the scaled system (spectra `n·l`, `m + λ`, `ñ`, parameters `ρ̃, σ̃`).
pub fn case3_iii4_residuals(
    p: &III4Params,
    lambda_shift: i64,
    n: i64,
    n_tilde: [i64; 2],
    rho_sigma_scaled: [CScalar; 2],
) -> Result<[CScalar; 6]> {
    let base = p.spectra();
    base.validate()?;
    if n_tilde[0] == 0 || n_tilde[1] == 0 || n_tilde[0] == n_tilde[1] {
        return Err(Error::Constraint(format!("ñ = {n_tilde:?} must be distinct and nonzero")));
    }
    let (bf, d) = iii4_entry_forms(&base)?;
    let (sf, ds) = iii4_entry_forms(&base.scaled(lambda_shift, n, n_tilde))?;
    let [rt, st] = rho_sigma_scaled;
    Ok(std::array::from_fn(|k| {
        bf[k].eval(p.rho, p.sigma, d) * n as f64 - sf[k].eval(rt, st, ds)
    }))
}

/// The residuals after substituting `ρ̃ = nρ` and `σ̃ = n(σ − 2λρ)`, as exact
/// affine forms in the base `(ρ, σ)` over the common denominator `m₁ − m₂`.
pub fn iii4_forced_residual_forms(
    base: &III4Spectra,
    lambda_shift: i64,
    n: i64,
    n_tilde: [i64; 2],
) -> Result<[AffineEntry; 6]> {
    use wide::{add, mul, sub};
    let (bf, _) = iii4_entry_forms(base)?;
    let (sf, _) = iii4_entry_forms(&base.scaled(lambda_shift, n, n_tilde))?;
    let (n, lam) = (n as i128, lambda_shift as i128);
    let mut out = [AffineEntry { rho: 0, sigma: 0, constant: 0 }; 6];
    for k in 0..6 {
        let (b, s) = (bf[k], sf[k]);
        out[k] = AffineEntry {
            rho: add(sub(mul(n, b.rho)?, mul(n, s.rho)?)?, wide::prod(&[2, lam, n, s.sigma])?)?,
            sigma: sub(mul(n, b.sigma)?, mul(n, s.sigma)?)?,
            constant: sub(mul(n, b.constant)?, s.constant)?,
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{char_poly, c};

    fn real_poly_close(got: &[CScalar], want: &[i128], tol: f64) -> bool {
        got.iter().zip(want).all(|(g, &w)| (g - cr(w as f64)).norm() <= tol * (w as f64).abs().max(1.0))
    }

    #[test]
    fn iii2_diagonal_example() {
        let p = III2Params::consistent([1, 2, 3], [4, 5]).unwrap();
        assert_eq!(p.l1, 3);
        let d = p.diagonal().map(|r| r.to_integer());
        assert_eq!(d, [-6, 12, -3]);
    }

    #[test]
    fn symmetric_rank1_spectrum() {
        let p = III2Params::consistent([1, 2, 3], [4, 5]).unwrap();
        let (a, b) = case3_iii2_matrix(&p, III2Form::SymmetricRank1).unwrap();
        assert!(rank1_defect(&a) < 1e-12);
        // A + B has spectrum {n1, n2, 0}.
        let cp = char_poly(&(&a + &b)).unwrap();
        assert!(real_poly_close(&cp, &[1, -9, 20, 0], 1e-10), "{cp:?}");
    }

    #[test]
    fn char_poly_nab_matches_matrix() {
        let p = III2Params::consistent([1, 2, 3], [4, 5]).unwrap();
        assert_eq!(char_poly_nab(&p, 2).unwrap(), [1, -12, 29, 6]);
        assert_eq!(char_poly_nab(&p, 1).unwrap(), [1, -9, 20, 0]);
        let (a, b) = case3_iii2_matrix(&p, III2Form::SymmetricRank1).unwrap();
        for n in 1..6 {
            let cp = char_poly(&(&a.scale_real(n as f64) + &b)).unwrap();
            assert!(real_poly_close(&cp, &char_poly_nab(&p, n).unwrap(), 1e-10), "n = {n}");
        }
    }

    #[test]
    fn a1_form_spectrum() {
        // m3 = 0, l1 = n1 + n2 − m1 − m2.
        let p = III2Params::consistent([1, 3, 0], [4, 5]).unwrap();
        let (a, b) = case3_iii2_matrix(&p, III2Form::A1).unwrap();
        let cp = char_poly(&(&a + &b)).unwrap();
        assert!(real_poly_close(&cp, &[1, -9, 20, 0], 1e-10), "{cp:?}");
        let (a2, _) = case3_iii2_matrix(&p, III2Form::A2).unwrap();
        assert_eq!(a2, a.conj_transpose());
        assert!(case3_iii2_matrix(&III2Params::consistent([1, 3, 2], [4, 5]).unwrap(), III2Form::A1).is_err());
    }

    #[test]
    fn a3_a4_forms() {
        let p = III2Params::new(2, [1, 2, 3], [4, 5]).unwrap();
        for form in [III2Form::A3, III2Form::A4] {
            let (a, _) = case3_iii2_matrix(&p, form).unwrap();
            assert_eq!(a.trace(), cr(2.0));
            assert!(rank1_defect(&a) == 0.0);
        }
    }

    #[test]
    fn iii2ii_example() {
        let prods = III2iiParams::exact_products(4, 1, 2, Ratio::from_integer(1));
        assert_eq!(prods, [Ratio::new(-3, 2), Ratio::new(-1, 2), Ratio::from_integer(1)]);
        assert_eq!(prods.iter().sum::<Ratio<i64>>(), Ratio::from_integer(-1));
        let p = III2iiParams::from_left_vector(4, 1, 2, cr(1.0), [cr(1.0), c(0.0, 1.0), cr(2.0)]).unwrap();
        assert_eq!(p.l1, -1);
        let (a, b) = case3_iii2ii_matrix(&p).unwrap();
        assert!((a.trace() - cr(-1.0)).norm() < 1e-14);
        let cp = char_poly(&(&a + &b)).unwrap();
        assert!(real_poly_close(&cp, &[1, -3, 2, 0], 1e-12), "{cp:?}");
    }

    #[test]
    fn iii2ii_zero_first_component() {
        // m = n1 makes a1b1 = 0, so a1 = 0 is admissible.
        let (a_vec, b_vec) = ([cr(0.0), cr(1.0), cr(1.0)], [cr(1.0), cr(1.5), cr(0.5)]);
        let p = III2iiParams::new(2, 1, 1, 2, cr(0.5), a_vec, b_vec).unwrap();
        let (a, b) = case3_iii2ii_matrix(&p).unwrap();
        let comm = &(&a * &b) - &(&b * &a);
        assert!(rank1_defect(&comm) < 1e-14 && comm.frobenius_norm() > 0.1);
        assert!(III2iiParams::from_left_vector(4, 1, 2, cr(1.0), [cr(0.0), cr(1.0), cr(1.0)]).is_err());
    }

    #[test]
    fn iii4_identity_scaling() {
        let p = III4Params { l: [1, 2], m: [3, -1, 0], n: [2, 3], rho: c(0.3, -1.0), sigma: c(2.0, 0.5) };
        let r = case3_iii4_residuals(&p, 0, 1, p.n, [p.rho, p.sigma]).unwrap();
        assert!(r.iter().all(|z| z.norm() < 1e-12), "{r:?}");
        let forms = iii4_forced_residual_forms(&p.spectra(), 0, 1, p.n).unwrap();
        assert!(forms.iter().all(|f| *f == AffineEntry { rho: 0, sigma: 0, constant: 0 }));
    }

    #[test]
    fn iii4_first_equation_forces_rho() {
        let p = III4Params { l: [1, 2], m: [3, -1, 0], n: [2, 3], rho: c(0.3, -1.0), sigma: c(2.0, 0.5) };
        let r = case3_iii4_residuals(&p, 1, 2, [5, 6], [p.rho * 2.0, cr(0.0)]).unwrap();
        assert!(r[0].norm() < 1e-12);
        let r = case3_iii4_residuals(&p, 1, 2, [5, 6], [p.rho * 2.0 + 0.1, cr(0.0)]).unwrap();
        assert!(r[0].norm() > 1e-3);
    }

    #[test]
    fn iii4_forced_forms_match_float_residuals() {
        let p = III4Params { l: [2, -1], m: [1, 4, -2], n: [3, -5], rho: c(0.7, 0.2), sigma: c(-1.1, 0.4) };
        let (lam, n, nt) = (2, 3, [4, -7]);
        let rt = p.rho * n as f64;
        let st = (p.sigma - p.rho * (2.0 * lam as f64)) * n as f64;
        let r = case3_iii4_residuals(&p, lam, n, nt, [rt, st]).unwrap();
        let forms = iii4_forced_residual_forms(&p.spectra(), lam, n, nt).unwrap();
        let d = (p.m[0] - p.m[1]) as i128;
        for k in 0..6 {
            assert!((forms[k].eval(p.rho, p.sigma, d) - r[k]).norm() < 1e-10, "entry {k}");
            assert_eq!((forms[k].rho, forms[k].sigma), (0, 0), "entry {k}");
        }
    }
}
