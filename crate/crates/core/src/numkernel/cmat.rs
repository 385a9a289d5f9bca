// SPDX-License-Identifier: Apache-2.0

//! Dense square complex matrices for the small dimensions used throughout
//! the crate.
//!
//! A matrix may carry the `pi_scaled` flag, in which case every stored entry
//! is implicitly multiplied by π. Integer matrices such as `π·[[0, -1], [1, 0]]`
//! are then stored exactly and only expanded when arithmetic needs the value.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CScalar = Complex64;

#[inline]
pub fn c(re: f64, im: f64) -> CScalar {
    Complex64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> CScalar {
    Complex64::new(re, 0.0)
}

pub(crate) const ZERO: CScalar = Complex64::new(0.0, 0.0);
pub(crate) const ONE: CScalar = Complex64::new(1.0, 0.0);

#[derive(Clone, Serialize, Deserialize)]
pub struct CMat {
    dim: usize,
    data: Vec<CScalar>,
    pi_scaled: bool,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        CMat { dim, data: vec![ZERO; dim * dim], pi_scaled: false }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn diag(values: &[CScalar]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = *v;
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged input and non-finite entries.
    pub fn from_rows(rows: &[Vec<CScalar>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (j, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                data.push(*z);
            }
        }
        Ok(CMat { dim, data, pi_scaled: false })
    }

    /// Builds a matrix from fixed-size rows. Panics on non-finite entries.
    pub fn from_array<const D: usize>(rows: [[CScalar; D]; D]) -> Self {
        let rows: Vec<Vec<CScalar>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&rows).expect("finite entries")
    }

    pub fn from_real<const D: usize>(rows: [[f64; D]; D]) -> Self {
        let rows: Vec<Vec<CScalar>> =
            rows.iter().map(|r| r.iter().map(|&x| cr(x)).collect()).collect();
        Self::from_rows(&rows).expect("finite entries")
    }

    /// Marks the stored entries as multiples of π.
    pub fn into_pi_scaled(mut self) -> Self {
        if self.pi_scaled {
            self.data.iter_mut().for_each(|z| *z *= PI);
        }
        self.pi_scaled = true;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_pi_scaled(&self) -> bool {
        self.pi_scaled
    }

    /// Entry as stored, without the implicit π factor.
    pub fn stored(&self, i: usize, j: usize) -> CScalar {
        self.data[i * self.dim + j]
    }

    /// Entry value, with the π factor applied when the matrix is π-scaled.
    pub fn get(&self, i: usize, j: usize) -> CScalar {
        let z = self.data[i * self.dim + j];
        if self.pi_scaled {
            z * PI
        } else {
            z
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: CScalar) {
        assert!(!self.pi_scaled, "set on a pi-scaled matrix; expand first");
        self.data[i * self.dim + j] = value;
    }

    /// The same matrix with π multiplied into the entries.
    pub fn expanded(&self) -> CMat {
        if !self.pi_scaled {
            return self.clone();
        }
        CMat {
            dim: self.dim,
            data: self.data.iter().map(|z| z * PI).collect(),
            pi_scaled: false,
        }
    }

    pub fn rows(&self) -> Vec<Vec<CScalar>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn stored_rows(&self) -> Vec<Vec<CScalar>> {
        (0..self.dim).map(|i| self.data[i * self.dim..(i + 1) * self.dim].to_vec()).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let s: f64 = self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if self.pi_scaled {
            s * PI
        } else {
            s
        }
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let n = self.dim;
        (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> CScalar {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn determinant(&self) -> CScalar {
        let m = self.expanded();
        let a = |i, j| m.data[i * m.dim + j];
        match m.dim {
            1 => a(0, 0),
            2 => a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
            3 => {
                a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                    - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                    + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
            }
            _ => match lu_factor(&m) {
                Some((lu, _, sign)) => {
                    (0..m.dim).map(|i| lu.data[i * m.dim + i]).product::<CScalar>() * sign
                }
                None => ZERO,
            },
        }
    }

    pub fn scale(&self, s: CScalar) -> CMat {
        CMat {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
            pi_scaled: self.pi_scaled,
        }
    }

    pub fn scale_real(&self, s: f64) -> CMat {
        self.scale(cr(s))
    }

    pub fn conj_transpose(&self) -> CMat {
        let n = self.dim;
        let mut out = CMat { dim: n, data: vec![ZERO; n * n], pi_scaled: self.pi_scaled };
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        let n = self.dim;
        let mut out = CMat { dim: n, data: vec![ZERO; n * n], pi_scaled: self.pi_scaled };
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    /// Adds `s·I`.
    pub fn shift(&self, s: CScalar) -> CMat {
        let mut m = self.expanded();
        for i in 0..m.dim {
            m.data[i * m.dim + i] += s;
        }
        m
    }

    pub fn mul_vec(&self, v: &[CScalar]) -> Vec<CScalar> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<CScalar> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    pub fn from_columns(cols: &[Vec<CScalar>]) -> CMat {
        let n = cols.len();
        let mut m = CMat::zeros(n);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n);
            for i in 0..n {
                m.data[i * n + j] = col[i];
            }
        }
        m
    }

    pub fn powi(&self, k: u32) -> CMat {
        let mut acc = CMat::identity(self.dim);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse by Gaussian elimination with partial pivoting.
    pub fn inverse(&self) -> Option<CMat> {
        let m = self.expanded();
        let (lu, perm, _) = lu_factor(&m)?;
        let n = m.dim;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![ZERO; n];
            e[j] = ONE;
            cols.push(lu_solve(&lu, &perm, &e));
        }
        Some(CMat::from_columns(&cols))
    }

    /// Solves `self · X = rhs` for a square right-hand side.
    pub fn solve(&self, rhs: &CMat) -> Option<CMat> {
        let m = self.expanded();
        let (lu, perm, _) = lu_factor(&m)?;
        let cols: Vec<Vec<CScalar>> =
            (0..rhs.dim).map(|j| lu_solve(&lu, &perm, &rhs.column(j))).collect();
        Some(CMat::from_columns(&cols))
    }

    /// Largest absolute value among entries strictly below the diagonal.
    pub fn strictly_lower_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..i {
                s += self.get(i, j).norm_sqr();
            }
        }
        s.sqrt()
    }

    pub(crate) fn data(&self) -> &[CScalar] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

fn lu_factor(m: &CMat) -> Option<(CMat, Vec<usize>, CScalar)> {
    let n = m.dim;
    let mut lu = m.expanded();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = ONE;
    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, lu.data[i * n + k].norm()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if pmax == 0.0 {
            return None;
        }
        if p != k {
            for j in 0..n {
                lu.data.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
            sign = -sign;
        }
        let pivot = lu.data[k * n + k];
        for i in k + 1..n {
            let l = lu.data[i * n + k] / pivot;
            lu.data[i * n + k] = l;
            for j in k + 1..n {
                let u = lu.data[k * n + j];
                lu.data[i * n + j] -= l * u;
            }
        }
    }
    Some((lu, perm, sign))
}

fn lu_solve(lu: &CMat, perm: &[usize], b: &[CScalar]) -> Vec<CScalar> {
    let n = lu.dim;
    let mut y: Vec<CScalar> = perm.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        for j in 0..i {
            let l = lu.data[i * n + j];
            y[i] = y[i] - l * y[j];
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let u = lu.data[i * n + j];
            y[i] = y[i] - u * y[j];
        }
        y[i] /= lu.data[i * n + i];
    }
    y
}

impl PartialEq for CMat {
    /// Compares values, so a π-scaled matrix equals its expansion.
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        if self.pi_scaled == other.pi_scaled {
            return self.data == other.data;
        }
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j) == other.get(i, j)))
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_scaled {
            write!(f, "π·")?;
        }
        f.debug_list().entries(self.stored_rows()).finish()
    }
}

impl<'a> Add<&'a CMat> for &'a CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        if self.pi_scaled == rhs.pi_scaled {
            return CMat {
                dim: self.dim,
                data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
                pi_scaled: self.pi_scaled,
            };
        }
        &self.expanded() + &rhs.expanded()
    }
}

impl<'a> Sub<&'a CMat> for &'a CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        if self.pi_scaled == rhs.pi_scaled {
            return CMat {
                dim: self.dim,
                data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
                pi_scaled: self.pi_scaled,
            };
        }
        &self.expanded() - &rhs.expanded()
    }
}

impl<'a> Mul<&'a CMat> for &'a CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in mul");
        let (lhs, rhs, flag) = match (self.pi_scaled, rhs.pi_scaled) {
            (true, true) => (self.expanded(), rhs.expanded(), false),
            (a, b) => (self.clone(), rhs.clone(), a || b),
        };
        let n = lhs.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = lhs.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        CMat { dim: n, data, pi_scaled: flag }
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale(-ONE)
    }
}

impl Add for CMat {
    type Output = CMat;
    fn add(self, rhs: CMat) -> CMat {
        &self + &rhs
    }
}

impl Sub for CMat {
    type Output = CMat;
    fn sub(self, rhs: CMat) -> CMat {
        &self - &rhs
    }
}

impl Mul for CMat {
    type Output = CMat;
    fn mul(self, rhs: CMat) -> CMat {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_scaled_equals_expansion() {
        let a = CMat::from_real([[0.0, -1.0], [1.0, 0.0]]).into_pi_scaled();
        let b = CMat::from_real([[0.0, -PI], [PI, 0.0]]);
        assert_eq!(a, b);
        assert_eq!(a.expanded(), b);
        assert!((a.frobenius_norm() - b.frobenius_norm()).abs() < 1e-15);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![ONE, ZERO], vec![ONE]];
        assert!(matches!(CMat::from_rows(&rows), Err(Error::Dimension(_))));
    }

    #[test]
    fn non_finite_rejected() {
        let rows = vec![vec![ONE, ZERO], vec![cr(f64::NAN), ONE]];
        assert_eq!(CMat::from_rows(&rows).unwrap_err(), Error::NonFinite { row: 1, col: 0 });
    }

    #[test]
    fn inverse_roundtrip() {
        let m = CMat::from_array([
            [c(1.0, 2.0), c(0.5, 0.0), c(0.0, -1.0)],
            [c(-1.0, 0.0), c(3.0, 1.0), c(2.0, 0.0)],
            [c(0.0, 0.0), c(1.0, -1.0), c(4.0, 0.0)],
        ]);
        let inv = m.inverse().unwrap();
        let prod = &m * &inv;
        assert!((&prod - &CMat::identity(3)).frobenius_norm() < 1e-14);
        let det = m.determinant();
        assert!((det * inv.determinant() - ONE).norm() < 1e-14);
    }

    #[test]
    fn mixed_scaling_products() {
        let a = CMat::from_real([[1.0, 2.0], [3.0, 4.0]]).into_pi_scaled();
        let b = CMat::from_real([[0.0, 1.0], [1.0, 0.0]]);
        let ab = &a * &b;
        assert!(ab.is_pi_scaled());
        assert_eq!(ab, &a.expanded() * &b);
        let aa = &a * &a;
        assert!(!aa.is_pi_scaled());
        assert!((&aa - &(&a.expanded() * &a.expanded())).frobenius_norm() < 1e-12);
    }
}
