// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{c, cr, CMat, CScalar};

/// Eigenvalues of `A + B` are `±iπν`, hence `exp(A + B) = (−1)^ν·I`.
pub fn intro_pair() -> (CMat, CMat) {
    let a = CMat::diag(&[c(0.0, 60.0), c(0.0, -60.0)]).into_pi_scaled();
    let b = CMat::from_array([[c(0.0, -150.0), cr(-91.0)], [cr(391.0), c(0.0, 150.0)]])
        .into_pi_scaled();
    (a, b)
}

/// Real two-dimensional family: `A = π[[0, −λ], [λ, 0]]` and
/// `B = π[[a, b], [c, −a]]` with spectra `±iπμ` for `B` and `±iπν` for `A + B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Real2DParams {
    pub lambda: i64,
    pub mu: i64,
    pub nu: i64,
    pub a: f64,
}

impl Real2DParams {
    pub fn new(lambda: i64, mu: i64, nu: i64, a: f64) -> Self {
        Real2DParams { lambda, mu, nu, a }
    }

    /// `b − c`, fixed by the spectrum of `A + B`.
    pub fn difference(&self) -> f64 {
        let (l, m, n) = (self.lambda as f64, self.mu as f64, self.nu as f64);
        (l * l + m * m - n * n) / l
    }

    /// `exp(A)·exp(B) = (−1)^{λ+μ}` and `exp(A + B) = (−1)^ν`, so
    /// `exp(A + B) = exp(A)·exp(B)` needs `ν ≡ λ + μ (mod 2)`.
    pub fn satisfies_parity(&self) -> bool {
        (self.lambda + self.mu - self.nu).rem_euclid(2) == 0
    }

    fn validate(&self) -> Result<()> {
        if self.lambda <= 0 || self.mu <= 0 || self.nu <= 0 {
            return Err(Error::Constraint("λ, μ, ν must be positive integers".into()));
        }
        if !self.a.is_finite() {
            return Err(Error::Constraint("a must be finite".into()));
        }
        let (l, m, n) = (self.lambda as i128, self.mu as i128, self.nu as i128);
        if n * n == (l + m) * (l + m) || n * n == (l - m) * (l - m) {
            return Err(Error::Constraint(format!("ν² = (λ ± μ)² for (λ, μ, ν) = ({l}, {m}, {n})")));
        }
        Ok(())
    }

    /// `(b, c)`: the larger root `c` of `c² + (b − c)c + μ² + a² = 0`.
    pub fn off_diagonal(&self) -> Result<(f64, f64)> {
        self.validate()?;
        let d = self.difference();
        let m = self.mu as f64;
        let disc = d * d - 4.0 * (m * m + self.a * self.a);
        if disc < 0.0 {
            return Err(Error::ComplexRoots(disc));
        }
        let c = (-d + disc.sqrt()) / 2.0;
        Ok((c + d, c))
    }
}

pub fn real2d_family(p: &Real2DParams) -> Result<(CMat, CMat)> {
    let (b, c) = p.off_diagonal()?;
    if p.a == 0.0 && b == -c {
        return Err(Error::Constraint("a = 0 and b = −c make A and B commute".into()));
    }
    let l = p.lambda as f64;
    let a = CMat::from_real([[0.0, -l], [l, 0.0]]).into_pi_scaled();
    let bm = CMat::from_real([[p.a, b], [c, -p.a]]).into_pi_scaled();
    Ok((a, bm))
}

/// Tolerance on `|e^u − 1 − u|` accepted by [`theorem2_family`].
pub const U_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Params {
    pub u: CScalar,
    pub sigma: CScalar,
    pub tau: CScalar,
    pub basis: Option<CMat>,
}

impl Theorem2Params {
    pub fn canonical(u: CScalar) -> Self {
        Theorem2Params { u, sigma: cr(0.0), tau: cr(0.0), basis: None }
    }

    pub fn u_residual(&self) -> f64 {
        (self.u.exp() - 1.0 - self.u).norm()
    }
}

/// `F = S·A·S⁻¹ + σI`, `G = S·B·S⁻¹ + τI` with `A = [[0, 1], [0, 0]]` and
/// `B = [[u, 0], [0, 0]]`. Since `AB = 0`, `A² = 0` and `e^u = 1 + u`, every
/// exponential involved is affine in `A` and `B`.
pub fn theorem2_family(p: &Theorem2Params) -> Result<(CMat, CMat)> {
    let r = p.u_residual();
    if !(r <= U_RESIDUAL_TOL) || p.u.norm() <= 1e-6 {
        return Err(Error::InvalidU(r));
    }
    let mut a = CMat::from_real([[0.0, 1.0], [0.0, 0.0]]);
    let mut b = CMat::from_array([[p.u, cr(0.0)], [cr(0.0), cr(0.0)]]);
    if let Some(s) = &p.basis {
        if s.dim() != 2 {
            return Err(Error::Dimension(format!("basis must be 2x2, got {}x{}", s.dim(), s.dim())));
        }
        let si = s
            .inverse()
            .filter(CMat::is_finite)
            .ok_or_else(|| Error::Constraint("basis is singular".into()))?;
        a = &(s * &a) * &si;
        b = &(s * &b) * &si;
    }
    Ok((a.shift(p.sigma), b.shift(p.tau)))
}

/// `A = diag(iπλ, −iπλ)`, `B = [[iπμ, 1], [0, −iπμ]]`.
pub fn dim2_case1_pair(lambda: i64, mu: i64) -> Result<(CMat, CMat)> {
    if lambda == 0 || mu == 0 || lambda + mu == 0 {
        return Err(Error::Constraint(format!("need λ, μ ≠ 0 and λ + μ ≠ 0, got ({lambda}, {mu})")));
    }
    let pi = std::f64::consts::PI;
    let (l, m) = (lambda as f64 * pi, mu as f64 * pi);
    let a = CMat::diag(&[c(0.0, l), c(0.0, -l)]);
    let b = CMat::from_array([[c(0.0, m), cr(1.0)], [cr(0.0), c(0.0, -m)]]);
    Ok((a, b))
}
