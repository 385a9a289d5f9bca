// SPDX-License-Identifier: Apache-2.0

//! Matrix exponentials for d ≤ 3.
//!
//! Two independent floating engines are provided so each can check the
//! other: [`ExpMethod::SpectralHermite`] evaluates the interpolating
//! polynomial of `exp` on the spectrum (the primary matrix function), and
//! [`ExpMethod::PadeSquaring`] uses rational approximation with scaling and
//! squaring. [`ExpMethod::ExactPiSnap`] handles diagonalizable matrices whose
//! eigenvalues are integer multiples of `iπ`, where `e^{iπk} = (−1)^k`
//! exactly.

mod interp;
mod pade;

use serde::{Deserialize, Serialize};

pub use pade::{expm_pade, expm_pade_with_theta, PADE_THETA_13, PADE_TRUST_NORM};

use crate::error::{Error, Result};
use crate::numkernel::{eigen_decompose, CMat, CScalar, Spectrum, ONE};
use crate::relations;

/// Eigenvector condition estimate above which the spectral engine refuses.
pub const MAX_EIGVEC_CONDITION: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExpMethod {
    SpectralHermite,
    PadeSquaring,
    ExactPiSnap,
    Auto,
}

pub fn expm(m: &CMat, method: ExpMethod) -> Result<CMat> {
    if m.dim() > 3 && method != ExpMethod::PadeSquaring {
        return Err(Error::Dimension(format!("expm needs d <= 3, got {}", m.dim())));
    }
    match method {
        ExpMethod::PadeSquaring => Ok(expm_pade(m)),
        ExpMethod::SpectralHermite => {
            let spec = eigen_decompose(m)?;
            spectral_hermite(m, &spec)
        }
        ExpMethod::ExactPiSnap => {
            let spec = eigen_decompose(m)?;
            exact_pi_snap(m, &spec)
        }
        ExpMethod::Auto => {
            let spec = eigen_decompose(m)?;
            if spec.snap.is_some() {
                if let Ok(e) = exact_pi_snap(m, &spec) {
                    return Ok(e);
                }
            }
            match spectral_hermite(m, &spec) {
                Err(Error::IllConditioned(_)) => Ok(expm_pade(m)),
                other => other,
            }
        }
    }
}

/// `exp(t·F + G)`.
pub fn expm_affine(f: &CMat, g: &CMat, t: CScalar, method: ExpMethod) -> Result<CMat> {
    crate::numkernel::check_same_dim(f, g)?;
    expm(&(&f.scale(t) + g), method)
}

fn spectral_hermite(m: &CMat, spec: &Spectrum) -> Result<CMat> {
    if spec.eigenvalues.iter().all(|e| e.multiplicity == 1) {
        let cond = spec.eigenvector_condition();
        if cond > MAX_EIGVEC_CONDITION {
            return Err(Error::IllConditioned(cond));
        }
    }
    let (nodes, coeffs) = interp::exp_newton(&spec.values());
    Ok(interp::newton_eval_matrix(&nodes, &coeffs, m))
}

fn exact_pi_snap(m: &CMat, spec: &Spectrum) -> Result<CMat> {
    let ks = spec
        .snap
        .as_ref()
        .ok_or_else(|| Error::SnapUnavailable("spectrum is not in iπℤ".into()))?;
    let d = m.dim();
    let mx = m.expanded();
    let exact: Vec<CScalar> =
        ks.iter().map(|&k| CScalar::new(0.0, std::f64::consts::PI * k as f64)).collect();

    // Diagonalizable iff the product over distinct eigenvalues annihilates M.
    let mut prod = CMat::identity(d);
    let mut scale = 1.0;
    for lam in &exact {
        let f = mx.shift(-lam);
        scale *= f.frobenius_norm().max(1.0);
        prod = &prod * &f;
    }
    if prod.frobenius_norm() > 1e-8 * scale {
        return Err(Error::SnapUnavailable("matrix is not diagonalizable".into()));
    }

    let odd: Vec<bool> = ks.iter().map(|k| k.rem_euclid(2) == 1).collect();
    if odd.iter().all(|&o| o) {
        return Ok(CMat::identity(d).scale(-ONE));
    }
    if odd.iter().all(|&o| !o) {
        return Ok(CMat::identity(d));
    }
    // Mixed parities: 2·P_even − I, with P_even the sum of spectral projectors.
    let mut p_even = CMat::zeros(d);
    for (i, lam_i) in exact.iter().enumerate() {
        if odd[i] {
            continue;
        }
        let mut p = CMat::identity(d);
        for (j, lam_j) in exact.iter().enumerate() {
            if i != j {
                p = (&p * &mx.shift(-lam_j)).scale(ONE / (lam_i - lam_j));
            }
        }
        p_even = &p_even + &p;
    }
    Ok(p_even.scale_real(2.0).shift(-ONE))
}

/// Polynomial `p` (coefficients lowest degree first) with `p(exp(M)) = M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogPoly {
    pub coefficients: Vec<CScalar>,
}

impl LogPoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, x: CScalar) -> CScalar {
        self.coefficients.iter().rev().fold(CScalar::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    pub fn eval_matrix(&self, m: &CMat) -> CMat {
        let m = m.expanded();
        let mut acc = CMat::zeros(m.dim());
        for &c in self.coefficients.iter().rev() {
            acc = (&acc * &m).shift(c);
        }
        acc
    }
}

/// Tolerance for the congruence check inside [`log_poly_recover`].
const LOG_CONGRUENCE_TOL: f64 = 1e-8;

/// Recovers `M` as a polynomial in `exp(M)` by Hermite interpolation of the
/// logarithm branch that maps `e^{λ_i}` back to `λ_i`.
pub fn log_poly_recover(m: &CMat) -> Result<LogPoly> {
    let spec = eigen_decompose(m)?;
    if !relations::congruence_free(&spec, LOG_CONGRUENCE_TOL) {
        return Err(Error::CongruenceViolation(format!(
            "eigenvalues {:?}",
            spec.eigenvalues.iter().map(|e| e.value).collect::<Vec<_>>()
        )));
    }
    let mut nodes = Vec::new();
    let mut lambdas = Vec::new();
    let mut group = Vec::new();
    for (gi, e) in spec.eigenvalues.iter().enumerate() {
        for _ in 0..e.multiplicity {
            nodes.push(e.value.exp());
            lambdas.push(e.value);
            group.push(gi);
        }
    }
    // Derivatives of the log branch: log^{(k)}(x) = (−1)^{k−1}(k−1)!/x^k.
    let derivs = |i: usize, order: usize| -> CScalar {
        if order == 0 {
            return lambdas[i];
        }
        let x = nodes[i];
        let sign = if order % 2 == 1 { 1.0 } else { -1.0 };
        let fact: f64 = (1..order).map(|k| k as f64).product();
        CScalar::new(sign * fact, 0.0) / x.powu(order as u32)
    };
    let newton = interp::hermite_newton(&nodes, &group, derivs);
    Ok(LogPoly { coefficients: interp::newton_to_monomial(&nodes, &newton) })
}
