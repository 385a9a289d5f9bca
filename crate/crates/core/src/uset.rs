// SPDX-License-Identifier: Apache-2.0

//! Nonzero solutions of `e^u = 1 + u`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::CScalar;

pub const RESIDUAL_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 100;
/// Roots closer than this are the same root.
pub const DEDUP_TOL: f64 = 1e-6;
const ZERO_ROOT_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct URoot {
    pub value: CScalar,
    pub residual: f64,
    /// `k` with `2πk` nearest to `Im u`.
    pub branch_hint: i64,
}

pub fn u_residual(u: CScalar) -> f64 {
    (u.exp() - 1.0 - u).norm()
}

/// Newton's method on `h(u) = e^u − 1 − u`, `h'(u) = e^u − 1`.
pub fn solve_u(seed: CScalar) -> Result<URoot> {
    if seed.norm() == 0.0 {
        return Err(Error::ZeroRoot);
    }
    let mut u = seed;
    let mut residual = u_residual(u);
    for _ in 0..MAX_ITERATIONS {
        if u.norm() < ZERO_ROOT_RADIUS {
            return Err(Error::ZeroRoot);
        }
        let e = u.exp();
        let step = (e - 1.0 - u) / (e - 1.0);
        if !step.is_finite() {
            break;
        }
        u -= step;
        residual = u_residual(u);
        if residual <= RESIDUAL_TOL && step.norm() <= 1e-10 * u.norm().max(1.0) {
            if u.norm() < ZERO_ROOT_RADIUS {
                return Err(Error::ZeroRoot);
            }
            let branch_hint = (u.im / (2.0 * std::f64::consts::PI)).round() as i64;
            return Ok(URoot { value: u, residual, branch_hint });
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, residual })
}

/// Starting point for branch `k`: `ln(2π|k|) + 2πik`.
pub fn branch_seed(k: i64) -> CScalar {
    let tk = 2.0 * std::f64::consts::PI * k as f64;
    CScalar::new(tk.abs().ln(), tk)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchFailure {
    pub k: i64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UEnumeration {
    pub roots: Vec<URoot>,
    pub failures: Vec<BranchFailure>,
}

/// Solves each nonzero branch in `k_min..=k_max`; roots are deduplicated and
/// sorted by branch hint, then imaginary part.
pub fn enumerate_u(k_min: i64, k_max: i64) -> Result<UEnumeration> {
    if k_min > k_max {
        return Err(Error::InvalidConfig(format!("empty branch range {k_min}..{k_max}")));
    }
    let mut roots: Vec<URoot> = Vec::new();
    let mut failures = Vec::new();
    for k in (k_min..=k_max).filter(|&k| k != 0) {
        match solve_u(branch_seed(k)) {
            Ok(r) => {
                if roots.iter().all(|q| (q.value - r.value).norm() > DEDUP_TOL) {
                    roots.push(r);
                }
            }
            Err(e) => failures.push(BranchFailure { k, error: e.to_string() }),
        }
    }
    roots.sort_by(|a, b| a.branch_hint.cmp(&b.branch_hint).then(a.value.im.total_cmp(&b.value.im)));
    Ok(UEnumeration { roots, failures })
}
