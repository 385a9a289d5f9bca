// SPDX-License-Identifier: Apache-2.0

//! Exact integer machinery: perfect squares, the square-polynomial lemma,
//! discriminant scans and the bounded search over the `III₄` case.
//!
//! All arithmetic is checked 128-bit with a `2^126` budget; exceeding it is
//! reported as [`Error::Overflow`], never wrapped.

mod discriminant;
mod iii4;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wide;

pub use discriminant::{discriminant_scan_a1, discriminant_scan_iii2ii, DiscriminantSummary, ScanPoint};
pub use iii4::{grobner_replacement_search, grobner_replacement_search_with, PruneMode};

/// Integer square root of `n` when `n` is a perfect square.
pub fn perfect_square_root(n: i128) -> Result<Option<i128>> {
    if n.unsigned_abs() > wide::BUDGET as u128 {
        return Err(Error::Overflow(format!("{n} exceeds the 2^126 budget")));
    }
    if n < 0 {
        return Ok(None);
    }
    let r = (n as u128).isqrt() as i128;
    Ok((r * r == n).then_some(r))
}

pub fn is_perfect_square(n: i128) -> Result<bool> {
    Ok(perfect_square_root(n)?.is_some())
}

/// `P(T) = α²T² + βT + γ` with `α ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquarePoly {
    pub alpha: i128,
    pub beta: i128,
    pub gamma: i128,
}

impl SquarePoly {
    pub fn new(alpha: i128, beta: i128, gamma: i128) -> Result<Self> {
        if alpha < 1 {
            return Err(Error::InvalidConfig(format!("alpha must be >= 1, got {alpha}")));
        }
        Ok(SquarePoly { alpha, beta, gamma })
    }

    /// `λ²t² + (ν² − λ² − μ²)t + μ²`, the determinant of `(tA + B)/π` for
    /// the real two-dimensional family and the intro pair.
    pub fn theorem1(lambda: i128, mu: i128, nu: i128) -> Result<Self> {
        let beta = wide::sum(&[wide::mul(nu, nu)?, -wide::mul(lambda, lambda)?, -wide::mul(mu, mu)?])?;
        Self::new(lambda.abs(), beta, wide::mul(mu, mu)?)
    }

    pub fn eval(&self, t: i128) -> Result<i128> {
        let a2 = wide::mul(self.alpha, self.alpha)?;
        wide::sum(&[wide::prod(&[a2, t, t])?, wide::mul(self.beta, t)?, self.gamma])
    }

    /// `β² − 4α²γ`.
    pub fn discriminant(&self) -> Result<i128> {
        let a2 = wide::mul(self.alpha, self.alpha)?;
        wide::sub(wide::mul(self.beta, self.beta)?, wide::prod(&[4, a2, self.gamma])?)
    }
}

/// Whether `P` is the square of a degree-one polynomial: `β² = 4α²γ`.
pub fn lemma1_decide(p: &SquarePoly) -> Result<bool> {
    Ok(p.discriminant()? == 0)
}

/// Smallest `t ∈ [1, t_bound]` with `P(t)` not a perfect square. Calling it
/// on a polynomial that is a square is a contract violation.
pub fn lemma1_witness(p: &SquarePoly, t_bound: i128) -> Result<Option<i128>> {
    if lemma1_decide(p)? {
        return Err(Error::ContractViolation(format!("{p:?} is the square of a linear polynomial")));
    }
    for t in 1..=t_bound {
        if !is_perfect_square(p.eval(t)?)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchBounds {
    /// Every integer parameter in `[-bound, bound]`, scaling factor `n`.
    Box { bound: i64, n: i64 },
    /// `n = 1..=n_max`.
    Scan { n_max: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub parameters: Vec<(String, i64)>,
    pub residuals: Vec<i128>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub case: String,
    pub bounds: SearchBounds,
    pub tuples_scanned: u64,
    /// Reason → number of tuples discarded for it.
    pub pruned: BTreeMap<String, u64>,
    pub survivors: Vec<Survivor>,
    pub discriminant: Option<DiscriminantSummary>,
    pub scope: String,
}
