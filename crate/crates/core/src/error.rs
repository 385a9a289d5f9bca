// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("eigenvector basis is ill-conditioned (condition estimate {0:.3e})")]
    IllConditioned(f64),

    #[error("exact iπ-snap path unavailable: {0}")]
    SnapUnavailable(String),

    #[error("spectrum is not 2iπ-congruence free: {0}")]
    CongruenceViolation(String),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("discriminant {0} is negative, the derived entries would be complex")]
    ComplexRoots(f64),

    #[error("value is not in the solution set of e^u = 1 + u (residual {0:.3e})")]
    InvalidU(f64),

    #[error("no sign assignment gives a rank-1 matrix (largest 2x2 minor {0:.3e})")]
    Rank(f64),

    #[error("Newton iteration did not converge after {iterations} steps (last residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("iteration converged to the excluded root u = 0")]
    ZeroRoot,

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("common-eigenvector deflation failed at dimension {0}")]
    DeflationFailure(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
