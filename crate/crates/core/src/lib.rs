// SPDX-License-Identifier: Apache-2.0

//! Commuting matrix exponentials in dimensions 2 and 3.
//!
//! The crate checks the relation `exp(t·F + G) = exp(t·F)·exp(G)` and its
//! siblings on concrete matrix pairs, constructs the known non-commuting
//! solution families, solves `e^u = 1 + u`, and runs exact integer searches
//! over the parameter spaces of the three-dimensional cases.

pub mod error;
pub mod expmkit;
pub mod families;
pub mod intsearch;
pub mod numkernel;
pub mod relations;
pub mod simtrig;
pub mod uset;
pub(crate) mod wide;

pub use error::{Error, Result};
