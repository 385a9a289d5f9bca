// SPDX-License-Identifier: Apache-2.0

//! `solve-u`: nonzero roots of e^u = 1 + u, one per branch.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use clap::Args;
use commexp_core::numkernel::c;
use commexp_core::uset::{enumerate_u, DEDUP_TOL, RESIDUAL_TOL};
use serde_json::json;

use crate::report::{Claim, Outcome};
use crate::verify::parse_int_range;

/// Published approximation of the branch-1 root.
const BRANCH_ONE: (f64, f64) = (2.0888, 7.4615);
const BRANCH_ONE_TOL: f64 = 2e-3;

#[derive(Debug, Clone, Args)]
pub struct SolveUArgs {
    /// Branch index or inclusive range `a..b`; branch 0 is skipped.
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
}

pub fn cmd_solve_u(args: &SolveUArgs) -> Result<Outcome> {
    let ks = parse_int_range(&args.k)?;
    if ks.windows(2).any(|w| w[1] != w[0] + 1) {
        bail!("--k takes one integer or a range a..b");
    }
    let (kmin, kmax) = (ks[0], *ks.last().unwrap());
    let branches = ks.iter().filter(|&&k| k != 0).count();
    if branches == 0 {
        bail!("branch k = 0 is excluded: it only contains the root u = 0");
    }
    let en = enumerate_u(kmin, kmax)?;

    let mut claim = Claim::new("one nonzero root of e^u = 1 + u per nonzero branch, all within the residual tolerance");
    claim.check(en.failures.is_empty(), format!("{} branch failures", en.failures.len()));
    claim.check(en.roots.len() == branches, format!("{} roots for {branches} branches", en.roots.len()));
    if (kmin..=kmax).contains(&1) {
        let want = c(BRANCH_ONE.0, BRANCH_ONE.1);
        let best = en.roots.iter().map(|r| (r.value - want).norm()).fold(f64::INFINITY, f64::min);
        claim.check(best <= BRANCH_ONE_TOL, format!("distance to 2.0888 + 7.4615i is {best:.3e}"));
    }

    let tolerances = BTreeMap::from([
        ("residual".to_string(), RESIDUAL_TOL),
        ("dedup".to_string(), DEDUP_TOL),
        ("branch 1 reference".to_string(), BRANCH_ONE_TOL),
    ]);
    let payload = json!({ "k_min": kmin, "k_max": kmax, "enumeration": en });
    Ok(Outcome { inputs: BTreeMap::new(), tolerances, payload, claim })
}
