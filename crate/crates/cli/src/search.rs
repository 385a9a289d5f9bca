// SPDX-License-Identifier: Apache-2.0

//! `search`: the bounded `III₄` search and the discriminant scans.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use commexp_core::families::{III2iiParams, III4Spectra};
use commexp_core::intsearch::{
    discriminant_scan_a1, discriminant_scan_iii2ii, grobner_replacement_search_with, PruneMode, SearchOutcome,
};
use num_rational::Ratio;

use crate::report::{Claim, Outcome};

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[command(subcommand)]
    pub case: SearchCase,
}

#[derive(Debug, Clone, Subcommand)]
pub enum SearchCase {
    /// Every integer tuple of the III4 case in a box, for one scaling n.
    Iii4 {
        #[arg(long = "box")]
        bound: i64,
        #[arg(long)]
        n: i64,
        /// Skip the scaled trace-identity pruning.
        #[arg(long)]
        no_prune: bool,
    },
    /// Squareness of the A1 discriminant for n = 1..nmax.
    A1Discriminant {
        #[arg(long, num_args = 2, allow_hyphen_values = true)]
        m: Vec<i64>,
        #[arg(long, num_args = 2, allow_hyphen_values = true)]
        n: Vec<i64>,
        #[arg(long, default_value_t = 50)]
        nmax: i64,
    },
    /// Squareness of the III2(ii) discriminant for n = 1..nmax.
    Iii2iiDiscriminant {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "products")]
        m: Option<i64>,
        #[arg(long, num_args = 2, allow_hyphen_values = true, requires = "m")]
        n: Vec<i64>,
        /// Rational `p/q` fixing a3·b3.
        #[arg(long, allow_hyphen_values = true, requires = "m")]
        alpha: Option<String>,
        /// The three products a_i·b_i directly, as rationals.
        #[arg(long, num_args = 3, allow_hyphen_values = true)]
        products: Vec<String>,
        #[arg(long, default_value_t = 50)]
        nmax: i64,
    },
}

pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let s = s.trim();
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: i64 = p.trim().parse().with_context(|| format!("bad numerator in {s:?}"))?;
    let q: i64 = q.trim().parse().with_context(|| format!("bad denominator in {s:?}"))?;
    if q == 0 {
        bail!("zero denominator in {s:?}");
    }
    Ok(Ratio::new(p, q))
}

fn widen(r: Ratio<i64>) -> Ratio<i128> {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

pub fn cmd_search(args: &SearchArgs) -> Result<Outcome> {
    let (outcome, claim) = match &args.case {
        &SearchCase::Iii4 { bound, n, no_prune } => {
            let prune = if no_prune { PruneMode::None } else { PruneMode::TraceIdentity };
            let out = grobner_replacement_search_with(bound, n, prune)?;
            let claim = iii4_claim(&out, bound, n);
            (out, claim)
        }
        SearchCase::A1Discriminant { m, n, nmax } => {
            let out = discriminant_scan_a1(m[0], m[1], n[0], n[1], *nmax)?;
            let claim = discriminant_claim(&out);
            (out, claim)
        }
        SearchCase::Iii2iiDiscriminant { m, n, alpha, products, nmax } => {
            let (m, prods) = match (m, products.is_empty()) {
                (Some(m), true) => {
                    if n.len() != 2 {
                        bail!("--n needs two values");
                    }
                    let alpha = parse_ratio(alpha.as_deref().context("--alpha is required with --m and --n")?)?;
                    if *m == 0 {
                        bail!("--m must be nonzero");
                    }
                    (*m, III2iiParams::exact_products(*m, n[0], n[1], alpha))
                }
                (Some(m), false) => {
                    let p: Vec<_> = products.iter().map(|s| parse_ratio(s)).collect::<Result<_>>()?;
                    (*m, [p[0], p[1], p[2]])
                }
                (None, _) => bail!("--m is required"),
            };
            let out = discriminant_scan_iii2ii(prods.map(widen), m, *nmax)?;
            let claim = discriminant_claim(&out);
            (out, claim)
        }
    };
    let payload = serde_json::to_value(&outcome)?;
    Ok(Outcome { inputs: BTreeMap::new(), tolerances: BTreeMap::new(), payload, claim })
}

fn iii4_claim(out: &SearchOutcome, bound: i64, n: i64) -> Claim {
    let pruned: u64 = out.pruned.values().sum();
    let scanned_ok = out.tuples_scanned == pruned + out.survivors.len() as u64
        && out.tuples_scanned == (2 * bound as u64 + 1).pow(10);
    if n >= 2 {
        let mut c = Claim::new(format!("no tuple in [-{bound}, {bound}]^10 survives the scaling n = {n}"));
        c.check(scanned_ok, format!("{} tuples scanned", out.tuples_scanned));
        c.check(out.survivors.is_empty(), format!("{} survivors", out.survivors.len()));
        c
    } else {
        let mut c = Claim::new(format!("with n = 1 every admissible base tuple in [-{bound}, {bound}]^7 survives"));
        c.check(scanned_ok, format!("{} tuples scanned", out.tuples_scanned));
        let mut missing = 0u64;
        let mut admissible = 0u64;
        let r = -bound..=bound;
        for l1 in r.clone() {
            for l2 in r.clone() {
                for m1 in r.clone() {
                    for m2 in r.clone() {
                        for m3 in r.clone() {
                            for n1 in r.clone() {
                                for n2 in r.clone() {
                                    let base = III4Spectra { l: [l1, l2], m: [m1, m2, m3], n: [n1, n2] };
                                    if base.validate().is_err() || !base.trace_consistent() {
                                        continue;
                                    }
                                    admissible += 1;
                                    let want = [l1, l2, m1, m2, m3, n1, n2, 0, n1, n2];
                                    let found = out.survivors.iter().any(|s| {
                                        s.parameters.iter().map(|(_, x)| *x).eq(want.iter().copied())
                                    });
                                    missing += u64::from(!found);
                                }
                            }
                        }
                    }
                }
            }
        }
        c.check(missing == 0, format!("{admissible} admissible base tuples, {missing} without a survivor"));
        c
    }
}

fn discriminant_claim(out: &SearchOutcome) -> Claim {
    let mut c = Claim::new(
        "the square-polynomial test agrees with the vanishing condition, and a non-square value appears iff it fails",
    );
    let Some(d) = &out.discriminant else {
        c.check(false, "no discriminant summary");
        return c;
    };
    c.check(d.agree, format!("lemma decide {} vs vanishing condition {}", d.lemma1_decide, d.null_condition));
    if d.lemma1_decide {
        c.check(d.first_failure.is_none(), "every scanned value is a perfect square");
    } else {
        c.check(d.first_failure.is_some(), format!("first non-square at n = {:?}", d.first_failure));
    }
    c
}
