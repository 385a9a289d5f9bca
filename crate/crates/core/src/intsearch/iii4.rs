// SPDX-License-Identifier: Apache-2.0

//! Bounded exhaustive search over the `III₄` case: is there a scaling
//! `n ≥ 2` under which the entry equations still admit a solution?
//!
//! A candidate is a base tuple `(l₁, l₂, m₁, m₂, m₃, n₁, n₂)` together with a
//! shift `λ` and scaled eigenvalues `(ñ₁, ñ₂)`. After the forced
//! substitution `ρ̃ = nρ`, `σ̃ = n(σ − 2λρ)` the six residuals are affine in
//! `(ρ, σ)`; the candidate survives iff that linear system is consistent.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;

use super::{SearchBounds, SearchOutcome, Survivor};
use crate::error::{Error, Result};
use crate::families::{iii4_forced_residual_forms, AffineEntry, III4Spectra};
use crate::wide;

const BASE_SIDE: &str = "base side conditions";
const BASE_TRACE: &str = "base trace identity l1 + l2 + m1 + m2 + m3 = n1 + n2";
const SCALED_SIDE: &str = "scaled side conditions";
const SCALED_TRACE: &str = "scaled trace identity n(l1 + l2) + m1 + m2 + m3 + 3λ = ñ1 + ñ2";
const INCONSISTENT: &str = "residual system inconsistent";

/// Whether candidates violating the scaled trace identity are discarded
/// before the residual system is solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneMode {
    TraceIdentity,
    None,
}

/// Rank of a small integer matrix by fraction-free elimination with row
/// content removal.
fn rank(mut rows: Vec<Vec<i128>>) -> Result<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c] == 0 {
                continue;
            }
            let (a, b) = (rows[r][c], rows[i][c]);
            let g = a.gcd(&b);
            let (fa, fb) = (a / g, b / g);
            for k in c..cols {
                rows[i][k] = wide::sub(wide::mul(rows[i][k], fa)?, wide::mul(rows[r][k], fb)?)?;
            }
            let content = rows[i].iter().fold(0i128, |g, &x| g.gcd(&x));
            if content > 1 {
                rows[i].iter_mut().for_each(|x| *x /= content);
            }
        }
        r += 1;
    }
    Ok(r)
}

/// `P·(ρ, σ) = −c` has a complex (equivalently rational) solution.
pub(crate) fn consistent(forms: &[AffineEntry]) -> Result<bool> {
    let coeff: Vec<Vec<i128>> = forms.iter().map(|f| vec![f.rho, f.sigma]).collect();
    let aug: Vec<Vec<i128>> = forms.iter().map(|f| vec![f.rho, f.sigma, f.constant]).collect();
    Ok(rank(coeff)? == rank(aug)?)
}

#[derive(Default)]
struct Tally {
    scanned: u64,
    pruned: BTreeMap<&'static str, u64>,
    survivors: Vec<Survivor>,
}

impl Tally {
    fn prune(&mut self, reason: &'static str, count: u64) {
        self.scanned += count;
        *self.pruned.entry(reason).or_default() += count;
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.scanned += other.scanned;
        for (k, v) in other.pruned {
            *self.pruned.entry(k).or_default() += v;
        }
        self.survivors.extend(other.survivors);
        self
    }
}

fn survivor(base: &III4Spectra, lambda: i64, n_tilde: [i64; 2], forms: &[AffineEntry; 6]) -> Survivor {
    let names = ["l1", "l2", "m1", "m2", "m3", "n1", "n2", "lambda", "n1_tilde", "n2_tilde"];
    let values = [
        base.l[0], base.l[1], base.m[0], base.m[1], base.m[2], base.n[0], base.n[1], lambda, n_tilde[0],
        n_tilde[1],
    ];
    Survivor {
        parameters: names.iter().map(|s| s.to_string()).zip(values).collect(),
        residuals: forms.iter().flat_map(|f| [f.rho, f.sigma, f.constant]).collect(),
    }
}

/// All base tuples sharing `l₁`, in lexicographic order.
fn scan_slice(l1: i64, bound: i64, n: i64, prune: PruneMode) -> Result<Tally> {
    let side = (2 * bound + 1) as u64;
    let per_base = side.pow(3);
    let range = || -bound..=bound;
    let mut t = Tally::default();
    for l2 in range() {
        for m1 in range() {
            for m2 in range() {
                for m3 in range() {
                    for n1 in range() {
                        for n2 in range() {
                            let base = III4Spectra { l: [l1, l2], m: [m1, m2, m3], n: [n1, n2] };
                            if base.validate().is_err() {
                                t.prune(BASE_SIDE, per_base);
                                continue;
                            }
                            if !base.trace_consistent() {
                                t.prune(BASE_TRACE, per_base);
                                continue;
                            }
                            scan_scaled(&base, bound, n, prune, &mut t)?;
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

fn scan_scaled(base: &III4Spectra, bound: i64, n: i64, prune: PruneMode, t: &mut Tally) -> Result<()> {
    let target_base = n * (base.l[0] + base.l[1]) + base.m.iter().sum::<i64>();
    for lambda in -bound..=bound {
        for nt1 in -bound..=bound {
            for nt2 in -bound..=bound {
                if nt1 == 0 || nt2 == 0 || nt1 == nt2 {
                    t.prune(SCALED_SIDE, 1);
                    continue;
                }
                if prune == PruneMode::TraceIdentity && nt1 + nt2 != target_base + 3 * lambda {
                    t.prune(SCALED_TRACE, 1);
                    continue;
                }
                let forms = iii4_forced_residual_forms(base, lambda, n, [nt1, nt2])?;
                if consistent(&forms)? {
                    t.scanned += 1;
                    t.survivors.push(survivor(base, lambda, [nt1, nt2], &forms));
                } else {
                    t.prune(INCONSISTENT, 1);
                }
            }
        }
    }
    Ok(())
}

/// Every integer tuple in `[-bound, bound]^10` for the scaling `n`, with
/// the scaled trace identity used for pruning.
pub fn grobner_replacement_search(bound: i64, n: i64) -> Result<SearchOutcome> {
    grobner_replacement_search_with(bound, n, PruneMode::TraceIdentity)
}

pub fn grobner_replacement_search_with(bound: i64, n: i64, prune: PruneMode) -> Result<SearchOutcome> {
    if bound < 2 {
        return Err(Error::InvalidConfig(format!("box must be >= 2, got {bound}")));
    }
    if n < 1 {
        return Err(Error::InvalidConfig(format!("n must be >= 1, got {n}")));
    }
    // Entries grow like n·box⁴; keep them far inside the 2^126 budget.
    if (bound as i128).pow(4).saturating_mul(n as i128).saturating_mul(1 << 10) > 1 << 100 {
        return Err(Error::Overflow(format!("box {bound} with n = {n} exceeds the integer budget")));
    }
    let slices: Vec<Result<Tally>> =
        (-bound..=bound).into_par_iter().map(|l1| scan_slice(l1, bound, n, prune)).collect();
    let mut total = Tally::default();
    for s in slices {
        total = total.merge(s?);
    }
    // Every survivor must re-verify against the residual forms.
    for s in &total.survivors {
        let v: Vec<i64> = s.parameters.iter().map(|(_, x)| *x).collect();
        let base = III4Spectra { l: [v[0], v[1]], m: [v[2], v[3], v[4]], n: [v[5], v[6]] };
        let forms = iii4_forced_residual_forms(&base, v[7], n, [v[8], v[9]])?;
        if !consistent(&forms)? {
            return Err(Error::ContractViolation(format!("survivor {:?} failed re-verification", s.parameters)));
        }
    }
    let prune_note = match prune {
        PruneMode::TraceIdentity => "trace-identity pruning",
        PruneMode::None => "no scaled-trace pruning",
    };
    Ok(SearchOutcome {
        case: "iii4".into(),
        bounds: SearchBounds::Box { bound, n },
        tuples_scanned: total.scanned,
        pruned: total.pruned.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        survivors: total.survivors,
        discriminant: None,
        scope: format!(
            "all (l1, l2, m1, m2, m3, n1, n2, λ, ñ1, ñ2) in [-{bound}, {bound}] with scaling n = {n}, {prune_note}; \
             no claim outside this box"
        ),
    })
}
