// SPDX-License-Identifier: Apache-2.0

//! Decides the exponential relations between a pair `(F, G)`:
//!
//! * `FG = GF` ([`Relation::Commute`]),
//! * `exp(tF + G) = exp(tF)·exp(G)` ([`Relation::SumProduct`]), which at
//!   `t = 1` is `exp(F + G) = exp(F)·exp(G)`,
//! * `exp(tF + G) = exp(G)·exp(tF)` ([`Relation::SumProductSwapped`]),
//! * `exp(F) = exp(G)` ([`Relation::ExpEqual`]),
//! * `exp(F)·exp(G) = exp(G)·exp(F)` ([`Relation::ExpSwap`]).
//!
//! Every verdict carries the relative Frobenius residual of its defining
//! equation and holds iff that residual is within the tolerance used.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expmkit::{expm, ExpMethod};
use crate::numkernel::{check_same_dim, cr, eigen_decompose, relative_residual, CMat, CScalar, Spectrum};
use crate::simtrig;

/// Tolerance for `|t| ≤ 5`.
pub const TOL_SMALL_T: f64 = 1e-9;
/// Tolerance for `5 < |t| ≤ 20`; exponential conditioning grows with `t·‖F‖`.
pub const TOL_LARGE_T: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    Commute,
    SumProduct,
    SumProductSwapped,
    ExpEqual,
    ExpSwap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationVerdict {
    pub relation: Relation,
    pub t: Option<CScalar>,
    pub holds: bool,
    pub residual: f64,
    pub tol: f64,
}

impl RelationVerdict {
    fn new(relation: Relation, t: Option<CScalar>, residual: f64, tol: f64) -> Self {
        RelationVerdict { relation, t, holds: residual <= tol, residual, tol }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Tolerance {
    Fixed(f64),
    /// [`TOL_SMALL_T`] up to `|t| = 5`, [`TOL_LARGE_T`] beyond.
    Graded,
}

impl Tolerance {
    pub fn for_t(&self, t: f64) -> f64 {
        match *self {
            Tolerance::Fixed(x) => x,
            Tolerance::Graded if t.abs() <= 5.0 => TOL_SMALL_T,
            Tolerance::Graded => TOL_LARGE_T,
        }
    }
}

/// Integer sample points `t_0 = 1 < t_1 < …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TScanConfig {
    t_values: Vec<i64>,
    pub tol: Tolerance,
}

impl TScanConfig {
    pub fn new(t_values: Vec<i64>, tol: Tolerance) -> Result<Self> {
        if t_values.first() != Some(&1) {
            return Err(Error::InvalidConfig("t values must start at 1".into()));
        }
        if t_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig("t values must be strictly increasing".into()));
        }
        if let Tolerance::Fixed(x) = tol {
            if !(x > 0.0) {
                return Err(Error::InvalidConfig(format!("tolerance must be positive, got {x}")));
            }
        }
        Ok(TScanConfig { t_values, tol })
    }

    /// `t = 1, 2, …, last` with graded tolerances.
    pub fn up_to(last: i64) -> Result<Self> {
        Self::new((1..=last).collect(), Tolerance::Graded)
    }

    pub fn t_values(&self) -> &[i64] {
        &self.t_values
    }

    /// Whether `t_1 = 2`, as the three-dimensional results require.
    pub fn starts_one_two(&self) -> bool {
        self.t_values.get(1) == Some(&2)
    }
}

/// Relation checks with a fixed exponential engine.
#[derive(Debug, Clone, Copy)]
pub struct RelationChecker {
    pub method: ExpMethod,
}

impl Default for RelationChecker {
    fn default() -> Self {
        RelationChecker { method: ExpMethod::Auto }
    }
}

impl RelationChecker {
    pub fn new(method: ExpMethod) -> Self {
        RelationChecker { method }
    }

    pub fn commute(&self, f: &CMat, g: &CMat, tol: f64) -> Result<RelationVerdict> {
        check_same_dim(f, g)?;
        let c = &(f * g) - &(g * f);
        let denom = (f.frobenius_norm() * g.frobenius_norm()).max(1.0);
        Ok(RelationVerdict::new(Relation::Commute, None, c.frobenius_norm() / denom, tol))
    }

    pub fn star(&self, f: &CMat, g: &CMat, t: CScalar, tol: f64) -> Result<RelationVerdict> {
        check_same_dim(f, g)?;
        let tf = f.scale(t);
        let lhs = expm(&(&tf + g), self.method)?;
        let rhs = &expm(&tf, self.method)? * &expm(g, self.method)?;
        let r = relative_residual(&lhs, &rhs)?;
        Ok(RelationVerdict::new(Relation::SumProduct, Some(t), r, tol))
    }

    pub fn star_swapped(&self, f: &CMat, g: &CMat, t: CScalar, tol: f64) -> Result<RelationVerdict> {
        check_same_dim(f, g)?;
        let tf = f.scale(t);
        let lhs = expm(&(&tf + g), self.method)?;
        let rhs = &expm(g, self.method)? * &expm(&tf, self.method)?;
        let r = relative_residual(&lhs, &rhs)?;
        Ok(RelationVerdict::new(Relation::SumProductSwapped, Some(t), r, tol))
    }

    pub fn exp_equal(&self, f: &CMat, g: &CMat, tol: f64) -> Result<RelationVerdict> {
        check_same_dim(f, g)?;
        let r = relative_residual(&expm(f, self.method)?, &expm(g, self.method)?)?;
        Ok(RelationVerdict::new(Relation::ExpEqual, None, r, tol))
    }

    pub fn exp_swap(&self, f: &CMat, g: &CMat, tol: f64) -> Result<RelationVerdict> {
        check_same_dim(f, g)?;
        let ef = expm(f, self.method)?;
        let eg = expm(g, self.method)?;
        let r = relative_residual(&(&ef * &eg), &(&eg * &ef))?;
        Ok(RelationVerdict::new(Relation::ExpSwap, None, r, tol))
    }

    /// `(*)` and its swapped form at every scanned `t`, in `t` order.
    pub fn scan_integer_t(&self, f: &CMat, g: &CMat, cfg: &TScanConfig) -> Result<Vec<RelationVerdict>> {
        let mut out = Vec::with_capacity(2 * cfg.t_values.len());
        for &t in &cfg.t_values {
            let tol = cfg.tol.for_t(t as f64);
            out.push(self.star(f, g, cr(t as f64), tol)?);
            out.push(self.star_swapped(f, g, cr(t as f64), tol)?);
        }
        Ok(out)
    }
}

pub fn check_commute(f: &CMat, g: &CMat, tol: f64) -> Result<RelationVerdict> {
    RelationChecker::default().commute(f, g, tol)
}

pub fn check_relation_star(f: &CMat, g: &CMat, t: CScalar, tol: f64) -> Result<RelationVerdict> {
    RelationChecker::default().star(f, g, t, tol)
}

pub fn check_relation_star_swapped(f: &CMat, g: &CMat, t: CScalar, tol: f64) -> Result<RelationVerdict> {
    RelationChecker::default().star_swapped(f, g, t, tol)
}

pub fn check_exp_equal(f: &CMat, g: &CMat, tol: f64) -> Result<RelationVerdict> {
    RelationChecker::default().exp_equal(f, g, tol)
}

pub fn check_exp_swap(f: &CMat, g: &CMat, tol: f64) -> Result<RelationVerdict> {
    RelationChecker::default().exp_swap(f, g, tol)
}

pub fn scan_integer_t(f: &CMat, g: &CMat, cfg: &TScanConfig) -> Result<Vec<RelationVerdict>> {
    RelationChecker::default().scan_integer_t(f, g, cfg)
}

/// No two eigenvalues differ by `2iπk` for a nonzero integer `k`, up to
/// `tol·max(1, |λ_i − λ_j|)`.
pub fn congruence_free(spec: &Spectrum, tol: f64) -> bool {
    let two_pi = 2.0 * std::f64::consts::PI;
    let vals = &spec.eigenvalues;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            let delta = vals[i].value - vals[j].value;
            let kmax = (delta.norm() / two_pi).ceil() as i64 + 1;
            let bound = tol * delta.norm().max(1.0);
            for k in -kmax..=kmax {
                if k != 0 && (delta - CScalar::new(0.0, two_pi * k as f64)).norm() <= bound {
                    return false;
                }
            }
        }
    }
    true
}

/// Congruence-freeness of a matrix spectrum at the default clustering.
pub fn matrix_congruence_free(m: &CMat, tol: f64) -> Result<bool> {
    Ok(congruence_free(&eigen_decompose(m)?, tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceFlags {
    pub f: bool,
    pub g: bool,
    pub f_plus_g: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub pair_id: String,
    pub verdicts: Vec<RelationVerdict>,
    pub congruence_free: CongruenceFlags,
    pub sim_triangularizable: Option<bool>,
}

impl RelationReport {
    pub fn verdicts_for(&self, relation: Relation) -> impl Iterator<Item = &RelationVerdict> {
        self.verdicts.iter().filter(move |v| v.relation == relation)
    }

    pub fn star_at(&self, t: f64) -> Option<&RelationVerdict> {
        self.verdicts_for(Relation::SumProduct).find(|v| v.t.map(|z| z.re) == Some(t))
    }
}

/// Tolerance used by the congruence flags of a report.
pub const CONGRUENCE_TOL: f64 = 1e-8;

/// Commutation, `exp(F) = exp(G)`, `exp(F)exp(G) = exp(G)exp(F)`, then
/// `(*)` and its swapped form over the scan.
pub fn relation_report(
    pair_id: &str,
    f: &CMat,
    g: &CMat,
    cfg: &TScanConfig,
    with_simtrig: bool,
) -> Result<RelationReport> {
    relation_report_with(RelationChecker::default(), pair_id, f, g, cfg, with_simtrig)
}

pub fn relation_report_with(
    checker: RelationChecker,
    pair_id: &str,
    f: &CMat,
    g: &CMat,
    cfg: &TScanConfig,
    with_simtrig: bool,
) -> Result<RelationReport> {
    let base_tol = cfg.tol.for_t(1.0);
    let mut verdicts = vec![
        checker.commute(f, g, base_tol)?,
        checker.exp_equal(f, g, base_tol)?,
        checker.exp_swap(f, g, base_tol)?,
    ];
    verdicts.extend(checker.scan_integer_t(f, g, cfg)?);
    let congruence_free = CongruenceFlags {
        f: matrix_congruence_free(f, CONGRUENCE_TOL)?,
        g: matrix_congruence_free(g, CONGRUENCE_TOL)?,
        f_plus_g: matrix_congruence_free(&(f + g), CONGRUENCE_TOL)?,
    };
    let sim_triangularizable = if with_simtrig {
        Some(simtrig::sim_triangularizable(f, g, simtrig::DEFAULT_TOL)?.triangularizable)
    } else {
        None
    };
    Ok(RelationReport { pair_id: pair_id.to_string(), verdicts, congruence_free, sim_triangularizable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{c, Spectrum};
    use std::f64::consts::PI;

    fn intro() -> (CMat, CMat) {
        let a = CMat::diag(&[c(0.0, 60.0), c(0.0, -60.0)]).into_pi_scaled();
        let b = CMat::from_array([[c(0.0, -150.0), cr(-91.0)], [cr(391.0), c(0.0, 150.0)]])
            .into_pi_scaled();
        (a, b)
    }

    #[test]
    fn scan_config_validation() {
        assert!(TScanConfig::new(vec![2, 3], Tolerance::Graded).is_err());
        assert!(TScanConfig::new(vec![1, 3, 3], Tolerance::Graded).is_err());
        assert!(TScanConfig::new(vec![1, 2], Tolerance::Fixed(0.0)).is_err());
        let cfg = TScanConfig::up_to(6).unwrap();
        assert!(cfg.starts_one_two());
        assert_eq!(cfg.tol.for_t(5.0), TOL_SMALL_T);
        assert_eq!(cfg.tol.for_t(6.0), TOL_LARGE_T);
    }

    #[test]
    fn polynomials_commute() {
        let m = CMat::from_real([[1.0, 2.0], [3.0, -1.0]]);
        assert!(check_commute(&m, &(&m * &m), 1e-12).unwrap().holds);
    }

    #[test]
    fn intro_pair_star_pattern() {
        let (a, b) = intro();
        assert!(!check_commute(&a, &b, 1e-9).unwrap().holds);
        assert!(check_exp_swap(&a, &b, 1e-9).unwrap().holds);
        for t in 1..=5 {
            assert!(check_relation_star(&a, &b, cr(t as f64), 1e-9).unwrap().holds, "t = {t}");
        }
        let v = check_relation_star(&a, &b, cr(6.0), 1e-6).unwrap();
        assert!(!v.holds && v.residual >= 0.5, "{v:?}");
    }

    #[test]
    fn star_at_zero_always_holds() {
        let (a, b) = intro();
        assert!(check_relation_star(&a, &b, cr(0.0), 1e-12).unwrap().holds);
    }

    #[test]
    fn exp_equal_examples() {
        let z = CMat::zeros(2);
        let two = CMat::diag(&[c(0.0, 2.0 * PI), c(0.0, -2.0 * PI)]);
        let one = CMat::diag(&[c(0.0, PI), c(0.0, -PI)]);
        assert!(check_exp_equal(&z, &two, 1e-9).unwrap().holds);
        assert!(!check_exp_equal(&z, &one, 1e-9).unwrap().holds);
        assert!(check_exp_equal(&one, &one, 1e-12).unwrap().holds);
    }

    #[test]
    fn congruence_examples() {
        let s = Spectrum::from_values(&[cr(0.0), cr(1.0)], 1e-12);
        assert!(congruence_free(&s, 1e-9));
        let s = Spectrum::from_values(&[c(0.0, 60.0 * PI), c(0.0, -60.0 * PI)], 1e-12);
        assert!(!congruence_free(&s, 1e-9));
        let s = Spectrum::from_values(&[c(2.0888, 7.4615), cr(0.0)], 1e-12);
        assert!(congruence_free(&s, 1e-9));
    }

    #[test]
    fn tolerance_is_monotone() {
        let (a, b) = intro();
        let v = check_relation_star(&a, &b, cr(6.0), 1e-6).unwrap();
        for tol in [1e-3, 0.1, 10.0] {
            let w = check_relation_star(&a, &b, cr(6.0), tol).unwrap();
            assert!(w.residual == v.residual && (!v.holds || w.holds));
        }
    }
}
