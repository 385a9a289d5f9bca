// SPDX-License-Identifier: Apache-2.0

//! `verify`: relation report for a builtin family or a pair of matrix files.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use commexp_core::expmkit::ExpMethod;
use commexp_core::families::{dim2_case1_pair, intro_pair, real2d_family, theorem2_family, Real2DParams, Theorem2Params};
use commexp_core::numkernel::{c, cr, CMat, CScalar};
use commexp_core::relations::{
    relation_report_with, Relation, RelationChecker, RelationReport, RelationVerdict, TScanConfig, Tolerance,
    CONGRUENCE_TOL, TOL_LARGE_T, TOL_SMALL_T,
};
use commexp_core::simtrig::{self, TrigVerdict};
use commexp_core::uset::{branch_seed, solve_u};
use serde::Serialize;

use crate::io::load_matrix;
use crate::report::{Claim, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Intro,
    Theorem2,
    Real2d,
    Case1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Spectral,
    Pade,
    Snap,
}

impl From<Method> for ExpMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Auto => ExpMethod::Auto,
            Method::Spectral => ExpMethod::SpectralHermite,
            Method::Pade => ExpMethod::PadeSquaring,
            Method::Snap => ExpMethod::ExactPiSnap,
        }
    }
}

/// Parameters shared by `verify` and `families` for the two-dimensional builtins.
#[derive(Debug, Clone, Args)]
pub struct Dim2Params {
    /// Branch `k` of the root of e^u = 1 + u used by theorem2.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub u_branch: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<i64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a: f64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, conflicts_with_all = ["f", "g"], required_unless_present_all = ["f", "g"])]
    pub builtin: Option<Builtin>,
    #[arg(short = 'f', requires = "g")]
    pub f: Option<PathBuf>,
    #[arg(short = 'g', requires = "f")]
    pub g: Option<PathBuf>,
    #[command(flatten)]
    pub params: Dim2Params,
    /// Integer t values: `a..b` inclusive, a comma list, or one value.
    #[arg(long)]
    pub t: Option<String>,
    /// Extra complex t as `re,im`; repeatable.
    #[arg(long = "t-complex", allow_hyphen_values = true)]
    pub t_complex: Vec<String>,
    /// Fixed tolerance; graded by |t| when omitted.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Also claim that the swapped relation fails.
    #[arg(long)]
    pub swap: bool,
    /// Also decide simultaneous triangularizability.
    #[arg(long)]
    pub triangularizable: bool,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

pub fn parse_int_range(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: i64 = a.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
        let b: i64 = b.trim().parse().with_context(|| format!("bad range end in {s:?}"))?;
        if a > b {
            bail!("empty range {s:?}");
        }
        return Ok((a..=b).collect());
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad integer {x:?} in {s:?}")))
        .collect()
}

pub fn parse_complex(s: &str) -> Result<CScalar> {
    let (re, im) = s.split_once(',').with_context(|| format!("expected re,im, got {s:?}"))?;
    let z = c(
        re.trim().parse().with_context(|| format!("bad real part in {s:?}"))?,
        im.trim().parse().with_context(|| format!("bad imaginary part in {s:?}"))?,
    );
    if !(z.re.is_finite() && z.im.is_finite()) {
        bail!("t must be finite, got {s:?}");
    }
    Ok(z)
}

pub struct Pair {
    pub id: String,
    pub f: CMat,
    pub g: CMat,
    pub inputs: BTreeMap<String, String>,
    pub u: Option<CScalar>,
    /// `λ` of the case-1 pair.
    pub lambda: Option<i64>,
}

pub fn theorem2_u(k: i64) -> Result<CScalar> {
    if k == 0 {
        bail!("--u-branch 0 is excluded: it would give u = 0");
    }
    Ok(solve_u(branch_seed(k))?.value)
}

pub fn real2d_params(p: &Dim2Params) -> Real2DParams {
    Real2DParams::new(p.lambda.unwrap_or(1), p.mu.unwrap_or(4), p.nu.unwrap_or(6), p.a)
}

pub fn builtin_pair(b: Builtin, p: &Dim2Params) -> Result<Pair> {
    let mut u = None;
    let mut lambda = None;
    let (id, (f, g)) = match b {
        Builtin::Intro => ("intro".to_string(), intro_pair()),
        Builtin::Theorem2 => {
            let z = theorem2_u(p.u_branch)?;
            u = Some(z);
            (format!("theorem2 u-branch {}", p.u_branch), theorem2_family(&Theorem2Params::canonical(z))?)
        }
        Builtin::Real2d => {
            let r = real2d_params(p);
            (format!("real2d ({}, {}, {}, {})", r.lambda, r.mu, r.nu, r.a), real2d_family(&r)?)
        }
        Builtin::Case1 => {
            let (l, m) = (p.lambda.unwrap_or(1), p.mu.unwrap_or(1));
            lambda = Some(l);
            (format!("case1 ({l}, {m})"), dim2_case1_pair(l, m)?)
        }
    };
    Ok(Pair { id, f, g, inputs: BTreeMap::new(), u, lambda })
}

fn default_t(b: Option<Builtin>) -> &'static str {
    match b {
        Some(Builtin::Intro) => "1..6",
        Some(Builtin::Theorem2) => "1..10",
        Some(Builtin::Real2d) => "1..50",
        Some(Builtin::Case1) => "1..20",
        None => "1",
    }
}

#[derive(Serialize)]
struct VerifyPayload<'a> {
    report: &'a RelationReport,
    complex_t: &'a [RelationVerdict],
    commutator_norm: f64,
    triangularization: Option<&'a TrigVerdict>,
    u: Option<CScalar>,
}

pub struct VerifyRun {
    pub builtin: Option<Builtin>,
    pub pair: Pair,
    pub t_values: Vec<i64>,
    pub t_complex: Vec<CScalar>,
    pub tol: Option<f64>,
    pub swap: bool,
    pub triangularizable: bool,
    pub method: ExpMethod,
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let pair = match (args.builtin, &args.f, &args.g) {
        (Some(b), None, None) => builtin_pair(b, &args.params)?,
        (None, Some(fp), Some(gp)) => {
            let (f, df) = load_matrix(fp)?;
            let (g, dg) = load_matrix(gp)?;
            if f.dim() != g.dim() {
                bail!("{} is {}x{} but {} is {}x{}", fp.display(), f.dim(), f.dim(), gp.display(), g.dim(), g.dim());
            }
            let inputs = BTreeMap::from([(fp.display().to_string(), df), (gp.display().to_string(), dg)]);
            Pair { id: format!("{} {}", fp.display(), gp.display()), f, g, inputs, u: None, lambda: None }
        }
        _ => bail!("give either --builtin or both -f and -g"),
    };
    let t_values = parse_int_range(args.t.as_deref().unwrap_or(default_t(args.builtin)))?;
    let t_complex = args.t_complex.iter().map(|s| parse_complex(s)).collect::<Result<Vec<_>>>()?;
    run_verify(VerifyRun {
        builtin: args.builtin,
        pair,
        t_values,
        t_complex,
        tol: args.tol,
        swap: args.swap,
        triangularizable: args.triangularizable,
        method: args.method.into(),
    })
}

pub fn run_verify(run: VerifyRun) -> Result<Outcome> {
    let tol = match run.tol {
        Some(x) => Tolerance::Fixed(x),
        None => Tolerance::Graded,
    };
    let cfg = TScanConfig::new(run.t_values.clone(), tol)?;
    let checker = RelationChecker::new(run.method);
    let Pair { id, f, g, inputs, u, lambda } = run.pair;
    let report = relation_report_with(checker, &id, &f, &g, &cfg, false)?;
    let mut complex_t = Vec::new();
    for &t in &run.t_complex {
        let tl = tol.for_t(t.norm());
        complex_t.push(checker.star(&f, &g, t, tl)?);
        complex_t.push(checker.star_swapped(&f, &g, t, tl)?);
    }
    let trig = if run.triangularizable { Some(simtrig::sim_triangularizable(&f, &g, simtrig::DEFAULT_TOL)?) } else { None };
    let commutator_norm = (&(&f * &g) - &(&g * &f)).frobenius_norm();

    let claim = match run.builtin {
        None => {
            let mut c = Claim::new("no claim for file inputs; the report is informational");
            c.note(format!("pair {id}"));
            c
        }
        Some(Builtin::Intro) => intro_claim(&report, trig.as_ref()),
        Some(Builtin::Theorem2) => theorem2_claim(&report, &complex_t, run.swap, trig.as_ref()),
        Some(Builtin::Real2d) => real2d_claim(&report, commutator_norm, run.tol),
        Some(Builtin::Case1) => case1_claim(&report, &complex_t, lambda.unwrap_or(1)),
    };

    let mut tolerances = BTreeMap::new();
    match tol {
        Tolerance::Fixed(x) => {
            tolerances.insert("relation".to_string(), x);
        }
        Tolerance::Graded => {
            tolerances.insert("relation |t| <= 5".to_string(), TOL_SMALL_T);
            tolerances.insert("relation |t| > 5".to_string(), TOL_LARGE_T);
        }
    }
    tolerances.insert("congruence".to_string(), CONGRUENCE_TOL);
    if trig.is_some() {
        tolerances.insert("triangularization".to_string(), simtrig::DEFAULT_TOL);
    }
    let payload = serde_json::to_value(VerifyPayload {
        report: &report,
        complex_t: &complex_t,
        commutator_norm,
        triangularization: trig.as_ref(),
        u,
    })?;
    Ok(Outcome { inputs, tolerances, payload, claim })
}

fn describe(v: &RelationVerdict) -> String {
    let t = v.t.map(|z| if z.im == 0.0 { format!(" t = {}", z.re) } else { format!(" t = {}{:+}i", z.re, z.im) });
    format!("{:?}{} residual {:.3e} (tol {:.1e})", v.relation, t.unwrap_or_default(), v.residual, v.tol)
}

fn integer_t(v: &RelationVerdict) -> i64 {
    v.t.map_or(0, |z| z.re as i64)
}

fn intro_claim(report: &RelationReport, trig: Option<&TrigVerdict>) -> Claim {
    let mut c = Claim::new("(*) holds for t = 1..5, fails at t = 6, and exp(A)exp(B) = exp(B)exp(A)");
    for v in report.verdicts_for(Relation::SumProduct) {
        match integer_t(v) {
            t @ 1..=5 => c.check(v.holds, format!("holds at t = {t}: {}", describe(v))),
            6 => c.check(!v.holds, format!("fails at t = 6: {}", describe(v))),
            _ => c.note(describe(v)),
        }
    }
    for v in report.verdicts_for(Relation::ExpSwap) {
        c.check(v.holds, describe(v));
    }
    if let Some(t) = trig {
        c.check(!t.triangularizable && t.witness.is_some(), format!("not simultaneously triangularizable, witness {:?}", t.witness));
    }
    c
}

fn theorem2_claim(report: &RelationReport, complex_t: &[RelationVerdict], swap: bool, trig: Option<&TrigVerdict>) -> Claim {
    let mut c = Claim::new(if swap {
        "(*) holds at every t and the swapped form fails at every t != 0"
    } else {
        "(*) holds at every t"
    });
    let all = report.verdicts.iter().chain(complex_t);
    for v in all {
        match v.relation {
            Relation::SumProduct => c.check(v.holds, describe(v)),
            Relation::SumProductSwapped if swap && v.t.is_some_and(|z| z.norm() > 0.0) => {
                c.check(!v.holds, format!("swapped fails: {}", describe(v)))
            }
            _ => {}
        }
    }
    if let Some(t) = trig {
        c.check(t.triangularizable, "simultaneously triangularizable");
    }
    c
}

fn real2d_claim(report: &RelationReport, commutator_norm: f64, tol: Option<f64>) -> Claim {
    let mut c = Claim::new("exp(A + B) = exp(A)exp(B) and exp(A)exp(B) = exp(B)exp(A) with AB != BA");
    let strict = tol.unwrap_or(1e-8);
    if let Some(v) = report.star_at(1.0) {
        c.check(v.residual <= strict, format!("relation (1): {}", describe(v)));
    }
    for v in report.verdicts_for(Relation::ExpSwap) {
        c.check(v.residual <= strict, format!("relation (3): {}", describe(v)));
    }
    c.check(commutator_norm > 1e-8, format!("commutator norm {commutator_norm:.6e}"));
    let failing: Vec<i64> = report.verdicts_for(Relation::SumProduct).filter(|v| !v.holds).map(integer_t).collect();
    c.note(format!("(*) fails at t = {failing:?}"));
    c
}

fn case1_claim(report: &RelationReport, complex_t: &[RelationVerdict], lambda: i64) -> Claim {
    let mut c = Claim::new("(*) holds at integer t and fails at t with λt not an integer");
    let lambda = lambda as f64;
    for v in report.verdicts_for(Relation::SumProduct) {
        c.check(v.holds, describe(v));
    }
    for v in complex_t.iter().filter(|v| v.relation == Relation::SumProduct) {
        let lt = v.t.unwrap_or(cr(0.0)) * lambda;
        if lt.im == 0.0 && lt.re.fract() == 0.0 {
            c.check(v.holds, describe(v));
        } else {
            c.check(!v.holds, format!("fails: {}", describe(v)));
        }
    }
    c
}
