// SPDX-License-Identifier: Apache-2.0

//! `families`: writes a constructed pair to two matrix files and echoes the
//! verification of its claim.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Subcommand, ValueEnum};
use commexp_core::expmkit::ExpMethod;
use commexp_core::families::{case3_iii2_matrix, case3_iii2ii_matrix, two_i_pi, III2Form, III2Params, III2iiParams};
use commexp_core::numkernel::{cr, CMat};

use crate::io::{sha256_hex, write_matrix, MatrixFile};
use crate::report::{Claim, Outcome};
use crate::search::parse_ratio;
use crate::verify::{builtin_pair, run_verify, Builtin, Dim2Params, Pair, VerifyRun};

#[derive(Debug, Clone, Args)]
pub struct FamiliesArgs {
    #[command(subcommand)]
    pub family: Family,
}

#[derive(Debug, Clone, Args)]
pub struct OutFiles {
    /// Destination files for the two matrices.
    #[arg(short = 'o', long = "out", num_args = 2, required = true, value_names = ["F", "G"])]
    pub out: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    SymmetricRank1,
    A1,
    A2,
    A3,
    A4,
}

impl From<FormArg> for III2Form {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::SymmetricRank1 => III2Form::SymmetricRank1,
            FormArg::A1 => III2Form::A1,
            FormArg::A2 => III2Form::A2,
            FormArg::A3 => III2Form::A3,
            FormArg::A4 => III2Form::A4,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Family {
    Intro {
        #[command(flatten)]
        out: OutFiles,
    },
    Real2d {
        #[command(flatten)]
        params: Dim2Params,
        #[command(flatten)]
        out: OutFiles,
    },
    Theorem2 {
        #[command(flatten)]
        params: Dim2Params,
        #[command(flatten)]
        out: OutFiles,
    },
    Case1 {
        #[command(flatten)]
        params: Dim2Params,
        #[command(flatten)]
        out: OutFiles,
    },
    /// Three-dimensional case with A of rank one and B diagonal; writes 2iπA and 2iπB.
    Iii2 {
        #[arg(long, num_args = 3, allow_hyphen_values = true, required = true)]
        m: Vec<i64>,
        #[arg(long, num_args = 2, allow_hyphen_values = true, required = true)]
        n: Vec<i64>,
        #[arg(long, value_enum, default_value_t = FormArg::SymmetricRank1)]
        form: FormArg,
        #[command(flatten)]
        out: OutFiles,
    },
    /// Three-dimensional case A = a·bᵀ, B = diag(m, 0, 0); writes 2iπA and 2iπB.
    Iii2ii {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, num_args = 2, allow_hyphen_values = true, required = true)]
        n: Vec<i64>,
        /// Rational `p/q` fixing a3·b3.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[command(flatten)]
        out: OutFiles,
    },
}

fn builtin_run(b: Builtin, params: &Dim2Params) -> Result<VerifyRun> {
    let t_values = match b {
        Builtin::Intro => (1..=6).collect(),
        Builtin::Theorem2 => (1..=10).collect(),
        Builtin::Real2d => (1..=50).collect(),
        Builtin::Case1 => (1..=20).collect(),
    };
    Ok(VerifyRun {
        builtin: Some(b),
        pair: builtin_pair(b, params)?,
        t_values,
        t_complex: Vec::new(),
        tol: None,
        swap: b == Builtin::Theorem2,
        triangularizable: false,
        method: ExpMethod::Auto,
    })
}

fn dim3_run(id: String, a: CMat, b: CMat) -> VerifyRun {
    let pair = Pair { id, f: two_i_pi(&a), g: two_i_pi(&b), inputs: BTreeMap::new(), u: None, lambda: None };
    VerifyRun {
        builtin: None,
        pair,
        t_values: vec![1, 2],
        t_complex: Vec::new(),
        tol: None,
        swap: false,
        triangularizable: false,
        method: ExpMethod::Auto,
    }
}

pub fn cmd_families(args: &FamiliesArgs) -> Result<Outcome> {
    let mut dim3 = false;
    let (run, out) = match &args.family {
        Family::Intro { out } => (builtin_run(Builtin::Intro, &Dim2Params::default())?, out),
        Family::Real2d { params, out } => (builtin_run(Builtin::Real2d, params)?, out),
        Family::Theorem2 { params, out } => (builtin_run(Builtin::Theorem2, params)?, out),
        Family::Case1 { params, out } => (builtin_run(Builtin::Case1, params)?, out),
        Family::Iii2 { m, n, form, out } => {
            let p = III2Params::consistent([m[0], m[1], m[2]], [n[0], n[1]])?;
            let (a, b) = case3_iii2_matrix(&p, (*form).into())?;
            dim3 = true;
            (dim3_run(format!("iii2 {form:?} l1 = {}, m = {:?}, n = {:?}", p.l1, p.m, p.n), a, b), out)
        }
        Family::Iii2ii { m, n, alpha, out } => {
            let r = parse_ratio(alpha)?;
            let alpha = cr(*r.numer() as f64 / *r.denom() as f64);
            let p = III2iiParams::from_left_vector(*m, n[0], n[1], alpha, [cr(1.0); 3])?;
            let (a, b) = case3_iii2ii_matrix(&p)?;
            dim3 = true;
            (dim3_run(format!("iii2ii m = {m}, n = {n:?}, alpha = {r}"), a, b), out)
        }
    };
    let (f, g) = (run.pair.f.clone(), run.pair.g.clone());
    let id = run.pair.id.clone();
    let mut outcome = run_verify(run)?;
    if dim3 {
        let mut claim = Claim::new("the constructor's side conditions hold; relations are reported, not claimed");
        claim.check(true, format!("constructed {id}"));
        outcome.claim = claim;
    }
    for (path, m) in out.out.iter().zip([&f, &g]) {
        write_matrix(path, m)?;
        outcome.inputs.insert(path.display().to_string(), sha256_hex(MatrixFile::from_cmat(m).to_json().as_bytes()));
    }
    Ok(outcome)
}

impl Default for Dim2Params {
    fn default() -> Self {
        Dim2Params { u_branch: 1, lambda: None, mu: None, nu: None, a: 0.0 }
    }
}
