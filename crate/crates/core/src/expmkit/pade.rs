// SPDX-License-Identifier: Apache-2.0

//! Scaling and squaring with the diagonal [13/13] Padé approximant.
//!
//! Accuracy budget: the scaled matrix has 1-norm at most [`PADE_THETA_13`],
//! where the [13/13] truncation error is below double-precision roundoff. The
//! squaring phase amplifies rounding roughly in proportion to `‖M‖`, so the
//! engine is trusted up to `‖M‖_F = 1e3`; larger arguments (for instance
//! `t·F` with `t` near 20 on π-scaled data) belong to the spectral engines.

use crate::numkernel::{CMat, CScalar};

/// Target 1-norm of the scaled argument.
pub const PADE_THETA_13: f64 = 5.4;

/// Frobenius norm above which the Padé engine is not trusted on its own.
pub const PADE_TRUST_NORM: f64 = 1e3;

const B: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn lin(terms: &[(&CMat, f64)], id_coeff: f64, dim: usize) -> CMat {
    let mut acc = CMat::identity(dim).scale_real(id_coeff);
    for (m, k) in terms {
        acc = &acc + &m.scale_real(*k);
    }
    acc
}

/// `exp(M)` with an explicit scaling target `theta`.
pub fn expm_pade_with_theta(m: &CMat, theta: f64) -> CMat {
    let a = m.expanded();
    let d = a.dim();
    let norm = a.one_norm();
    let s = if norm > theta { (norm / theta).log2().ceil() as i32 } else { 0 };
    let a = a.scale(CScalar::new(0.5f64.powi(s), 0.0));

    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let w1 = lin(&[(&a6, B[13]), (&a4, B[11]), (&a2, B[9])], 0.0, d);
    let w2 = &(&a6 * &w1) + &lin(&[(&a6, B[7]), (&a4, B[5]), (&a2, B[3])], B[1], d);
    let u = &a * &w2;
    let z1 = lin(&[(&a6, B[12]), (&a4, B[10]), (&a2, B[8])], 0.0, d);
    let v = &(&a6 * &z1) + &lin(&[(&a6, B[6]), (&a4, B[4]), (&a2, B[2])], B[0], d);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.solve(&p).expect("Padé denominator is nonsingular for the scaled norm");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

pub fn expm_pade(m: &CMat) -> CMat {
    expm_pade_with_theta(m, PADE_THETA_13)
}
