// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use commexp_core::numkernel::{c, CMat};
use proptest::prelude::*;
use rand::Rng;

pub fn mat_from(dim: usize, parts: &[f64]) -> CMat {
    let rows: Vec<Vec<_>> = (0..dim)
        .map(|i| (0..dim).map(|j| c(parts[2 * (i * dim + j)], parts[2 * (i * dim + j) + 1])).collect())
        .collect();
    CMat::from_rows(&rows).unwrap()
}

/// Square complex matrix of size 2 or 3 with entries in the box `[-r, r]²`.
pub fn small_matrix(r: f64) -> impl Strategy<Value = CMat> {
    (2usize..=3).prop_flat_map(move |d| {
        prop::collection::vec(-r..r, 2 * d * d).prop_map(move |v| mat_from(d, &v))
    })
}

pub fn matrix_pair(r: f64) -> impl Strategy<Value = (CMat, CMat)> {
    (2usize..=3).prop_flat_map(move |d| {
        (prop::collection::vec(-r..r, 2 * d * d), prop::collection::vec(-r..r, 2 * d * d))
            .prop_map(move |(a, b)| (mat_from(d, &a), mat_from(d, &b)))
    })
}

pub fn random_matrix<R: Rng>(rng: &mut R, dim: usize, r: f64) -> CMat {
    let v: Vec<f64> = (0..2 * dim * dim).map(|_| rng.gen_range(-r..r)).collect();
    mat_from(dim, &v)
}

/// `exp(iθ)`-phased Givens rotations composed into a unitary matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> CMat {
    let mut q = CMat::identity(dim);
    for p in 0..dim {
        for s in p + 1..dim {
            let (t, phi) = (rng.gen_range(0.0..6.3), rng.gen_range(0.0..6.3));
            let mut g = CMat::identity(dim);
            g.set(p, p, c(f64::cos(t), 0.0));
            g.set(s, s, c(f64::cos(t), 0.0));
            g.set(p, s, c(-f64::sin(t) * f64::cos(phi), -f64::sin(t) * f64::sin(phi)));
            g.set(s, p, c(f64::sin(t) * f64::cos(phi), -f64::sin(t) * f64::sin(phi)));
            q = &q * &g;
        }
    }
    q
}
