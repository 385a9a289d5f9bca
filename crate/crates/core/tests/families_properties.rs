// SPDX-License-Identifier: Apache-2.0

use commexp_core::families::{
    case3_iii2_matrix, char_poly_nab, real2d_family, theorem2_family, III2Form, III2Params, Real2DParams,
    Theorem2Params,
};
use commexp_core::numkernel::{c, char_poly, cr, eigen_decompose, CMat};
use commexp_core::relations::{check_exp_swap, check_relation_star, check_relation_star_swapped};
use commexp_core::uset::solve_u;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn char_poly_nab_matches_constructed_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut tested = 0;
    while tested < 200 {
        let m = [0; 3].map(|_| rng.gen_range(-6i64..=6));
        let n = [0; 2].map(|_| rng.gen_range(-6i64..=6));
        let Ok(p) = III2Params::consistent(m, n) else { continue };
        let Ok((a, b)) = case3_iii2_matrix(&p, III2Form::SymmetricRank1) else { continue };
        for k in 1..=4 {
            let got = char_poly(&(&a.scale_real(k as f64) + &b)).unwrap();
            let want = char_poly_nab(&p, k).unwrap();
            let scale = want.iter().map(|w| w.abs() as f64).fold(1.0, f64::max);
            for (g, &w) in got.iter().zip(&want) {
                assert!((g - cr(w as f64)).norm() <= 1e-8 * scale, "{p:?} n = {k}: {got:?} vs {want:?}");
            }
        }
        tested += 1;
    }
}

fn sorted_snap(m: &CMat) -> Option<Vec<i64>> {
    eigen_decompose(m).unwrap().snap.map(|mut k| {
        k.sort();
        k
    })
}

#[test]
fn real2d_spectra_are_fixed() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut tested = 0;
    while tested < 200 {
        let p = Real2DParams::new(rng.gen_range(1..6), rng.gen_range(1..12), rng.gen_range(1..15), rng.gen_range(-2.0..2.0));
        let Ok((a, b)) = real2d_family(&p) else { continue };
        assert_eq!(sorted_snap(&b), Some(vec![-p.mu, p.mu]), "{p:?}");
        assert_eq!(sorted_snap(&(&a + &b)), Some(vec![-p.nu, p.nu]), "{p:?}");
        tested += 1;
    }
}

#[test]
fn theorem2_verdicts_ignore_shifts_and_basis() {
    let u = solve_u(c(2.0, 7.0)).unwrap().value;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let s = CMat::from_array([
            [c(1.0, 0.0), c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))],
            [c(rng.gen_range(-0.5..0.5), 0.0), c(1.0, rng.gen_range(-0.5..0.5))],
        ]);
        let p = Theorem2Params {
            u,
            sigma: c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            tau: c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            basis: Some(s),
        };
        let (f, g) = theorem2_family(&p).unwrap();
        for t in 1..=4 {
            let t = cr(t as f64);
            assert!(check_relation_star(&f, &g, t, 1e-9).unwrap().holds);
            assert!(!check_relation_star_swapped(&f, &g, t, 1e-9).unwrap().holds);
        }
        assert!(!check_exp_swap(&f, &g, 1e-9).unwrap().holds);
    }
}
