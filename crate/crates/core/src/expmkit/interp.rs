// SPDX-License-Identifier: Apache-2.0

//! Newton-form interpolation on (possibly confluent) nodes.

use crate::numkernel::{CMat, CScalar, ONE, ZERO};

/// Terms kept in the Taylor expansion of clustered exponential divided
/// differences. With every centred node inside the unit disc the tail after
/// this many terms is below 1e-30.
const SERIES_TERMS: usize = 32;

/// Orders up to three nodes so the two farthest apart are first and last.
fn order_nodes(z: &[CScalar]) -> Vec<CScalar> {
    if z.len() < 3 {
        return z.to_vec();
    }
    let mut best = (0, 1, 0.0);
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let d = (z[i] - z[j]).norm();
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    let mid: Vec<CScalar> =
        (0..z.len()).filter(|&k| k != best.0 && k != best.1).map(|k| z[k]).collect();
    let mut out = vec![z[best.0]];
    out.extend(mid);
    out.push(z[best.1]);
    out
}

fn spread(z: &[CScalar]) -> f64 {
    let mut s: f64 = 0.0;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            s = s.max((z[i] - z[j]).norm());
        }
    }
    s
}

/// `exp[z_0, …, z_k]` via the Taylor series of the complete homogeneous
/// symmetric polynomials around the centroid. Exact for confluent nodes.
fn exp_dd_series(z: &[CScalar]) -> CScalar {
    let k = z.len();
    let centre = z.iter().sum::<CScalar>() / k as f64;
    let w: Vec<CScalar> = z.iter().map(|x| x - centre).collect();
    // h[j] = h_j(w_0..w_i), built one variable at a time.
    let mut h = vec![ZERO; SERIES_TERMS];
    let mut p = ONE;
    for slot in h.iter_mut() {
        *slot = p;
        p *= w[0];
    }
    for wi in &w[1..] {
        for j in 1..SERIES_TERMS {
            let prev = h[j - 1];
            h[j] += wi * prev;
        }
    }
    // Σ_j h_j / (j + k − 1)!
    let mut fact = (1..k).map(|x| x as f64).product::<f64>();
    let mut sum = ZERO;
    for (j, hj) in h.iter().enumerate() {
        sum += hj / fact;
        fact *= (j + k) as f64;
    }
    centre.exp() * sum
}

fn exp_dd(z: &[CScalar]) -> CScalar {
    match z.len() {
        1 => z[0].exp(),
        _ if spread(z) < 1.0 => exp_dd_series(z),
        n => (exp_dd(&z[1..]) - exp_dd(&z[..n - 1])) / (z[n - 1] - z[0]),
    }
}

/// Newton coefficients of the polynomial interpolating `exp` (with
/// derivative conditions at repeated nodes) on up to three nodes. Returns the
/// nodes in the order the coefficients refer to.
pub(crate) fn exp_newton(nodes: &[CScalar]) -> (Vec<CScalar>, Vec<CScalar>) {
    let z = order_nodes(nodes);
    let coeffs = (1..=z.len()).map(|k| exp_dd(&z[..k])).collect();
    (z, coeffs)
}

/// Evaluates `c_0 I + c_1 (M − z_0) + c_2 (M − z_0)(M − z_1) + …`.
pub(crate) fn newton_eval_matrix(nodes: &[CScalar], coeffs: &[CScalar], m: &CMat) -> CMat {
    let m = m.expanded();
    let d = m.dim();
    let mut acc = CMat::identity(d).scale(coeffs[0]);
    let mut basis = CMat::identity(d);
    for k in 1..coeffs.len() {
        basis = &basis * &m.shift(-nodes[k - 1]);
        acc = &acc + &basis.scale(coeffs[k]);
    }
    acc
}

/// Confluent divided-difference table. `nodes` are grouped (equal nodes
/// adjacent); `derivs(i, order)` returns the `order`-th derivative of the
/// target function at node `i` of the grouped list.
pub(crate) fn hermite_newton(
    nodes: &[CScalar],
    group_start: &[usize],
    derivs: impl Fn(usize, usize) -> CScalar,
) -> Vec<CScalar> {
    let n = nodes.len();
    // col[i] holds f[z_i, …, z_{i+order}] for the current order.
    let mut col: Vec<CScalar> = (0..n).map(|i| derivs(i, 0)).collect();
    let mut coeffs = vec![col[0]];
    for order in 1..n {
        let mut next = vec![ZERO; n - order];
        for i in 0..n - order {
            let (a, b) = (i, i + order);
            if group_start[a] == group_start[b] {
                let fact: f64 = (1..=order).map(|x| x as f64).product();
                next[i] = derivs(a, order) / fact;
            } else {
                next[i] = (col[i + 1] - col[i]) / (nodes[b] - nodes[a]);
            }
        }
        coeffs.push(next[0]);
        col = next;
    }
    coeffs
}

/// Converts Newton form to monomial coefficients, lowest degree first.
pub(crate) fn newton_to_monomial(nodes: &[CScalar], coeffs: &[CScalar]) -> Vec<CScalar> {
    let n = coeffs.len();
    let mut p = vec![ZERO; n];
    p[0] = coeffs[n - 1];
    // Horner on the Newton basis: p ← p·(x − z_k) + c_k.
    for k in (0..n - 1).rev() {
        let mut next = vec![ZERO; n];
        for deg in 0..n - 1 {
            next[deg + 1] += p[deg];
            next[deg] -= p[deg] * nodes[k];
        }
        next[0] += coeffs[k];
        p = next;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::c;

    #[test]
    fn series_matches_recursion_at_moderate_spread() {
        let z = [c(0.1, 0.2), c(-0.3, 0.4), c(0.2, -0.35)];
        let direct = {
            let f01 = (z[1].exp() - z[0].exp()) / (z[1] - z[0]);
            let f12 = (z[2].exp() - z[1].exp()) / (z[2] - z[1]);
            (f12 - f01) / (z[2] - z[0])
        };
        assert!((exp_dd_series(&z) - direct).norm() < 1e-14);
    }

    #[test]
    fn confluent_nodes_give_derivatives() {
        let x = c(0.7, -1.2);
        assert!((exp_dd(&[x, x]) - x.exp()).norm() < 1e-14);
        assert!((exp_dd(&[x, x, x]) - x.exp() / 2.0).norm() < 1e-14);
    }

    #[test]
    fn monomial_conversion() {
        // p(x) = 2 + 3(x − 1) + 4(x − 1)(x + 2) = 4x² + 7x − 9.
        let nodes = [c(1.0, 0.0), c(-2.0, 0.0)];
        let coeffs = [c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)];
        let mono = newton_to_monomial(&nodes, &coeffs);
        let want = [-9.0, 7.0, 4.0];
        for (g, w) in mono.iter().zip(want) {
            assert!((g - c(w, 0.0)).norm() < 1e-14, "{mono:?}");
        }
    }
}
