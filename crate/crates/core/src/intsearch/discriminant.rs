// SPDX-License-Identifier: Apache-2.0

//! Scans of the quadratic discriminants that must be perfect squares for
//! every `n` in the `III₂` cases.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{lemma1_decide, perfect_square_root, SearchBounds, SearchOutcome, SquarePoly, Survivor};
use crate::error::{Error, Result};
use crate::wide;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub n: i64,
    pub value: i128,
    pub square: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantSummary {
    pub polynomial: SquarePoly,
    /// Integer the discriminant was multiplied by (`L²` for rational inputs).
    pub cleared_by: i128,
    pub lemma1_decide: bool,
    /// The vanishing condition stated for the case, evaluated independently.
    pub null_condition: bool,
    /// `lemma1_decide == null_condition`.
    pub agree: bool,
    pub first_failure: Option<i64>,
    pub points: Vec<ScanPoint>,
}

fn scan(
    case: &str,
    poly: SquarePoly,
    cleared_by: i128,
    null_condition: bool,
    n_max: i64,
) -> Result<SearchOutcome> {
    if n_max < 1 {
        return Err(Error::InvalidConfig(format!("n_max must be >= 1, got {n_max}")));
    }
    let decide = lemma1_decide(&poly)?;
    let mut points = Vec::with_capacity(n_max as usize);
    let mut survivors = Vec::new();
    let mut failures = 0u64;
    for n in 1..=n_max {
        let value = poly.eval(n as i128)?;
        let root = perfect_square_root(value)?;
        points.push(ScanPoint { n, value, square: root.is_some() });
        match root {
            Some(r) => survivors.push(Survivor { parameters: vec![("n".into(), n)], residuals: vec![value, r] }),
            None => failures += 1,
        }
    }
    let first_failure = points.iter().find(|p| !p.square).map(|p| p.n);
    let mut pruned = BTreeMap::new();
    pruned.insert("discriminant not a perfect square".to_string(), failures);
    Ok(SearchOutcome {
        case: case.to_string(),
        bounds: SearchBounds::Scan { n_max },
        tuples_scanned: n_max as u64,
        pruned,
        survivors,
        discriminant: Some(DiscriminantSummary {
            polynomial: poly,
            cleared_by,
            lemma1_decide: decide,
            null_condition,
            agree: decide == null_condition,
            first_failure,
            points,
        }),
        scope: format!("n = 1..={n_max}"),
    })
}

/// `D(n) = (m₁+m₂−n₁−n₂)²n² + 2((m₁+m₂)(n₁+n₂) − m₁² − m₂² − 2n₁n₂)n + (m₁−m₂)²`,
/// whose squareness for all `n` needs `Π(mᵢ − nⱼ) = 0`.
pub fn discriminant_scan_a1(m1: i64, m2: i64, n1: i64, n2: i64, n_max: i64) -> Result<SearchOutcome> {
    use wide::{add, mul, sub};
    let [m1, m2, n1, n2] = [m1, m2, n1, n2].map(i128::from);
    let s = add(m1, m2)?;
    let t = add(n1, n2)?;
    if s == t {
        return Err(Error::Constraint("m1 + m2 = n1 + n2".into()));
    }
    let beta = mul(2, wide::sum(&[mul(s, t)?, -mul(m1, m1)?, -mul(m2, m2)?, -wide::prod(&[2, n1, n2])?])?)?;
    let gamma = mul(sub(m1, m2)?, sub(m1, m2)?)?;
    let poly = SquarePoly::new(sub(s, t)?.abs(), beta, gamma)?;
    let null = wide::prod(&[sub(m1, n1)?, sub(m1, n2)?, sub(m2, n1)?, sub(m2, n2)?])? == 0;
    scan("a1-discriminant", poly, 1, null, n_max)
}

/// `D(n) = S²n² + 2m(a₁b₁ − a₂b₂ − a₃b₃)n + m²` with `S = Σ aᵢbᵢ`, scaled by
/// `L²` (`L` the common denominator) so squareness is decided on integers.
/// The vanishing condition is `a₁b₁·(a₂b₂ + a₃b₃) = 0`.
pub fn discriminant_scan_iii2ii(products: [Ratio<i128>; 3], m: i64, n_max: i64) -> Result<SearchOutcome> {
    let [p1, p2, p3] = products;
    let m = m as i128;
    if m == 0 {
        return Err(Error::Constraint("m must be nonzero".into()));
    }
    let s = p1 + p2 + p3;
    if s == Ratio::from_integer(0) {
        return Err(Error::Constraint("a1b1 + a2b2 + a3b3 = 0".into()));
    }
    let diff = p1 - p2 - p3;
    let l = s.denom().lcm(diff.denom());
    let lead = (s * l).to_integer();
    let mid = (diff * l).to_integer();
    let beta = wide::prod(&[2, m, l, mid])?;
    let gamma = wide::prod(&[l, l, m, m])?;
    let poly = SquarePoly::new(lead.abs(), beta, gamma)?;
    let null = p1 * (p2 + p3) == Ratio::from_integer(0);
    scan("iii2ii-discriminant", poly, wide::mul(l, l)?, null, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_example() {
        let out = discriminant_scan_a1(1, 2, 4, 5, 10).unwrap();
        let d = out.discriminant.unwrap();
        assert_eq!((d.polynomial.alpha, d.polynomial.beta, d.polynomial.gamma), (6, -36, 1));
        assert_eq!(d.points[0].value, 1);
        assert_eq!(d.points[1].value, 73);
        assert_eq!(d.first_failure, Some(2));
        assert!(!d.lemma1_decide && !d.null_condition && d.agree);
    }

    #[test]
    fn a1_discriminant_identity() {
        for (m1, m2, n1, n2) in [(1, 2, 4, 5), (3, -1, 2, 7), (0, 5, 5, 1), (2, 9, -3, 4)] {
            let out = discriminant_scan_a1(m1, m2, n1, n2, 1).unwrap();
            let d = out.discriminant.unwrap().polynomial.discriminant().unwrap();
            let prod = ((m1 - n1) * (m1 - n2) * (m2 - n1) * (m2 - n2)) as i128;
            assert_eq!(d, 16 * prod);
        }
    }

    #[test]
    fn iii2ii_example() {
        let r = |a: i128, b: i128| Ratio::new(a, b);
        let out = discriminant_scan_iii2ii([r(-3, 2), r(-1, 2), r(1, 1)], 4, 10).unwrap();
        let d = out.discriminant.unwrap();
        assert_eq!((d.polynomial.alpha, d.polynomial.beta, d.polynomial.gamma), (1, -16, 16));
        assert_eq!(d.first_failure, Some(2));
        assert!(!d.null_condition && d.agree);
        assert_eq!(d.polynomial.eval(0).unwrap(), 16);
    }

    #[test]
    fn iii2ii_zero_first_product_is_square() {
        let r = |a: i128, b: i128| Ratio::new(a, b);
        let out = discriminant_scan_iii2ii([r(0, 1), r(3, 2), r(1, 2)], 1, 50).unwrap();
        let d = out.discriminant.unwrap();
        assert!(d.lemma1_decide && d.null_condition && d.first_failure.is_none());
        assert_eq!(out.survivors.len(), 50);
    }

    #[test]
    fn rational_denominators_are_cleared() {
        let r = |a: i128, b: i128| Ratio::new(a, b);
        // m = 5, n = (1, 3), α = 1/3: products (−8/5, 4/15, 1/3).
        let out = discriminant_scan_iii2ii([r(-8, 5), r(4, 15), r(1, 3)], 5, 5).unwrap();
        let d = out.discriminant.unwrap();
        assert_eq!(d.cleared_by, 25);
        for p in &d.points {
            let n = p.n as i128;
            // 25·D(n) with D(n) = n² − 22n + 25.
            assert_eq!(p.value, 25 * (n * n - 22 * n + 25));
        }
    }
}
