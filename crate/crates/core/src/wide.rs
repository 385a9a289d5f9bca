// SPDX-License-Identifier: Apache-2.0

//! Checked 128-bit integer arithmetic with a `2^126` magnitude budget, so
//! that one further addition or doubling can never wrap.

use crate::error::{Error, Result};

pub const BUDGET: i128 = 1 << 126;

fn within(x: Option<i128>, what: &str) -> Result<i128> {
    match x {
        Some(v) if v.unsigned_abs() <= BUDGET as u128 => Ok(v),
        _ => Err(Error::Overflow(what.to_string())),
    }
}

pub fn add(a: i128, b: i128) -> Result<i128> {
    within(a.checked_add(b), "addition")
}

pub fn sub(a: i128, b: i128) -> Result<i128> {
    within(a.checked_sub(b), "subtraction")
}

pub fn mul(a: i128, b: i128) -> Result<i128> {
    within(a.checked_mul(b), "multiplication")
}

pub fn prod(xs: &[i128]) -> Result<i128> {
    xs.iter().try_fold(1, |acc, &x| mul(acc, x))
}

pub fn sum(xs: &[i128]) -> Result<i128> {
    xs.iter().try_fold(0, |acc, &x| add(acc, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_is_enforced() {
        assert_eq!(mul(1 << 63, 1 << 63).unwrap(), 1 << 126);
        assert!(matches!(mul(1 << 63, 1 << 64), Err(Error::Overflow(_))));
        assert!(matches!(add(BUDGET, 1), Err(Error::Overflow(_))));
        assert!(matches!(mul(i128::MAX, 2), Err(Error::Overflow(_))));
        assert_eq!(prod(&[2, -3, 5]).unwrap(), -30);
    }
}
