// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra for d ≤ 3.

mod cmat;
mod eigen;
pub(crate) mod svd;

pub use cmat::{c, cr, CMat, CScalar};
pub(crate) use cmat::{ONE, ZERO};
pub use eigen::{
    char_poly, eigen_decompose, null_space, poly_eval, poly_eval_matrix, raw_eigenvalues,
    snap_to_i_pi, Eigenvalue, Spectrum, CLUSTER_TOL, SNAP_TOL,
};

use crate::error::{Error, Result};

pub(crate) fn check_same_dim(m: &CMat, n: &CMat) -> Result<()> {
    if m.dim() != n.dim() {
        return Err(Error::Dimension(format!("{}x{} vs {}x{}", m.dim(), m.dim(), n.dim(), n.dim())));
    }
    Ok(())
}

/// `‖M − N‖_F / max(1, ‖M‖_F, ‖N‖_F)`.
pub fn relative_residual(m: &CMat, n: &CMat) -> Result<f64> {
    check_same_dim(m, n)?;
    let diff = (m - n).frobenius_norm();
    Ok(diff / 1f64.max(m.frobenius_norm()).max(n.frobenius_norm()))
}

pub fn mat_equal_approx(m: &CMat, n: &CMat, tol: f64) -> Result<bool> {
    Ok(relative_residual(m, n)? <= tol)
}

/// `MN − NM`.
pub fn commutator(m: &CMat, n: &CMat) -> Result<CMat> {
    check_same_dim(m, n)?;
    Ok(&(m * n) - &(n * m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn equality_examples() {
        let i2 = CMat::identity(2);
        assert!(mat_equal_approx(&i2, &i2, 1e-9).unwrap());
        assert!(!mat_equal_approx(&i2, &-&i2, 1e-9).unwrap());
        assert!(matches!(
            mat_equal_approx(&i2, &CMat::identity(3), 1e-9),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn commutator_examples() {
        let b = CMat::from_real([[1.0, 2.0], [3.0, 4.0]]);
        assert_eq!(commutator(&CMat::identity(2), &b).unwrap(), CMat::zeros(2));
        let d = CMat::from_real([[1.0, 0.0], [0.0, -1.0]]);
        let n = CMat::from_real([[0.0, 1.0], [0.0, 0.0]]);
        assert_eq!(commutator(&d, &n).unwrap(), CMat::from_real([[0.0, 2.0], [0.0, 0.0]]));
    }

    #[test]
    fn intro_commutator() {
        let a = CMat::diag(&[c(0.0, 60.0), c(0.0, -60.0)]).into_pi_scaled();
        let b = CMat::from_array([[c(0.0, -150.0), cr(-91.0)], [cr(391.0), c(0.0, 150.0)]])
            .into_pi_scaled();
        let got = commutator(&a, &b).unwrap();
        // Direct multiplication: [A, B] = 60iπ² [[0, -182], [-782, 0]].
        let want = CMat::from_array([[ZERO, cr(-182.0)], [cr(-782.0), ZERO]])
            .scale(c(0.0, 60.0 * PI * PI));
        assert!(relative_residual(&got, &want).unwrap() < 1e-15);
    }
}
