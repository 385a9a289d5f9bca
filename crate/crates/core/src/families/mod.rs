// SPDX-License-Identifier: Apache-2.0

//! Constructors for the explicit matrix families, with their side
//! conditions checked.

mod dim2;
mod dim3;

pub use dim2::{
    dim2_case1_pair, intro_pair, real2d_family, theorem2_family, Real2DParams, Theorem2Params,
    U_RESIDUAL_TOL,
};
pub use dim3::{
    case3_iii2_matrix, case3_iii2ii_matrix, case3_iii4_residuals, char_poly_nab,
    iii4_entry_forms, iii4_forced_residual_forms, rank1_defect, two_i_pi, AffineEntry, III2Form,
    III2Params, III2iiParams, III4Params, III4Spectra, III4_ENTRIES,
};
