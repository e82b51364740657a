//! Shared fixtures for unit tests: three small relations on `ℝ²` that
//! exercise the main behavioural corners.
//!
//! - [`r_ind`]: the subdifferential of the indicator of `Y = ℝ × {0}`;
//!   multi-valued, symmetric, skew, maximal monotone.
//! - [`r_mix`]: identity on `Y` plus the normal cone of `Y`; maximal
//!   monotone with a nontrivial quadratic part.
//! - [`r_rot`]: rotation by `π/2`; single-valued, skew, maximal monotone,
//!   not paramonotone.

use nalgebra::{DMatrix, DVector};

use crate::relation::LinearRelation;

/// Concatenate `(u; v)` into a graph vector.
pub fn g(u: &[f64], v: &[f64]) -> DVector<f64> {
    let mut out = Vec::with_capacity(u.len() + v.len());
    out.extend_from_slice(u);
    out.extend_from_slice(v);
    DVector::from_vec(out)
}

/// `∂ι_Y` for `Y = ℝ × {0}`: graph `{((t, 0), (0, s))}`.
pub fn r_ind() -> LinearRelation {
    LinearRelation::from_graph(2, &[g(&[1.0, 0.0], &[0.0, 0.0]), g(&[0.0, 0.0], &[0.0, 1.0])])
        .unwrap()
}

/// Identity-on-`Y` plus normal cone: graph `{((t, 0), (t, s))}`.
pub fn r_mix() -> LinearRelation {
    LinearRelation::from_graph(2, &[g(&[1.0, 0.0], &[1.0, 0.0]), g(&[0.0, 0.0], &[0.0, 1.0])])
        .unwrap()
}

/// The rotation matrix `[[0, -1], [1, 0]]`.
pub fn rotation_matrix() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])
}

/// Rotation by `π/2` as a relation.
pub fn r_rot() -> LinearRelation {
    LinearRelation::from_matrix(&rotation_matrix()).unwrap()
}
