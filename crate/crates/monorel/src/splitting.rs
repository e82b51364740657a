//! Resolvents and zero-finding for maximal monotone linear relations.
//!
//! The resolvent `J_λ = (I + λA)⁻¹` of a maximal monotone relation is a
//! single-valued, firmly nonexpansive linear map defined on all of `ℝⁿ`;
//! this module computes it directly from the orthonormal graph basis and
//! drives two classical zero-finding schemes with it: the proximal point
//! iteration on the relation itself, and Douglas–Rachford splitting on a
//! decomposition pair `(f, S)` with `A = ∂f + S`.
//!
//! Solvers report progress as an [`IterateTrace`]; running out of iterations
//! is recorded in the trace, never thrown, so divergence data remains
//! available to callers. Sensible defaults for the parameters live in
//! [`crate::tol`]: [`crate::tol::SOLVER_LAMBDA`], [`crate::tol::SOLVER_TOL`],
//! and [`crate::tol::SOLVER_MAX_ITER`].

use nalgebra::{DMatrix, DVector};

use crate::analysis::is_maximal_monotone;
use crate::decomposition::{subdifferential_graph, QuadraticOnSubspace};
use crate::error::{Error, Result};
use crate::relation::LinearRelation;

/// The record of a solver run: the iterates, the residual
/// `‖x_k − J_λ x_k‖/λ` at each of them, and whether the final residual met
/// the tolerance within the iteration budget.
#[derive(Debug, Clone)]
pub struct IterateTrace {
    iterates: Vec<DVector<f64>>,
    residuals: Vec<f64>,
    converged: bool,
}

impl IterateTrace {
    /// All iterates, starting with the initial point.
    pub fn iterates(&self) -> &[DVector<f64>] {
        &self.iterates
    }

    /// Residuals, one per iterate.
    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    /// Number of operator applications performed (iterates minus one).
    pub fn iterations_used(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn final_iterate(&self) -> &DVector<f64> {
        self.iterates.last().expect("trace holds the initial point")
    }

    pub fn final_residual(&self) -> f64 {
        *self.residuals.last().expect("trace holds the initial point")
    }
}

/// The resolvent `J_λ = (I + λA)⁻¹` as an `n×n` matrix.
///
/// In the orthonormal graph basis `[U; V]` of a maximal monotone relation,
/// `gra J_λ = {(u + λv, u)}`, so `J_λ = U (U + λV)⁻¹`; maximality makes the
/// blocks square and the sum invertible. The result is firmly nonexpansive:
/// `‖Jx − Jy‖² ≤ ⟨Jx − Jy, x − y⟩`.
///
/// # Errors
///
/// [`Error::InvalidInput`] when `λ ≤ 0` or `A` is not maximal monotone;
/// [`Error::Inconsistency`] when `U + λV` is numerically singular even
/// though the maximality certificate passed.
pub fn resolvent(a: &LinearRelation, lambda: f64) -> Result<DMatrix<f64>> {
    if lambda <= 0.0 || lambda.is_nan() {
        return Err(Error::InvalidInput(format!(
            "resolvent parameter must be positive, got {lambda}"
        )));
    }
    let maximal = is_maximal_monotone(a)?;
    if !maximal.holds() {
        return Err(Error::InvalidInput(format!(
            "resolvent requires a maximal monotone relation: {}",
            maximal.detail()
        )));
    }
    let u = a.input_block();
    let v = a.output_block();
    let shifted = &u + v * lambda;
    match shifted.try_inverse() {
        Some(inv) => Ok(u * inv),
        None => Err(Error::Inconsistency(
            "U + λV is numerically singular although the relation certified as maximal monotone"
                .into(),
        )),
    }
}

/// Validates the shared solver parameters.
fn check_solver_inputs(n: usize, x0: &DVector<f64>, tol: f64) -> Result<()> {
    if x0.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "initial point has length {}, expected {n}",
            x0.len()
        )));
    }
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::InvalidInput(format!(
            "convergence tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Proximal point iteration `x_{k+1} = J_λ x_k` on a maximal monotone
/// relation, stopped when the residual `‖x_k − J_λ x_k‖/λ` falls to `tol`.
///
/// A converged trace ends at a point with `0 ∈ Ax` within the tolerance.
/// Exhausting `max_iter` marks the trace unconverged instead of erroring.
///
/// # Errors
///
/// As for [`resolvent`], plus [`Error::DimensionMismatch`] for a misfit
/// initial point and [`Error::InvalidInput`] for a nonpositive tolerance.
pub fn proximal_point(
    a: &LinearRelation,
    x0: &DVector<f64>,
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> Result<IterateTrace> {
    let r = resolvent(a, lambda)?;
    check_solver_inputs(a.n(), x0, tol)?;
    let mut iterates = vec![x0.clone()];
    let mut residuals = Vec::new();
    let converged = loop {
        let x = iterates.last().expect("nonempty");
        let rx = &r * x;
        let residual = (x - &rx).norm() / lambda;
        residuals.push(residual);
        if residual <= tol {
            break true;
        }
        if iterates.len() > max_iter {
            break false;
        }
        iterates.push(rx);
    };
    Ok(IterateTrace {
        iterates,
        residuals,
        converged,
    })
}

/// Douglas–Rachford splitting on the pair `A₁ = ∂f`, `A₂ = S` maximalized
/// on `D = dom f`: `z_{k+1} = z_k + J_{λA₂}(2 J_{λA₁} z_k − z_k) − J_{λA₁} z_k`.
///
/// The reported iterates are the shadow sequence `x_k = J_{λA₁} z_k`, and
/// the residual is measured against the full sum `A = A₁ + A₂` as
/// `‖x_k − J_{λA} x_k‖/λ`, so a converged trace ends at a zero of
/// `∂f + S` within the tolerance. Exhausting `max_iter` marks the trace
/// unconverged instead of erroring.
///
/// # Errors
///
/// [`Error::InvalidInput`] when `f` is not convex, `S` fails the
/// monotonicity screen of the maximalization, `λ ≤ 0`, or `tol ≤ 0`;
/// [`Error::DimensionMismatch`] for misfit shapes.
pub fn douglas_rachford(
    f: &QuadraticOnSubspace,
    s: &DMatrix<f64>,
    x0: &DVector<f64>,
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> Result<IterateTrace> {
    let a1 = subdifferential_graph(f)?;
    let a2 = LinearRelation::make_maximal(f.domain(), s)?;
    let full = a1.add(&a2)?;
    let j1 = resolvent(&a1, lambda)?;
    let j2 = resolvent(&a2, lambda)?;
    let j_full = resolvent(&full, lambda)?;
    check_solver_inputs(a1.n(), x0, tol)?;

    let mut z = x0.clone();
    let mut iterates = Vec::new();
    let mut residuals = Vec::new();
    let converged = loop {
        let x = &j1 * &z;
        let residual = (&x - &j_full * &x).norm() / lambda;
        iterates.push(x.clone());
        residuals.push(residual);
        if residual <= tol {
            break true;
        }
        if iterates.len() > max_iter {
            break false;
        }
        let reflected = &x * 2.0 - &z;
        z = z + &j2 * reflected - x;
    };
    Ok(IterateTrace {
        iterates,
        residuals,
        converged,
    })
}
