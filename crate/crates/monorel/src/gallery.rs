//! Ready-made relations: discretized integral and shift operators on a unit
//! interval grid, and a seeded random generator of maximal monotone
//! relations.
//!
//! The discretizations live on the right-endpoint grid of
//! [`GridConvention`]: a function `x` on `[0, 1]` is stored as the vector
//! `x̂` with `x̂ᵢ = √h · x(tᵢ)`, `tᵢ = (i+1)·h`, `h = 1/n`. The `√h` factor
//! embeds the `L²[0, 1]` pairing isometrically into the Euclidean dot
//! product, so quadratic values of the discrete operators converge to their
//! continuous counterparts without any weighted-inner-product machinery, and
//! the left endpoint `t = 0` being absent encodes the boundary condition
//! `x(0) = 0` of the derivative operator.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::relation::LinearRelation;
use crate::subspace::Subspace;
use crate::tol;

/// The sampling grid on `[0, 1]`: `n` cells of width `h = 1/n`, nodes at
/// the right endpoints `tᵢ = (i+1)·h`, and the isometric scaling
/// `x̂ᵢ = √h · x(tᵢ)` under which `x̂ᵀŷ` approximates `∫₀¹ xy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridConvention {
    n: usize,
}

impl GridConvention {
    /// A grid with `n ≥ 1` cells.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "grid needs at least one cell".into(),
            ));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cell width `h = 1/n`.
    pub fn h(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// The node `tᵢ = (i+1)·h` carried by storage index `i`.
    pub fn node(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.h()
    }

    /// Samples a function into grid coordinates: `x̂ᵢ = √h · x(tᵢ)`.
    pub fn sample(&self, x: impl Fn(f64) -> f64) -> DVector<f64> {
        let scale = self.h().sqrt();
        DVector::from_fn(self.n, |i, _| scale * x(self.node(i)))
    }
}

/// The cumulative-sum (integration) operator on the grid:
/// `(V x)(tₖ) = h · Σ_{i≤k} x(tᵢ)`, i.e. the matrix `h·L` with `L` lower
/// triangular all-ones. Its adjoint is the reversed sum `h·Lᵀ`, the
/// discretization of `x ↦ ∫ₜ¹ x`.
pub fn volterra(n: usize) -> Result<LinearRelation> {
    let grid = GridConvention::new(n)?;
    let h = grid.h();
    let m = DMatrix::from_fn(n, n, |r, c| if c <= r { h } else { 0.0 });
    LinearRelation::from_matrix(&m)
}

/// The forward-difference (differentiation) operator with `x(0) = 0`: the
/// inverse of [`volterra`]. Single-valued with full domain at every finite
/// `n`; its adjoint is the backward difference with the `x(1) = 0`
/// convention.
pub fn derivative_relation(n: usize) -> Result<LinearRelation> {
    Ok(volterra(n)?.inverse())
}

/// The truncated shift-like skew operator on the mean-zero subspace:
/// `dom = {y : Σᵢ yᵢ = 0}` and `(S y)ₖ = ½yₖ + Σ_{i<k} yᵢ`, maximalized by
/// letting values float along `span{𝟙} = dom⊥`.
///
/// The raw truncation has an `(n−1)`-dimensional graph and is not maximal;
/// adding the `𝟙`-direction to the values is forced by the duality
/// `(dom A)⊥ = A0` and yields a maximal monotone, skew relation with
/// `S* = −S` on the domain.
pub fn shift_skew(n: usize) -> Result<LinearRelation> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "shift operator needs n ≥ 2, got {n}"
        )));
    }
    let ones = DVector::from_element(n, 1.0);
    let domain = Subspace::span(n, &[ones])?.complement();
    // ½ on the diagonal, 1 strictly below: sym(M) is the all-ones matrix,
    // which is positive semidefinite, so the relation is monotone.
    let m = DMatrix::from_fn(n, n, |r, c| {
        if c < r {
            1.0
        } else if c == r {
            0.5
        } else {
            0.0
        }
    });
    LinearRelation::make_maximal(&domain, &m)
}

/// A seeded random maximal monotone relation: a uniformly random
/// `dim_dom`-dimensional domain `D` and the operator
/// `M = psd_scale·GGᵀ + skew_scale·(K − Kᵀ)` with `G`, `K` standard-normal
/// `n×n` matrices, maximalized on `D`. Deterministic for a fixed seed.
///
/// # Errors
///
/// [`Error::InvalidInput`] when `dim_dom > n`, `n = 0`, or `psd_scale < 0`
/// (a negative coefficient on `GGᵀ` would break monotonicity).
pub fn random_maximal_monotone(
    n: usize,
    dim_dom: usize,
    psd_scale: f64,
    skew_scale: f64,
    seed: u64,
) -> Result<LinearRelation> {
    if n == 0 {
        return Err(Error::InvalidInput("ambient dimension must be positive".into()));
    }
    if dim_dom > n {
        return Err(Error::InvalidInput(format!(
            "domain dimension {dim_dom} exceeds ambient dimension {n}"
        )));
    }
    if psd_scale < 0.0 || psd_scale.is_nan() {
        return Err(Error::InvalidInput(format!(
            "coefficient of the positive part must be nonnegative, got {psd_scale}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut normal_matrix = |rows: usize, cols: usize| {
        DMatrix::from_fn(rows, cols, |_, _| StandardNormal.sample(&mut rng))
    };
    // An n×dim_dom standard-normal matrix has full column rank with
    // probability one; retry on the measure-zero failure rather than
    // returning a smaller domain.
    let domain = loop {
        let candidate = Subspace::from_cols(normal_matrix(n, dim_dom), tol::RANK_REL);
        if candidate.dim() == dim_dom {
            break candidate;
        }
    };
    let g = normal_matrix(n, n);
    let k = normal_matrix(n, n);
    let m = &g * g.transpose() * psd_scale + (&k - k.transpose()) * skew_scale;
    LinearRelation::make_maximal(&domain, &m)
}
