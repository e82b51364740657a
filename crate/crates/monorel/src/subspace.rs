//! Rank-revealing subspace arithmetic.
//!
//! A [`Subspace`] is a linear subspace of `ℝᵏ` stored as an orthonormal basis
//! (a `k × d` matrix with orthonormal columns, `d = 0` for the zero
//! subspace). Ranks are decided by a singular value decomposition with a
//! relative cutoff, so spans of nearly dependent vectors collapse to their
//! numerical rank instead of inflating dimensions downstream.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::jacobi::jacobi_svd;
use crate::tol;

/// A linear subspace of `ℝᵏ`, represented by an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    /// `ambient_dim × dim` matrix with orthonormal columns.
    basis: DMatrix<f64>,
    /// Relative rank cutoff used when this subspace was constructed; derived
    /// subspaces inherit it.
    tol: f64,
}

impl Subspace {
    /// The subspace spanned by `vectors` inside `ℝᵏ` with `k = ambient_dim`.
    ///
    /// The span is orthonormalized by SVD; directions whose singular value
    /// falls at or below `tol · σ_max` are discarded. An empty `vectors`
    /// yields the zero subspace. Errors if `ambient_dim == 0` or any vector
    /// has length `≠ ambient_dim`.
    pub fn span_with_tol(ambient_dim: usize, vectors: &[DVector<f64>], tol: f64) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidInput(
                "ambient dimension must be positive".into(),
            ));
        }
        if tol < 0.0 || tol.is_nan() {
            return Err(Error::InvalidInput(format!(
                "rank tolerance must be nonnegative, got {tol}"
            )));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "vector {i} has length {}, expected {ambient_dim}",
                    v.len()
                )));
            }
        }
        let mut cols = DMatrix::zeros(ambient_dim, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            cols.set_column(j, v);
        }
        Ok(Self::from_cols(cols, tol))
    }

    /// [`Self::span_with_tol`] with the default cutoff [`tol::RANK_REL`].
    pub fn span(ambient_dim: usize, vectors: &[DVector<f64>]) -> Result<Self> {
        Self::span_with_tol(ambient_dim, vectors, tol::RANK_REL)
    }

    /// Orthonormalize the columns of `cols` and keep the numerically
    /// significant directions: `σᵢ > tol · σ_max`. Scale-free, the right
    /// behaviour for user-supplied spans.
    pub(crate) fn from_cols(cols: DMatrix<f64>, tol: f64) -> Self {
        Self::from_cols_scaled(cols, tol, 0.0)
    }

    /// Like [`Self::from_cols`] but with the cutoff
    /// `σᵢ > tol · max(σ_max, scale)`. Used with `scale = 1` for blocks
    /// extracted from orthonormal bases, where a block that is pure rounding
    /// noise (`σ_max ≈ 1e-16`) must collapse to the zero subspace instead of
    /// keeping its noise directions.
    pub(crate) fn from_cols_scaled(cols: DMatrix<f64>, tol: f64, scale: f64) -> Self {
        let ambient_dim = cols.nrows();
        if cols.ncols() == 0 {
            return Self::zero_with_tol(ambient_dim, tol);
        }
        let f = jacobi_svd(&cols);
        let sigma_max = f.sigma.iter().cloned().fold(0.0_f64, f64::max);
        let cutoff = tol * sigma_max.max(scale);
        let kept: Vec<usize> = (0..f.sigma.len())
            .filter(|&i| f.sigma[i] > cutoff && f.sigma[i] > 0.0)
            .collect();
        let mut basis = DMatrix::zeros(ambient_dim, kept.len());
        for (j, &i) in kept.iter().enumerate() {
            basis.set_column(j, &f.u.column(i));
        }
        Self {
            ambient_dim,
            basis,
            tol,
        }
    }

    /// Wrap a matrix whose columns are already orthonormal, without
    /// re-factoring. Callers must guarantee orthonormality.
    pub(crate) fn from_orthonormal(basis: DMatrix<f64>, tol: f64) -> Self {
        Self {
            ambient_dim: basis.nrows(),
            basis,
            tol,
        }
    }

    /// Orthonormalize columns known to be linearly independent by
    /// construction (graphs of matrices, domain-plus-complement stacks).
    ///
    /// Uses Householder QR, which is backward stable and much cheaper than
    /// the rank-revealing route; callers must guarantee full column rank,
    /// checked in debug builds.
    pub(crate) fn from_independent_cols(cols: DMatrix<f64>, tol: f64) -> Self {
        let m = cols.ncols();
        let q = cols.qr().q();
        debug_assert!(
            (q.transpose() * &q - DMatrix::identity(m, m)).norm() <= 1e-12 * (m as f64).max(1.0),
            "columns were not numerically independent"
        );
        Self::from_orthonormal(q, tol)
    }

    /// The zero subspace `{0} ⊆ ℝᵏ`.
    pub fn zero(ambient_dim: usize) -> Self {
        Self::zero_with_tol(ambient_dim, tol::RANK_REL)
    }

    fn zero_with_tol(ambient_dim: usize, tol: f64) -> Self {
        Self {
            ambient_dim,
            basis: DMatrix::zeros(ambient_dim, 0),
            tol,
        }
    }

    /// The full space `ℝᵏ`.
    pub fn full(ambient_dim: usize) -> Self {
        Self::full_with_tol(ambient_dim, tol::RANK_REL)
    }

    fn full_with_tol(ambient_dim: usize, tol: f64) -> Self {
        Self {
            ambient_dim,
            basis: DMatrix::identity(ambient_dim, ambient_dim),
            tol,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// The stored orthonormal basis (`ambient_dim × dim`).
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// The rank cutoff this subspace was constructed with.
    pub fn rank_tol(&self) -> f64 {
        self.tol
    }

    /// The orthogonal projector onto this subspace, `P = B Bᵀ`.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    /// Orthogonal projection of `x` onto this subspace.
    pub fn project(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_vector(x)?;
        Ok(&self.basis * (self.basis.transpose() * x))
    }

    /// The orthogonal complement.
    ///
    /// Computed from the eigendecomposition of `I − B Bᵀ`; that matrix is an
    /// orthogonal projector, so its eigenvalues cluster at `0` and `1` and an
    /// absolute cutoff at `½` decides the rank unambiguously (a relative
    /// cutoff would misread the all-noise residual of a full subspace).
    /// Dimensions are complementary exactly: `dim S + dim S⊥ = k`.
    pub fn complement(&self) -> Self {
        let k = self.ambient_dim;
        if self.dim() == 0 {
            return Self::full_with_tol(k, self.tol);
        }
        let residual = DMatrix::identity(k, k) - self.projector();
        let eig = crate::jacobi::jacobi_sym_eigen(&residual);
        let kept: Vec<usize> = (0..k).filter(|&i| eig.values[i] > 0.5).collect();
        let mut basis = DMatrix::zeros(k, kept.len());
        for (j, &i) in kept.iter().enumerate() {
            basis.set_column(j, &eig.vectors.column(i));
        }
        let out = Self {
            ambient_dim: k,
            basis,
            tol: self.tol,
        };
        debug_assert_eq!(out.dim() + self.dim(), k);
        out
    }

    /// The sum `S + T` (span of the union of the bases).
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut cols = DMatrix::zeros(self.ambient_dim, self.dim() + other.dim());
        cols.view_mut((0, 0), (self.ambient_dim, self.dim()))
            .copy_from(&self.basis);
        cols.view_mut((0, self.dim()), (self.ambient_dim, other.dim()))
            .copy_from(&other.basis);
        Ok(Self::from_cols(cols, self.tol.max(other.tol)))
    }

    /// The intersection `S ∩ T`, computed as `(S⊥ + T⊥)⊥`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(self.complement().sum(&other.complement())?.complement())
    }

    /// Whether `other ⊆ self`, decided by `‖(I − P_self) B_other‖_F ≤ tol`.
    pub fn contains(&self, other: &Self, tol: f64) -> Result<bool> {
        self.check_ambient(other)?;
        let defect = &other.basis - &self.basis * (self.basis.transpose() * &other.basis);
        Ok(defect.norm() <= tol)
    }

    /// Whether the two subspaces are equal (mutual containment at `tol`).
    pub fn equals(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(self.contains(other, tol)? && other.contains(self, tol)?)
    }

    /// Whether the vector `x` lies in this subspace, decided by
    /// `‖x − P x‖ ≤ tol · ‖x‖`. The zero vector is always a member.
    pub fn contains_vector(&self, x: &DVector<f64>, tol: f64) -> Result<bool> {
        self.check_vector(x)?;
        let nx = x.norm();
        if nx == 0.0 {
            return Ok(true);
        }
        let residual = x - self.project(x)?;
        Ok(residual.norm() <= tol * nx)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces live in R^{} and R^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    fn check_vector(&self, x: &DVector<f64>) -> Result<()> {
        if x.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector has length {}, subspace lives in R^{}",
                x.len(),
                self.ambient_dim
            )));
        }
        Ok(())
    }
}

/// Moore–Penrose pseudo-inverse with a relative singular-value cutoff:
/// singular values at or below `rel_tol · σ_max` are treated as zero.
pub(crate) fn pseudo_inverse(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return DMatrix::zeros(m.ncols(), m.nrows());
    }
    let f = jacobi_svd(m);
    let sigma_max = f.sigma.iter().cloned().fold(0.0_f64, f64::max);
    let mut inv_sigma = DMatrix::zeros(f.sigma.len(), f.sigma.len());
    for i in 0..f.sigma.len() {
        if f.sigma[i] > rel_tol * sigma_max && f.sigma[i] > 0.0 {
            inv_sigma[(i, i)] = 1.0 / f.sigma[i];
        }
    }
    &f.v * inv_sigma * f.u.transpose()
}

/// Spectral norm (largest singular value).
pub(crate) fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let f = jacobi_svd(m);
    f.sigma.iter().cloned().fold(0.0_f64, f64::max)
}
