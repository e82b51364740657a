//! Linear relations on `ℝⁿ` and their algebra.
//!
//! A linear relation `A: ℝⁿ ⇉ ℝⁿ` is identified with its graph
//! `gra A = {(x, x*) : x* ∈ Ax}`, a linear subspace of `ℝ²ⁿ` stored as a
//! [`Subspace`] with graph vectors concatenated as `(u; v)` (input block
//! first). Matrices, operators defined on proper subspaces, multi-valued
//! maps, and inverses of singular maps are all the same kind of object here,
//! and every operation below is closed over that class:
//!
//! - [`LinearRelation::from_matrix`] / [`LinearRelation::from_graph`] /
//!   [`LinearRelation::make_maximal`] construct relations;
//! - [`LinearRelation::parts`] extracts domain, range, kernel, and the image
//!   of zero `A0 = {v : (0, v) ∈ gra A}` (the "multi-valued part": for every
//!   `x`, `Ax` is either empty or a translate of `A0`);
//! - [`LinearRelation::evaluate`] returns `Ax` as an [`AffineSet`];
//! - [`LinearRelation::inverse`], [`LinearRelation::adjoint`],
//!   [`LinearRelation::add`], [`LinearRelation::scale`],
//!   [`LinearRelation::restrict_extend`] form new relations;
//! - [`LinearRelation::graph_distance`] metrizes the space of relations.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::jacobi::{jacobi_svd, JacobiSvd};
use crate::subspace::Subspace;
use crate::tol;

/// A linear relation on `ℝⁿ`, represented by an orthonormal basis of its
/// graph in `ℝ²ⁿ`.
#[derive(Debug, Clone)]
pub struct LinearRelation {
    n: usize,
    graph: Subspace,
}

/// Domain, range, kernel, and image of zero of a relation.
#[derive(Debug, Clone)]
pub struct RelationParts {
    /// `dom A = {x : Ax ≠ ∅}`.
    pub dom: Subspace,
    /// `ran A = ∪ₓ Ax`.
    pub ran: Subspace,
    /// `ker A = {x : 0 ∈ Ax}`.
    pub ker: Subspace,
    /// `A0 = {v : (0, v) ∈ gra A}`; every nonempty value of `A` is a
    /// translate of this subspace.
    pub image_of_zero: Subspace,
}

/// A (possibly empty) affine subset of `ℝⁿ`: `point + direction`.
#[derive(Debug, Clone)]
pub struct AffineSet {
    point: Option<DVector<f64>>,
    direction: Subspace,
}

impl AffineSet {
    /// The empty set in `ℝⁿ`.
    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            point: None,
            direction: Subspace::zero(ambient_dim),
        }
    }

    pub fn new(point: DVector<f64>, direction: Subspace) -> Result<Self> {
        if point.len() != direction.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "point has length {}, direction lives in R^{}",
                point.len(),
                direction.ambient_dim()
            )));
        }
        Ok(Self {
            point: Some(point),
            direction,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.point.is_none()
    }

    /// A representative point, `None` for the empty set.
    pub fn point(&self) -> Option<&DVector<f64>> {
        self.point.as_ref()
    }

    pub fn direction(&self) -> &Subspace {
        &self.direction
    }

    /// Whether `z` belongs to the set: `z − point ∈ direction` at `tol`.
    pub fn contains(&self, z: &DVector<f64>, tol: f64) -> Result<bool> {
        match &self.point {
            None => Ok(false),
            Some(p) => {
                if z.len() != p.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "vector has length {}, set lives in R^{}",
                        z.len(),
                        p.len()
                    )));
                }
                let d = z - p;
                // Membership relative to the scale of the query, not of the
                // difference: `z` itself should count as the reference.
                let scale = z.norm().max(p.norm()).max(1.0);
                let residual = &d - self.direction.project(&d)?;
                Ok(residual.norm() <= tol * scale)
            }
        }
    }
}

impl LinearRelation {
    /// The relation `x ↦ {Mx}` of a square matrix.
    pub fn from_matrix(m: &DMatrix<f64>) -> Result<Self> {
        Self::from_matrix_with_tol(m, tol::RANK_REL)
    }

    /// [`Self::from_matrix`] with an explicit rank cutoff.
    pub fn from_matrix_with_tol(m: &DMatrix<f64>, rank_tol: f64) -> Result<Self> {
        let n = m.nrows();
        if m.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected square",
                m.nrows(),
                m.ncols()
            )));
        }
        if n == 0 {
            return Err(Error::InvalidInput("ambient dimension must be positive".into()));
        }
        let mut cols = DMatrix::zeros(2 * n, n);
        cols.view_mut((0, 0), (n, n))
            .copy_from(&DMatrix::identity(n, n));
        cols.view_mut((n, 0), (n, n)).copy_from(m);
        // The identity block makes the columns independent by construction.
        Ok(Self {
            n,
            graph: Subspace::from_independent_cols(cols, rank_tol),
        })
    }

    /// The relation spanned by the given graph vectors in `ℝ²ⁿ`, each
    /// concatenated as `(u; v)`. An empty list yields the zero relation
    /// `gra A = {0}` (so `dom A = {0}` and `A0 = {0}`).
    pub fn from_graph(n: usize, graph_vectors: &[DVector<f64>]) -> Result<Self> {
        Self::from_graph_with_tol(n, graph_vectors, tol::RANK_REL)
    }

    /// [`Self::from_graph`] with an explicit rank cutoff.
    pub fn from_graph_with_tol(
        n: usize,
        graph_vectors: &[DVector<f64>],
        rank_tol: f64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("ambient dimension must be positive".into()));
        }
        for (i, g) in graph_vectors.iter().enumerate() {
            if g.len() != 2 * n {
                return Err(Error::DimensionMismatch(format!(
                    "graph vector {i} has length {}, expected 2n = {}",
                    g.len(),
                    2 * n
                )));
            }
        }
        Ok(Self {
            n,
            graph: Subspace::span_with_tol(2 * n, graph_vectors, rank_tol)?,
        })
    }

    /// The maximal monotone extension of a monotone matrix `M` restricted to
    /// a subspace `D`: the relation with graph
    /// `{(x, P_D M x + z) : x ∈ D, z ∈ D⊥}`.
    ///
    /// Errors if `M + Mᵀ` is not positive semidefinite (the matrix must be
    /// monotone) or if dimensions disagree. The result always has graph
    /// dimension `n`, the hallmark of maximality.
    pub fn make_maximal(domain: &Subspace, m: &DMatrix<f64>) -> Result<Self> {
        Self::make_maximal_with_tol(domain, m, tol::RANK_REL)
    }

    /// [`Self::make_maximal`] with an explicit rank cutoff.
    pub fn make_maximal_with_tol(
        domain: &Subspace,
        m: &DMatrix<f64>,
        rank_tol: f64,
    ) -> Result<Self> {
        let n = domain.ambient_dim();
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, domain lives in R^{n}",
                m.nrows(),
                m.ncols()
            )));
        }
        if !matrix_is_monotone(m) {
            return Err(Error::InvalidInput(
                "matrix is not monotone (symmetric part has a negative eigenvalue)".into(),
            ));
        }
        Ok(Self::graph_over_domain(domain, m, rank_tol))
    }

    /// Graph `{(x, P_D M x + z) : x ∈ D, z ∈ D⊥}` without the monotonicity
    /// check; shared by [`Self::make_maximal`] and the subdifferential
    /// construction, which validate different preconditions.
    pub(crate) fn graph_over_domain(domain: &Subspace, m: &DMatrix<f64>, rank_tol: f64) -> Self {
        let n = domain.ambient_dim();
        let d = domain.dim();
        let comp = domain.complement();
        let proj = domain.projector();
        let mut cols = DMatrix::zeros(2 * n, d + comp.dim());
        for j in 0..d {
            let b = domain.basis().column(j).into_owned();
            let val = &proj * (m * &b);
            let mut col = DVector::zeros(2 * n);
            col.rows_mut(0, n).copy_from(&b);
            col.rows_mut(n, n).copy_from(&val);
            cols.set_column(j, &col);
        }
        for j in 0..comp.dim() {
            let mut col = DVector::zeros(2 * n);
            col.rows_mut(n, n)
                .copy_from(&comp.basis().column(j).into_owned());
            cols.set_column(d + j, &col);
        }
        // The domain block and the complement block are independent by
        // construction: the former is injective in the first n rows, the
        // latter lives in D⊥ of the last n rows.
        Self {
            n,
            graph: Subspace::from_independent_cols(cols, rank_tol),
        }
    }

    /// Ambient dimension `n` of the underlying space.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The graph as a subspace of `ℝ²ⁿ`.
    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    /// `dim gra A`.
    pub fn graph_dim(&self) -> usize {
        self.graph.dim()
    }

    /// Top (input) halves of the graph basis, an `n × d` matrix.
    pub(crate) fn input_block(&self) -> DMatrix<f64> {
        self.graph
            .basis()
            .view((0, 0), (self.n, self.graph.dim()))
            .into_owned()
    }

    /// Bottom (output) halves of the graph basis, an `n × d` matrix.
    pub(crate) fn output_block(&self) -> DMatrix<f64> {
        self.graph
            .basis()
            .view((self.n, 0), (self.n, self.graph.dim()))
            .into_owned()
    }

    /// Domain, range, kernel, and image of zero.
    ///
    /// The domain and range are spans of the input/output halves of the graph
    /// basis. The kernel and `A0` come from intersecting the graph with the
    /// coordinate blocks `ℝⁿ × {0}` and `{0} × ℝⁿ`. The dimension law
    /// `dim gra A = dim dom A + dim A0` holds with exact integer ranks.
    pub fn parts(&self) -> RelationParts {
        let rank_tol = self.graph.rank_tol();
        let u = self.input_block();
        let v = self.output_block();
        let fu = jacobi_svd(&u);
        let fv = jacobi_svd(&v);
        let dom = range_of_block(&fu, rank_tol);
        let ran = range_of_block(&fv, rank_tol);
        // A graph element (Uc, Vc) has zero input exactly when c ∈ ker U, so
        // A0 = V·ker U; symmetrically ker A = U·ker V. The graph basis is
        // orthonormal, so these images are orthonormal up to the rank cutoff.
        let image_of_zero =
            Subspace::from_cols_scaled(&v * kernel_of_block(&fu, rank_tol), rank_tol, 1.0);
        let ker = Subspace::from_cols_scaled(&u * kernel_of_block(&fv, rank_tol), rank_tol, 1.0);

        RelationParts {
            dom,
            ran,
            ker,
            image_of_zero,
        }
    }

    /// `dom A` (shorthand for [`Self::parts`]).
    pub fn dom(&self) -> Subspace {
        range_of_block(&jacobi_svd(&self.input_block()), self.graph.rank_tol())
    }

    /// `A0 = {v : (0, v) ∈ gra A}` (shorthand for [`Self::parts`]).
    pub fn image_of_zero(&self) -> Subspace {
        let rank_tol = self.graph.rank_tol();
        let fu = jacobi_svd(&self.input_block());
        Subspace::from_cols_scaled(
            self.output_block() * kernel_of_block(&fu, rank_tol),
            rank_tol,
            1.0,
        )
    }

    /// The value `Ax` as an affine set.
    ///
    /// Returns the empty set iff `x ∉ dom A` (membership at
    /// [`tol::CONTAINMENT`], relative to `‖x‖`). Otherwise the representative
    /// point is `V U† x` where `[U; V]` is the graph basis split into blocks:
    /// the minimum-norm coefficient solution of the interpolation system, a
    /// deterministic choice. The direction is always `A0`.
    pub fn evaluate(&self, x: &DVector<f64>) -> Result<AffineSet> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "vector has length {}, relation lives on R^{}",
                x.len(),
                self.n
            )));
        }
        let rank_tol = self.graph.rank_tol();
        let u = self.input_block();
        let v = self.output_block();
        // One factorization serves the membership test, the minimum-norm
        // coefficient solve, and the A0 extraction.
        let fu = jacobi_svd(&u);
        let dom = range_of_block(&fu, rank_tol);
        if !dom.contains_vector(x, tol::CONTAINMENT)? {
            return Ok(AffineSet::empty(self.n));
        }
        let cutoff = block_cutoff(&fu, rank_tol);
        let mut coeff = DVector::zeros(fu.v.nrows());
        for i in 0..fu.sigma.len() {
            if fu.sigma[i] > cutoff {
                let w = fu.u.column(i).dot(x) / fu.sigma[i];
                coeff += fu.v.column(i) * w;
            }
        }
        let point = &v * coeff;
        let image_of_zero =
            Subspace::from_cols_scaled(v * kernel_of_block(&fu, rank_tol), rank_tol, 1.0);
        AffineSet::new(point, image_of_zero)
    }

    /// The inverse relation: swap the input and output blocks of the graph.
    pub fn inverse(&self) -> Self {
        let d = self.graph.dim();
        let mut basis = DMatrix::zeros(2 * self.n, d);
        basis
            .view_mut((0, 0), (self.n, d))
            .copy_from(&self.output_block());
        basis
            .view_mut((self.n, 0), (self.n, d))
            .copy_from(&self.input_block());
        // Swapping block rows permutes coordinates, so the basis stays
        // orthonormal.
        Self {
            n: self.n,
            graph: Subspace::from_orthonormal(basis, self.graph.rank_tol()),
        }
    }

    /// The adjoint relation `A*`, with graph
    /// `{(x, x*) : ⟨x*, u⟩ = ⟨x, v⟩ for all (u, v) ∈ gra A}` — the
    /// orthogonal complement of the rotated graph `{(v, −u)}`.
    ///
    /// In finite dimensions adjunction is involutive (`A** = A`) and commutes
    /// with inversion (`(A*)⁻¹ = (A⁻¹)*`).
    pub fn adjoint(&self) -> Self {
        let d = self.graph.dim();
        let mut rotated = DMatrix::zeros(2 * self.n, d);
        rotated
            .view_mut((0, 0), (self.n, d))
            .copy_from(&self.output_block());
        rotated
            .view_mut((self.n, 0), (self.n, d))
            .copy_from(&(-self.input_block()));
        // The rotation (u, v) ↦ (v, −u) is orthogonal, so `rotated` is an
        // orthonormal basis of the rotated graph.
        let rot = Subspace::from_orthonormal(rotated, self.graph.rank_tol());
        Self {
            n: self.n,
            graph: rot.complement(),
        }
    }

    /// The pointwise sum `A + B` with `(A+B)x = Ax + Bx` and
    /// `dom(A+B) = dom A ∩ dom B`.
    ///
    /// Computed in `ℝ³ⁿ`: intersect
    /// `{(x, u, v) : (x, u) ∈ gra A}` with `{(x, u, v) : (x, v) ∈ gra B}`
    /// and push the result through `(x, u, v) ↦ (x, u + v)`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "relations live on R^{} and R^{}",
                self.n, other.n
            )));
        }
        let n = self.n;
        let rank_tol = self.graph.rank_tol().max(other.graph.rank_tol());

        // {(x, u, free)} with (x, u) ∈ gra A: graph basis in rows 0..2n plus
        // the identity in rows 2n..3n. Blocks are mutually orthogonal, so the
        // concatenation is orthonormal.
        let da = self.graph.dim();
        let mut ea = DMatrix::zeros(3 * n, da + n);
        ea.view_mut((0, 0), (2 * n, da)).copy_from(self.graph.basis());
        ea.view_mut((2 * n, da), (n, n))
            .copy_from(&DMatrix::identity(n, n));
        let ea = Subspace::from_orthonormal(ea, rank_tol);

        // {(x, free, v)} with (x, v) ∈ gra B.
        let db = other.graph.dim();
        let mut eb = DMatrix::zeros(3 * n, db + n);
        eb.view_mut((0, 0), (n, db))
            .copy_from(&other.input_block());
        eb.view_mut((2 * n, 0), (n, db))
            .copy_from(&other.output_block());
        eb.view_mut((n, db), (n, n))
            .copy_from(&DMatrix::identity(n, n));
        let eb = Subspace::from_orthonormal(eb, rank_tol);

        let w = ea.intersect(&eb)?;
        let mut cols = DMatrix::zeros(2 * n, w.dim());
        for j in 0..w.dim() {
            let c = w.basis().column(j);
            let mut g = DVector::zeros(2 * n);
            g.rows_mut(0, n).copy_from(&c.rows(0, n));
            g.rows_mut(n, n)
                .copy_from(&(c.rows(n, n) + c.rows(2 * n, n)));
            cols.set_column(j, &g);
        }
        Ok(Self {
            n,
            graph: Subspace::from_cols_scaled(cols, rank_tol, 1.0),
        })
    }

    /// The scalar multiple `αA`.
    ///
    /// For `α ≠ 0` this scales output blocks: `gra αA = {(x, αv)}`. For
    /// `α = 0` the convention is `(0A)x = {0} + A0` on `dom A`, i.e.
    /// `gra 0A = dom A × A0`, which keeps the domain and the multi-valued
    /// part intact.
    pub fn scale(&self, alpha: f64) -> Self {
        let n = self.n;
        let rank_tol = self.graph.rank_tol();
        if alpha != 0.0 {
            let d = self.graph.dim();
            let mut cols = DMatrix::zeros(2 * n, d);
            cols.view_mut((0, 0), (n, d)).copy_from(&self.input_block());
            cols.view_mut((n, 0), (n, d))
                .copy_from(&(alpha * self.output_block()));
            return Self {
                n,
                graph: Subspace::from_cols(cols, rank_tol),
            };
        }
        let dom = self.dom();
        let a0 = self.image_of_zero();
        let mut basis = DMatrix::zeros(2 * n, dom.dim() + a0.dim());
        basis
            .view_mut((0, 0), (n, dom.dim()))
            .copy_from(dom.basis());
        basis
            .view_mut((n, dom.dim()), (n, a0.dim()))
            .copy_from(a0.basis());
        Self {
            n,
            graph: Subspace::from_orthonormal(basis, rank_tol),
        }
    }

    /// Restrict `A` to a subspace `Z ⊆ dom A` and extend the values by `Z⊥`:
    /// the relation with graph `{(x, v + z) : x ∈ Z, (x, v) ∈ gra A, z ∈ Z⊥}`
    /// (that is, `A|_Z + N_Z` with `N_Z` the normal cone map of `Z`).
    ///
    /// Errors if `Z ⊄ dom A`.
    pub fn restrict_extend(&self, z: &Subspace) -> Result<Self> {
        if z.ambient_dim() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "subspace lives in R^{}, relation on R^{}",
                z.ambient_dim(),
                self.n
            )));
        }
        if !self.dom().contains(z, tol::CONTAINMENT)? {
            return Err(Error::InvalidInput(
                "restriction subspace is not contained in the domain".into(),
            ));
        }
        let n = self.n;
        let rank_tol = self.graph.rank_tol();
        // gra A ∩ (Z × ℝⁿ)
        let mut zr = DMatrix::zeros(2 * n, z.dim() + n);
        zr.view_mut((0, 0), (n, z.dim())).copy_from(z.basis());
        zr.view_mut((n, z.dim()), (n, n))
            .copy_from(&DMatrix::identity(n, n));
        let cylinder = Subspace::from_orthonormal(zr, rank_tol);
        let restricted = self.graph.intersect(&cylinder)?;

        let zc = z.complement();
        let mut cols = DMatrix::zeros(2 * n, restricted.dim() + zc.dim());
        cols.view_mut((0, 0), (2 * n, restricted.dim()))
            .copy_from(restricted.basis());
        cols.view_mut((n, restricted.dim()), (n, zc.dim()))
            .copy_from(zc.basis());
        Ok(Self {
            n,
            graph: Subspace::from_cols(cols, rank_tol),
        })
    }

    /// Distance between two relations: the Frobenius norm of the difference
    /// of their graph projectors, `‖P_{gra A} − P_{gra B}‖_F`. Zero exactly
    /// when the graphs coincide; insensitive to basis choice.
    pub fn graph_distance(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "relations live on R^{} and R^{}",
                self.n, other.n
            )));
        }
        Ok((self.graph.projector() - other.graph.projector()).norm())
    }
}

/// Rank cutoff for an n×d block of an orthonormal graph basis: singular
/// values are at most 1, so the threshold is floored at the natural scale 1
/// (a purely relative cutoff would misread an all-noise block).
fn block_cutoff(f: &JacobiSvd, rank_tol: f64) -> f64 {
    let sigma_max = f.sigma.iter().cloned().fold(0.0_f64, f64::max);
    rank_tol * sigma_max.max(1.0)
}

/// Orthonormal basis of the range of a graph block from its factorization.
fn range_of_block(f: &JacobiSvd, rank_tol: f64) -> Subspace {
    let cutoff = block_cutoff(f, rank_tol);
    let kept: Vec<usize> = (0..f.sigma.len()).filter(|&i| f.sigma[i] > cutoff).collect();
    let mut basis = DMatrix::zeros(f.u.nrows(), kept.len());
    for (j, &i) in kept.iter().enumerate() {
        basis.set_column(j, &f.u.column(i));
    }
    Subspace::from_orthonormal(basis, rank_tol)
}

/// Orthonormal basis (in coefficient space) of the kernel of a graph block.
fn kernel_of_block(f: &JacobiSvd, rank_tol: f64) -> DMatrix<f64> {
    let cutoff = block_cutoff(f, rank_tol);
    let kept: Vec<usize> = (0..f.sigma.len())
        .filter(|&i| f.sigma[i] <= cutoff)
        .collect();
    let mut basis = DMatrix::zeros(f.v.nrows(), kept.len());
    for (j, &i) in kept.iter().enumerate() {
        basis.set_column(j, &f.v.column(i));
    }
    basis
}

/// Matrix-level monotonicity: `λ_min(M + Mᵀ)/2 ≥ −tol·max(‖·‖₂, 1)`.
pub(crate) fn matrix_is_monotone(m: &DMatrix<f64>) -> bool {
    let sym = (m + m.transpose()) * 0.5;
    let eigs = sym.symmetric_eigenvalues();
    let lambda_min = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    let scale = eigs.iter().cloned().fold(0.0_f64, |a, b| a.max(b.abs()));
    lambda_min >= -tol::PSD * scale.max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{g, r_ind, r_mix, r_rot, rotation_matrix};
    use proptest::prelude::*;

    fn v(entries: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(entries)
    }

    #[test]
    fn matrix_relation_has_full_domain_graph() {
        let a = LinearRelation::from_matrix(&rotation_matrix()).unwrap();
        assert_eq!(a.graph_dim(), 2);
        let parts = a.parts();
        assert_eq!(parts.dom.dim(), 2);
        assert_eq!(parts.ran.dim(), 2);
        assert_eq!(parts.ker.dim(), 0);
        assert_eq!(parts.image_of_zero.dim(), 0);
        let val = a.evaluate(&v(&[1.0, 0.0])).unwrap();
        assert!((val.point().unwrap() - v(&[0.0, 1.0])).norm() <= 1e-12);
        assert_eq!(val.direction().dim(), 0);
    }

    #[test]
    fn from_graph_rejects_wrong_lengths() {
        let err = LinearRelation::from_graph(2, &[v(&[1.0, 0.0, 0.0])]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn empty_graph_is_zero_relation() {
        let a = LinearRelation::from_graph(3, &[]).unwrap();
        assert_eq!(a.graph_dim(), 0);
        let parts = a.parts();
        assert_eq!(parts.dom.dim(), 0);
        assert_eq!(parts.image_of_zero.dim(), 0);
    }

    #[test]
    fn indicator_relation_parts_and_evaluate() {
        let a = r_ind();
        let parts = a.parts();
        assert_eq!(parts.dom.dim(), 1);
        assert!(parts
            .dom
            .contains_vector(&v(&[1.0, 0.0]), tol::CONTAINMENT)
            .unwrap());
        assert_eq!(parts.image_of_zero.dim(), 1);
        assert!(parts
            .image_of_zero
            .contains_vector(&v(&[0.0, 1.0]), tol::CONTAINMENT)
            .unwrap());
        // Whole domain maps to 0 + A0.
        let val = a.evaluate(&v(&[1.0, 0.0])).unwrap();
        assert!(val.point().unwrap().norm() <= 1e-12);
        assert!(val.contains(&v(&[0.0, 7.5]), tol::CONTAINMENT).unwrap());
        assert!(!val.contains(&v(&[1.0, 0.0]), tol::CONTAINMENT).unwrap());
        // Off the domain the value is empty.
        let off = a.evaluate(&v(&[0.0, 1.0])).unwrap();
        assert!(off.is_empty());
        assert!(!off.contains(&v(&[0.0, 0.0]), tol::CONTAINMENT).unwrap());
    }

    #[test]
    fn make_maximal_on_line_matches_mixed_fixture() {
        let domain = Subspace::span(2, &[v(&[1.0, 0.0])]).unwrap();
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, -1.0, 1.0]);
        let a = LinearRelation::make_maximal(&domain, &m).unwrap();
        assert_eq!(a.graph_dim(), 2);
        assert!(a.graph_distance(&r_mix()).unwrap() <= 1e-12);
    }

    #[test]
    fn make_maximal_rejects_non_monotone_matrix() {
        let domain = Subspace::full(2);
        let m = DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 1.0]);
        let err = LinearRelation::make_maximal(&domain, &m).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn inverse_of_zero_matrix_is_vertical_graph() {
        let zero = DMatrix::zeros(1, 1);
        let a = LinearRelation::from_matrix(&zero).unwrap();
        let inv = a.inverse();
        let parts = inv.parts();
        assert_eq!(parts.dom.dim(), 0);
        assert_eq!(parts.image_of_zero.dim(), 1);
        // Graphs of A and A⁻¹ are the two coordinate axes of R².
        assert!((a.graph_distance(&inv).unwrap() - 2.0_f64.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn adjoint_of_matrix_is_transpose() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 0.0, -1.0, 0.5, 3.0, 0.0, 1.0, -2.0]);
        let a = LinearRelation::from_matrix(&m).unwrap();
        let at = LinearRelation::from_matrix(&m.transpose()).unwrap();
        assert!(a.adjoint().graph_distance(&at).unwrap() <= tol::INVOLUTION);
    }

    #[test]
    fn indicator_relation_is_self_adjoint() {
        let a = r_ind();
        assert!(a.adjoint().graph_distance(&a).unwrap() <= tol::INVOLUTION);
    }

    #[test]
    fn adjoint_identities_on_fixtures() {
        for a in [r_ind(), r_mix(), r_rot()] {
            let dd = a.adjoint().adjoint();
            assert!(a.graph_distance(&dd).unwrap() <= tol::INVOLUTION);
            let lhs = a.adjoint().inverse();
            let rhs = a.inverse().adjoint();
            assert!(lhs.graph_distance(&rhs).unwrap() <= tol::INVOLUTION);
        }
    }

    #[test]
    fn add_indicator_and_rotation_collapses_to_indicator() {
        let a = r_ind();
        let b = LinearRelation::from_matrix(&rotation_matrix()).unwrap();
        let sum = a.add(&b).unwrap();
        assert!(sum.graph_distance(&a).unwrap() <= 1e-10);
    }

    #[test]
    fn add_intersects_domains() {
        // dom(A + B) = dom A ∩ dom B for fixture pairs.
        let a = r_ind(); // dom = R × {0}
        let b = LinearRelation::from_graph(2, &[g(&[0.0, 1.0], &[0.0, 1.0])]).unwrap(); // dom = {0} × R
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.parts().dom.dim(), 0);
    }

    #[test]
    fn scale_by_zero_keeps_domain_and_multivalued_part() {
        let a = r_rot();
        let scaled = a.scale(0.0);
        // Full domain, single-valued zero map.
        let expected = LinearRelation::from_matrix(&DMatrix::zeros(2, 2)).unwrap();
        assert!(scaled.graph_distance(&expected).unwrap() <= 1e-12);

        let b = r_mix();
        let scaled = b.scale(0.0);
        // dom = R × {0}, values {0} + A0 = {0} × R: this is exactly r_ind.
        assert!(scaled.graph_distance(&r_ind()).unwrap() <= 1e-12);
    }

    #[test]
    fn scale_by_negative_flips_outputs() {
        let a = LinearRelation::from_matrix(&rotation_matrix()).unwrap();
        let neg = a.scale(-1.0);
        let expected = LinearRelation::from_matrix(&(-rotation_matrix())).unwrap();
        assert!(neg.graph_distance(&expected).unwrap() <= 1e-12);
    }

    #[test]
    fn restrict_extend_rotation_to_line_gives_indicator() {
        let a = LinearRelation::from_matrix(&rotation_matrix()).unwrap();
        let z = Subspace::span(2, &[v(&[1.0, 0.0])]).unwrap();
        let restricted = a.restrict_extend(&z).unwrap();
        assert!(restricted.graph_distance(&r_ind()).unwrap() <= 1e-10);
    }

    #[test]
    fn restrict_extend_requires_subdomain() {
        let a = r_ind(); // dom = R × {0}
        let z = Subspace::span(2, &[v(&[0.0, 1.0])]).unwrap();
        assert!(matches!(
            a.restrict_extend(&z).unwrap_err(),
            Error::InvalidInput(_)
        ));
    }

    #[test]
    fn maximal_relation_domain_identities() {
        // For A = make_maximal(D, M): A0 = A*0 = (dom A)⊥ and dom A* = dom A.
        let domain = Subspace::span(3, &[v(&[1.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])]).unwrap();
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[2.0, 1.0, 0.0, -1.0, 1.0, 0.5, 0.0, -0.5, 1.0],
        );
        let a = LinearRelation::make_maximal(&domain, &m).unwrap();
        assert_eq!(a.graph_dim(), 3);
        let adj = a.adjoint();
        let parts = a.parts();
        let adj_parts = adj.parts();
        let dom_perp = parts.dom.complement();
        assert!(parts
            .image_of_zero
            .equals(&dom_perp, tol::CONTAINMENT)
            .unwrap());
        assert!(adj_parts
            .image_of_zero
            .equals(&dom_perp, tol::CONTAINMENT)
            .unwrap());
        assert!(adj_parts.dom.equals(&parts.dom, tol::CONTAINMENT).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// dim gra A = dim dom A + dim A0 with exact integer ranks, on
        /// integer-valued random graphs (possibly degenerate).
        #[test]
        fn dimension_law_on_random_graphs(
            n in 1usize..4,
            rows in proptest::collection::vec(
                proptest::collection::vec(-3i32..=3, 8),
                0..6,
            ),
        ) {
            let vectors: Vec<DVector<f64>> = rows
                .iter()
                .map(|r| DVector::from_iterator(2 * n, r.iter().take(2 * n).map(|&x| x as f64)))
                .collect();
            let a = LinearRelation::from_graph(n, &vectors).unwrap();
            let parts = a.parts();
            prop_assert_eq!(a.graph_dim(), parts.dom.dim() + parts.image_of_zero.dim());
        }

        /// A** = A and (A*)⁻¹ = (A⁻¹)* on integer-valued random graphs.
        #[test]
        fn adjoint_identities_on_random_graphs(
            n in 1usize..4,
            rows in proptest::collection::vec(
                proptest::collection::vec(-3i32..=3, 8),
                0..6,
            ),
        ) {
            let vectors: Vec<DVector<f64>> = rows
                .iter()
                .map(|r| DVector::from_iterator(2 * n, r.iter().take(2 * n).map(|&x| x as f64)))
                .collect();
            let a = LinearRelation::from_graph(n, &vectors).unwrap();
            let dd = a.adjoint().adjoint();
            prop_assert!(a.graph_distance(&dd).unwrap() <= tol::INVOLUTION);
            let lhs = a.adjoint().inverse();
            let rhs = a.inverse().adjoint();
            prop_assert!(lhs.graph_distance(&rhs).unwrap() <= tol::INVOLUTION);
        }
    }
}
