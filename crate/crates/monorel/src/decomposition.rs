//! Splitting a maximal monotone linear relation into a subdifferential part
//! and a skew part.
//!
//! The central object is the decomposition `A = ∂f + S` where `f` is a
//! convex quadratic supported on a subspace ([`QuadraticOnSubspace`]) and
//! `S` is a matrix that is antisymmetric on that subspace. The module
//! provides the symmetric/skew relation split, the quadratic `q_A(x) =
//! ½⟨x, Ax⟩`, the single-valued linear selection of a maximal monotone
//! relation, the decomposability test with its equivalent-criterion
//! cross-check, the canonical construction [`bw_decompose`], quadratic
//! conjugation, third-party verification of candidate decompositions, and
//! the sum rule.
//!
//! The subdifferential part of a valid decomposition is unique (as a
//! relation on `dom A`); the skew part is unique only up to a perturbation
//! mapping `dom A` into `A0`. [`verify_decomposition`] checks exactly that
//! contract, so distinct but equally valid skew choices both pass.

use nalgebra::{DMatrix, DVector};

use crate::analysis::{is_maximal_monotone, is_monotone, Certificate};
use crate::error::{Error, Result};
use crate::jacobi::jacobi_sym_eigen;
use crate::relation::{matrix_is_monotone, LinearRelation};
use crate::subspace::Subspace;
use crate::tol;

/// A convex quadratic `f(x) = ½ xᵀHx + offset` on a subspace `D`, with
/// `f = +∞` outside `D`.
///
/// Only the compression `P_D H P_D` of the matrix is meaningful; the stored
/// matrix is symmetrized on construction. The function is convex exactly When
/// that compression is positive semidefinite.
#[derive(Debug, Clone)]
pub struct QuadraticOnSubspace {
    domain: Subspace,
    h: DMatrix<f64>,
    offset: f64,
}

impl QuadraticOnSubspace {
    /// Wraps `½ xᵀHx + offset` on `domain`.
    ///
    /// Errors if `h` is not square of the ambient dimension or departs from
    /// symmetry by more than `1e-10` relative to `max(‖H‖, 1)`; the accepted
    /// matrix is stored as `(H + Hᵀ)/2`.
    pub fn new(domain: Subspace, h: DMatrix<f64>, offset: f64) -> Result<Self> {
        let n = domain.ambient_dim();
        if h.nrows() != n || h.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "quadratic matrix is {}×{}, expected {n}×{n}",
                h.nrows(),
                h.ncols()
            )));
        }
        let asym = (&h - h.transpose()).norm();
        if asym > 1e-10 * h.norm().max(1.0) {
            return Err(Error::InvalidInput(format!(
                "quadratic matrix is not symmetric: ‖H − Hᵀ‖ = {asym:.3e}"
            )));
        }
        let sym = (&h + h.transpose()) * 0.5;
        Ok(Self {
            domain,
            h: sym,
            offset,
        })
    }

    /// The indicator `ι_D` (zero on `D`, `+∞` elsewhere).
    pub fn indicator(domain: Subspace) -> Self {
        let n = domain.ambient_dim();
        Self {
            domain,
            h: DMatrix::zeros(n, n),
            offset: 0.0,
        }
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    /// The stored symmetric matrix `H`.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.h
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// The meaningful compression `P_D H P_D`.
    pub fn effective_matrix(&self) -> DMatrix<f64> {
        let p = self.domain.projector();
        &p * &self.h * &p
    }

    /// Positive semidefiniteness of the compression, i.e. convexity of `f`.
    pub fn is_convex(&self) -> bool {
        matrix_is_monotone(&self.effective_matrix())
    }

    /// `f(x)`: `½ xᵀHx + offset` for `x ∈ D`, `+∞` otherwise.
    pub fn evaluate(&self, x: &DVector<f64>) -> Result<f64> {
        if !self.domain.contains_vector(x, tol::CONTAINMENT)? {
            return Ok(f64::INFINITY);
        }
        Ok(0.5 * x.dot(&(&self.h * x)) + self.offset)
    }
}

/// A decomposition `A = ∂f + S` of a maximal monotone linear relation into
/// the subdifferential of a convex quadratic on `D = dom A` and a matrix
/// that is antisymmetric on `D`.
#[derive(Debug, Clone)]
pub struct BWDecomposition {
    f: QuadraticOnSubspace,
    skew: DMatrix<f64>,
    source: LinearRelation,
}

impl BWDecomposition {
    /// Wraps a candidate decomposition of `source`.
    ///
    /// Validates dimensions and that the compression `P_D S P_D` is
    /// antisymmetric; whether `∂f + S` actually reconstructs `source` is the
    /// business of [`verify_decomposition`].
    pub fn new(f: QuadraticOnSubspace, skew: DMatrix<f64>, source: LinearRelation) -> Result<Self> {
        let n = source.n();
        if f.domain().ambient_dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "quadratic lives in ℝ^{}, relation in ℝ^{n}",
                f.domain().ambient_dim()
            )));
        }
        if skew.nrows() != n || skew.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "skew matrix is {}×{}, expected {n}×{n}",
                skew.nrows(),
                skew.ncols()
            )));
        }
        let p = f.domain().projector();
        let compressed = &p * &skew * &p;
        let sym_norm = (&compressed + compressed.transpose()).norm() * 0.5;
        if sym_norm > tol::SKEW * skew.norm().max(1.0) {
            return Err(Error::InvalidInput(format!(
                "matrix is not antisymmetric on the domain: ‖sym(P_D S P_D)‖ = {sym_norm:.3e}"
            )));
        }
        Ok(Self { f, skew, source })
    }

    pub fn f(&self) -> &QuadraticOnSubspace {
        &self.f
    }

    /// The skew matrix `S`.
    pub fn skew(&self) -> &DMatrix<f64> {
        &self.skew
    }

    /// The relation this object claims to decompose.
    pub fn source(&self) -> &LinearRelation {
        &self.source
    }

    /// The relation `∂f + S`, formed with the audited relation sum.
    pub fn reconstruct(&self) -> Result<LinearRelation> {
        let subdiff = subdifferential_graph(&self.f)?;
        let skew_rel = LinearRelation::from_matrix(&self.skew)?;
        subdiff.add(&skew_rel)
    }
}

/// The symmetric part `A₊ = ½A + ½A*`.
///
/// Built from relation arithmetic, so the domain is `dom A ∩ dom A*` and
/// multivaluedness is carried along; the result is a symmetric relation.
pub fn symmetric_part(a: &LinearRelation) -> LinearRelation {
    a.scale(0.5)
        .add(&a.adjoint().scale(0.5))
        .expect("summands share the ambient space")
}

/// The skew part `A∘ = ½A − ½A*`, a skew relation on `dom A ∩ dom A*`.
pub fn skew_part(a: &LinearRelation) -> LinearRelation {
    a.scale(0.5)
        .add(&a.adjoint().scale(-0.5))
        .expect("summands share the ambient space")
}

/// The quadratic `q_A(x) = ½⟨x, x*⟩` for any `x* ∈ Ax`, `+∞` off `dom A`.
///
/// Well defined for monotone `A` because then `dom A ⊆ (A0)⊥`, so the value
/// does not depend on the chosen `x* ∈ Ax = x* + A0`.
///
/// # Errors
///
/// [`Error::InvalidInput`] when `A` is not monotone.
pub fn q_value(a: &LinearRelation, x: &DVector<f64>) -> Result<f64> {
    if !is_monotone(a).holds() {
        return Err(Error::InvalidInput(
            "q_A is defined for monotone relations only".into(),
        ));
    }
    let image = a.evaluate(x)?;
    match image.point() {
        None => Ok(f64::INFINITY),
        Some(x_star) => Ok(0.5 * x.dot(x_star)),
    }
}

/// The single-valued linear selection `Q` of a maximal monotone relation:
/// `Qx = P_{(A0)⊥}(x*)` for any `x* ∈ Ax`, extended by zero on `(dom A)⊥`.
///
/// `Qx ∈ Ax` for every `x ∈ dom A`, and `A = Q + A0` as relations.
///
/// # Errors
///
/// [`Error::InvalidInput`] when `A` is not maximal monotone.
pub fn linear_selection(a: &LinearRelation) -> Result<DMatrix<f64>> {
    let maximal = is_maximal_monotone(a)?;
    if !maximal.holds() {
        return Err(Error::InvalidInput(format!(
            "linear selection requires a maximal monotone relation: {}",
            maximal.detail()
        )));
    }
    // In the orthonormal graph basis [U; V], the map x ↦ x* is V·U†; the
    // pseudo-inverse vanishes on (ran U)⊥ = (dom A)⊥, which is exactly the
    // required zero extension.
    let u = a.input_block();
    let v = a.output_block();
    let value = &v * crate::subspace::pseudo_inverse(&u, tol::RANK_REL);
    let clean = a.image_of_zero().complement();
    Ok(clean.projector() * value)
}

/// Decomposability of a maximal monotone relation as `∂f + S`.
///
/// The verdict is `dom A ⊆ dom A*`; it is cross-checked against the
/// equivalent criterion `gra(A₊ + A∘) = gra A`, and a disagreement raises
/// [`Error::Inconsistency`]. In finite dimensions both hold for every
/// maximal monotone relation (domains are closed), so a `False` verdict on
/// clean input indicates numerical trouble rather than genuine failure.
///
/// # Errors
///
/// [`Error::InvalidInput`] when `A` is not maximal monotone.
pub fn bw_decomposable(a: &LinearRelation) -> Result<Certificate> {
    let maximal = is_maximal_monotone(a)?;
    if !maximal.holds() {
        return Err(Error::InvalidInput(format!(
            "decomposability is defined for maximal monotone relations: {}",
            maximal.detail()
        )));
    }
    let by_domains = a
        .adjoint()
        .dom()
        .contains(&a.dom(), tol::CONTAINMENT)?;
    let split_sum = symmetric_part(a).add(&skew_part(a))?;
    let by_split = split_sum.graph().equals(a.graph(), tol::CONTAINMENT)?;
    if by_domains != by_split {
        return Err(Error::Inconsistency(format!(
            "decomposability criteria disagree: dom A ⊆ dom A* is {by_domains}, gra(A₊ + A∘) = gra A is {by_split}"
        )));
    }
    if by_domains {
        Ok(Certificate::pass(
            "dom A ⊆ dom A* and A₊ + A∘ reconstructs A; both criteria agree".into(),
        ))
    } else {
        Ok(Certificate::fail(
            None,
            "dom A ⊄ dom A* and A₊ + A∘ loses graph directions".into(),
        ))
    }
}

/// The canonical decomposition `A = ∂f + S` of a maximal monotone relation.
///
/// With `D = dom A`, `Q` the [`linear_selection`], and `B = P_D Q P_D`: the
/// quadratic is `f = ½ xᵀ sym(B) x + ι_D` and the skew part is
/// `S = (B − Bᵀ)/2`. Any other valid decomposition has the same
/// subdifferential part and a skew part differing by a matrix mapping `D`
/// into `A0`.
///
/// # Errors
///
/// [`Error::InvalidInput`] when `A` is not maximal monotone.
pub fn bw_decompose(a: &LinearRelation) -> Result<BWDecomposition> {
    let q = linear_selection(a)?;
    let p = a.dom().projector();
    let b = &p * q * &p;
    let h = (&b + b.transpose()) * 0.5;
    let s = (&b - b.transpose()) * 0.5;
    let f = QuadraticOnSubspace::new(a.dom(), h, 0.0)?;
    BWDecomposition::new(f, s, a.clone())
}

/// The subdifferential of a convex quadratic on a subspace:
/// `∂f(x) = P_D H x + D⊥` for `x ∈ D`, empty otherwise.
///
/// The result is a symmetric maximal monotone relation.
///
/// # Errors
///
/// [`Error::InvalidInput`] when the compression `P_D H P_D` is not positive
/// semidefinite (`f` not convex).
pub fn subdifferential_graph(f: &QuadraticOnSubspace) -> Result<LinearRelation> {
    if !f.is_convex() {
        return Err(Error::InvalidInput(
            "subdifferential requires a convex quadratic: P_D H P_D is not positive semidefinite"
                .into(),
        ));
    }
    Ok(LinearRelation::graph_over_domain(
        f.domain(),
        f.matrix(),
        tol::RANK_REL,
    ))
}

/// The Fenchel conjugate of a convex quadratic on a subspace.
///
/// With `H_D = P_D H P_D`: the conjugate is finite exactly on
/// `D* = ran H_D ⊕ D⊥`, where `f*(y) = ½ (P_D y)ᵀ H_D† (P_D y) − offset`.
/// The pseudo-inverse truncates eigenvalues below `1e-10` of the largest,
/// matching the rank policy used everywhere else. For the subdifferential of
/// a symmetric maximal monotone relation this realizes the inverse:
/// `∂(f*) = (∂f)⁻¹`.
///
/// # Errors
///
/// [`Error::InvalidInput`] when `f` is not convex.
pub fn quad_conjugate(f: &QuadraticOnSubspace) -> Result<QuadraticOnSubspace> {
    if !f.is_convex() {
        return Err(Error::InvalidInput(
            "conjugation implemented for convex quadratics only".into(),
        ));
    }
    let h_d = f.effective_matrix();
    let n = h_d.nrows();
    // Eigen-based pseudo-inverse keeps the result exactly symmetric and the
    // range basis exactly orthonormal.
    let eig = jacobi_sym_eigen(&h_d);
    let lambda_max = eig.values.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    let cutoff = tol::RANK_REL * lambda_max;
    let kept: Vec<usize> = (0..n)
        .filter(|&i| eig.values[i].abs() > cutoff && eig.values[i].abs() > 0.0)
        .collect();
    let mut h_pinv = DMatrix::zeros(n, n);
    let mut range_cols = DMatrix::zeros(n, kept.len());
    for (j, &i) in kept.iter().enumerate() {
        let v = eig.vectors.column(i);
        h_pinv += v * v.transpose() / eig.values[i];
        range_cols.set_column(j, &v);
    }
    let range = Subspace::from_cols(range_cols, f.domain().rank_tol());
    let conj_domain = range.sum(&f.domain().complement())?;
    QuadraticOnSubspace::new(conj_domain, h_pinv, -f.offset())
}

/// Checks a candidate decomposition `A = ∂f + S` against its three-part
/// contract.
///
/// 1. **Reconstruction**: `graph_distance(∂f + S, A) ≤ 1e-8`.
/// 2. **Skewness**: `P_D S P_D` antisymmetric (already enforced by
///    [`BWDecomposition::new`], re-measured here).
/// 3. **Uniqueness**: against the canonical output, the subdifferential
///    parts agree as relations on `dom A`, and `S − S_canonical` maps
///    `dom A` into `A0`.
///
/// The skew part of a decomposition is genuinely non-unique; part 3 accepts
/// exactly the lawful alternatives.
pub fn verify_decomposition(a: &LinearRelation, dec: &BWDecomposition) -> Result<Certificate> {
    let reconstructed = dec.reconstruct()?;
    let distance = reconstructed.graph_distance(a)?;
    if distance > tol::RECONSTRUCTION {
        return Ok(Certificate::fail(
            None,
            format!("∂f + S does not reconstruct A: graph distance {distance:.3e}"),
        ));
    }
    let p = dec.f().domain().projector();
    let compressed = &p * dec.skew() * &p;
    let sym_norm = (&compressed + compressed.transpose()).norm() * 0.5;
    if sym_norm > tol::SKEW * dec.skew().norm().max(1.0) {
        return Ok(Certificate::fail(
            None,
            format!("S is not antisymmetric on dom A: ‖sym(P_D S P_D)‖ = {sym_norm:.3e}"),
        ));
    }
    // Reconstruction succeeded, so A is maximal monotone and the canonical
    // decomposition exists.
    let canonical = bw_decompose(a)?;
    let sub = subdifferential_graph(dec.f())?;
    let sub_canonical = subdifferential_graph(canonical.f())?;
    if !sub
        .graph()
        .equals(sub_canonical.graph(), tol::CONTAINMENT)?
    {
        return Ok(Certificate::fail(
            None,
            "subdifferential part differs from the canonical one on dom A".into(),
        ));
    }
    let a0 = a.image_of_zero();
    let drift = dec.skew() - canonical.skew();
    for col in a.dom().basis().column_iter() {
        let w = &drift * col;
        let residual = (&w - a0.projector() * &w).norm();
        if residual > tol::CONTAINMENT * w.norm().max(1.0) {
            let mut witness = DVector::zeros(2 * a.n());
            witness.rows_mut(a.n(), a.n()).copy_from(&w);
            return Ok(Certificate::fail(
                Some(witness),
                format!(
                    "skew parts differ by more than an A0-valued perturbation: residual {residual:.3e}"
                ),
            ));
        }
    }
    Ok(Certificate::pass(format!(
        "reconstruction distance {distance:.3e}; S antisymmetric on dom A; f matches the canonical subdifferential and S − S₀ maps dom A into A0"
    )))
}

/// The decomposition of a sum from the decompositions of its terms:
/// `A₁ + A₂ = ∂(f₁ + f₂) + S` with `f₁ + f₂` on `D = D₁ ∩ D₂` and
/// `S = P_D (S₁ + S₂) P_D`.
///
/// The compression of the skew sum to `D` changes it only by an `A0`-valued
/// perturbation, which [`verify_decomposition`] licenses; the result is
/// checked against the canonical decomposition of `A₁ + A₂` before being
/// returned.
///
/// # Errors
///
/// [`Error::InvalidInput`] when either term or the sum fails to be maximal
/// monotone; [`Error::Inconsistency`] when the assembled decomposition fails
/// verification against the canonical one.
pub fn sum_decompose(a1: &LinearRelation, a2: &LinearRelation) -> Result<BWDecomposition> {
    let sum = a1.add(a2)?;
    let maximal = is_maximal_monotone(&sum)?;
    if !maximal.holds() {
        return Err(Error::InvalidInput(format!(
            "the sum is not maximal monotone: {}",
            maximal.detail()
        )));
    }
    let d1 = bw_decompose(a1)?;
    let d2 = bw_decompose(a2)?;
    let domain = d1.f().domain().intersect(d2.f().domain())?;
    let h = d1.f().matrix() + d2.f().matrix();
    let offset = d1.f().offset() + d2.f().offset();
    let f = QuadraticOnSubspace::new(domain, h, offset)?;
    let p = f.domain().projector();
    let skew = &p * (d1.skew() + d2.skew()) * &p;
    let dec = BWDecomposition::new(f, skew, sum.clone())?;
    let check = verify_decomposition(&sum, &dec)?;
    if !check.holds() {
        return Err(Error::Inconsistency(format!(
            "sum rule produced an invalid decomposition: {}",
            check.detail()
        )));
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{g, r_ind, r_mix, r_rot, rotation_matrix};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn v(entries: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(entries)
    }

    fn line(n: usize, direction: &[f64]) -> Subspace {
        Subspace::span(n, &[v(direction)]).unwrap()
    }

    #[test]
    fn parts_of_a_matrix_relation_split_the_matrix() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 3.0]);
        let a = LinearRelation::from_matrix(&m).unwrap();
        let sym = LinearRelation::from_matrix(&((&m + m.transpose()) * 0.5)).unwrap();
        let skew = LinearRelation::from_matrix(&((&m - m.transpose()) * 0.5)).unwrap();
        assert!(symmetric_part(&a).graph_distance(&sym).unwrap() <= 1e-9);
        assert!(skew_part(&a).graph_distance(&skew).unwrap() <= 1e-9);
    }

    #[test]
    fn skew_part_of_indicator_is_the_indicator() {
        assert!(skew_part(&r_ind()).graph_distance(&r_ind()).unwrap() <= 1e-9);
    }

    #[test]
    fn symmetric_part_of_rotation_vanishes() {
        let j = LinearRelation::from_matrix(&rotation_matrix()).unwrap();
        let zero = LinearRelation::from_matrix(&DMatrix::zeros(2, 2)).unwrap();
        assert!(symmetric_part(&j).graph_distance(&zero).unwrap() <= 1e-9);
    }

    #[test]
    fn q_value_examples() {
        let id = LinearRelation::from_matrix(&DMatrix::identity(2, 2)).unwrap();
        let x = v(&[3.0, 4.0]);
        assert_abs_diff_eq!(q_value(&id, &x).unwrap(), 12.5, epsilon = 1e-12);

        assert_abs_diff_eq!(q_value(&r_rot(), &x).unwrap(), 0.0, epsilon = 1e-12);

        // Off the domain the value is +∞.
        assert!(q_value(&r_ind(), &v(&[0.0, 1.0])).unwrap().is_infinite());

        let neg = LinearRelation::from_matrix(&(-DMatrix::identity(2, 2))).unwrap();
        assert!(matches!(q_value(&neg, &x), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn selection_of_matrix_relation_recovers_the_matrix() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, -2.0, 5.0]);
        let a = LinearRelation::from_matrix(&m).unwrap();
        assert!((linear_selection(&a).unwrap() - &m).norm() <= 1e-9);
    }

    #[test]
    fn selection_of_indicator_is_zero_and_of_mixed_is_a_projector() {
        assert!(linear_selection(&r_ind()).unwrap().norm() <= 1e-10);
        let q = linear_selection(&r_mix()).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        assert!((q - expected).norm() <= 1e-9);
    }

    #[test]
    fn selection_rejects_non_maximal_input() {
        let sub = LinearRelation::from_graph(2, &[g(&[1.0, 0.0], &[0.0, 0.0])]).unwrap();
        assert!(matches!(
            linear_selection(&sub),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn decomposability_holds_on_fixtures() {
        assert!(bw_decomposable(&r_ind()).unwrap().holds());
        assert!(bw_decomposable(&r_mix()).unwrap().holds());
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, -2.0, 5.0]);
        assert!(bw_decomposable(&LinearRelation::from_matrix(&m).unwrap())
            .unwrap()
            .holds());
    }

    #[test]
    fn canonical_decomposition_of_a_matrix_relation_is_the_matrix_split() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, -2.0, 5.0]);
        let a = LinearRelation::from_matrix(&m).unwrap();
        let dec = bw_decompose(&a).unwrap();
        let sym = (&m + m.transpose()) * 0.5;
        let skew = (&m - m.transpose()) * 0.5;
        assert!((dec.f().matrix() - sym).norm() <= 1e-10);
        assert!((dec.skew() - skew).norm() <= 1e-10);
        assert_eq!(dec.f().domain().dim(), 2);
        assert!(verify_decomposition(&a, &dec).unwrap().holds());
    }

    #[test]
    fn canonical_decomposition_of_the_indicator() {
        let dec = bw_decompose(&r_ind()).unwrap();
        assert_eq!(dec.f().domain().dim(), 1);
        assert!(dec
            .f()
            .domain()
            .contains_vector(&v(&[1.0, 0.0]), 1e-10)
            .unwrap());
        assert!(dec.f().effective_matrix().norm() <= 1e-10);
        assert!(dec.skew().norm() <= 1e-10);
        assert!(verify_decomposition(&r_ind(), &dec).unwrap().holds());
    }

    #[test]
    fn canonical_decomposition_of_the_mixed_fixture() {
        let dec = bw_decompose(&r_mix()).unwrap();
        let expected_h = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        assert!((dec.f().effective_matrix() - expected_h).norm() <= 1e-9);
        assert!(dec.skew().norm() <= 1e-10);
        let reconstructed = dec.reconstruct().unwrap();
        let target = LinearRelation::from_graph(
            2,
            &[g(&[1.0, 0.0], &[1.0, 0.0]), g(&[0.0, 0.0], &[0.0, 1.0])],
        )
        .unwrap();
        assert!(reconstructed.graph_distance(&target).unwrap() <= 1e-9);
    }

    #[test]
    fn subdifferential_examples() {
        let full = QuadraticOnSubspace::new(Subspace::full(3), DMatrix::identity(3, 3), 0.0)
            .unwrap();
        let id = LinearRelation::from_matrix(&DMatrix::identity(3, 3)).unwrap();
        assert!(subdifferential_graph(&full)
            .unwrap()
            .graph_distance(&id)
            .unwrap()
            <= 1e-9);

        let indicator = QuadraticOnSubspace::indicator(line(2, &[1.0, 0.0]));
        assert!(subdifferential_graph(&indicator)
            .unwrap()
            .graph_distance(&r_ind())
            .unwrap()
            <= 1e-9);

        let half_sq =
            QuadraticOnSubspace::new(line(2, &[1.0, 0.0]), DMatrix::identity(2, 2), 0.0).unwrap();
        let target = LinearRelation::from_graph(
            2,
            &[g(&[1.0, 0.0], &[1.0, 0.0]), g(&[0.0, 0.0], &[0.0, 1.0])],
        )
        .unwrap();
        assert!(subdifferential_graph(&half_sq)
            .unwrap()
            .graph_distance(&target)
            .unwrap()
            <= 1e-9);
    }

    #[test]
    fn subdifferential_rejects_nonconvex_input() {
        let f = QuadraticOnSubspace::new(Subspace::full(2), -DMatrix::identity(2, 2), 0.0)
            .unwrap();
        assert!(matches!(
            subdifferential_graph(&f),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn conjugate_of_the_full_square_is_itself() {
        let f = QuadraticOnSubspace::new(Subspace::full(2), DMatrix::identity(2, 2), 0.0)
            .unwrap();
        let c = quad_conjugate(&f).unwrap();
        assert_eq!(c.domain().dim(), 2);
        assert!((c.matrix() - DMatrix::identity(2, 2)).norm() <= 1e-10);
    }

    #[test]
    fn conjugate_of_an_indicator_is_the_complement_indicator() {
        let f = QuadraticOnSubspace::indicator(line(2, &[1.0, 0.0]));
        let c = quad_conjugate(&f).unwrap();
        assert_eq!(c.domain().dim(), 1);
        assert!(c.domain().contains_vector(&v(&[0.0, 1.0]), 1e-10).unwrap());
        assert!(c.matrix().norm() <= 1e-10);
    }

    #[test]
    fn conjugate_of_a_restricted_square_fills_the_space() {
        let f =
            QuadraticOnSubspace::new(line(2, &[1.0, 0.0]), DMatrix::identity(2, 2), 0.0).unwrap();
        let c = quad_conjugate(&f).unwrap();
        assert_eq!(c.domain().dim(), 2);
        let expected = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        assert!((c.effective_matrix() - expected).norm() <= 1e-10);
        // f*(y) = ½y₁²: check a value.
        assert_abs_diff_eq!(
            c.evaluate(&v(&[3.0, -7.0])).unwrap(),
            4.5,
            epsilon = 1e-10
        );
    }

    #[test]
    fn conjugate_subdifferential_inverts_the_relation() {
        // ∂(f*) = (∂f)⁻¹ for the subdifferential of a symmetric relation.
        for (domain, h) in [
            (Subspace::full(2), DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0])),
            (line(2, &[1.0, 0.0]), DMatrix::zeros(2, 2)),
            (line(2, &[1.0, 0.0]), DMatrix::identity(2, 2)),
        ] {
            let f = QuadraticOnSubspace::new(domain, h, 0.0).unwrap();
            let a = subdifferential_graph(&f).unwrap();
            let via_conjugate = subdifferential_graph(&quad_conjugate(&f).unwrap()).unwrap();
            assert!(via_conjugate.graph_distance(&a.inverse()).unwrap() <= 1e-8);
        }
    }

    #[test]
    fn alternate_skew_choice_for_the_indicator_is_accepted() {
        // S maps dom = span{e₁} into A0 = span{e₂}: a lawful alternative to
        // the canonical S = 0.
        let f = QuadraticOnSubspace::indicator(line(2, &[1.0, 0.0]));
        let s_alt = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        let dec = BWDecomposition::new(f, s_alt, r_ind()).unwrap();
        assert!(verify_decomposition(&r_ind(), &dec).unwrap().holds());
    }

    #[test]
    fn wrong_quadratic_part_is_rejected() {
        // Claiming f = ½‖x‖² for the purely skew A = J reconstructs I + J.
        let j = LinearRelation::from_matrix(&rotation_matrix()).unwrap();
        let f = QuadraticOnSubspace::new(Subspace::full(2), DMatrix::identity(2, 2), 0.0)
            .unwrap();
        let dec = BWDecomposition::new(f, rotation_matrix(), j.clone()).unwrap();
        let cert = verify_decomposition(&j, &dec).unwrap();
        assert!(!cert.holds());
    }

    #[test]
    fn sum_rule_examples() {
        let id = LinearRelation::from_matrix(&DMatrix::identity(2, 2)).unwrap();
        let j = LinearRelation::from_matrix(&rotation_matrix()).unwrap();
        let dec = sum_decompose(&id, &j).unwrap();
        assert!((dec.f().matrix() - DMatrix::identity(2, 2)).norm() <= 1e-10);
        assert!((dec.skew() - rotation_matrix()).norm() <= 1e-10);

        // J maps the line Y into Y⊥ = A0, so the compressed skew part is 0.
        let dec = sum_decompose(&r_ind(), &j).unwrap();
        assert_eq!(dec.f().domain().dim(), 1);
        assert!(dec.skew().norm() <= 1e-10);
        assert!(dec
            .reconstruct()
            .unwrap()
            .graph_distance(&r_ind())
            .unwrap()
            <= 1e-9);

        let dec = sum_decompose(&r_ind(), &r_ind()).unwrap();
        assert!(dec.f().effective_matrix().norm() <= 1e-10);
        assert!(dec.skew().norm() <= 1e-10);
    }

    /// Strategy: an `n×n` matrix with small integer entries.
    fn int_matrix(n: usize) -> impl Strategy<Value = DMatrix<f64>> {
        prop::collection::vec(-3i32..=3, n * n).prop_map(move |entries| {
            DMatrix::from_iterator(n, n, entries.into_iter().map(f64::from))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        /// Canonical decompositions of monotone matrix relations verify, the
        /// adjoint decomposes as (same f, −S), and q_A sees only the
        /// symmetric part.
        #[test]
        fn decomposition_round_trip_on_monotone_matrices(
            gm in int_matrix(3),
            k in int_matrix(3),
            xs in prop::collection::vec(-2.0f64..2.0, 3),
        ) {
            let m = &gm * gm.transpose() + (&k - k.transpose());
            let a = LinearRelation::from_matrix(&m).unwrap();
            let dec = bw_decompose(&a).unwrap();
            prop_assert!(verify_decomposition(&a, &dec).unwrap().holds());

            // A* = A₊ − S: the adjoint shares the quadratic part and negates
            // the skew part.
            let adjoint_dec = BWDecomposition::new(
                dec.f().clone(),
                -dec.skew().clone(),
                a.adjoint(),
            ).unwrap();
            prop_assert!(verify_decomposition(&a.adjoint(), &adjoint_dec).unwrap().holds());

            let x = v(&xs);
            let qa = q_value(&a, &x).unwrap();
            let qsym = q_value(&symmetric_part(&a), &x).unwrap();
            prop_assert!((qa - qsym).abs() <= 1e-9 * (1.0 + qa.abs()));
        }

        /// The sum rule agrees with decomposing the sum directly.
        #[test]
        fn sum_rule_matches_direct_decomposition(g1 in int_matrix(2), g2 in int_matrix(2), k in int_matrix(2)) {
            let m1 = &g1 * g1.transpose() + (&k - k.transpose());
            let m2 = &g2 * g2.transpose();
            let a1 = LinearRelation::from_matrix(&m1).unwrap();
            let a2 = LinearRelation::from_matrix(&m2).unwrap();
            let dec = sum_decompose(&a1, &a2).unwrap();
            let sum = a1.add(&a2).unwrap();
            prop_assert!(verify_decomposition(&sum, &dec).unwrap().holds());
        }
    }

    #[test]
    fn decomposition_on_a_proper_domain_with_skew_action() {
        // dom = plane in ℝ³, operator has both a symmetric and a skew piece.
        let d = Subspace::span(3, &[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])]).unwrap();
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[2.0, 1.0, 0.0, -1.0, 3.0, 0.0, 0.0, 0.0, 0.0],
        );
        let a = LinearRelation::make_maximal(&d, &m).unwrap();
        let dec = bw_decompose(&a).unwrap();
        assert!(verify_decomposition(&a, &dec).unwrap().holds());
        assert!(dec.skew().norm() > 0.5, "skew part should be nontrivial");
        assert!(bw_decomposable(&a).unwrap().holds());
    }
}
