//! Certificates for order-theoretic properties of linear relations.
//!
//! Every predicate here returns a [`Certificate`] instead of a bare boolean:
//! the three-valued verdict is accompanied by an optional *witness* — a
//! concrete graph vector that violates the property and can be re-checked
//! independently — and a short textual account of the evidence. Checks that
//! admit no decision procedure in finite precision (the skewness criterion
//! for irreducibility) answer [`Verdict::Inconclusive`] rather than guessing.
//!
//! All quantities are evaluated in the orthonormal graph basis held by the
//! relation, so the spectral thresholds in [`crate::tol`] are scale-free: the
//! monotonicity form of any relation has spectral norm at most `½` in such a
//! basis, whatever the magnitude of the operator's entries.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::jacobi::jacobi_sym_eigen;
use crate::relation::LinearRelation;
use crate::subspace::spectral_norm;
use crate::tol;

/// Three-valued outcome of a property check.
///
/// `Inconclusive` is reserved for criteria that are sufficient but not
/// necessary: failing the test does not refute the property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

/// Outcome of a property check together with its supporting evidence.
#[derive(Debug, Clone)]
pub struct Certificate {
    verdict: Verdict,
    witness: Option<DVector<f64>>,
    detail: String,
}

impl Certificate {
    pub(crate) fn pass(detail: String) -> Self {
        Self {
            verdict: Verdict::True,
            witness: None,
            detail,
        }
    }

    pub(crate) fn fail(witness: Option<DVector<f64>>, detail: String) -> Self {
        Self {
            verdict: Verdict::False,
            witness,
            detail,
        }
    }

    pub(crate) fn inconclusive(detail: String) -> Self {
        Self {
            verdict: Verdict::Inconclusive,
            witness: None,
            detail,
        }
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    /// `true` exactly when the verdict is [`Verdict::True`].
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::True
    }

    /// A graph vector `(u; v) ∈ ℝ²ⁿ` violating the property, when the
    /// verdict is `False` and a violation could be materialized.
    pub fn witness(&self) -> Option<&DVector<f64>> {
        self.witness.as_ref()
    }

    /// Human-readable account of the computed evidence.
    pub fn detail(&self) -> &str {
        &self.detail
    }
}

/// The quadratic form of the pairing `⟨x, x*⟩` in graph coordinates.
///
/// With the orthonormal graph basis columns `gᵢ = (uᵢ; vᵢ)`, returns the
/// symmetric `d × d` matrix `M` with `Mᵢⱼ = ½(uᵢᵀvⱼ + uⱼᵀvᵢ)`, so that a
/// graph element with coordinates `c` pairs as `⟨x, x*⟩ = cᵀ M c`. The
/// relation is monotone exactly when `M ⪰ 0` and skew exactly when `M = 0`.
/// A different orthonormal basis conjugates `M` by an orthogonal matrix,
/// leaving its spectrum unchanged.
pub fn monotonicity_form(a: &LinearRelation) -> DMatrix<f64> {
    let u = a.input_block();
    let v = a.output_block();
    (u.transpose() * &v + v.transpose() * &u) * 0.5
}

/// Checks `⟨x − y, x* − y*⟩ ≥ 0` over the graph.
///
/// By linearity this reduces to positive semidefiniteness of the
/// [`monotonicity_form`]; the verdict is `True` when the smallest eigenvalue
/// clears `−`[`tol::PSD`] (the orthonormal basis bounds the form by `½`, so
/// the threshold needs no rescaling). On failure the witness is the graph
/// vector of the most negative eigendirection; its pairing `⟨u, v⟩` is that
/// eigenvalue and is negative by construction.
pub fn is_monotone(a: &LinearRelation) -> Certificate {
    let m = monotonicity_form(a);
    if m.nrows() == 0 {
        return Certificate::pass("trivial graph; monotone vacuously".into());
    }
    let eig = jacobi_sym_eigen(&m);
    let lambda_min = eig.values[0];
    if lambda_min >= -tol::PSD {
        Certificate::pass(format!(
            "monotonicity form is positive semidefinite (λ_min = {lambda_min:.3e})"
        ))
    } else {
        let g = a.graph().basis() * eig.vectors.column(0);
        Certificate::fail(
            Some(g),
            format!("monotonicity form has negative eigenvalue λ_min = {lambda_min:.3e}; the witness graph vector pairs to that value"),
        )
    }
}

/// Checks `⟨x, x*⟩ = 0` for every graph element.
///
/// Equivalent to the [`monotonicity_form`] vanishing; the verdict is `True`
/// when its spectral norm is at most [`tol::SKEW`]. On failure the witness
/// is the graph vector of the largest-magnitude eigendirection.
pub fn is_skew(a: &LinearRelation) -> Certificate {
    let m = monotonicity_form(a);
    if m.nrows() == 0 {
        return Certificate::pass("trivial graph; skew vacuously".into());
    }
    let eig = jacobi_sym_eigen(&m);
    // Ascending order puts the extreme eigenvalues at the two ends.
    let last = eig.values.len() - 1;
    let max_idx = if eig.values[0].abs() > eig.values[last].abs() {
        0
    } else {
        last
    };
    let lambda = eig.values[max_idx];
    if lambda.abs() <= tol::SKEW {
        Certificate::pass(format!(
            "monotonicity form vanishes (‖form‖₂ = {:.3e})",
            lambda.abs()
        ))
    } else {
        let g = a.graph().basis() * eig.vectors.column(max_idx);
        Certificate::fail(
            Some(g),
            format!("pairing does not vanish: the witness graph vector has ⟨u, v⟩ = {lambda:.3e}"),
        )
    }
}

/// Checks `gra A ⊆ gra A*`.
///
/// For maximal monotone relations this containment is equivalent to graph
/// equality `A = A*`, since both graphs then have dimension `n`.
pub fn is_symmetric(a: &LinearRelation) -> Certificate {
    let adjoint = a.adjoint();
    let contained = adjoint
        .graph()
        .contains(a.graph(), tol::CONTAINMENT)
        .expect("adjoint lives in the same ambient space");
    if contained {
        Certificate::pass(format!(
            "gra A ⊆ gra A* (dim gra A = {}, dim gra A* = {})",
            a.graph_dim(),
            adjoint.graph_dim()
        ))
    } else {
        // A graph direction escaping the adjoint graph is the witness.
        let residual =
            a.graph().basis() - adjoint.graph().projector() * a.graph().basis();
        let mut worst = 0;
        for j in 1..residual.ncols() {
            if residual.column(j).norm() > residual.column(worst).norm() {
                worst = j;
            }
        }
        let g = a.graph().basis().column(worst).into_owned();
        Certificate::fail(
            Some(g),
            "gra A ⊄ gra A*: the witness graph vector leaves the adjoint graph".into(),
        )
    }
}

/// Checks maximal monotonicity by two independent criteria.
///
/// For a monotone relation the verdict is `True` exactly when
/// `dim gra A = n`; this is cross-checked against the duality criterion
/// `(dom A)⊥ = A0`, and a disagreement between the two rank computations is
/// reported as [`Error::Inconsistency`] rather than silently resolved. For a
/// monotone, non-maximal relation the witness is a pair `(0, w)` with
/// `w ∈ (dom A)⊥ \ A0`: adjoining it to the graph preserves monotonicity,
/// exhibiting a strictly larger monotone extension.
pub fn is_maximal_monotone(a: &LinearRelation) -> Result<Certificate> {
    let mono = is_monotone(a);
    if !mono.holds() {
        return Ok(Certificate::fail(
            mono.witness().cloned(),
            format!("not monotone, hence not maximal monotone; {}", mono.detail()),
        ));
    }
    let n = a.n();
    let by_dimension = a.graph_dim() == n;
    let parts = a.parts();
    let dom_perp = parts.dom.complement();
    let by_duality = dom_perp.equals(&parts.image_of_zero, tol::CONTAINMENT)?;
    if by_dimension != by_duality {
        return Err(Error::Inconsistency(format!(
            "maximality criteria disagree: dim gra A = {} vs n = {n}, while (dom A)⊥ = A0 is {by_duality}",
            a.graph_dim()
        )));
    }
    if by_dimension {
        Ok(Certificate::pass(format!(
            "dim gra A = {n} = n and (dom A)⊥ = A0; both criteria agree"
        )))
    } else {
        let extension = dom_perp.intersect(&parts.image_of_zero.complement())?;
        let witness = if extension.dim() > 0 {
            let w = extension.basis().column(0).into_owned();
            let mut g = DVector::zeros(2 * n);
            g.rows_mut(n, n).copy_from(&w);
            Some(g)
        } else {
            None
        };
        Ok(Certificate::fail(
            witness,
            format!(
                "dim gra A = {} < n = {n}; adjoining the witness (0, w) with w ⊥ dom A, w ∉ A0 yields a strictly larger monotone relation",
                a.graph_dim()
            ),
        ))
    }
}

/// Checks paramonotonicity: `⟨x − y, x* − y*⟩ = 0` forces `(x, y*)` and
/// `(y, x*)` back into the graph.
///
/// By linearity it suffices to examine kernel vectors of the
/// [`monotonicity_form`] (set `y = 0`): for each kernel direction with graph
/// element `(u, v)`, both `(u, 0)` and `(0, v)` must belong to the graph.
/// Kernel membership uses the absolute cutoff [`tol::KERNEL`], valid because
/// the form is expressed in an orthonormal basis.
///
/// # Errors
///
/// [`Error::InvalidInput`] when the relation is not monotone — the property
/// is only defined for monotone relations.
pub fn is_paramonotone(a: &LinearRelation) -> Result<Certificate> {
    let mono = is_monotone(a);
    if !mono.holds() {
        return Err(Error::InvalidInput(
            "paramonotonicity is defined for monotone relations only".into(),
        ));
    }
    let m = monotonicity_form(a);
    let d = m.nrows();
    if d == 0 {
        return Ok(Certificate::pass("trivial graph; paramonotone vacuously".into()));
    }
    let n = a.n();
    let eig = jacobi_sym_eigen(&m);
    let basis = a.graph().basis();
    let mut kernel_count = 0;
    for i in 0..d {
        if eig.values[i].abs() > tol::KERNEL {
            continue;
        }
        kernel_count += 1;
        let g = basis * eig.vectors.column(i);
        let mut left = DVector::zeros(2 * n);
        left.rows_mut(0, n).copy_from(&g.rows(0, n));
        let mut right = DVector::zeros(2 * n);
        right.rows_mut(n, n).copy_from(&g.rows(n, n));
        // Membership of the split halves is measured at the scale of the
        // unit-norm witness: a half that is itself rounding noise must count
        // as the zero vector, which belongs to every graph.
        let projector = a.graph().projector();
        let split_stays = (&left - &projector * &left).norm() <= tol::CONTAINMENT
            && (&right - &projector * &right).norm() <= tol::CONTAINMENT;
        if !split_stays {
            return Ok(Certificate::fail(
                Some(g),
                "the witness graph vector (u, v) pairs to zero, yet (u, 0) or (0, v) is not in the graph".into(),
            ));
        }
    }
    Ok(Certificate::pass(format!(
        "all {kernel_count} kernel directions of the monotonicity form split into (u, 0) and (0, v) graph members"
    )))
}

/// Reports the consistency triple for a relation and its adjoint.
///
/// For a monotone relation with closed graph, maximal monotonicity of `A`,
/// maximal monotonicity of `A*`, and monotonicity of `A*` are equivalent.
/// The certificate records all three findings and holds exactly when they
/// carry the same truth value. For a non-monotone input the equivalence does
/// not apply and the verdict is [`Verdict::Inconclusive`].
pub fn brezis_browder_report(a: &LinearRelation) -> Result<Certificate> {
    let adjoint = a.adjoint();
    let mm_a = is_maximal_monotone(a)?;
    let mm_adj = is_maximal_monotone(&adjoint)?;
    let mono_adj = is_monotone(&adjoint);
    let detail = format!(
        "A maximal monotone: {:?}; A* maximal monotone: {:?}; A* monotone: {:?}",
        mm_a.verdict(),
        mm_adj.verdict(),
        mono_adj.verdict()
    );
    if !is_monotone(a).holds() {
        return Ok(Certificate::inconclusive(format!(
            "the equivalence is stated for monotone relations with closed graphs and A is not monotone; {detail}"
        )));
    }
    if mm_a.holds() == mm_adj.holds() && mm_adj.holds() == mono_adj.holds() {
        Ok(Certificate::pass(detail))
    } else {
        Ok(Certificate::fail(None, format!("the triple is inconsistent: {detail}")))
    }
}

/// Sufficient criterion for irreducibility: a single-valued, monotone
/// relation whose pairing `⟨x, x*⟩` vanishes identically on the domain.
///
/// The verdict is `True` when `A0 = {0}`, the relation is monotone, and the
/// [`monotonicity_form`] is zero to within [`tol::SKEW`]. In every other case
/// the verdict is [`Verdict::Inconclusive`], never `False`: the criterion is
/// sufficient but not necessary, and irreducible relations with nonvanishing
/// pairing exist.
pub fn irreducible_by_skew_criterion(a: &LinearRelation) -> Certificate {
    let single_valued = a.image_of_zero().dim() == 0;
    let mono = is_monotone(a);
    let form_norm = spectral_norm(&monotonicity_form(a));
    if single_valued && mono.holds() && form_norm <= tol::SKEW {
        Certificate::pass(format!(
            "single-valued, monotone, and the pairing vanishes on the graph (‖form‖₂ = {form_norm:.3e}): the skewness criterion certifies irreducibility"
        ))
    } else {
        Certificate::inconclusive(format!(
            "criterion not met (single-valued: {single_valued}, monotone: {}, ‖form‖₂ = {form_norm:.3e}); it is sufficient only, so no refutation is implied",
            mono.holds()
        ))
    }
}
