//! Numerical thresholds used throughout the crate.
//!
//! Every tolerance that decides a rank, a containment, or a certificate
//! verdict is pinned here so the decision points are auditable in one place.
//! Routines that accept an explicit tolerance use these as defaults.

/// Relative singular-value cutoff for rank decisions at construction time:
/// a singular value `σᵢ` counts toward the rank iff `σᵢ > RANK_REL * σ_max`.
pub const RANK_REL: f64 = 1e-10;

/// Default tolerance for subspace containment and equality tests,
/// `‖(I − P_S) B_T‖_F ≤ CONTAINMENT`, and for vector membership.
/// Deliberately looser than [`RANK_REL`]: containment queries compare objects
/// that have each accumulated error through several orthonormalizations.
pub const CONTAINMENT: f64 = 1e-8;

/// Orthonormality defect allowed in a stored basis: `‖BᵀB − I‖_F ≤ GRAM`.
pub const GRAM: f64 = 1e-12;

/// Idempotence defect allowed in an orthogonal projector: `‖P² − P‖_F`.
pub const PROJECTOR: f64 = 1e-10;

/// Tolerance for identities that hold exactly in exact arithmetic but pass
/// through one complement or adjoint computation, e.g. `(S⊥)⊥ = S` and
/// `A** = A`, measured as projector or graph distance.
pub const INVOLUTION: f64 = 1e-9;

/// Floor for the monotonicity test: the graph-coordinate form `M` passes iff
/// `λ_min(M) ≥ -PSD * max(‖M‖₂, 1)`. Graph bases are orthonormal, which
/// bounds `‖M‖₂ ≤ ½`, so the floor term is the one that binds; it is what
/// keeps "skew ⟹ monotone" true when `M` is pure rounding noise.
pub const PSD: f64 = 1e-10;

/// A relation counts as skew iff `‖M‖₂ ≤ SKEW` for its graph-coordinate
/// form `M`. Absolute, again because orthonormal graph bases normalize the
/// form to `‖M‖₂ ≤ ½`.
pub const SKEW: f64 = 1e-10;

/// Eigenvalues of the graph-coordinate form with `λ ≤ KERNEL` are treated as
/// exact kernel directions by the paramonotonicity test. Kept well below
/// [`CONTAINMENT`]: an eigenvalue in the band `(KERNEL, CONTAINMENT]` moves
/// graph points `O(√λ)` away from the graph, which would misclassify
/// borderline instances if the two thresholds coincided.
pub const KERNEL: f64 = 1e-12;

/// Reconstruction defect allowed when a decomposition is verified against
/// the relation it came from, as a graph distance.
pub const RECONSTRUCTION: f64 = 1e-8;

/// Default solver parameters for the proximal point and Douglas–Rachford
/// iterations.
pub const SOLVER_TOL: f64 = 1e-6;
/// See [`SOLVER_TOL`].
pub const SOLVER_MAX_ITER: usize = 10_000;
/// See [`SOLVER_TOL`].
pub const SOLVER_LAMBDA: f64 = 1.0;
