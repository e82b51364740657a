//! Numerical calculus for monotone linear relations on `ℝⁿ`.
//!
//! A *linear relation* is a set-valued map `A: ℝⁿ ⇉ ℝⁿ` whose graph
//! `gra A = {(x, x*) : x* ∈ Ax}` is a linear subspace of `ℝ²ⁿ`. Everything a
//! single matrix can express is a linear relation, but so are operators with
//! proper subspace domains, multi-valued operators such as subdifferentials of
//! indicator functions, and inverses of singular maps. This crate represents
//! relations by orthonormal bases of their graphs and provides:
//!
//! - [`subspace`]: rank-revealing subspace arithmetic (span, complement,
//!   intersection, sum, projection, containment) on which everything rests;
//! - [`relation`]: construction and algebra of linear relations — evaluation,
//!   inverse, adjoint, sums, scaling, domain restriction, graph distance;
//! - [`analysis`]: certificates for monotonicity, skewness, symmetry,
//!   maximality, paramonotonicity, and an irreducibility criterion, each with
//!   a numerical witness when the answer is negative;
//! - [`decomposition`]: the splitting of a maximal monotone relation into a
//!   subdifferential of a convex quadratic-on-a-subspace plus a skew linear
//!   map, together with quadratic conjugation and verification;
//! - [`splitting`]: resolvents, the proximal point iteration, and
//!   Douglas–Rachford applied to the two decomposition halves;
//! - [`gallery`]: discretized integration/differentiation/shift operators and
//!   a seeded random generator of maximal monotone relations.
//!
//! Bases are always stored orthonormal; ranks are decided by singular values
//! against the relative thresholds in [`tol`]. All operations are pure: they
//! take shared references and return fresh values, so types are `Send + Sync`
//! and safe to share across threads.

pub mod analysis;
pub mod decomposition;
pub mod gallery;
pub mod relation;
pub mod splitting;
pub mod subspace;
pub mod tol;

mod error;
mod jacobi;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use relation::{AffineSet, LinearRelation, RelationParts};
pub use subspace::Subspace;

/// Crate version, for embedding in reports produced by downstream tools.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
