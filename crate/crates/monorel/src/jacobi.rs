//! One-sided Jacobi singular value decomposition.
//!
//! Rank decisions in this crate hinge on singular values of matrices whose
//! spectra contain tight clusters (orthogonal projectors have singular values
//! exactly in `{0, 1}`); the Golub–Kahan SVD shipped with the matrix backend
//! loses several digits on such inputs, which is fatal for subspace
//! arithmetic. The one-sided Jacobi iteration below trades speed for high
//! relative accuracy: it orthogonalizes column pairs by plane rotations until
//! every pair is numerically orthogonal, so the computed left singular
//! vectors are orthonormal to machine precision by construction.

use nalgebra::{DMatrix, DVector};

/// Convergence threshold for a column pair: `|⟨aᵢ, aⱼ⟩| ≤ EPS · ‖aᵢ‖ ‖aⱼ‖`.
const EPS: f64 = 1e-15;

/// Upper bound on sweeps; in practice convergence takes well under ten.
const MAX_SWEEPS: usize = 64;

/// Thin singular value decomposition `A = U Σ Vᵀ` with `U: k × m`,
/// `Σ: m × m` (as a vector), `V: m × m`, computed by one-sided Jacobi.
/// Singular values are sorted in descending order, with `U`, `V` columns
/// permuted consistently. Columns of `U` paired with `σᵢ = 0` are zero.
pub(crate) struct JacobiSvd {
    pub u: DMatrix<f64>,
    pub sigma: DVector<f64>,
    pub v: DMatrix<f64>,
}

pub(crate) fn jacobi_svd(a: &DMatrix<f64>) -> JacobiSvd {
    let m = a.ncols();
    // QR pre-reduction for tall inputs: Householder QR is backward stable,
    // R shares the singular values and right vectors of A, and the sweeps
    // then run on an m×m matrix instead of a k×m one.
    if a.nrows() > m {
        let qr = a.clone().qr();
        let reduced = jacobi_svd(&qr.r());
        return JacobiSvd {
            u: qr.q() * reduced.u,
            sigma: reduced.sigma,
            v: reduced.v,
        };
    }

    let k = a.nrows();
    let mut w = a.clone();
    let mut v = DMatrix::identity(m, m);
    // Squared column norms, maintained across rotations so each pair costs
    // one dot product instead of three.
    let mut sq: Vec<f64> = (0..m).map(|i| w.column(i).norm_squared()).collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..m {
            for j in (i + 1)..m {
                let alpha = sq[i];
                let beta = sq[j];
                let gamma = w.column(i).dot(&w.column(j));
                if gamma.abs() <= EPS * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for r in 0..k {
                    let wi = w[(r, i)];
                    let wj = w[(r, j)];
                    w[(r, i)] = c * wi - s * wj;
                    w[(r, j)] = s * wi + c * wj;
                }
                for r in 0..m {
                    let vi = v[(r, i)];
                    let vj = v[(r, j)];
                    v[(r, i)] = c * vi - s * vj;
                    v[(r, j)] = s * vi + c * vj;
                }
                // The rotation zeroes the pair's inner product and shifts
                // weight between the squared norms by t·γ.
                sq[i] = alpha - t * gamma;
                sq[j] = beta + t * gamma;
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..m).collect();
    let norms: Vec<f64> = (0..m).map(|i| w.column(i).norm()).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).expect("finite norms"));

    let mut u = DMatrix::zeros(k, m);
    let mut sigma = DVector::zeros(m);
    let mut v_sorted = DMatrix::zeros(m, m);
    for (dst, &src) in order.iter().enumerate() {
        sigma[dst] = norms[src];
        if norms[src] > 0.0 {
            u.set_column(dst, &(w.column(src) / norms[src]));
        }
        v_sorted.set_column(dst, &v.column(src));
    }
    JacobiSvd {
        u,
        sigma,
        v: v_sorted,
    }
}

/// Symmetric eigendecomposition `M = V diag(λ) Vᵀ` with eigenvalues sorted
/// in ascending order and `V` orthonormal, computed by cyclic two-sided
/// Jacobi rotations. The backend's symmetric eigensolver shares the SVD's
/// weakness: on spectra with tight clusters it can return eigenvectors
/// rotated across clusters (large `‖Mv − λv‖` per pair even though the
/// values and the orthonormality are fine), which silently corrupts any
/// subspace read off the vectors.
pub(crate) struct SymEigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

pub(crate) fn jacobi_sym_eigen(m: &DMatrix<f64>) -> SymEigen {
    let n = m.nrows();
    debug_assert_eq!(n, m.ncols(), "eigensolver input must be square");
    let mut a = m.clone();
    let mut v = DMatrix::identity(n, n);
    // Absolute off-diagonal threshold, fixed by the input's magnitude. The
    // floor keeps the zero matrix from looping on a zero threshold.
    let scale = a.amax().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= EPS * scale {
                    continue;
                }
                rotated = true;
                // Smaller-angle root of t² + 2ζt − 1 = 0, the rotation that
                // annihilates the (p, q) entry of JᵀAJ.
                let zeta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for r in 0..n {
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    a[(r, p)] = c * arp - s * arq;
                    a[(r, q)] = s * arp + c * arq;
                }
                for r in 0..n {
                    let apr = a[(p, r)];
                    let aqr = a[(q, r)];
                    a[(p, r)] = c * apr - s * aqr;
                    a[(q, r)] = s * apr + c * aqr;
                }
                // Exact in real arithmetic; forcing it removes the last
                // rounding residue so the stopping test is honest.
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for r in 0..n {
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = c * vrp - s * vrq;
                    v[(r, q)] = s * vrp + c * vrq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).expect("finite diagonal"));

    let mut values = DVector::zeros(n);
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        values[dst] = a[(src, src)];
        vectors.set_column(dst, &v.column(src));
    }
    SymEigen { values, vectors }
}
