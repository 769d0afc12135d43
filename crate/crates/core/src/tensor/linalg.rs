//! Factorization kernels: truncated SVD, Hermitian eigendecomposition,
//! Hermitian matrix exponential and thin QR.
//!
//! All kernels are pure functions on immutable inputs and run the underlying
//! solver sequentially so that identical input bits always produce identical
//! output bits. Run-level parallelism lives above this layer.

use std::sync::Once;

use faer::{MatRef, Side};

use super::{matmul, DenseTensor, TensorError};
use crate::C64;

static KERNEL_INIT: Once = Once::new();

/// Pins the factorization backend to sequential execution (reproducibility).
pub(crate) fn ensure_deterministic_kernels() {
    KERNEL_INIT.call_once(|| {
        faer::set_global_parallelism(faer::Par::Seq);
    });
}

/// Bookkeeping of a truncated SVD.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TruncationReport {
    /// Number of singular values kept.
    pub kept_rank: usize,
    /// Sum of squared discarded singular values.
    pub discarded_weight: f64,
    /// Largest discarded singular value (0 when nothing was discarded).
    pub largest_discarded: f64,
}

/// Result of [`svd_truncate`]: `M ≈ U · diag(S) · Vh`.
#[derive(Debug, Clone)]
pub struct SvdTruncation {
    /// Left singular vectors, shape (m, kept_rank); isometric columns.
    pub u: DenseTensor,
    /// Kept singular values, descending.
    pub singular_values: Vec<f64>,
    /// Adjoint of the right singular vectors, shape (kept_rank, n).
    pub vh: DenseTensor,
    pub report: TruncationReport,
}

fn as_faer(m: &DenseTensor) -> MatRef<'_, C64> {
    MatRef::from_row_major_slice(m.data(), m.shape()[0], m.shape()[1])
}

fn require_matrix(m: &DenseTensor, context: &'static str) -> Result<(), TensorError> {
    if m.rank() != 2 {
        return Err(TensorError::RankMismatch {
            expected: 2,
            got: m.rank(),
        });
    }
    if !m.is_finite() {
        return Err(TensorError::NonFinite(context));
    }
    Ok(())
}

/// Truncated singular value decomposition.
///
/// Keeps singular values `s_k > sv_cutoff · s_0` (cutoff relative to the
/// largest singular value), capped at `max_rank`; always keeps at least one
/// value, so a zero matrix yields `kept_rank = 1` with `S = [0]`.
pub fn svd_truncate(
    m: &DenseTensor,
    max_rank: usize,
    sv_cutoff: f64,
) -> Result<SvdTruncation, TensorError> {
    ensure_deterministic_kernels();
    require_matrix(m, "svd_truncate input")?;
    if max_rank == 0 {
        return Err(TensorError::InvalidArgument("max_rank must be >= 1".into()));
    }
    if !(sv_cutoff >= 0.0) {
        return Err(TensorError::InvalidArgument(format!(
            "sv_cutoff must be >= 0, got {sv_cutoff}"
        )));
    }
    let (rows, cols) = (m.shape()[0], m.shape()[1]);
    let svd = as_faer(m).thin_svd().map_err(|_| TensorError::NoConvergence)?;
    let full_rank = rows.min(cols);
    let s_all: Vec<f64> = (0..full_rank).map(|k| svd.S()[k].re).collect();

    let s0 = s_all.first().copied().unwrap_or(0.0);
    let mut kept = s_all.iter().filter(|&&s| s > sv_cutoff * s0).count();
    kept = kept.clamp(1, max_rank.min(full_rank));

    let discarded_weight: f64 = s_all[kept..].iter().map(|s| s * s).sum();
    let largest_discarded = s_all.get(kept).copied().unwrap_or(0.0);

    let mut u = DenseTensor::zeros(&[rows, kept]);
    for i in 0..rows {
        for k in 0..kept {
            u.set(i, k, svd.U()[(i, k)]);
        }
    }
    // faer returns V with M = U · S · V^H; store the adjoint directly.
    let mut vh = DenseTensor::zeros(&[kept, cols]);
    for k in 0..kept {
        for j in 0..cols {
            vh.set(k, j, svd.V()[(j, k)].conj());
        }
    }

    Ok(SvdTruncation {
        u,
        singular_values: s_all[..kept].to_vec(),
        vh,
        report: TruncationReport {
            kept_rank: kept,
            discarded_weight,
            largest_discarded,
        },
    })
}

fn hermiticity_residual(m: &DenseTensor) -> f64 {
    let n = m.shape()[0];
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            residual = residual.max((m.at(i, j) - m.at(j, i).conj()).norm());
        }
    }
    residual
}

/// Hermitian eigendecomposition: eigenvalues ascending, eigenvectors as the
/// columns of a unitary matrix.
///
/// Rejects matrices whose Hermiticity residual exceeds `1e-12` relative to
/// the largest entry magnitude.
pub fn eigh(m: &DenseTensor) -> Result<(Vec<f64>, DenseTensor), TensorError> {
    ensure_deterministic_kernels();
    require_matrix(m, "eigh input")?;
    let n = m.shape()[0];
    if n != m.shape()[1] {
        return Err(TensorError::DimMismatch {
            op: "eigh",
            lhs: vec![m.shape()[0]],
            rhs: vec![m.shape()[1]],
        });
    }
    let tol = 1e-12 * m.max_abs().max(1.0);
    let residual = hermiticity_residual(m);
    if residual > tol {
        return Err(TensorError::NotHermitian { residual, tol });
    }

    let evd = as_faer(m)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| TensorError::NoConvergence)?;
    let eigenvalues: Vec<f64> = (0..n).map(|k| evd.S()[k].re).collect();
    let mut vectors = DenseTensor::zeros(&[n, n]);
    for i in 0..n {
        for k in 0..n {
            vectors.set(i, k, evd.U()[(i, k)]);
        }
    }
    Ok((eigenvalues, vectors))
}

/// `exp(scale · H)` for Hermitian `H`, via the spectral decomposition.
pub fn exp_hermitian(h: &DenseTensor, scale: C64) -> Result<DenseTensor, TensorError> {
    let (eigenvalues, vectors) = eigh(h)?;
    let n = eigenvalues.len();
    // V · diag(exp(scale·λ)) — scale the columns, then multiply by V†.
    let mut scaled = vectors.clone();
    for k in 0..n {
        let factor = (scale * eigenvalues[k]).exp();
        for i in 0..n {
            let v = scaled.at(i, k) * factor;
            scaled.set(i, k, v);
        }
    }
    Ok(matmul(&scaled, &vectors.adjoint()))
}

/// Thin QR factorization: `M = Q · R` with isometric `Q` of shape
/// (m, min(m, n)).
pub fn qr_thin(m: &DenseTensor) -> Result<(DenseTensor, DenseTensor), TensorError> {
    ensure_deterministic_kernels();
    require_matrix(m, "qr input")?;
    let (rows, cols) = (m.shape()[0], m.shape()[1]);
    let k = rows.min(cols);
    let qr = as_faer(m).qr();
    let thin_q = qr.compute_thin_Q();
    let r_full = qr.R();
    let mut q = DenseTensor::zeros(&[rows, k]);
    for i in 0..rows {
        for j in 0..k {
            q.set(i, j, thin_q[(i, j)]);
        }
    }
    let mut r = DenseTensor::zeros(&[k, cols]);
    for i in 0..k {
        for j in i..cols {
            r.set(i, j, r_full[(i, j)]);
        }
    }
    Ok((q, r))
}
