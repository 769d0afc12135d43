//! Dense complex tensors and the linear-algebra kernels built on them.
//!
//! Everything here operates on row-major [`DenseTensor`] storage. Local
//! dimensions in this crate are 2 or 3 and gates are at most 9×9, so dense
//! kernels are the right tool; there is no sparse path.

mod linalg;

pub use linalg::{eigh, exp_hermitian, qr_thin, svd_truncate, SvdTruncation, TruncationReport};

use std::fmt;

use thiserror::Error;

use crate::C64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("shape {shape:?} implies {expected} elements, got {got}")]
    ShapeDataMismatch {
        shape: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("expected a rank-{expected} tensor, got rank {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("dimension mismatch in {op}: {lhs:?} vs {rhs:?}")]
    DimMismatch {
        op: &'static str,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
    },
    #[error("non-finite entries in {0}")]
    NonFinite(&'static str),
    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("decomposition failed to converge")]
    NoConvergence,
}

/// Dense complex tensor in row-major layout (last index fastest).
#[derive(Clone, PartialEq)]
pub struct DenseTensor {
    shape: Vec<usize>,
    data: Vec<C64>,
}

impl fmt::Debug for DenseTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DenseTensor(shape={:?}, len={})", self.shape, self.data.len())
    }
}

impl DenseTensor {
    pub fn zeros(shape: &[usize]) -> Self {
        let len = shape.iter().product();
        Self {
            shape: shape.to_vec(),
            data: vec![C64::new(0.0, 0.0); len],
        }
    }

    pub fn from_data(shape: &[usize], data: Vec<C64>) -> Result<Self, TensorError> {
        let expected: usize = shape.iter().product();
        if data.len() != expected {
            return Err(TensorError::ShapeDataMismatch {
                shape: shape.to_vec(),
                expected,
                got: data.len(),
            });
        }
        Ok(Self {
            shape: shape.to_vec(),
            data,
        })
    }

    /// Rank-2 tensor from real entries, row-major.
    pub fn from_real_rows(rows: usize, cols: usize, entries: &[f64]) -> Result<Self, TensorError> {
        let data = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_data(&[rows, cols], data)
    }

    pub fn identity(n: usize) -> Self {
        let mut t = Self::zeros(&[n, n]);
        for i in 0..n {
            t.data[i * n + i] = C64::new(1.0, 0.0);
        }
        t
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Reinterprets the index structure without touching element order.
    pub fn reshape(mut self, new_shape: &[usize]) -> Result<Self, TensorError> {
        let expected: usize = new_shape.iter().product();
        if expected != self.data.len() {
            return Err(TensorError::ShapeDataMismatch {
                shape: new_shape.to_vec(),
                expected,
                got: self.data.len(),
            });
        }
        self.shape = new_shape.to_vec();
        Ok(self)
    }

    /// Entry accessor for rank-2 tensors.
    pub fn at(&self, row: usize, col: usize) -> C64 {
        debug_assert_eq!(self.rank(), 2);
        self.data[row * self.shape[1] + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        debug_assert_eq!(self.rank(), 2);
        let cols = self.shape[1];
        self.data[row * cols + col] = value;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&mut self, factor: C64) {
        for z in &mut self.data {
            *z *= factor;
        }
    }

    /// Conjugate transpose of a rank-2 tensor.
    pub fn adjoint(&self) -> DenseTensor {
        assert_eq!(self.rank(), 2, "adjoint is defined for matrices");
        let (m, n) = (self.shape[0], self.shape[1]);
        let mut out = DenseTensor::zeros(&[n, m]);
        for i in 0..m {
            for j in 0..n {
                out.data[j * m + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    /// Returns a copy with axes reordered so that output axis `k` is input
    /// axis `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> DenseTensor {
        assert_eq!(perm.len(), self.rank(), "permutation length must match rank");
        let rank = self.rank();
        let new_shape: Vec<usize> = perm.iter().map(|&a| self.shape[a]).collect();

        let mut in_strides = vec![1usize; rank];
        for a in (0..rank.saturating_sub(1)).rev() {
            in_strides[a] = in_strides[a + 1] * self.shape[a + 1];
        }
        // stride of each output axis in the input buffer
        let strides: Vec<usize> = perm.iter().map(|&a| in_strides[a]).collect();

        let mut out = Vec::with_capacity(self.data.len());
        let mut index = vec![0usize; rank];
        let mut offset = 0usize;
        for _ in 0..self.data.len() {
            out.push(self.data[offset]);
            for axis in (0..rank).rev() {
                index[axis] += 1;
                offset += strides[axis];
                if index[axis] < new_shape[axis] {
                    break;
                }
                offset -= strides[axis] * new_shape[axis];
                index[axis] = 0;
            }
        }
        DenseTensor {
            shape: new_shape,
            data: out,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `C = A · B` for rank-2 tensors.
pub fn matmul(a: &DenseTensor, b: &DenseTensor) -> DenseTensor {
    assert_eq!(a.rank(), 2);
    assert_eq!(b.rank(), 2);
    assert_eq!(
        a.shape[1], b.shape[0],
        "matmul dimension mismatch: {:?} x {:?}",
        a.shape, b.shape
    );
    let (m, k, n) = (a.shape[0], a.shape[1], b.shape[1]);
    let data = matmul_raw(&a.data, (m, k), &b.data, (k, n));
    DenseTensor {
        shape: vec![m, n],
        data,
    }
}

/// Row-major GEMM on raw buffers; shapes are trusted by the caller.
pub(crate) fn matmul_raw(a: &[C64], (m, k): (usize, usize), b: &[C64], (k2, n): (usize, usize)) -> Vec<C64> {
    assert_eq!(k, k2);
    assert_eq!(a.len(), m * k);
    assert_eq!(b.len(), k * n);
    linalg::ensure_deterministic_kernels();
    let mut out = vec![C64::new(0.0, 0.0); m * n];
    if m == 0 || n == 0 || k == 0 {
        return out;
    }
    let lhs = faer::MatRef::from_row_major_slice(a, m, k);
    let rhs = faer::MatRef::from_row_major_slice(b, k, n);
    let dst = faer::MatMut::from_row_major_slice_mut(&mut out, m, n);
    faer::linalg::matmul::matmul(
        dst,
        faer::Accum::Replace,
        lhs,
        rhs,
        C64::new(1.0, 0.0),
        faer::Par::Seq,
    );
    out
}

/// Kronecker product of two rank-2 tensors.
pub fn kron(a: &DenseTensor, b: &DenseTensor) -> DenseTensor {
    assert_eq!(a.rank(), 2);
    assert_eq!(b.rank(), 2);
    let (am, an) = (a.shape[0], a.shape[1]);
    let (bm, bn) = (b.shape[0], b.shape[1]);
    let mut out = DenseTensor::zeros(&[am * bm, an * bn]);
    for i in 0..am {
        for j in 0..an {
            let aij = a.data[i * an + j];
            for p in 0..bm {
                for q in 0..bn {
                    out.data[(i * bm + p) * (an * bn) + (j * bn + q)] = aij * b.data[p * bn + q];
                }
            }
        }
    }
    out
}
