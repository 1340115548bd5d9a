//! Block-diagonal matrices with one dense `m x m` block per mesh element.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BlockDiagMatrix {
    dim: usize,
    // Row-major blocks, `dim * dim` values each.
    data: Vec<f64>,
}

impl BlockDiagMatrix {
    pub fn zeros(num_blocks: usize, dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; num_blocks * dim * dim],
        }
    }

    pub fn identity(num_blocks: usize, dim: usize) -> Self {
        let mut m = Self::zeros(num_blocks, dim);
        for b in 0..num_blocks {
            for i in 0..dim {
                m.block_mut(b)[i * dim + i] = 1.0;
            }
        }
        m
    }

    pub fn from_blocks(dim: usize, blocks: &[Vec<f64>]) -> Self {
        let mut data = Vec::with_capacity(blocks.len() * dim * dim);
        for b in blocks {
            assert_eq!(b.len(), dim * dim);
            data.extend_from_slice(b);
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_blocks(&self) -> usize {
        self.data.len() / (self.dim * self.dim)
    }

    pub fn block(&self, b: usize) -> &[f64] {
        let n = self.dim * self.dim;
        &self.data[b * n..(b + 1) * n]
    }

    pub fn block_mut(&mut self, b: usize) -> &mut [f64] {
        let n = self.dim * self.dim;
        &mut self.data[b * n..(b + 1) * n]
    }

    pub fn get(&self, b: usize, i: usize, j: usize) -> f64 {
        self.block(b)[i * self.dim + j]
    }

    /// `self + alpha * other`.
    pub fn add_scaled(&self, alpha: f64, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.data.len(), other.data.len());
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + alpha * b).collect(),
        }
    }

    /// `y = B x` for a vector laid out `block * dim + component`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let m = self.dim;
        assert_eq!(x.len(), self.num_blocks() * m);
        let mut y = vec![0.0; x.len()];
        for b in 0..self.num_blocks() {
            let blk = self.block(b);
            for i in 0..m {
                y[b * m + i] = (0..m).map(|j| blk[i * m + j] * x[b * m + j]).sum();
            }
        }
        y
    }

    /// Block-wise inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let m = self.dim;
        let mut inv = Self::zeros(self.num_blocks(), m);
        let mut work = vec![0.0; m * 2 * m];
        for b in 0..self.num_blocks() {
            let blk = self.block(b);
            let scale = blk.iter().fold(0.0f64, |s, v| s.max(v.abs()));
            if !(scale > 0.0 && scale.is_finite()) {
                return Err(Error::SingularBlock { element: b });
            }
            // Augmented [A | I].
            for i in 0..m {
                for j in 0..m {
                    work[i * 2 * m + j] = blk[i * m + j];
                    work[i * 2 * m + m + j] = if i == j { 1.0 } else { 0.0 };
                }
            }
            for col in 0..m {
                let pivot = (col..m)
                    .max_by(|&a, &c| work[a * 2 * m + col].abs().total_cmp(&work[c * 2 * m + col].abs()))
                    .unwrap();
                let pv = work[pivot * 2 * m + col];
                if pv.abs() <= 1e-14 * scale {
                    return Err(Error::SingularBlock { element: b });
                }
                if pivot != col {
                    for j in 0..2 * m {
                        work.swap(pivot * 2 * m + j, col * 2 * m + j);
                    }
                }
                for j in 0..2 * m {
                    work[col * 2 * m + j] /= pv;
                }
                for r in 0..m {
                    if r != col {
                        let f = work[r * 2 * m + col];
                        if f != 0.0 {
                            for j in 0..2 * m {
                                work[r * 2 * m + j] -= f * work[col * 2 * m + j];
                            }
                        }
                    }
                }
            }
            let out = inv.block_mut(b);
            for i in 0..m {
                for j in 0..m {
                    out[i * m + j] = work[i * 2 * m + m + j];
                }
            }
        }
        Ok(inv)
    }

    /// Block-wise product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.dim;
        assert_eq!(m, other.dim);
        let mut out = Self::zeros(self.num_blocks(), m);
        for b in 0..self.num_blocks() {
            let (x, y) = (self.block(b), other.block(b));
            let o = out.block_mut(b);
            for i in 0..m {
                for j in 0..m {
                    o[i * m + j] = (0..m).map(|k| x[i * m + k] * y[k * m + j]).sum();
                }
            }
        }
        out
    }
}

/// Free-function form of [`BlockDiagMatrix::inverse`].
pub fn invert_blockdiag(e: &BlockDiagMatrix) -> Result<BlockDiagMatrix> {
    e.inverse()
}
