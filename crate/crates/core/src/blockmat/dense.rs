use crate::rings::{Field, Scalar};

use super::{BlockError, BlockMatrix, Node};

/// Row-major square matrix. Used for I/O, padding into block form, and as
/// the independent oracle in tests; block algorithms never see it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn new(n: usize, entries: Vec<S>) -> Result<Self, BlockError> {
        if n == 0 || entries.len() != n * n {
            return Err(BlockError::BadShape(format!("{} entries for size {n}", entries.len())));
        }
        Ok(DenseMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, BlockError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(BlockError::BadShape("ragged or non-square rows".into()));
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> S) -> Self {
        assert!(n > 0);
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        DenseMatrix { n, entries }
    }

    pub fn identity(n: usize, ctx: &S::Ctx) -> Self {
        Self::from_fn(n, |i, j| if i == j { S::one(ctx) } else { S::zero(ctx) })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.entries[i * self.n + j] = value;
    }

    pub fn ctx(&self) -> S::Ctx {
        self.entries[0].ctx()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.entries.chunks(self.n)
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DenseMatrix<T> {
        DenseMatrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    /// Schoolbook product.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let ctx = self.ctx();
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(S::zero(&ctx), |acc, k| acc.add(&self.get(i, k).mul(rhs.get(k, j))))
        })
    }

    pub fn is_identity(&self) -> bool {
        self.first_mismatch(&Self::identity(self.n, &self.ctx())).is_none()
    }

    /// First `(row, col)` where the matrices differ, scanning row-major.
    pub fn first_mismatch(&self, other: &Self) -> Option<(usize, usize)> {
        if self.n != other.n {
            return Some((0, 0));
        }
        self.entries.iter().zip(&other.entries).position(|(a, b)| a != b).map(|k| (k / self.n, k % self.n))
    }

    /// Leading `k x k` submatrix.
    pub fn leading(&self, k: usize) -> Self {
        assert!(k >= 1 && k <= self.n);
        Self::from_fn(k, |i, j| self.get(i, j).clone())
    }

    /// Gauss-Jordan inverse with row pivoting. Works over division rings:
    /// every row operation multiplies on the left.
    pub fn gauss_jordan_inverse(&self) -> Option<Self> {
        let n = self.n;
        let ctx = self.ctx();
        let mut a: Vec<Vec<S>> = self.rows().map(|r| r.to_vec()).collect();
        let mut inv: Vec<Vec<S>> = Self::identity(n, &ctx).rows().map(|r| r.to_vec()).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p_inv = a[col][col].try_inv()?;
            for j in 0..n {
                a[col][j] = p_inv.mul(&a[col][j]);
                inv[col][j] = p_inv.mul(&inv[col][j]);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                    inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
                }
            }
        }
        Self::from_rows(inv).ok()
    }

    /// Pads to the next power of two with an identity block, so invertible
    /// input stays invertible.
    pub fn embed(&self) -> BlockMatrix<S> {
        let size = self.n.next_power_of_two();
        let ctx = self.ctx();
        let padded = Self::from_fn(size, |i, j| {
            if i < self.n && j < self.n {
                self.get(i, j).clone()
            } else if i == j {
                S::one(&ctx)
            } else {
                S::zero(&ctx)
            }
        });
        padded.to_block().expect("power of two")
    }

    pub fn to_block(&self) -> Result<BlockMatrix<S>, BlockError> {
        if !self.n.is_power_of_two() {
            return Err(BlockError::NonPowerOfTwo(self.n));
        }
        Ok(self.block_at(0, 0, self.n))
    }

    fn block_at(&self, row: usize, col: usize, size: usize) -> BlockMatrix<S> {
        if size == 1 {
            return BlockMatrix::leaf(self.get(row, col).clone());
        }
        let h = size / 2;
        BlockMatrix::quad(
            self.block_at(row, col, h),
            self.block_at(row, col + h, h),
            self.block_at(row + h, col, h),
            self.block_at(row + h, col + h, h),
        )
    }
}

impl<S: Field> DenseMatrix<S> {
    /// Determinant by fraction-based elimination.
    pub fn determinant(&self) -> S {
        let n = self.n;
        let ctx = self.ctx();
        let mut a: Vec<Vec<S>> = self.rows().map(|r| r.to_vec()).collect();
        let mut det = S::one(&ctx);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return S::zero(&ctx);
            };
            if pivot != col {
                a.swap(col, pivot);
                det = det.neg();
            }
            det = det.mul(&a[col][col]);
            let p_inv = a[col][col].try_inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].mul(&p_inv);
                for j in col..n {
                    a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                }
            }
        }
        det
    }
}

impl<S: Scalar> BlockMatrix<S> {
    pub fn to_dense(&self) -> DenseMatrix<S> {
        let n = self.dim();
        let mut entries: Vec<Option<S>> = vec![None; n * n];
        self.scatter(&mut entries, n, 0, 0);
        DenseMatrix { n, entries: entries.into_iter().map(|e| e.expect("filled")).collect() }
    }

    fn scatter(&self, out: &mut [Option<S>], n: usize, row: usize, col: usize) {
        match &self.node {
            Node::Leaf(s) => out[row * n + col] = Some(s.clone()),
            Node::Quad(q) => {
                let h = self.dim() / 2;
                q[0].scatter(out, n, row, col);
                q[1].scatter(out, n, row, col + h);
                q[2].scatter(out, n, row + h, col);
                q[3].scatter(out, n, row + h, col + h);
            }
        }
    }

    pub fn from_dense(dense: &DenseMatrix<S>) -> Result<Self, BlockError> {
        dense.to_block()
    }

    /// See [`DenseMatrix::embed`].
    pub fn embed(dense: &DenseMatrix<S>) -> Self {
        dense.embed()
    }
}
