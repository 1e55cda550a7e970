//! Recursive 2x2 block matrices of dimension `2^k`.
//!
//! [`BlockMatrix`] exposes whole-block access only: a value is either a
//! scalar leaf or four equal-depth quadrants
//!
//! ```text
//! [ A  B ]
//! [ C  D ]
//! ```
//!
//! There are no row or column accessors; algorithms built on this type work
//! through quadrants, recursively. [`DenseMatrix`] is the row-major boundary
//! used for file I/O, padding and test oracles.

use std::sync::Arc;
use std::thread;

use thiserror::Error;

use crate::rings::{HasIndeterminate, Scalar};

mod counter;
mod dense;
pub mod io;

pub use counter::{OpCounter, Tally};
pub use dense::DenseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: u32, right: u32 },
    #[error("dimension {0} is not a power of two")]
    NonPowerOfTwo(usize),
    #[error("expected a 2x2 block matrix, found a scalar leaf")]
    ExpectedQuad,
    #[error("malformed dense matrix: {0}")]
    BadShape(String),
}

/// Product algorithm for [`BlockMatrix::mul`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MulStrategy {
    /// 8 recursive block products per node.
    #[default]
    Naive,
    /// 7 recursive block products per node.
    Strassen,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Node<S> {
    Leaf(S),
    Quad(Arc<[BlockMatrix<S>; 4]>),
}

/// A `2^depth x 2^depth` matrix stored as a quadtree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockMatrix<S> {
    depth: u32,
    node: Node<S>,
}

fn check_depth<S>(x: &BlockMatrix<S>, y: &BlockMatrix<S>) -> Result<(), BlockError> {
    if x.depth == y.depth {
        Ok(())
    } else {
        Err(BlockError::DepthMismatch { left: x.depth, right: y.depth })
    }
}

impl<S: Scalar> BlockMatrix<S> {
    pub fn leaf(value: S) -> Self {
        BlockMatrix { depth: 0, node: Node::Leaf(value) }
    }

    /// Assembles `[[a, b], [c, d]]`; all four must share a depth.
    pub fn from_quadrants(a: Self, b: Self, c: Self, d: Self) -> Result<Self, BlockError> {
        check_depth(&a, &b)?;
        check_depth(&a, &c)?;
        check_depth(&a, &d)?;
        Ok(Self::quad(a, b, c, d))
    }

    // callers guarantee equal depths
    pub(crate) fn quad(a: Self, b: Self, c: Self, d: Self) -> Self {
        debug_assert!(a.depth == b.depth && a.depth == c.depth && a.depth == d.depth);
        BlockMatrix { depth: a.depth + 1, node: Node::Quad(Arc::new([a, b, c, d])) }
    }

    pub fn zero(depth: u32, ctx: &S::Ctx) -> Self {
        Self::constant_diagonal(depth, S::zero(ctx), S::zero(ctx))
    }

    pub fn identity(depth: u32, ctx: &S::Ctx) -> Self {
        Self::constant_diagonal(depth, S::one(ctx), S::zero(ctx))
    }

    /// `value * I`
    pub fn scalar(depth: u32, value: S) -> Self {
        let zero = S::zero(&value.ctx());
        Self::constant_diagonal(depth, value, zero)
    }

    fn constant_diagonal(depth: u32, diag: S, off: S) -> Self {
        if depth == 0 {
            return Self::leaf(diag);
        }
        let d = Self::constant_diagonal(depth - 1, diag, off.clone());
        let z = Self::constant_diagonal(depth - 1, off.clone(), off);
        Self::quad(d.clone(), z.clone(), z, d)
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn dim(&self) -> usize {
        1 << self.depth
    }

    pub fn as_leaf(&self) -> Option<&S> {
        match &self.node {
            Node::Leaf(s) => Some(s),
            Node::Quad(_) => None,
        }
    }

    /// The quadrants `(A, B, C, D)`, or `None` for a leaf.
    pub fn quadrants(&self) -> Option<(&Self, &Self, &Self, &Self)> {
        match &self.node {
            Node::Leaf(_) => None,
            Node::Quad(q) => Some((&q[0], &q[1], &q[2], &q[3])),
        }
    }

    pub fn try_quadrants(&self) -> Result<(&Self, &Self, &Self, &Self), BlockError> {
        self.quadrants().ok_or(BlockError::ExpectedQuad)
    }

    /// Context of the scalar ring, read from the top-left leaf.
    pub fn ctx(&self) -> S::Ctx {
        match &self.node {
            Node::Leaf(s) => s.ctx(),
            Node::Quad(q) => q[0].ctx(),
        }
    }

    pub fn map<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> BlockMatrix<T> {
        match &self.node {
            Node::Leaf(s) => BlockMatrix::leaf(f(s)),
            Node::Quad(q) => BlockMatrix::quad(q[0].map(f), q[1].map(f), q[2].map(f), q[3].map(f)),
        }
    }

    /// Visits every leaf; used for whole-matrix predicates.
    pub fn all_leaves(&self, pred: &impl Fn(&S) -> bool) -> bool {
        match &self.node {
            Node::Leaf(s) => pred(s),
            Node::Quad(q) => q.iter().all(|c| c.all_leaves(pred)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.all_leaves(&|s| s.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        match &self.node {
            Node::Leaf(s) => s.is_one(),
            Node::Quad(q) => q[0].is_identity() && q[1].is_zero() && q[2].is_zero() && q[3].is_identity(),
        }
    }

    fn zip_with(&self, rhs: &Self, counter: &mut OpCounter, op: &impl Fn(&S, &S) -> S) -> Result<Self, BlockError> {
        check_depth(self, rhs)?;
        Ok(self.zip_unchecked(rhs, counter, op))
    }

    fn zip_unchecked(&self, rhs: &Self, counter: &mut OpCounter, op: &impl Fn(&S, &S) -> S) -> Self {
        match (&self.node, &rhs.node) {
            (Node::Leaf(x), Node::Leaf(y)) => {
                counter.record_add(1);
                Self::leaf(op(x, y))
            }
            (Node::Quad(p), Node::Quad(q)) => Self::quad(
                p[0].zip_unchecked(&q[0], counter, op),
                p[1].zip_unchecked(&q[1], counter, op),
                p[2].zip_unchecked(&q[2], counter, op),
                p[3].zip_unchecked(&q[3], counter, op),
            ),
            _ => unreachable!("equal depths"),
        }
    }

    pub fn add(&self, rhs: &Self, counter: &mut OpCounter) -> Result<Self, BlockError> {
        self.zip_with(rhs, counter, &|x, y| x.add(y))
    }

    pub fn sub(&self, rhs: &Self, counter: &mut OpCounter) -> Result<Self, BlockError> {
        self.zip_with(rhs, counter, &|x, y| x.sub(y))
    }

    pub fn neg(&self) -> Self {
        self.map(&|x| x.neg())
    }

    /// Exact product `self * rhs`.
    pub fn mul(&self, rhs: &Self, strategy: MulStrategy, counter: &mut OpCounter) -> Result<Self, BlockError> {
        check_depth(self, rhs)?;
        Ok(match strategy {
            MulStrategy::Naive => self.mul_naive(rhs, counter),
            MulStrategy::Strassen => self.mul_strassen(rhs, counter),
        })
    }

    pub(crate) fn mul_naive(&self, rhs: &Self, counter: &mut OpCounter) -> Self {
        match (&self.node, &rhs.node) {
            (Node::Leaf(x), Node::Leaf(y)) => {
                counter.record_mul(1);
                Self::leaf(x.mul(y))
            }
            (Node::Quad(p), Node::Quad(q)) => {
                let [a, b, c, d] = &**p;
                let [e, f, g, h] = &**q;
                let add = |x: Self, y: Self, counter: &mut OpCounter| x.zip_unchecked(&y, counter, &|s, t| s.add(t));
                let tl = a.mul_naive(e, counter);
                let tl = add(tl, b.mul_naive(g, counter), counter);
                let tr = a.mul_naive(f, counter);
                let tr = add(tr, b.mul_naive(h, counter), counter);
                let bl = c.mul_naive(e, counter);
                let bl = add(bl, d.mul_naive(g, counter), counter);
                let br = c.mul_naive(f, counter);
                let br = add(br, d.mul_naive(h, counter), counter);
                Self::quad(tl, tr, bl, br)
            }
            _ => unreachable!("equal depths"),
        }
    }

    fn mul_strassen(&self, rhs: &Self, counter: &mut OpCounter) -> Self {
        match (&self.node, &rhs.node) {
            (Node::Leaf(x), Node::Leaf(y)) => {
                counter.record_mul(1);
                Self::leaf(x.mul(y))
            }
            (Node::Quad(p), Node::Quad(q)) => {
                let [a11, a12, a21, a22] = &**p;
                let [b11, b12, b21, b22] = &**q;
                let plus = |x: &Self, y: &Self, c: &mut OpCounter| x.zip_unchecked(y, c, &|s, t| s.add(t));
                let minus = |x: &Self, y: &Self, c: &mut OpCounter| x.zip_unchecked(y, c, &|s, t| s.sub(t));

                let s1 = plus(a11, a22, counter);
                let s2 = plus(b11, b22, counter);
                let m1 = s1.mul_strassen(&s2, counter);
                let s3 = plus(a21, a22, counter);
                let m2 = s3.mul_strassen(b11, counter);
                let s4 = minus(b12, b22, counter);
                let m3 = a11.mul_strassen(&s4, counter);
                let s5 = minus(b21, b11, counter);
                let m4 = a22.mul_strassen(&s5, counter);
                let s6 = plus(a11, a12, counter);
                let m5 = s6.mul_strassen(b22, counter);
                let s7 = minus(a21, a11, counter);
                let s8 = plus(b11, b12, counter);
                let m6 = s7.mul_strassen(&s8, counter);
                let s9 = minus(a12, a22, counter);
                let s10 = plus(b21, b22, counter);
                let m7 = s9.mul_strassen(&s10, counter);

                let c11 = plus(&minus(&plus(&m1, &m4, counter), &m5, counter), &m7, counter);
                let c12 = plus(&m3, &m5, counter);
                let c21 = plus(&m2, &m4, counter);
                let c22 = plus(&plus(&minus(&m1, &m2, counter), &m3, counter), &m6, counter);
                Self::quad(c11, c12, c21, c22)
            }
            _ => unreachable!("equal depths"),
        }
    }

    /// Naive product with the four output quadrants computed on separate
    /// threads, each with its own counter. Counts equal the sequential
    /// product's exactly.
    pub fn mul_concurrent(&self, rhs: &Self, counter: &mut OpCounter) -> Result<Self, BlockError> {
        check_depth(self, rhs)?;
        let (Some((a, b, c, d)), Some((e, f, g, h))) = (self.quadrants(), rhs.quadrants()) else {
            return Ok(self.mul_naive(rhs, counter));
        };
        let quadrant = |x: &Self, y: &Self, z: &Self, w: &Self| {
            let mut local = OpCounter::new("quadrant");
            let p = x.mul_naive(y, &mut local);
            let q = z.mul_naive(w, &mut local);
            (p.zip_unchecked(&q, &mut local, &|s, t| s.add(t)), local)
        };
        let results = thread::scope(|scope| {
            let handles = [
                scope.spawn(|| quadrant(a, e, b, g)),
                scope.spawn(|| quadrant(a, f, b, h)),
                scope.spawn(|| quadrant(c, e, d, g)),
                scope.spawn(|| quadrant(c, f, d, h)),
            ];
            handles.map(|h| h.join().expect("product thread panicked"))
        });
        let [(tl, c1), (tr, c2), (bl, c3), (br, c4)] = results;
        for local in [c1, c2, c3, c4] {
            counter.merge(&local);
        }
        Ok(Self::quad(tl, tr, bl, br))
    }

    pub fn transpose(&self) -> Self {
        match &self.node {
            Node::Leaf(_) => self.clone(),
            Node::Quad(q) => Self::quad(q[0].transpose(), q[2].transpose(), q[1].transpose(), q[3].transpose()),
        }
    }

    /// Conjugate transpose: transpose with `star` applied at the leaves.
    pub fn adjoint(&self) -> Self {
        match &self.node {
            Node::Leaf(s) => Self::leaf(s.star()),
            Node::Quad(q) => Self::quad(q[0].adjoint(), q[2].adjoint(), q[1].adjoint(), q[3].adjoint()),
        }
    }
}

impl<S: HasIndeterminate> BlockMatrix<S> {
    /// Multiplies every entry by `t^exp`.
    pub fn scale_t(&self, exp: i64, counter: &mut OpCounter) -> Self {
        if exp == 0 {
            return self.clone();
        }
        counter.record_scaling((self.dim() * self.dim()) as u64);
        self.map(&|s| s.mul_t_power(exp))
    }

    /// `Q^-1 M^T Q` with `Q = diag(1, t, ..., t^(n-1))`, i.e. entry `(i, j)`
    /// is `t^(j-i) * M[j][i]`. Recursively:
    /// `[[A, B], [C, D]] -> [[A°, t^h C°], [t^-h B°, D°]]`.
    pub fn circ_conjugate(&self, counter: &mut OpCounter) -> Self {
        match &self.node {
            Node::Leaf(_) => self.clone(),
            Node::Quad(q) => {
                let h = (self.dim() / 2) as i64;
                Self::quad(
                    q[0].circ_conjugate(counter),
                    q[2].circ_conjugate(counter).scale_t(h, counter),
                    q[1].circ_conjugate(counter).scale_t(-h, counter),
                    q[3].circ_conjugate(counter),
                )
            }
        }
    }

    /// Multiplies entry `(i, j)` by `t^(sign * (i - j))`; `sign` is +1 or -1.
    pub fn scale_by_t_powers(&self, sign: i64, counter: &mut OpCounter) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        match &self.node {
            Node::Leaf(_) => self.clone(),
            Node::Quad(q) => {
                let h = (self.dim() / 2) as i64;
                Self::quad(
                    q[0].scale_by_t_powers(sign, counter),
                    q[1].scale_by_t_powers(sign, counter).scale_t(-sign * h, counter),
                    q[2].scale_by_t_powers(sign, counter).scale_t(sign * h, counter),
                    q[3].scale_by_t_powers(sign, counter),
                )
            }
        }
    }
}
