use crate::blockmat::{BlockError, BlockMatrix};
use crate::rings::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Cols,
}

/// Block permutation recorded by the recursive LU: at each node an optional
/// half swap `T = [[0, I], [I, 0]]` plus the traces of the two recursive
/// subproblems (leading block, then Schur complement).
///
/// As a row permutation the node denotes `T^s diag(P_a, P_d)`; as a column
/// permutation `diag(Q_a, Q_d) T^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationTrace {
    depth: u32,
    swap: bool,
    children: Option<Box<[PermutationTrace; 2]>>,
}

impl PermutationTrace {
    pub fn identity(depth: u32) -> Self {
        PermutationTrace { depth, swap: false, children: None }
    }

    /// A single swap at the top, identity below.
    pub fn swap(depth: u32) -> Self {
        assert!(depth > 0, "a 1x1 trace cannot swap");
        PermutationTrace { depth, swap: true, children: None }
    }

    pub fn node(swap: bool, leading: PermutationTrace, complement: PermutationTrace) -> Self {
        assert_eq!(leading.depth, complement.depth);
        let depth = leading.depth + 1;
        if !leading.is_identity() || !complement.is_identity() {
            return PermutationTrace { depth, swap, children: Some(Box::new([leading, complement])) };
        }
        PermutationTrace { depth, swap, children: None }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn swaps_here(&self) -> bool {
        self.swap
    }

    pub fn children(&self) -> Option<(&PermutationTrace, &PermutationTrace)> {
        self.children.as_ref().map(|c| (&c[0], &c[1]))
    }

    pub fn is_identity(&self) -> bool {
        !self.swap && self.children.is_none()
    }

    /// `P M` for [`Axis::Rows`], `M Q` for [`Axis::Cols`].
    pub fn apply<S: Scalar>(&self, m: &BlockMatrix<S>, axis: Axis) -> Result<BlockMatrix<S>, BlockError> {
        self.check(m)?;
        Ok(self.apply_rec(m, axis, false))
    }

    /// `P^-1 M` for rows, `M Q^-1` for columns.
    pub fn apply_inverse<S: Scalar>(&self, m: &BlockMatrix<S>, axis: Axis) -> Result<BlockMatrix<S>, BlockError> {
        self.check(m)?;
        Ok(self.apply_rec(m, axis, true))
    }

    fn check<S: Scalar>(&self, m: &BlockMatrix<S>) -> Result<(), BlockError> {
        if self.depth != m.depth() {
            return Err(BlockError::DepthMismatch { left: self.depth, right: m.depth() });
        }
        Ok(())
    }

    pub(crate) fn apply_rec<S: Scalar>(&self, m: &BlockMatrix<S>, axis: Axis, inverse: bool) -> BlockMatrix<S> {
        let Some((a, b, c, d)) = m.quadrants() else {
            return m.clone();
        };
        let swap = |a: BlockMatrix<S>, b: BlockMatrix<S>, c: BlockMatrix<S>, d: BlockMatrix<S>| match axis {
            Axis::Rows => (c, d, a, b),
            Axis::Cols => (b, a, d, c),
        };
        let (mut a, mut b, mut c, mut d) = (a.clone(), b.clone(), c.clone(), d.clone());
        if inverse && self.swap {
            (a, b, c, d) = swap(a, b, c, d);
        }
        if let Some(ch) = &self.children {
            let (first, second) = (&ch[0], &ch[1]);
            (a, b, c, d) = match axis {
                Axis::Rows => (
                    first.apply_rec(&a, axis, inverse),
                    first.apply_rec(&b, axis, inverse),
                    second.apply_rec(&c, axis, inverse),
                    second.apply_rec(&d, axis, inverse),
                ),
                Axis::Cols => (
                    first.apply_rec(&a, axis, inverse),
                    second.apply_rec(&b, axis, inverse),
                    first.apply_rec(&c, axis, inverse),
                    second.apply_rec(&d, axis, inverse),
                ),
            };
        }
        if !inverse && self.swap {
            (a, b, c, d) = swap(a, b, c, d);
        }
        BlockMatrix::quad(a, b, c, d)
    }

    /// Zero-based vector `p` with `(P X)[i] = X[p[i]]` for rows, and
    /// `(X Q)[.., j] = X[.., p[j]]` for columns.
    pub fn to_vector(&self) -> Vec<usize> {
        let n = 1usize << self.depth;
        if n == 1 {
            return vec![0];
        }
        let h = n / 2;
        let inner: Vec<usize> = match &self.children {
            Some(ch) => ch[0].to_vector().into_iter().chain(ch[1].to_vector().into_iter().map(|k| k + h)).collect(),
            None => (0..n).collect(),
        };
        if self.swap {
            (0..n).map(|i| inner[(i + h) % n]).collect()
        } else {
            inner
        }
    }
}

/// See [`PermutationTrace::apply`].
pub fn apply_permutation<S: Scalar>(
    trace: &PermutationTrace,
    m: &BlockMatrix<S>,
    axis: Axis,
) -> Result<BlockMatrix<S>, BlockError> {
    trace.apply(m, axis)
}
