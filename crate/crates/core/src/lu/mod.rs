//! Recursive block LU.
//!
//! [`lu_decompose`] factors `M = P L U Q` with `L` unit lower triangular,
//! `U` upper triangular and `P`, `Q` block permutations. At each node one
//! quadrant is swapped into the leading position, the leading block is
//! factored recursively, and the Schur complement `D - X Y` with
//! `X = C U1^-1`, `Y = L1^-1 B` is factored next.
//!
//! When all four quadrants of some Schur complement are singular no block
//! swap helps; the whole matrix is then handed to [`randomized_lu`].

use thiserror::Error;

use crate::blockmat::{BlockError, BlockMatrix, OpCounter};
use crate::inversion::{auto_invert, is_invertible, GramFallback};
use crate::random::Sample;
use crate::rings::Scalar;

mod permutation;
mod randomized;
mod triangular;

pub use permutation::{apply_permutation, Axis, PermutationTrace};
pub use randomized::{randomized_lu, RandomizedLu};
pub use triangular::{tri_invert, tri_mul, Orientation, Side, TriangularMatrix};

use triangular::tri_mul_rec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LuError {
    #[error("all four blocks are singular")]
    AllBlocksSingular,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero on the diagonal at {path}")]
    SingularDiagonal { path: String },
    #[error("singular pivot block at {path}")]
    PivotBlockSingular { path: String },
    #[error("a leading block is singular")]
    LeadingMinorSingular,
    #[error("no usable preconditioner after {attempts} attempts")]
    RandomnessExhausted { attempts: u32 },
    #[error("matrix is not triangular")]
    NotTriangular,
    #[error(transparent)]
    Block(#[from] BlockError),
}

/// `M = P L U Q`, or, when `preconditioners` is set, `R_up M R_low = P L U Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LuResult<S> {
    pub p: PermutationTrace,
    pub l: TriangularMatrix<S>,
    pub u: TriangularMatrix<S>,
    pub q: PermutationTrace,
    pub preconditioners: Option<Preconditioners<S>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preconditioners<S> {
    /// unit upper, multiplied on the left
    pub left: TriangularMatrix<S>,
    /// unit lower, multiplied on the right
    pub right: TriangularMatrix<S>,
    pub attempts: u32,
}

impl<S: Scalar> LuResult<S> {
    /// Rebuilds `M` from the factors.
    pub fn reconstruct(&self, counter: &mut OpCounter) -> Result<BlockMatrix<S>, LuError> {
        let lu = tri_mul(&self.l, self.u.body(), Side::Left, counter)?;
        let plu_q = self.q.apply(&self.p.apply(&lu, Axis::Rows)?, Axis::Cols)?;
        match &self.preconditioners {
            None => Ok(plu_q),
            Some(pre) => {
                let left = tri_invert(&pre.left, counter)?;
                let right = tri_invert(&pre.right, counter)?;
                let m = tri_mul(&left, &plu_q, Side::Left, counter)?;
                tri_mul(&right, &m, Side::Right, counter)
            }
        }
    }

    pub fn used_randomization(&self) -> bool {
        self.preconditioners.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LuOptions {
    pub seed: u64,
    pub max_retries: u32,
}

impl Default for LuOptions {
    fn default() -> Self {
        LuOptions { seed: 1, max_retries: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPivot<S> {
    pub swap_rows: bool,
    pub swap_cols: bool,
    /// `P1 M Q1`, with an invertible leading block
    pub pivoted: BlockMatrix<S>,
}

/// Brings an invertible quadrant to the leading position, trying `A`, `C`
/// (row swap), `B` (column swap), then `D` (both).
pub fn block_pivot<S: GramFallback>(m: &BlockMatrix<S>) -> Result<BlockPivot<S>, LuError> {
    let (a, b, c, d) = m.try_quadrants()?;
    let q = |x: &BlockMatrix<S>, y: &BlockMatrix<S>, z: &BlockMatrix<S>, w: &BlockMatrix<S>| {
        BlockMatrix::quad(x.clone(), y.clone(), z.clone(), w.clone())
    };
    let (swap_rows, swap_cols, pivoted) = if is_invertible(a) {
        (false, false, m.clone())
    } else if is_invertible(c) {
        (true, false, q(c, d, a, b))
    } else if is_invertible(b) {
        (false, true, q(b, a, d, c))
    } else if is_invertible(d) {
        (true, true, q(d, c, b, a))
    } else {
        return Err(LuError::AllBlocksSingular);
    };
    Ok(BlockPivot { swap_rows, swap_cols, pivoted })
}

/// The single-level factorization
///
/// ```text
/// [A B]   [I       0] [A 0  ] [I  A^-1 B]
/// [C D] = [C A^-1  I] [0 S_A] [0  I     ],   S_A = D - C A^-1 B
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ldu<S> {
    pub lower: BlockMatrix<S>,
    pub diagonal: BlockMatrix<S>,
    pub upper: BlockMatrix<S>,
}

pub fn ldu<S: GramFallback>(m: &BlockMatrix<S>, counter: &mut OpCounter) -> Result<Ldu<S>, LuError> {
    let (a, b, c, d) = m.try_quadrants()?;
    let singular = |at: &str| LuError::PivotBlockSingular { path: format!("root/{at}") };
    let a_inv = auto_invert(a, counter).map_err(|_| singular("A"))?;
    let ca = c.mul_naive(&a_inv, counter);
    let ab = a_inv.mul_naive(b, counter);
    let s = d.sub(&ca.mul_naive(b, counter), counter)?;
    if !is_invertible(&s) {
        return Err(singular("S"));
    }
    let ctx = m.ctx();
    let (id, zero) = (BlockMatrix::identity(a.depth(), &ctx), BlockMatrix::zero(a.depth(), &ctx));
    Ok(Ldu {
        lower: BlockMatrix::quad(id.clone(), zero.clone(), ca, id.clone()),
        diagonal: BlockMatrix::quad(a.clone(), zero.clone(), zero.clone(), s),
        upper: BlockMatrix::quad(id.clone(), ab, zero, id),
    })
}

pub fn lu_decompose<S: GramFallback + Sample>(m: &BlockMatrix<S>, counter: &mut OpCounter) -> Result<LuResult<S>, LuError> {
    lu_decompose_with(m, LuOptions::default(), counter)
}

pub fn lu_decompose_with<S: GramFallback + Sample>(
    m: &BlockMatrix<S>,
    options: LuOptions,
    counter: &mut OpCounter,
) -> Result<LuResult<S>, LuError> {
    match lu_rec(m, Some(block_pivot::<S>), counter) {
        Ok(f) => Ok(LuResult {
            p: f.p,
            l: TriangularMatrix::new_unchecked(f.l, Orientation::Lower, true),
            u: TriangularMatrix::new_unchecked(f.u, Orientation::Upper, false),
            q: f.q,
            preconditioners: None,
        }),
        Err(LuError::AllBlocksSingular) => {
            if !is_invertible(m) {
                return Err(LuError::SingularMatrix);
            }
            let r = counter.scope("randomized", |c| randomized_lu(m, options.seed, options.max_retries, c))?;
            Ok(LuResult {
                p: r.p,
                l: r.lower,
                u: r.upper,
                q: r.q,
                preconditioners: Some(Preconditioners { left: r.left, right: r.right, attempts: r.attempts }),
            })
        }
        Err(e) => Err(e),
    }
}

/// `M = L U` without any pivoting; fails with `LeadingMinorSingular` when a
/// leading block along the recursion is singular.
pub fn lu_unpivoted<S: Scalar>(
    m: &BlockMatrix<S>,
    counter: &mut OpCounter,
) -> Result<(TriangularMatrix<S>, TriangularMatrix<S>), LuError> {
    let f = lu_rec(m, None, counter)?;
    Ok((
        TriangularMatrix::new_unchecked(f.l, Orientation::Lower, true),
        TriangularMatrix::new_unchecked(f.u, Orientation::Upper, false),
    ))
}

struct Factors<S> {
    p: PermutationTrace,
    l: BlockMatrix<S>,
    u: BlockMatrix<S>,
    q: PermutationTrace,
}

type PivotFn<S> = fn(&BlockMatrix<S>) -> Result<BlockPivot<S>, LuError>;

fn lu_rec<S: Scalar>(m: &BlockMatrix<S>, pivot: Option<PivotFn<S>>, counter: &mut OpCounter) -> Result<Factors<S>, LuError> {
    let Some((a, b, c, d)) = m.quadrants() else {
        let x = m.as_leaf().expect("leaf");
        if x.is_zero() {
            return Err(if pivot.is_some() { LuError::SingularMatrix } else { LuError::LeadingMinorSingular });
        }
        let ctx = x.ctx();
        return Ok(Factors {
            p: PermutationTrace::identity(0),
            l: BlockMatrix::leaf(S::one(&ctx)),
            u: m.clone(),
            q: PermutationTrace::identity(0),
        });
    };
    let (swap_rows, swap_cols, pivoted) = if let Some(pivot) = pivot {
        let bp = pivot(m)?;
        (bp.swap_rows, bp.swap_cols, Some(bp.pivoted))
    } else {
        (false, false, None)
    };
    let (a, b, c, d) = match &pivoted {
        Some(p) => p.quadrants().expect("quad"),
        None => (a, b, c, d),
    };
    let top = lu_rec(a, pivot, counter)?;
    let b = top.p.apply_rec(b, Axis::Rows, true);
    let c = top.q.apply_rec(c, Axis::Cols, true);
    let (l1_inv, u1_inv) = counter.scope("tri_inv", |k| {
        let l = tri_invert(&TriangularMatrix::new_unchecked(top.l.clone(), Orientation::Lower, true), k)?;
        let u = tri_invert(&TriangularMatrix::new_unchecked(top.u.clone(), Orientation::Upper, false), k)?;
        Ok::<_, LuError>((l.into_body(), u.into_body()))
    })?;
    let (x, y) = counter.scope("tri_mul", |k| {
        let x = tri_mul_rec(&u1_inv, Orientation::Upper, &c, Side::Right, k);
        let y = tri_mul_rec(&l1_inv, Orientation::Lower, &b, Side::Left, k);
        (x, y)
    });
    let xy = counter.scope("mul", |k| x.mul_naive(&y, k));
    let s = d.sub(&xy, counter)?;
    let bottom = lu_rec(&s, pivot, counter)?;
    let x = bottom.p.apply_rec(&x, Axis::Rows, true);
    let y = bottom.q.apply_rec(&y, Axis::Cols, true);
    let zero = BlockMatrix::zero(a.depth(), &a.ctx());
    Ok(Factors {
        p: PermutationTrace::node(swap_rows, top.p, bottom.p),
        l: BlockMatrix::quad(top.l, zero.clone(), x, bottom.l),
        u: BlockMatrix::quad(top.u, y, zero, bottom.u),
        q: PermutationTrace::node(swap_cols, top.q, bottom.q),
    })
}
