use rand::Rng;

use crate::blockmat::{BlockMatrix, OpCounter};
use crate::inversion::{is_invertible, GramFallback};
use crate::random::{rng_from_seed, Sample};
use crate::rings::Scalar;

use super::{block_pivot, lu_rec, tri_invert, tri_mul, Axis, LuError, Orientation, PermutationTrace, Side, TriangularMatrix};

/// `R_up M R_low = P L U Q` for random unit triangular `R_up` (upper) and
/// `R_low` (lower).
///
/// Putting the upper factor on the left and the lower one on the right is
/// what makes the leading blocks generic: the opposite arrangement leaves
/// every leading minor of `M` unchanged. Over large fields `P` and `Q` come
/// out trivial; over tiny ones block swaps are still needed now and then.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomizedLu<S> {
    pub left: TriangularMatrix<S>,
    pub p: PermutationTrace,
    pub lower: TriangularMatrix<S>,
    pub upper: TriangularMatrix<S>,
    pub q: PermutationTrace,
    pub right: TriangularMatrix<S>,
    /// preconditioner draws used, counting the successful one
    pub attempts: u32,
}

impl<S: Scalar> RandomizedLu<S> {
    /// `R_up^-1 P L`, so that `left_factor() * right_factor() = M`.
    pub fn left_factor(&self, counter: &mut OpCounter) -> Result<BlockMatrix<S>, LuError> {
        let inv = tri_invert(&self.left, counter)?;
        let pl = self.p.apply(self.lower.body(), Axis::Rows)?;
        tri_mul(&inv, &pl, Side::Left, counter)
    }

    /// `U Q R_low^-1`.
    pub fn right_factor(&self, counter: &mut OpCounter) -> Result<BlockMatrix<S>, LuError> {
        let inv = tri_invert(&self.right, counter)?;
        let uq = self.q.apply(self.upper.body(), Axis::Cols)?;
        tri_mul(&inv, &uq, Side::Right, counter)
    }
}

/// Draws preconditioners from `seed` until `R_up M R_low` factors, at most
/// `max_retries` times. Off-diagonal entries are drawn
/// from a set of `2 n^2` elements (all of GF(p) when `p` is smaller).
///
/// On failure the matrix is tested for invertibility, so a singular input
/// yields `SingularMatrix` rather than `RandomnessExhausted`.
pub fn randomized_lu<S: GramFallback + Sample>(
    m: &BlockMatrix<S>,
    seed: u64,
    max_retries: u32,
    counter: &mut OpCounter,
) -> Result<RandomizedLu<S>, LuError> {
    let mut rng = rng_from_seed(seed);
    let ctx = m.ctx();
    let n = m.dim() as u64;
    let set = 2 * n * n;
    for attempt in 1..=max_retries {
        let left = random_unit_triangular(m.depth(), &ctx, Orientation::Upper, set, &mut rng);
        let right = random_unit_triangular(m.depth(), &ctx, Orientation::Lower, set, &mut rng);
        let pre = tri_mul(&left, m, Side::Left, counter)?;
        let pre = tri_mul(&right, &pre, Side::Right, counter)?;
        match lu_rec(&pre, Some(block_pivot::<S>), counter) {
            Ok(f) => {
                return Ok(RandomizedLu {
                    left,
                    p: f.p,
                    lower: TriangularMatrix::new_unchecked(f.l, Orientation::Lower, true),
                    upper: TriangularMatrix::new_unchecked(f.u, Orientation::Upper, false),
                    q: f.q,
                    right,
                    attempts: attempt,
                })
            }
            Err(LuError::AllBlocksSingular | LuError::SingularMatrix) => continue,
            Err(e) => return Err(e),
        }
    }
    if !is_invertible(m) {
        return Err(LuError::SingularMatrix);
    }
    Err(LuError::RandomnessExhausted { attempts: max_retries })
}

fn random_unit_triangular<S: Sample, R: Rng>(
    depth: u32,
    ctx: &S::Ctx,
    orientation: Orientation,
    set: u64,
    rng: &mut R,
) -> TriangularMatrix<S> {
    TriangularMatrix::new_unchecked(random_unit_body(depth, ctx, orientation, set, rng), orientation, true)
}

fn random_unit_body<S: Sample, R: Rng>(depth: u32, ctx: &S::Ctx, o: Orientation, set: u64, rng: &mut R) -> BlockMatrix<S> {
    if depth == 0 {
        return BlockMatrix::leaf(S::one(ctx));
    }
    let a = random_unit_body(depth - 1, ctx, o, set, rng);
    let off = random_body(depth - 1, ctx, set, rng);
    let d = random_unit_body(depth - 1, ctx, o, set, rng);
    let zero = BlockMatrix::zero(depth - 1, ctx);
    match o {
        Orientation::Lower => BlockMatrix::quad(a, zero, off, d),
        Orientation::Upper => BlockMatrix::quad(a, off, zero, d),
    }
}

fn random_body<S: Sample, R: Rng>(depth: u32, ctx: &S::Ctx, set: u64, rng: &mut R) -> BlockMatrix<S> {
    if depth == 0 {
        return BlockMatrix::leaf(S::sample_from_set(ctx, rng, set));
    }
    let mut q = || random_body(depth - 1, ctx, set, rng);
    let (a, b, c, d) = (q(), q(), q(), q());
    BlockMatrix::quad(a, b, c, d)
}
