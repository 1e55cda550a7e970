use crate::blockmat::{BlockError, BlockMatrix, OpCounter};
use crate::rings::Scalar;

use super::LuError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Lower,
    Upper,
}

/// Which side of the general matrix the triangular factor sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A block matrix whose off-diagonal quadrant (`B` for lower, `C` for upper)
/// is zero at every level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularMatrix<S> {
    body: BlockMatrix<S>,
    orientation: Orientation,
    unit_diagonal: bool,
}

impl<S: Scalar> TriangularMatrix<S> {
    /// Checks the structural zeros, and the diagonal if `unit_diagonal`.
    pub fn new(body: BlockMatrix<S>, orientation: Orientation, unit_diagonal: bool) -> Result<Self, LuError> {
        if !has_shape(&body, orientation, unit_diagonal) {
            return Err(LuError::NotTriangular);
        }
        Ok(TriangularMatrix { body, orientation, unit_diagonal })
    }

    pub(crate) fn new_unchecked(body: BlockMatrix<S>, orientation: Orientation, unit_diagonal: bool) -> Self {
        debug_assert!(has_shape(&body, orientation, unit_diagonal));
        TriangularMatrix { body, orientation, unit_diagonal }
    }

    pub fn identity(depth: u32, ctx: &S::Ctx, orientation: Orientation) -> Self {
        TriangularMatrix { body: BlockMatrix::identity(depth, ctx), orientation, unit_diagonal: true }
    }

    pub fn body(&self) -> &BlockMatrix<S> {
        &self.body
    }

    pub fn into_body(self) -> BlockMatrix<S> {
        self.body
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn is_unit_diagonal(&self) -> bool {
        self.unit_diagonal
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    pub fn depth(&self) -> u32 {
        self.body.depth()
    }
}

fn has_shape<S: Scalar>(m: &BlockMatrix<S>, o: Orientation, unit: bool) -> bool {
    match m.quadrants() {
        None => !unit || m.as_leaf().is_some_and(Scalar::is_one),
        Some((a, b, c, d)) => {
            let off = match o {
                Orientation::Lower => b,
                Orientation::Upper => c,
            };
            off.is_zero() && has_shape(a, o, unit) && has_shape(d, o, unit)
        }
    }
}

/// Product of a triangular and a general matrix, `T G` or `G T`.
///
/// Each node does four half-size triangular products and two general ones,
/// so the multiplication count is `(n^3 + n^2) / 2` with naive products.
/// A leaf costs one multiplication even for a unit diagonal.
pub fn tri_mul<S: Scalar>(
    t: &TriangularMatrix<S>,
    g: &BlockMatrix<S>,
    side: Side,
    counter: &mut OpCounter,
) -> Result<BlockMatrix<S>, LuError> {
    if t.depth() != g.depth() {
        return Err(BlockError::DepthMismatch { left: t.depth(), right: g.depth() }.into());
    }
    Ok(tri_mul_rec(&t.body, t.orientation, g, side, counter))
}

pub(crate) fn tri_mul_rec<S: Scalar>(
    t: &BlockMatrix<S>,
    o: Orientation,
    g: &BlockMatrix<S>,
    side: Side,
    counter: &mut OpCounter,
) -> BlockMatrix<S> {
    let (Some((t1, ty, tx, t2)), Some((a, b, c, d))) = (t.quadrants(), g.quadrants()) else {
        counter.record_mul(1);
        let (t, g) = (t.as_leaf().expect("leaf"), g.as_leaf().expect("leaf"));
        return BlockMatrix::leaf(match side {
            Side::Left => t.mul(g),
            Side::Right => g.mul(t),
        });
    };
    let tri = |blk: &BlockMatrix<S>, f: &BlockMatrix<S>, c: &mut OpCounter| tri_mul_rec(blk, o, f, side, c);
    let sum = |x: BlockMatrix<S>, y: BlockMatrix<S>, c: &mut OpCounter| x.add(&y, c).expect("same depth");
    match (o, side) {
        // [[T1, 0], [X, T2]] G
        (Orientation::Lower, Side::Left) => {
            let r0 = tri(t1, a, counter);
            let r1 = tri(t1, b, counter);
            let xa = tx.mul_naive(a, counter);
            let r2 = tri(t2, c, counter);
            let r2 = sum(xa, r2, counter);
            let xb = tx.mul_naive(b, counter);
            let r3 = tri(t2, d, counter);
            let r3 = sum(xb, r3, counter);
            BlockMatrix::quad(r0, r1, r2, r3)
        }
        // [[T1, Y], [0, T2]] G
        (Orientation::Upper, Side::Left) => {
            let ta = tri(t1, a, counter);
            let yc = ty.mul_naive(c, counter);
            let r0 = sum(ta, yc, counter);
            let tb = tri(t1, b, counter);
            let yd = ty.mul_naive(d, counter);
            let r1 = sum(tb, yd, counter);
            let r2 = tri(t2, c, counter);
            let r3 = tri(t2, d, counter);
            BlockMatrix::quad(r0, r1, r2, r3)
        }
        // G [[T1, 0], [X, T2]]
        (Orientation::Lower, Side::Right) => {
            let at = tri(t1, a, counter);
            let bx = b.mul_naive(tx, counter);
            let r0 = sum(at, bx, counter);
            let r1 = tri(t2, b, counter);
            let ct = tri(t1, c, counter);
            let dx = d.mul_naive(tx, counter);
            let r2 = sum(ct, dx, counter);
            let r3 = tri(t2, d, counter);
            BlockMatrix::quad(r0, r1, r2, r3)
        }
        // G [[T1, Y], [0, T2]]
        (Orientation::Upper, Side::Right) => {
            let r0 = tri(t1, a, counter);
            let ay = a.mul_naive(ty, counter);
            let bt = tri(t2, b, counter);
            let r1 = sum(ay, bt, counter);
            let r2 = tri(t1, c, counter);
            let cy = c.mul_naive(ty, counter);
            let dt = tri(t2, d, counter);
            let r3 = sum(cy, dt, counter);
            BlockMatrix::quad(r0, r1, r2, r3)
        }
    }
}

/// Inverse of a triangular matrix via two half-size inversions and two
/// triangular products per node:
///
/// ```text
/// [A 0]^-1   [A^-1              0   ]
/// [C D]    = [-D^-1 (C A^-1)    D^-1]
/// ```
///
/// and the mirror image for upper. Every diagonal leaf costs one division.
pub fn tri_invert<S: Scalar>(t: &TriangularMatrix<S>, counter: &mut OpCounter) -> Result<TriangularMatrix<S>, LuError> {
    let mut path = String::from("root");
    let body = tri_invert_rec(&t.body, t.orientation, &mut path, counter)?;
    Ok(TriangularMatrix { body, orientation: t.orientation, unit_diagonal: t.unit_diagonal })
}

fn tri_invert_rec<S: Scalar>(
    t: &BlockMatrix<S>,
    o: Orientation,
    path: &mut String,
    counter: &mut OpCounter,
) -> Result<BlockMatrix<S>, LuError> {
    let Some((a, b, c, d)) = t.quadrants() else {
        counter.record_div(1);
        let x = t.as_leaf().expect("leaf");
        return x.try_inv().map(BlockMatrix::leaf).ok_or_else(|| LuError::SingularDiagonal { path: path.clone() });
    };
    let mut sub = |blk: &BlockMatrix<S>, tag: &str, counter: &mut OpCounter| {
        let len = path.len();
        path.push_str(tag);
        let r = tri_invert_rec(blk, o, path, counter);
        path.truncate(len);
        r
    };
    let ai = sub(a, "/A", counter)?;
    let di = sub(d, "/D", counter)?;
    Ok(match o {
        Orientation::Lower => {
            let ca = tri_mul_rec(&ai, o, c, Side::Right, counter);
            let x = tri_mul_rec(&di, o, &ca, Side::Left, counter).neg();
            BlockMatrix::quad(ai, b.clone(), x, di)
        }
        Orientation::Upper => {
            let bd = tri_mul_rec(&di, o, b, Side::Right, counter);
            let y = tri_mul_rec(&ai, o, &bd, Side::Left, counter).neg();
            BlockMatrix::quad(ai, y, c.clone(), di)
        }
    })
}
