//! Block-respecting matrix inversion.
//!
//! [`schur_invert`] is the plain 2x2 Schur-complement inverse; it fails as
//! soon as a leading block along the recursion is singular. The Gram
//! drivers invert `M` as `(M^σ M)^-1 M^σ` for a conjugation σ chosen so the
//! Gram matrix `M^σ M` has invertible leading blocks at every level, which
//! lets the same block recursion go through even when every quadrant of `M`
//! is singular:
//!
//! * [`invert_gram_transpose`]: σ = transpose, formally real fields.
//! * [`invert_gram_star`]: σ = conjugate transpose, for rings whose
//!   involution makes `x* x` a sum of squares (Gaussian rationals,
//!   quaternions).
//! * [`invert_gram_gv`]: σ = `Q^-1 M^T Q` with `Q = diag(1, t, ..., t^(n-1))`
//!   over `K(t)`, for any field `K`.

use std::fmt;

use thiserror::Error;

use crate::blockmat::{BlockError, BlockMatrix, OpCounter};
use crate::rings::{Fp, GaussianRational, Quaternion, Rational, RationalFunction, Field, Scalar};

mod gram;

pub use gram::{
    gv_pre_projection, hermitian_invert, invert_gram_gv, invert_gram_star, invert_gram_transpose, Circ, Conjugation,
    ConjugationKind, GramMatrix, Star, Transpose,
};

/// Which block of which Schur complement a recursion step descended into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStep {
    /// the leading block `A`
    Leading,
    /// the Schur complement `D - C A^-1 B`
    Complement,
}

/// Location of a node in the inversion recursion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockPath(pub Vec<PathStep>);

impl fmt::Display for BlockPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for step in &self.0 {
            f.write_str(match step {
                PathStep::Leading => "/A",
                PathStep::Complement => "/S",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InversionError {
    #[error("singular pivot block at {path}")]
    PivotBlockSingular { path: BlockPath },
    #[error("Gram matrix is singular")]
    GramSingular,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("entry ({row}, {col}) of the K(t) inverse is not a constant")]
    NonConstantResidue { row: usize, col: usize },
    #[error(transparent)]
    Block(#[from] BlockError),
}

/// Inverse by the Schur complement of the leading block, recursively:
///
/// ```text
/// [A B]^-1   [A^-1 + A^-1 B S^-1 C A^-1   -A^-1 B S^-1]
/// [C D]    = [-S^-1 C A^-1                 S^-1       ],  S = D - C A^-1 B
/// ```
///
/// No pivoting: a singular `A` or `S` anywhere yields `PivotBlockSingular`.
pub fn schur_invert<S: Scalar>(m: &BlockMatrix<S>, counter: &mut OpCounter) -> Result<BlockMatrix<S>, InversionError> {
    schur_rec(m, &mut Vec::new(), counter)
}

fn schur_rec<S: Scalar>(
    m: &BlockMatrix<S>,
    path: &mut Vec<PathStep>,
    counter: &mut OpCounter,
) -> Result<BlockMatrix<S>, InversionError> {
    let Some((a, b, c, d)) = m.quadrants() else {
        let x = m.as_leaf().expect("leaf");
        counter.record_div(1);
        return x
            .try_inv()
            .map(BlockMatrix::leaf)
            .ok_or_else(|| InversionError::PivotBlockSingular { path: BlockPath(path.clone()) });
    };
    path.push(PathStep::Leading);
    let a_inv = schur_rec(a, path, counter)?;
    path.pop();
    complete_schur(a_inv, b, c, d, counter, |s, counter| {
        path.push(PathStep::Complement);
        let s_inv = schur_rec(s, path, counter);
        path.pop();
        s_inv
    })
}

/// Finishes a Schur step given `A^-1`, inverting `S` with `invert_s`.
fn complete_schur<S: Scalar>(
    a_inv: BlockMatrix<S>,
    b: &BlockMatrix<S>,
    c: &BlockMatrix<S>,
    d: &BlockMatrix<S>,
    counter: &mut OpCounter,
    invert_s: impl FnOnce(&BlockMatrix<S>, &mut OpCounter) -> Result<BlockMatrix<S>, InversionError>,
) -> Result<BlockMatrix<S>, InversionError> {
    let t1 = c.mul_naive(&a_inv, counter);
    let t2 = a_inv.mul_naive(b, counter);
    let s = d.sub(&t1.mul_naive(b, counter), counter)?;
    let s_inv = invert_s(&s, counter)?;
    let t3 = t2.mul_naive(&s_inv, counter);
    let t4 = t3.mul_naive(&t1, counter);
    let tl = a_inv.add(&t4, counter)?;
    let bl = s_inv.mul_naive(&t1, counter).neg();
    Ok(BlockMatrix::quad(tl, t3.neg(), bl, s_inv))
}

/// Scalar rings with a built-in Gram route for [`auto_invert`].
pub trait GramFallback: Scalar {
    fn invert_via_gram(m: &BlockMatrix<Self>, counter: &mut OpCounter) -> Result<BlockMatrix<Self>, InversionError>;

    /// Whether [`auto_invert`] would succeed on `m`.
    fn invertible(m: &BlockMatrix<Self>) -> bool {
        auto_invert(m, &mut OpCounter::new("is_invertible")).is_ok()
    }
}

// auto_invert is exact over these, so a nonzero determinant answers the same
// question much faster than running the inversion.
macro_rules! invertible_by_determinant {
    () => {
        fn invertible(m: &BlockMatrix<Self>) -> bool {
            !m.to_dense().determinant().is_zero()
        }
    };
}

impl GramFallback for Rational {
    fn invert_via_gram(m: &BlockMatrix<Self>, counter: &mut OpCounter) -> Result<BlockMatrix<Self>, InversionError> {
        invert_gram_transpose(m, counter)
    }

    invertible_by_determinant!();
}

impl GramFallback for Fp {
    fn invert_via_gram(m: &BlockMatrix<Self>, counter: &mut OpCounter) -> Result<BlockMatrix<Self>, InversionError> {
        invert_gram_gv(m, counter)
    }

    invertible_by_determinant!();
}

impl GramFallback for GaussianRational {
    fn invert_via_gram(m: &BlockMatrix<Self>, counter: &mut OpCounter) -> Result<BlockMatrix<Self>, InversionError> {
        invert_gram_star(m, counter)
    }

    invertible_by_determinant!();
}

impl GramFallback for Quaternion {
    fn invert_via_gram(m: &BlockMatrix<Self>, counter: &mut OpCounter) -> Result<BlockMatrix<Self>, InversionError> {
        invert_gram_star(m, counter)
    }
}

/// Over Q(t) the transpose route is exact. Over GF(p)(t) it is only a
/// heuristic: `SingularMatrix` is not a proof of singularity there.
impl<F: Field> GramFallback for RationalFunction<F> {
    fn invert_via_gram(m: &BlockMatrix<Self>, counter: &mut OpCounter) -> Result<BlockMatrix<Self>, InversionError> {
        gram::gram_driver(m, &Transpose, counter)
    }
}

/// Schur inverse that falls back to the ring's Gram driver at the smallest
/// block whose leading block turns out singular, so most of the matrix
/// still goes through the cheap Schur step. Fails only for singular `m`.
pub fn auto_invert<S: GramFallback>(m: &BlockMatrix<S>, counter: &mut OpCounter) -> Result<BlockMatrix<S>, InversionError> {
    auto_rec(m, counter).map_err(|e| match e {
        InversionError::Block(b) => InversionError::Block(b),
        _ => InversionError::SingularMatrix,
    })
}

fn auto_rec<S: GramFallback>(m: &BlockMatrix<S>, counter: &mut OpCounter) -> Result<BlockMatrix<S>, InversionError> {
    let Some((a, b, c, d)) = m.quadrants() else {
        counter.record_div(1);
        let x = m.as_leaf().expect("leaf");
        return x.try_inv().map(BlockMatrix::leaf).ok_or(InversionError::SingularMatrix);
    };
    let a_inv = match auto_rec(a, counter) {
        Ok(x) => x,
        // A is singular, so no Schur step is possible here
        Err(InversionError::SingularMatrix) => return counter.scope("gram", |c| S::invert_via_gram(m, c)),
        Err(e) => return Err(e),
    };
    // with A invertible, m is invertible iff S is
    complete_schur(a_inv, b, c, d, counter, auto_rec)
}

pub fn is_invertible<S: GramFallback>(m: &BlockMatrix<S>) -> bool {
    S::invertible(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> BlockMatrix<Rational> {
        crate::blockmat::DenseMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect()).collect(),
        )
        .unwrap()
        .to_block()
        .unwrap()
    }

    #[test]
    fn schur_diagonal() {
        let mut c = OpCounter::new("t");
        let inv = schur_invert(&q(&[&[2, 0], &[0, 3]]), &mut c).unwrap();
        let expected = BlockMatrix::quad(
            BlockMatrix::leaf(Rational::new(1, 2)),
            BlockMatrix::leaf(Rational::from_integer(0)),
            BlockMatrix::leaf(Rational::from_integer(0)),
            BlockMatrix::leaf(Rational::new(1, 3)),
        );
        assert_eq!(inv, expected);
    }

    #[test]
    fn schur_two_by_two() {
        // adjugate / det with det = -2
        let inv = schur_invert(&q(&[&[1, 2], &[3, 4]]), &mut OpCounter::new("t")).unwrap();
        let expected = BlockMatrix::quad(
            BlockMatrix::leaf(Rational::from_integer(-2)),
            BlockMatrix::leaf(Rational::from_integer(1)),
            BlockMatrix::leaf(Rational::new(3, 2)),
            BlockMatrix::leaf(Rational::new(-1, 2)),
        );
        assert_eq!(inv, expected);
    }

    #[test]
    fn schur_reports_singular_pivot_path() {
        let err = schur_invert(&q(&[&[0, 1], &[1, 0]]), &mut OpCounter::new("t")).unwrap_err();
        assert_eq!(err, InversionError::PivotBlockSingular { path: BlockPath(vec![PathStep::Leading]) });
        assert_eq!(BlockPath(vec![PathStep::Leading, PathStep::Complement]).to_string(), "root/A/S");
    }

    #[test]
    fn auto_dispatch() {
        let mut c = OpCounter::new("t");
        assert_eq!(auto_invert(&q(&[&[0, 1], &[1, 0]]), &mut c).unwrap(), q(&[&[0, 1], &[1, 0]]));
        assert_eq!(auto_invert(&q(&[&[0, 0], &[0, 0]]), &mut c), Err(InversionError::SingularMatrix));
        assert!(c.breakdown().contains_key("gram"));
    }

    #[test]
    fn invertibility() {
        assert!(is_invertible(&BlockMatrix::<Rational>::identity(2, &())));
        assert!(!is_invertible(&BlockMatrix::<Rational>::zero(2, &())));
        let m4 = q(&[&[1, 1, 0, 0], &[1, 1, 1, 0], &[0, 1, 1, 1], &[0, 0, 1, 1]]);
        assert!(is_invertible(&m4));
    }
}
