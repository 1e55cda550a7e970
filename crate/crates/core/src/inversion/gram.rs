use crate::blockmat::{BlockMatrix, OpCounter};
use crate::rings::{Field, FormallyReal, HasIndeterminate, PositiveInvolution, RationalFunction, Scalar};

use super::InversionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjugationKind {
    Transpose,
    Star,
    Circ,
}

/// A conjugation σ with `(XY)^σ = Y^σ X^σ` and `X^σσ = X`, so that `M^σ M`
/// is σ-self-adjoint.
pub trait Conjugation<S: Scalar> {
    fn kind(&self) -> ConjugationKind;

    fn conjugate(&self, m: &BlockMatrix<S>, counter: &mut OpCounter) -> BlockMatrix<S>;

    /// Given the top-right block `B` of a self-adjoint `[[A, B], [C, D]]`,
    /// returns `C`. Costs no multiplications.
    fn mirror(&self, top_right: &BlockMatrix<S>, counter: &mut OpCounter) -> BlockMatrix<S>;

    /// Entrywise check of the self-adjointness relation.
    fn is_self_adjoint(&self, n: &BlockMatrix<S>) -> bool;
}

/// `M^T`; `N[j][i] = N[i][j]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Transpose;

/// `M^*`; `N[j][i] = star(N[i][j])`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Star;

/// `M° = Q^-1 M^T Q`; `N[j][i] = t^(i-j) N[i][j]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Circ;

impl<S: Field> Conjugation<S> for Transpose {
    fn kind(&self) -> ConjugationKind {
        ConjugationKind::Transpose
    }

    fn conjugate(&self, m: &BlockMatrix<S>, _: &mut OpCounter) -> BlockMatrix<S> {
        m.transpose()
    }

    fn mirror(&self, top_right: &BlockMatrix<S>, _: &mut OpCounter) -> BlockMatrix<S> {
        top_right.transpose()
    }

    fn is_self_adjoint(&self, n: &BlockMatrix<S>) -> bool {
        let d = n.to_dense();
        (0..d.dim()).all(|i| (0..i).all(|j| d.get(i, j) == d.get(j, i)))
    }
}

impl<S: Scalar> Conjugation<S> for Star {
    fn kind(&self) -> ConjugationKind {
        ConjugationKind::Star
    }

    fn conjugate(&self, m: &BlockMatrix<S>, _: &mut OpCounter) -> BlockMatrix<S> {
        m.adjoint()
    }

    fn mirror(&self, top_right: &BlockMatrix<S>, _: &mut OpCounter) -> BlockMatrix<S> {
        top_right.adjoint()
    }

    fn is_self_adjoint(&self, n: &BlockMatrix<S>) -> bool {
        let d = n.to_dense();
        (0..d.dim()).all(|i| (0..=i).all(|j| *d.get(i, j) == d.get(j, i).star()))
    }
}

impl<S: HasIndeterminate> Conjugation<S> for Circ {
    fn kind(&self) -> ConjugationKind {
        ConjugationKind::Circ
    }

    fn conjugate(&self, m: &BlockMatrix<S>, counter: &mut OpCounter) -> BlockMatrix<S> {
        m.circ_conjugate(counter)
    }

    // For N = [[A, B], [C, D]] of size 2h with N° = N: C = t^-h B°.
    fn mirror(&self, top_right: &BlockMatrix<S>, counter: &mut OpCounter) -> BlockMatrix<S> {
        let h = top_right.dim() as i64;
        top_right.circ_conjugate(counter).scale_t(-h, counter)
    }

    fn is_self_adjoint(&self, n: &BlockMatrix<S>) -> bool {
        let d = n.to_dense();
        (0..d.dim()).all(|i| (0..d.dim()).all(|j| *d.get(j, i) == d.get(i, j).mul_t_power(i as i64 - j as i64)))
    }
}

/// A matrix `N` that is self-adjoint for its conjugation kind.
#[derive(Debug, Clone)]
pub struct GramMatrix<S, K> {
    matrix: BlockMatrix<S>,
    kind: K,
}

impl<S: Scalar, K: Conjugation<S>> GramMatrix<S, K> {
    /// `M^σ M`, computed as a full product.
    pub fn of(m: &BlockMatrix<S>, kind: K, counter: &mut OpCounter) -> Self {
        let mc = kind.conjugate(m, counter);
        GramMatrix { matrix: mc.mul_naive(m, counter), kind }
    }

    /// Wraps `n` without checking self-adjointness.
    pub fn assume_self_adjoint(n: BlockMatrix<S>, kind: K) -> Self {
        GramMatrix { matrix: n, kind }
    }

    pub fn matrix(&self) -> &BlockMatrix<S> {
        &self.matrix
    }

    pub fn kind(&self) -> ConjugationKind {
        self.kind.kind()
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.kind.is_self_adjoint(&self.matrix)
    }
}

/// One level of the self-adjoint block inverse. With `t2 = A^-1 B`, the
/// symmetry gives `t1 = C A^-1 = mirror(t2)` for free, so a node costs two
/// half-size inversions (delegated to `sub`) and four half-size products:
/// `t2`, `t1 B`, `t3 = t2 S^-1` and `t4 = t3 t1`. The bottom-left block of
/// the (self-adjoint) inverse is again a mirror.
fn self_adjoint_node<S, K, F>(
    n: &BlockMatrix<S>,
    kind: &K,
    counter: &mut OpCounter,
    sub: &mut F,
) -> Result<BlockMatrix<S>, InversionError>
where
    S: Scalar,
    K: Conjugation<S>,
    F: FnMut(&BlockMatrix<S>, &mut OpCounter) -> Result<BlockMatrix<S>, InversionError>,
{
    let Some((a, b, _, d)) = n.quadrants() else {
        counter.record_div(1);
        let x = n.as_leaf().expect("leaf");
        return x.try_inv().map(BlockMatrix::leaf).ok_or(InversionError::GramSingular);
    };
    let a_inv = sub(a, counter)?;
    let t2 = a_inv.mul_naive(b, counter);
    let t1 = kind.mirror(&t2, counter);
    let s = d.sub(&t1.mul_naive(b, counter), counter)?;
    let s_inv = sub(&s, counter)?;
    let t3 = t2.mul_naive(&s_inv, counter);
    let t4 = t3.mul_naive(&t1, counter);
    let tl = a_inv.add(&t4, counter)?;
    let tr = t3.neg();
    let bl = kind.mirror(&tr, counter);
    Ok(BlockMatrix::quad(tl, tr, bl, s_inv))
}

fn hermitian_rec<S: Scalar, K: Conjugation<S>>(
    n: &BlockMatrix<S>,
    kind: &K,
    counter: &mut OpCounter,
) -> Result<BlockMatrix<S>, InversionError> {
    self_adjoint_node(n, kind, counter, &mut |blk, c| hermitian_rec(blk, kind, c))
}

/// Inverts a self-adjoint Gram matrix with no pivot search: both diagonal
/// sub-inversions recurse into this function, the leading block and the
/// Schur complement inheriting the symmetry. Multiplications plus divisions
/// follow `T(n) = 2 T(n/2) + 4 (n/2)^3`, `T(1) = 1`.
pub fn hermitian_invert<S: Scalar, K: Conjugation<S>>(
    gram: &GramMatrix<S, K>,
    counter: &mut OpCounter,
) -> Result<BlockMatrix<S>, InversionError> {
    hermitian_rec(&gram.matrix, &gram.kind, counter)
}

/// `(M^σ M)^-1 M^σ`, where the two half-size inversions at the top node are
/// themselves Gram inversions. The count then follows
/// `T(n) = 2 n^3 + 2 T(n/2) + 4 (n/2)^3` with `T(1) = 1`.
pub(crate) fn gram_driver<S: Scalar, K: Conjugation<S>>(
    m: &BlockMatrix<S>,
    kind: &K,
    counter: &mut OpCounter,
) -> Result<BlockMatrix<S>, InversionError> {
    if let Some(x) = m.as_leaf() {
        counter.record_div(1);
        return x.try_inv().map(BlockMatrix::leaf).ok_or(InversionError::SingularMatrix);
    }
    let mc = kind.conjugate(m, counter);
    let n = mc.mul_naive(m, counter);
    let n_inv = self_adjoint_node(&n, kind, counter, &mut |blk, c| gram_driver(blk, kind, c)).map_err(|e| match e {
        InversionError::Block(b) => InversionError::Block(b),
        _ => InversionError::SingularMatrix,
    })?;
    Ok(n_inv.mul_naive(&mc, counter))
}

/// `M^-1 = (M^T M)^-1 M^T` over a formally real field.
pub fn invert_gram_transpose<S: FormallyReal>(
    m: &BlockMatrix<S>,
    counter: &mut OpCounter,
) -> Result<BlockMatrix<S>, InversionError> {
    gram_driver(m, &Transpose, counter)
}

/// `M^-1 = (M^* M)^-1 M^*`; product order is respected throughout, so this
/// is valid over the quaternions.
pub fn invert_gram_star<S: PositiveInvolution>(
    m: &BlockMatrix<S>,
    counter: &mut OpCounter,
) -> Result<BlockMatrix<S>, InversionError> {
    gram_driver(m, &Star, counter)
}

/// Lifts `m` into `K(t)` and returns `(M° M)^-1 M°` there, before projecting
/// back to `K`. For invertible `m` every entry is a constant.
pub fn gv_pre_projection<F: Field>(
    m: &BlockMatrix<F>,
    counter: &mut OpCounter,
) -> Result<BlockMatrix<RationalFunction<F>>, InversionError> {
    let lifted = m.map(&|x| RationalFunction::constant(x.clone()));
    if let Some(x) = lifted.as_leaf() {
        counter.record_div(1);
        return x.try_inv().map(BlockMatrix::leaf).ok_or(InversionError::SingularMatrix);
    }
    let gram = GramMatrix::of(&lifted, Circ, counter);
    let mc = lifted.circ_conjugate(counter);
    let n_inv = hermitian_invert(&gram, counter).map_err(|e| match e {
        InversionError::Block(b) => InversionError::Block(b),
        _ => InversionError::SingularMatrix,
    })?;
    Ok(n_inv.mul_naive(&mc, counter))
}

/// `M^-1 = (M° M)^-1 M°` over `K(t)`, projected back to `K`. A non-constant
/// entry is reported as `NonConstantResidue`, never truncated.
pub fn invert_gram_gv<F: Field>(m: &BlockMatrix<F>, counter: &mut OpCounter) -> Result<BlockMatrix<F>, InversionError> {
    let pre = gv_pre_projection(m, counter)?;
    let dense = pre.to_dense();
    for (k, entry) in dense.entries().iter().enumerate() {
        if entry.as_constant().is_none() {
            return Err(InversionError::NonConstantResidue { row: k / dense.dim(), col: k % dense.dim() });
        }
    }
    Ok(pre.map(&|x| x.as_constant().expect("checked constant")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockmat::DenseMatrix;
    use crate::rings::{Fp, GaussianRational, PrimeModulus, Quaternion, Rational};

    fn q(rows: &[&[i64]]) -> BlockMatrix<Rational> {
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect()).collect())
            .unwrap()
            .to_block()
            .unwrap()
    }

    fn gf(p: u64, rows: &[&[i64]]) -> BlockMatrix<Fp> {
        let p = PrimeModulus::new(p).unwrap();
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Fp::new(v, p)).collect()).collect())
            .unwrap()
            .to_block()
            .unwrap()
    }

    #[test]
    fn hermitian_identity_cost() {
        let gram = GramMatrix::assume_self_adjoint(BlockMatrix::<Rational>::identity(1, &()), Transpose);
        let mut c = OpCounter::new("h");
        assert!(hermitian_invert(&gram, &mut c).unwrap().is_identity());
        assert_eq!(c.tally().mul_div(), 6);
    }

    #[test]
    fn hermitian_small_gram() {
        let gram = GramMatrix::of(&q(&[&[1, 1], &[1, 0]]), Transpose, &mut OpCounter::new("g"));
        assert_eq!(gram.matrix(), &q(&[&[2, 1], &[1, 1]]));
        let inv = hermitian_invert(&gram, &mut OpCounter::new("h")).unwrap();
        assert_eq!(inv, q(&[&[1, -1], &[-1, 2]]));
    }

    #[test]
    fn hermitian_singular() {
        let gram = GramMatrix::assume_self_adjoint(BlockMatrix::<Rational>::zero(1, &()), Transpose);
        assert_eq!(hermitian_invert(&gram, &mut OpCounter::new("h")), Err(InversionError::GramSingular));
    }

    #[test]
    fn transpose_driver_examples() {
        let mut c = OpCounter::new("t");
        assert_eq!(invert_gram_transpose(&q(&[&[0, 1], &[1, 0]]), &mut c).unwrap(), q(&[&[0, 1], &[1, 0]]));
        assert_eq!(invert_gram_transpose(&q(&[&[1, 1], &[1, 0]]), &mut c).unwrap(), q(&[&[0, 1], &[1, -1]]));
        let m4 = q(&[&[1, 1, 0, 0], &[1, 1, 1, 0], &[0, 1, 1, 1], &[0, 0, 1, 1]]);
        let inv = invert_gram_transpose(&m4, &mut c).unwrap();
        assert!(m4.mul_naive(&inv, &mut c).is_identity());
        assert_eq!(
            invert_gram_transpose(&q(&[&[1, 2], &[2, 4]]), &mut c),
            Err(InversionError::SingularMatrix)
        );
    }

    #[test]
    fn star_driver_examples() {
        let g = |re, im| BlockMatrix::leaf(GaussianRational::from_ints(re, im));
        let mut c = OpCounter::new("s");
        let m = BlockMatrix::quad(g(0, 0), g(0, 1), g(0, 1), g(0, 0));
        assert_eq!(invert_gram_star(&m, &mut c).unwrap(), m.adjoint());
        let m = BlockMatrix::quad(g(1, 0), g(0, 1), g(0, 0), g(1, 0));
        let expected = BlockMatrix::quad(g(1, 0), g(0, -1), g(0, 0), g(1, 0));
        assert_eq!(invert_gram_star(&m, &mut c).unwrap(), expected);
        let j = BlockMatrix::leaf(Quaternion::j());
        assert_eq!(invert_gram_star(&j, &mut c).unwrap(), BlockMatrix::leaf(Quaternion::j().neg()));
    }

    #[test]
    fn gv_over_gf2() {
        let mut c = OpCounter::new("gv");
        let m = gf(2, &[&[1, 1], &[1, 0]]);
        assert_eq!(invert_gram_gv(&m, &mut c).unwrap(), gf(2, &[&[0, 1], &[1, 1]]));
        // Gram matrix M° M = [[1 + t, 1], [1/t, 1/t]]
        let p = PrimeModulus::new(2).unwrap();
        let lifted = m.map(&|x| RationalFunction::constant(*x));
        let gram = GramMatrix::of(&lifted, Circ, &mut c);
        let r = |s: &str| BlockMatrix::leaf(RationalFunction::<Fp>::parse_token(&p, s).unwrap());
        assert_eq!(gram.matrix(), &BlockMatrix::quad(r("(1+t)"), r("(1)"), r("(1)/(t)"), r("(1)/(t)")));
        assert!(gram.is_self_adjoint());
    }

    #[test]
    fn gv_identity_and_singular() {
        let mut c = OpCounter::new("gv");
        let id = BlockMatrix::<Fp>::identity(2, &PrimeModulus::new(5).unwrap());
        assert!(invert_gram_gv(&id, &mut c).unwrap().is_identity());
        assert_eq!(invert_gram_gv(&gf(3, &[&[1, 1], &[1, 1]]), &mut c), Err(InversionError::SingularMatrix));
    }
}

#[cfg(test)]
mod count_tests {
    use super::*;
    use crate::rings::Rational;

    #[test]
    fn counts_follow_recurrences() {
        for (depth, h, t) in [(1, 6, 22), (2, 44, 204), (3, 344, 1688)] {
            let id = BlockMatrix::<Rational>::identity(depth, &());
            let mut c = OpCounter::new("h");
            hermitian_invert(&GramMatrix::assume_self_adjoint(id.clone(), Transpose), &mut c).unwrap();
            assert_eq!(c.tally().mul_div(), h);
            let mut c = OpCounter::new("t");
            invert_gram_transpose(&id, &mut c).unwrap();
            assert_eq!(c.tally().mul_div(), t);
        }
    }
}
