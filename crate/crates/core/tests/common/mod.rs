//! Test-side oracles, written against `Scalar` only so they share no code
//! with the library's own dense routines.

#![allow(dead_code)]

use recblock::blockmat::DenseMatrix;
use recblock::rings::{Fp, PrimeModulus, Rational, Scalar};

pub fn q(x: i64) -> Rational {
    Rational::from_integer(x)
}

pub fn gf(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

pub fn fp_matrix(p: PrimeModulus, rows: &[&[i64]]) -> DenseMatrix<Fp> {
    DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Fp::new(x, p)).collect()).collect()).unwrap()
}

pub fn q_matrix(rows: &[&[i64]]) -> DenseMatrix<Rational> {
    DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
}

fn to_rows<S: Scalar>(m: &DenseMatrix<S>) -> Vec<Vec<S>> {
    m.rows().map(|r| r.to_vec()).collect()
}

fn product<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], ctx: &S::Ctx) -> Vec<Vec<S>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(S::zero(ctx), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))).collect())
        .collect()
}

/// Row-reduction inverse with left-sided pivot scaling, so it is also
/// correct over a skew field.
pub fn oracle_inverse<S: Scalar>(m: &DenseMatrix<S>) -> Option<DenseMatrix<S>> {
    let ctx = m.ctx();
    let n = m.dim();
    let mut a = to_rows(m);
    let mut inv: Vec<Vec<S>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { S::one(&ctx) } else { S::zero(&ctx) }).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].try_inv()?;
        for j in 0..n {
            a[col][j] = scale.mul(&a[col][j]);
            inv[col][j] = scale.mul(&inv[col][j]);
        }
        for r in (0..n).filter(|&r| r != col) {
            let f = a[r][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
            }
        }
    }
    Some(DenseMatrix::from_rows(inv).unwrap())
}

/// Product computed with the oracle's own triple loop.
pub fn oracle_mul<S: Scalar>(a: &DenseMatrix<S>, b: &DenseMatrix<S>) -> DenseMatrix<S> {
    DenseMatrix::from_rows(product(&to_rows(a), &to_rows(b), &a.ctx())).unwrap()
}

pub fn oracle_is_identity<S: Scalar>(m: &DenseMatrix<S>) -> bool {
    let n = m.dim();
    (0..n).all(|i| (0..n).all(|j| if i == j { m.get(i, j).is_one() } else { m.get(i, j).is_zero() }))
}

/// Determinant by cofactor expansion (commutative rings, small n).
pub fn oracle_det<S: Scalar>(m: &DenseMatrix<S>) -> S {
    fn rec<S: Scalar>(rows: &[Vec<S>], ctx: &S::Ctx) -> S {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        (0..n).fold(S::zero(ctx), |acc, j| {
            let minor: Vec<Vec<S>> =
                rows[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
            let term = rows[0][j].mul(&rec(&minor, ctx));
            if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) }
        })
    }
    rec(&to_rows(m), &m.ctx())
}

pub fn sub_block<S: Scalar>(m: &DenseMatrix<S>, r: usize, c: usize, size: usize) -> DenseMatrix<S> {
    DenseMatrix::from_fn(size, |i, j| m.get(r + i, c + j).clone())
}
