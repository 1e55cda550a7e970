//! Seeded generators for test and CLI inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blockmat::DenseMatrix;
use crate::inversion::{is_invertible, GramFallback};
use crate::rings::{Field, Fp, GaussianRational, Polynomial, Quaternion, Rational, RationalFunction, Scalar};

/// The generator used everywhere randomness is needed.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Scalars that can be drawn at random.
pub trait Sample: Scalar {
    /// A small "typical" entry for random matrices.
    fn sample<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R) -> Self;

    /// A uniform draw from a fixed set of at least `size` elements when the
    /// ring has that many, otherwise from the whole (finite) ring.
    fn sample_from_set<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R, size: u64) -> Self;
}

impl Sample for Rational {
    fn sample<R: Rng + ?Sized>(_: &(), rng: &mut R) -> Self {
        // mostly integers, sometimes halves and thirds
        let num = rng.gen_range(-9..=9);
        let den = [1, 1, 1, 2, 3][rng.gen_range(0..5)];
        Rational::new(num, den)
    }

    fn sample_from_set<R: Rng + ?Sized>(_: &(), rng: &mut R, size: u64) -> Self {
        Rational::from_integer(rng.gen_range(1..=size.max(1) as i64))
    }
}

impl Sample for Fp {
    fn sample<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R) -> Self {
        let p = ctx.get();
        Fp::new(rng.gen_range(0..p) as i64, *ctx)
    }

    fn sample_from_set<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R, size: u64) -> Self {
        let p = ctx.get();
        Fp::new(rng.gen_range(0..size.clamp(1, p)) as i64, *ctx)
    }
}

impl Sample for GaussianRational {
    fn sample<R: Rng + ?Sized>(_: &(), rng: &mut R) -> Self {
        GaussianRational::from_ints(rng.gen_range(-4..=4), rng.gen_range(-4..=4))
    }

    fn sample_from_set<R: Rng + ?Sized>(_: &(), rng: &mut R, size: u64) -> Self {
        GaussianRational::from_ints(rng.gen_range(1..=size.max(1) as i64), 0)
    }
}

impl Sample for Quaternion {
    fn sample<R: Rng + ?Sized>(_: &(), rng: &mut R) -> Self {
        let mut c = || rng.gen_range(-2..=2);
        Quaternion::from_ints(c(), c(), c(), c())
    }

    fn sample_from_set<R: Rng + ?Sized>(_: &(), rng: &mut R, size: u64) -> Self {
        Quaternion::from_ints(rng.gen_range(1..=size.max(1) as i64), 0, 0, 0)
    }
}

impl<F: Field + Sample> Sample for RationalFunction<F> {
    /// A polynomial of degree at most one.
    fn sample<R: Rng + ?Sized>(ctx: &F::Ctx, rng: &mut R) -> Self {
        let coeffs = vec![F::sample(ctx, rng), F::sample(ctx, rng)];
        RationalFunction::from_polynomial(Polynomial::from_coeffs(ctx, coeffs))
    }

    fn sample_from_set<R: Rng + ?Sized>(ctx: &F::Ctx, rng: &mut R, size: u64) -> Self {
        RationalFunction::constant(F::sample_from_set(ctx, rng, size))
    }
}

pub fn random_matrix<S: Sample, R: Rng + ?Sized>(ctx: &S::Ctx, n: usize, rng: &mut R) -> DenseMatrix<S> {
    let entries = (0..n * n).map(|_| S::sample(ctx, rng)).collect();
    DenseMatrix::new(n, entries).expect("n > 0")
}

/// Draws random matrices until one is invertible. Non-power-of-two sizes are
/// tested through their identity-padded embedding.
pub fn random_invertible<S: Sample + GramFallback, R: Rng + ?Sized>(
    ctx: &S::Ctx,
    n: usize,
    rng: &mut R,
) -> DenseMatrix<S> {
    loop {
        let m = random_matrix(ctx, n, rng);
        if is_invertible(&m.embed()) {
            return m;
        }
    }
}

/// Unit lower (or upper) triangular with off-diagonal entries in {-1, 0, 1}.
pub fn random_unit_triangular<R: Rng + ?Sized>(n: usize, lower: bool, rng: &mut R) -> DenseMatrix<Rational> {
    let entries = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            match (i == j, (i > j) == lower) {
                (true, _) => Rational::from_integer(1),
                (false, true) => Rational::from_integer(rng.gen_range(-1..=1)),
                (false, false) => Rational::from_integer(0),
            }
        })
        .collect();
    DenseMatrix::new(n, entries).expect("n > 0")
}

/// `L U` with `L` unit lower, `U` unit upper and off-diagonal entries in
/// {-1, 0, 1}: invertible, with every leading minor equal to one.
pub fn random_unimodular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseMatrix<Rational> {
    let l = random_unit_triangular(n, true, rng);
    l.mul(&random_unit_triangular(n, false, rng))
}

/// An invertible matrix of size `n` (a power of two, at least 4) whose four
/// half-size blocks are all singular, or `None` for other sizes.
///
/// Starts from the identity with rows `h-1` and `h` exchanged, where every
/// block has a zero row or column, and multiplies by random invertible
/// block-diagonal matrices on both sides, which keeps every block singular.
pub fn all_blocks_singular<S, R>(ctx: &S::Ctx, n: usize, rng: &mut R) -> Option<DenseMatrix<S>>
where
    S: Sample + GramFallback + Field,
    R: Rng + ?Sized,
{
    if n < 4 || !n.is_power_of_two() {
        return None;
    }
    let h = n / 2;
    let swapped = |i: usize| match i {
        i if i == h - 1 => h,
        i if i == h => h - 1,
        i => i,
    };
    let template = DenseMatrix::from_fn(n, |i, j| if swapped(i) == j { S::one(ctx) } else { S::zero(ctx) });
    loop {
        let diag = |rng: &mut R| {
            let (g1, g2) = (random_invertible::<S, R>(ctx, h, rng), random_invertible::<S, R>(ctx, h, rng));
            DenseMatrix::from_fn(n, |i, j| match (i < h, j < h) {
                (true, true) => g1.get(i, j).clone(),
                (false, false) => g2.get(i - h, j - h).clone(),
                _ => S::zero(ctx),
            })
        };
        let left = diag(rng);
        let right = diag(rng);
        let m = left.mul(&template).mul(&right);
        if blocks_all_singular(&m) && !m.determinant().is_zero() {
            return Some(m);
        }
    }
}

/// Whether every half-size block of `m` has zero determinant.
pub fn blocks_all_singular<S: Field>(m: &DenseMatrix<S>) -> bool {
    let h = m.dim() / 2;
    [(0, 0), (0, h), (h, 0), (h, h)]
        .iter()
        .all(|&(r, c)| DenseMatrix::from_fn(h, |i, j| m.get(r + i, c + j).clone()).determinant().is_zero())
}
