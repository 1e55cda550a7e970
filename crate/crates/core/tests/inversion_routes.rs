mod common;

use common::*;
use proptest::prelude::*;
use recblock::blockmat::{DenseMatrix, OpCounter};
use recblock::inversion::{
    auto_invert, hermitian_invert, invert_gram_gv, invert_gram_star, invert_gram_transpose, is_invertible, schur_invert,
    GramFallback, GramMatrix, InversionError, Transpose,
};
use recblock::random::{all_blocks_singular, random_invertible, random_matrix, rng_from_seed, Sample};
use recblock::rings::{Fp, GaussianRational, Polynomial, Quaternion, Rational, RationalFunction, Scalar};

fn two_sided<S: Sample + GramFallback>(ctx: &S::Ctx, n: usize, seed: u64) {
    let m = random_invertible::<S, _>(ctx, n, &mut rng_from_seed(seed));
    let inv = auto_invert(&m.embed(), &mut OpCounter::new("auto")).unwrap().to_dense().leading(n);
    assert!(oracle_is_identity(&oracle_mul(&m, &inv)), "M M^-1 over {n}x{n}");
    assert!(oracle_is_identity(&oracle_mul(&inv, &m)), "M^-1 M over {n}x{n}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn auto_inverse_is_two_sided(n in 1usize..9, seed in any::<u64>()) {
        two_sided::<Rational>(&(), n, seed);
        two_sided::<Fp>(&gf(2), n, seed);
        two_sided::<Fp>(&gf(13), n, seed);
        two_sided::<GaussianRational>(&(), n, seed);
        two_sided::<Quaternion>(&(), n.min(4), seed);
    }

    #[test]
    fn every_route_gives_the_same_inverse(depth in 0u32..4, seed in any::<u64>()) {
        let n = 1usize << depth;
        let m = random_invertible::<Rational, _>(&(), n, &mut rng_from_seed(seed));
        let b = m.to_block().unwrap();
        let expected = oracle_inverse(&m).unwrap();
        prop_assert_eq!(invert_gram_transpose(&b, &mut OpCounter::new("g")).unwrap().to_dense(), expected.clone());
        // over Q(t) the rational coefficients grow quickly, so keep this one small
        if n <= 4 {
            prop_assert_eq!(invert_gram_gv(&b, &mut OpCounter::new("gv")).unwrap().to_dense(), expected.clone());
        }
        if let Ok(s) = schur_invert(&b, &mut OpCounter::new("s")) {
            prop_assert_eq!(s.to_dense(), expected);
        }
    }

    #[test]
    fn star_route_over_quaternions(depth in 0u32..3, seed in any::<u64>()) {
        let n = 1usize << depth;
        let m = random_invertible::<Quaternion, _>(&(), n, &mut rng_from_seed(seed));
        let inv = invert_gram_star(&m.to_block().unwrap(), &mut OpCounter::new("star")).unwrap().to_dense();
        prop_assert!(oracle_is_identity(&oracle_mul(&inv, &m)));
    }

    #[test]
    fn singular_matrices_are_rejected(depth in 1u32..4, seed in any::<u64>()) {
        // repeat a row
        let n = 1usize << depth;
        let mut m: DenseMatrix<Rational> = random_matrix(&(), n, &mut rng_from_seed(seed));
        for j in 0..n {
            let x = m.get(0, j).clone();
            m.set(n - 1, j, x);
        }
        let b = m.to_block().unwrap();
        prop_assert!(!is_invertible(&b));
        prop_assert_eq!(auto_invert(&b, &mut OpCounter::new("a")), Err(InversionError::SingularMatrix));
        prop_assert!(invert_gram_transpose(&b, &mut OpCounter::new("g")).is_err());
    }

    #[test]
    fn hermitian_count_is_data_independent(depth in 1u32..4, seed in any::<u64>()) {
        let n = 1usize << depth;
        let m = random_invertible::<Rational, _>(&(), n, &mut rng_from_seed(seed)).to_block().unwrap();
        let gram = GramMatrix::of(&m, Transpose, &mut OpCounter::new("n"));
        let mut c = OpCounter::new("h");
        hermitian_invert(&gram, &mut c).unwrap();
        // T(n) = 2 T(n/2) + 4 (n/2)^3, T(1) = 1
        let expected = [1u64, 6, 44, 344][depth as usize];
        prop_assert_eq!(c.tally().mul_div(), expected);
    }
}

#[test]
fn schur_fails_where_the_gram_route_does_not() {
    let mut rng = rng_from_seed(11);
    for n in [4, 8] {
        let m: DenseMatrix<Rational> = all_blocks_singular(&(), n, &mut rng).unwrap();
        let b = m.to_block().unwrap();
        assert!(matches!(schur_invert(&b, &mut OpCounter::new("s")), Err(InversionError::PivotBlockSingular { .. })));
        let inv = invert_gram_transpose(&b, &mut OpCounter::new("g")).unwrap();
        assert_eq!(inv.to_dense(), oracle_inverse(&m).unwrap());
    }
}

#[test]
fn two_by_two_examples() {
    // adjugate: [[1,2],[3,4]]^-1 = [[-2,1],[3/2,-1/2]]
    let m = q_matrix(&[&[1, 2], &[3, 4]]).to_block().unwrap();
    let inv = auto_invert(&m, &mut OpCounter::new("a")).unwrap().to_dense();
    let expected = DenseMatrix::from_rows(vec![vec![q(-2), q(1)], vec![Rational::new(3, 2), Rational::new(-1, 2)]]).unwrap();
    assert_eq!(inv, expected);

    // over GF(2), [[1,1],[1,0]]^-1 = [[0,1],[1,1]]
    let p = gf(2);
    let m = fp_matrix(p, &[&[1, 1], &[1, 0]]).to_block().unwrap();
    assert_eq!(invert_gram_gv(&m, &mut OpCounter::new("gv")).unwrap().to_dense(), fp_matrix(p, &[&[0, 1], &[1, 1]]));
}

#[test]
fn rational_function_entries() {
    // [[t, 1], [1, 0]] over Q(t) has inverse [[0, 1], [1, -t]]
    let t = RationalFunction::from_polynomial(Polynomial::from_coeffs(&(), vec![q(0), q(1)]));
    let c = |x: i64| RationalFunction::constant(q(x));
    let m = DenseMatrix::from_rows(vec![vec![t.clone(), c(1)], vec![c(1), c(0)]]).unwrap();
    let inv = auto_invert(&m.to_block().unwrap(), &mut OpCounter::new("a")).unwrap().to_dense();
    assert_eq!(inv, DenseMatrix::from_rows(vec![vec![c(0), c(1)], vec![c(1), t.neg()]]).unwrap());
}
