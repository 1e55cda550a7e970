mod common;

use common::*;
use proptest::prelude::*;
use recblock::blockmat::io::{parse_matrix, write_matrix, AnyMatrix};
use recblock::blockmat::{BlockMatrix, DenseMatrix, MulStrategy, OpCounter};
use recblock::random::{random_matrix, rng_from_seed};
use recblock::rings::{Fp, GaussianRational, Quaternion, Rational};

fn q_dense(n: usize, seed: u64) -> DenseMatrix<Rational> {
    random_matrix(&(), n, &mut rng_from_seed(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn products_agree_with_the_oracle(depth in 0u32..4, seed in any::<u64>()) {
        let n = 1usize << depth;
        let (a, b) = (q_dense(n, seed), q_dense(n, seed ^ 1));
        let expected = oracle_mul(&a, &b);
        for strategy in [MulStrategy::Naive, MulStrategy::Strassen] {
            let p = a.to_block().unwrap().mul(&b.to_block().unwrap(), strategy, &mut OpCounter::new("mul")).unwrap();
            prop_assert_eq!(p.to_dense(), expected.clone());
        }
    }

    #[test]
    fn quaternion_products_keep_order(depth in 0u32..3, seed in any::<u64>()) {
        let n = 1usize << depth;
        let mut rng = rng_from_seed(seed);
        let a: DenseMatrix<Quaternion> = random_matrix(&(), n, &mut rng);
        let b: DenseMatrix<Quaternion> = random_matrix(&(), n, &mut rng);
        let p = a.to_block().unwrap().mul(&b.to_block().unwrap(), MulStrategy::Naive, &mut OpCounter::new("mul")).unwrap();
        prop_assert_eq!(p.to_dense(), oracle_mul(&a, &b));
    }

    #[test]
    fn naive_count_is_n_cubed(depth in 0u32..5, seed in any::<u64>()) {
        let n = 1usize << depth;
        let a = q_dense(n, seed).to_block().unwrap();
        let mut c = OpCounter::new("mul");
        a.mul(&a, MulStrategy::Naive, &mut c).unwrap();
        prop_assert_eq!(c.mul_count(), (n * n * n) as u64);
    }

    #[test]
    fn transpose_and_adjoint_reverse_products(depth in 0u32..3, seed in any::<u64>()) {
        let n = 1usize << depth;
        let mut rng = rng_from_seed(seed);
        let a: DenseMatrix<GaussianRational> = random_matrix(&(), n, &mut rng);
        let b: DenseMatrix<GaussianRational> = random_matrix(&(), n, &mut rng);
        let (ba, bb) = (a.to_block().unwrap(), b.to_block().unwrap());
        let c = &mut OpCounter::new("t");
        let ab = ba.mul(&bb, MulStrategy::Naive, c).unwrap();
        prop_assert_eq!(ab.adjoint(), bb.adjoint().mul(&ba.adjoint(), MulStrategy::Naive, c).unwrap());
        prop_assert_eq!(ab.transpose().to_dense(), oracle_mul(&b.transpose(), &a.transpose()));
    }

    #[test]
    fn embedding_keeps_the_matrix_in_the_corner(n in 1usize..10, seed in any::<u64>()) {
        let m = q_dense(n, seed);
        let e = m.embed();
        prop_assert!(e.dim().is_power_of_two() && e.dim() >= n);
        prop_assert_eq!(e.to_dense().leading(n), m);
    }

    #[test]
    fn text_format_round_trips(n in 1usize..6, seed in any::<u64>()) {
        let m = q_dense(n, seed);
        let text = write_matrix(&m);
        prop_assert_eq!(parse_matrix::<Rational>(&text).unwrap(), m);
        let mut rng = rng_from_seed(seed);
        let f: DenseMatrix<Fp> = random_matrix(&gf(11), n, &mut rng);
        let any = AnyMatrix::parse(&write_matrix(&f)).unwrap();
        prop_assert_eq!(any.to_text(), write_matrix(&f));
    }
}

#[test]
fn non_power_of_two_is_rejected_without_embedding() {
    assert!(q_dense(3, 1).to_block().is_err());
}

#[test]
fn quadrants_partition_the_matrix() {
    let m = q_matrix(&[&[1, 2, 3, 4], &[5, 6, 7, 8], &[9, 10, 11, 12], &[13, 14, 15, 16]]);
    let b = m.to_block().unwrap();
    let (a, _, c, d) = b.quadrants().unwrap();
    assert_eq!(a.to_dense(), q_matrix(&[&[1, 2], &[5, 6]]));
    assert_eq!(c.to_dense(), q_matrix(&[&[9, 10], &[13, 14]]));
    assert_eq!(d.to_dense(), q_matrix(&[&[11, 12], &[15, 16]]));
    assert!(BlockMatrix::<Rational>::identity(2, &()).is_identity());
}

#[test]
fn malformed_files_are_reported_with_a_line() {
    let err = parse_matrix::<Rational>("ring q\nsize 2\n1 2\n3 x\n").unwrap_err();
    assert!(err.to_string().contains("line 4"), "{err}");
    assert!(AnyMatrix::parse("ring zz\nsize 1\n1\n").is_err());
}
