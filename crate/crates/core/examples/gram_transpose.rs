//! A matrix whose four blocks are all singular still inverts through the
//! transpose Gram matrix, because M^T M has invertible leading blocks.

use recblock::blockmat::io::write_matrix;
use recblock::blockmat::{DenseMatrix, OpCounter};
use recblock::inversion::{invert_gram_transpose, schur_invert, GramMatrix, Transpose};
use recblock::random::{all_blocks_singular, blocks_all_singular, rng_from_seed};
use recblock::rings::Rational;

fn main() {
    let m: DenseMatrix<Rational> = all_blocks_singular(&(), 4, &mut rng_from_seed(7)).unwrap();
    print!("{}", write_matrix(&m));
    println!("all blocks singular: {}", blocks_all_singular(&m));

    let block = m.to_block().unwrap();
    println!("schur: {}", schur_invert(&block, &mut OpCounter::new("schur")).unwrap_err());

    let gram = GramMatrix::of(&block, Transpose, &mut OpCounter::new("gram"));
    println!("M^T M symmetric: {}", gram.is_self_adjoint());

    let mut counter = OpCounter::new("gram");
    let inv = invert_gram_transpose(&block, &mut counter).unwrap();
    print!("{}", write_matrix(&inv.to_dense()));
    println!("{counter}");
    assert!(m.mul(&inv.to_dense()).is_identity());
}
