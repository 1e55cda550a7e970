//! Inversion over the quaternions with the conjugate-transpose Gram matrix.
//! Products keep their order, so both one-sided checks pass.

use recblock::blockmat::io::write_matrix;
use recblock::blockmat::{DenseMatrix, OpCounter};
use recblock::inversion::invert_gram_star;
use recblock::rings::{GaussianRational, Quaternion};

fn main() {
    let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
    let one = Quaternion::from_ints(1, 0, 0, 0);
    let m = DenseMatrix::from_rows(vec![vec![i, j], vec![one, k]]).unwrap();

    let mut counter = OpCounter::new("star");
    let inv = invert_gram_star(&m.to_block().unwrap(), &mut counter).unwrap().to_dense();
    print!("{}", write_matrix(&inv));
    println!("M M^-1 = I: {}", m.mul(&inv).is_identity());
    println!("M^-1 M = I: {}", inv.mul(&m).is_identity());
    println!("{counter}");

    let g = DenseMatrix::from_rows(vec![
        vec![GaussianRational::i(), GaussianRational::from_ints(1, 1)],
        vec![GaussianRational::from_ints(0, 0), GaussianRational::from_ints(2, -1)],
    ])
    .unwrap();
    let inv = invert_gram_star(&g.to_block().unwrap(), &mut OpCounter::new("star")).unwrap();
    print!("{}", write_matrix(&inv.to_dense()));
}
