//! Schur-complement inversion over the rationals, and where it breaks.

use recblock::blockmat::io::write_matrix;
use recblock::blockmat::{DenseMatrix, OpCounter};
use recblock::inversion::{auto_invert, schur_invert};
use recblock::rings::Rational;

fn q(rows: &[&[i64]]) -> DenseMatrix<Rational> {
    DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect())
        .expect("square")
}

fn main() {
    let m = q(&[&[2, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 3, 1], &[1, 0, 1, 1]]);
    let mut counter = OpCounter::new("schur");
    let inv = schur_invert(&m.to_block().unwrap(), &mut counter).unwrap();
    print!("{}", write_matrix(&inv.to_dense()));
    println!("{counter}");
    assert!(m.mul(&inv.to_dense()).is_identity());

    // the leading block is zero here
    let swap = q(&[&[0, 1], &[1, 0]]).to_block().unwrap();
    match schur_invert(&swap, &mut OpCounter::new("schur")) {
        Err(e) => println!("schur: {e}"),
        Ok(_) => unreachable!(),
    }
    let inv = auto_invert(&swap, &mut OpCounter::new("auto")).unwrap();
    print!("auto:\n{}", write_matrix(&inv.to_dense()));
}
