//! Over GF(p) the transpose Gram matrix can be singular (x^2 + y^2 = 0 has
//! nonzero solutions). Lifting to GF(p)(t) and using the twisted transpose
//! fixes that; the result comes back with constant entries.

use recblock::blockmat::io::write_matrix;
use recblock::blockmat::{DenseMatrix, OpCounter};
use recblock::inversion::{gv_pre_projection, invert_gram_gv, GramMatrix, Transpose};
use recblock::rings::{Fp, PrimeModulus};

fn main() {
    let p = PrimeModulus::new(2).unwrap();
    let m = DenseMatrix::from_rows(vec![vec![Fp::new(1, p), Fp::new(1, p)], vec![Fp::new(1, p), Fp::new(0, p)]]).unwrap();
    let block = m.to_block().unwrap();

    let plain = GramMatrix::of(&block, Transpose, &mut OpCounter::new("gram"));
    print!("M^T M over GF(2):\n{}", write_matrix(&plain.matrix().to_dense()));

    let mut counter = OpCounter::new("gv");
    let pre = gv_pre_projection(&block, &mut counter).unwrap();
    print!("before projection:\n{}", write_matrix(&pre.to_dense()));
    println!("{counter}");

    let inv = invert_gram_gv(&block, &mut OpCounter::new("gv")).unwrap();
    print!("{}", write_matrix(&inv.to_dense()));
    assert!(m.mul(&inv.to_dense()).is_identity());
}
