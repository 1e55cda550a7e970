//! When all four blocks are singular and block pivoting has nothing to
//! choose, random unit triangular preconditioners make the leading blocks
//! generic.

use recblock::blockmat::io::write_matrix;
use recblock::blockmat::{BlockMatrix, DenseMatrix, OpCounter};
use recblock::lu::randomized_lu;
use recblock::rings::Rational;

fn main() {
    // every 2x2 block is singular, det = -1
    let rows = [[1, 1, 0, 0], [1, 1, 1, 0], [0, 1, 1, 1], [0, 0, 1, 1]];
    let m4: DenseMatrix<Rational> = DenseMatrix::from_fn(4, |i, j| Rational::from_integer(rows[i][j]));
    let block = m4.to_block().unwrap();

    for seed in [1, 2] {
        let mut counter = OpCounter::new("randomized");
        let r = randomized_lu(&block, seed, 8, &mut counter).unwrap();
        println!("seed {seed}: attempts {}, {counter}", r.attempts);
        print!("R_up\n{}R_low\n{}", write_matrix(&r.left.body().to_dense()), write_matrix(&r.right.body().to_dense()));

        let mut c = OpCounter::new("check");
        let product: BlockMatrix<Rational> =
            r.left_factor(&mut c).unwrap().mul(&r.right_factor(&mut c).unwrap(), Default::default(), &mut c).unwrap();
        assert_eq!(product.to_dense(), m4);
    }
}
