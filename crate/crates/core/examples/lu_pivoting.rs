//! Recursive block LU with block pivoting, and the single-level LDU.

use recblock::blockmat::io::write_matrix;
use recblock::blockmat::{DenseMatrix, OpCounter};
use recblock::lu::{ldu, lu_decompose};
use recblock::rings::{Fp, PrimeModulus};

fn main() {
    let p = PrimeModulus::new(7).unwrap();
    let f = |rows: [[i64; 4]; 4]| {
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Fp::new(x, p)).collect()).collect()).unwrap()
    };
    // leading 2x2 block is singular, the bottom-left one is not
    let m = f([[1, 2, 0, 1], [2, 4, 1, 0], [3, 1, 5, 2], [0, 6, 2, 1]]);

    let mut counter = OpCounter::new("lu");
    let r = lu_decompose(&m.to_block().unwrap(), &mut counter).unwrap();
    print!("L\n{}U\n{}", write_matrix(&r.l.body().to_dense()), write_matrix(&r.u.body().to_dense()));
    println!("row order {:?}, column order {:?}", r.p.to_vector(), r.q.to_vector());
    println!("{counter}");
    let back = r.reconstruct(&mut OpCounter::new("check")).unwrap();
    assert_eq!(back.to_dense(), m);

    let g = f([[2, 1, 1, 0], [1, 3, 0, 1], [4, 0, 1, 1], [0, 1, 2, 5]]);
    let d = ldu(&g.to_block().unwrap(), &mut OpCounter::new("ldu")).unwrap();
    print!("block diagonal\n{}", write_matrix(&d.diagonal.to_dense()));
}
