//! The text matrix format, read back exactly for every ring.

use recblock::blockmat::io::AnyMatrix;

fn main() {
    let texts = [
        "ring q\nsize 2\n1/2 -3\n0 7/5\n",
        "ring gf:5\nsize 2\n1 4\n2 3\n",
        "ring qi\nsize 2\n1+2*i -i\n3 0\n",
        "ring quat\nsize 2\n1+i-j+k 2\n0 k\n",
        "ring ratfun:q\nsize 2\n(t+1) (1)/(t)\n(0) (t^2-1)/(t+1)\n",
    ];
    for text in texts {
        match AnyMatrix::parse(text) {
            Ok(m) => {
                print!("{}", m.to_text());
                assert_eq!(AnyMatrix::parse(&m.to_text()).unwrap(), m);
            }
            Err(e) => println!("{e}"),
        }
    }
}
