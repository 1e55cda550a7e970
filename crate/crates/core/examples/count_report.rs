//! Measured operation counts against the recurrences and closed forms.

use recblock::blockmat::MulStrategy;
use recblock::complexity::{recurrence, render_table, verify_counts, Operation};

fn main() {
    for op in Operation::ALL {
        let reports = verify_counts(op, &[2, 4, 8], 1).unwrap();
        println!("{}", render_table(&reports));
    }
    // closed forms need an integral exponent, so Strassen goes through the recurrence
    for n in [2, 4, 8, 16, 32] {
        println!(
            "gram inverse, n = {n}: naive {}, strassen {}",
            recurrence::gram_inv(n, MulStrategy::Naive),
            recurrence::gram_inv(n, MulStrategy::Strassen)
        );
    }
}
