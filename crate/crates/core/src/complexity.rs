//! Cost formulas and the harness that checks measured operation counts
//! against them.
//!
//! All closed forms are evaluated in exact rational arithmetic. Recurrences
//! are evaluated by integer recursion and describe what the implementation
//! actually does; where the two are known to disagree the report says so.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};
use thiserror::Error;

use crate::blockmat::{BlockMatrix, MulStrategy, OpCounter, Tally};
use crate::inversion::invert_gram_transpose;
use crate::lu::{lu_decompose, tri_invert, tri_mul, Orientation, Side, TriangularMatrix};
use crate::random::{random_unimodular, random_unit_triangular, rng_from_seed};
use crate::rings::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexityError {
    #[error("{0} is not a power of two")]
    NonPowerOfTwo(u64),
    #[error("size {0} exceeds the limit of 64")]
    TooLarge(u64),
    #[error("closed forms need an integral exponent; use the recurrence for Strassen")]
    SymbolicExponent,
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
}

/// `T_mul(n) = alpha n^omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostModel {
    pub strategy: MulStrategy,
    pub alpha: BigRational,
    /// `None` for Strassen, whose exponent `log2 7` is irrational.
    pub omega: Option<BigRational>,
}

impl CostModel {
    pub fn naive() -> Self {
        CostModel { strategy: MulStrategy::Naive, alpha: rat(1), omega: Some(rat(3)) }
    }

    pub fn strassen() -> Self {
        CostModel { strategy: MulStrategy::Strassen, alpha: rat(1), omega: None }
    }

    fn exponent(&self) -> Result<i32, ComplexityError> {
        match &self.omega {
            Some(w) if w.is_integer() => w.to_integer().to_i32().ok_or(ComplexityError::SymbolicExponent),
            _ => Err(ComplexityError::SymbolicExponent),
        }
    }
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel::naive()
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn pow(base: u64, e: i32) -> BigRational {
    Pow::pow(rat(base as i64), e)
}

fn check_power_of_two(n: u64) -> Result<(), ComplexityError> {
    if n == 0 || !n.is_power_of_two() {
        return Err(ComplexityError::NonPowerOfTwo(n));
    }
    Ok(())
}

/// `alpha n^omega`.
pub fn closed_form_t_mul(n: u64, model: &CostModel) -> Result<BigRational, ComplexityError> {
    check_power_of_two(n)?;
    Ok(&model.alpha * pow(n, model.exponent()?))
}

/// `2 a n^w - (2a - 1) n + 8 a (2^w + 2)(n^w - n) / (4^w - 4)`, the count for
/// `(M^T M)^-1 M^T`.
pub fn closed_form_t_inv(n: u64, model: &CostModel) -> Result<BigRational, ComplexityError> {
    check_power_of_two(n)?;
    let w = model.exponent()?;
    let a = &model.alpha;
    let nw = pow(n, w);
    let nn = rat(n as i64);
    let two_w = pow(2, w);
    let four_w = pow(4, w);
    Ok(rat(2) * a * &nw - (rat(2) * a - rat(1)) * &nn
        + rat(8) * a * (two_w + rat(2)) * (nw - nn) / (four_w - rat(4)))
}

/// `2 a / (2^w - 4) (n^w - n^2) + n^2`.
pub fn closed_form_t_trimul(n: u64, model: &CostModel) -> Result<BigRational, ComplexityError> {
    check_power_of_two(n)?;
    let w = model.exponent()?;
    let n2 = pow(n, 2);
    Ok(rat(2) * &model.alpha / (pow(2, w) - rat(4)) * (pow(n, w) - &n2) + n2)
}

/// `a (n^w - n) 2^w / ((2^w - 2)(2^w - 4)) + (n^2 - n)(3/2 - 2a / (2^w - 4))
/// + n log2(n) / 2 + n`.
pub fn closed_form_t_lu(n: u64, model: &CostModel) -> Result<BigRational, ComplexityError> {
    check_power_of_two(n)?;
    let w = model.exponent()?;
    let a = &model.alpha;
    let two_w = pow(2, w);
    let nn = rat(n as i64);
    let log = rat(n.trailing_zeros() as i64);
    let first = a * (pow(n, w) - &nn) * &two_w / ((&two_w - rat(2)) * (&two_w - rat(4)));
    let second = (pow(n, 2) - &nn) * (BigRational::new(3.into(), 2.into()) - rat(2) * a / (&two_w - rat(4)));
    Ok(first + second + &nn * log / rat(2) + nn)
}

/// `n (n + 1) / 2`.
pub fn closed_form_t_triinv(n: u64) -> BigRational {
    let n = rat(n as i64);
    &n * (&n + rat(1)) / rat(2)
}

/// Integer recurrences for the kernels as implemented. Every function
/// expects a power-of-two `n`.
pub mod recurrence {
    use crate::blockmat::MulStrategy;

    /// General product: `8 T(n/2)` (or `7 T(n/2)` for Strassen), `T(1) = 1`.
    pub fn mul(n: u64, strategy: MulStrategy) -> u64 {
        if n == 1 {
            return 1;
        }
        let k = match strategy {
            MulStrategy::Naive => 8,
            MulStrategy::Strassen => 7,
        };
        k * mul(n / 2, strategy)
    }

    /// `T(n) = 4 T(n/2) + 2 T_mul(n/2)`, `T(1) = 1`.
    pub fn tri_mul(n: u64, s: MulStrategy) -> u64 {
        if n == 1 {
            return 1;
        }
        4 * tri_mul(n / 2, s) + 2 * mul(n / 2, s)
    }

    /// `T(n) = 2 T(n/2) + 2 T_trimul(n/2)`, `T(1) = 1` (one division).
    pub fn tri_inv(n: u64, s: MulStrategy) -> u64 {
        if n == 1 {
            return 1;
        }
        2 * tri_inv(n / 2, s) + 2 * tri_mul(n / 2, s)
    }

    /// Self-adjoint inversion alone: `H(n) = 2 H(n/2) + 4 T_mul(n/2)`, `H(1) = 1`.
    pub fn hermitian(n: u64, s: MulStrategy) -> u64 {
        if n == 1 {
            return 1;
        }
        2 * hermitian(n / 2, s) + 4 * mul(n / 2, s)
    }

    /// Gram inversion: `T(n) = 2 T_mul(n) + 2 T(n/2) + 4 T_mul(n/2)`, `T(1) = 1`.
    pub fn gram_inv(n: u64, s: MulStrategy) -> u64 {
        if n == 1 {
            return 1;
        }
        2 * mul(n, s) + 2 * gram_inv(n / 2, s) + 4 * mul(n / 2, s)
    }

    /// `T(n) = 2 T(n/2) + 2 T_inv(n/2) + T_mul(n/2) + 2 T_trimul(n/2)` with
    /// the given triangular-inverse cost and base value.
    pub fn lu_with(n: u64, s: MulStrategy, tri_inv: &dyn Fn(u64) -> u64, base: u64) -> u64 {
        if n == 1 {
            return base;
        }
        let h = n / 2;
        2 * lu_with(h, s, tri_inv, base) + 2 * tri_inv(h) + mul(h, s) + 2 * tri_mul(h, s)
    }

    /// The LU recurrence with the implemented kernels; a 1x1 leaf is free.
    pub fn lu(n: u64, s: MulStrategy) -> u64 {
        lu_with(n, s, &|m| tri_inv(m, s), 0)
    }

    /// The LU recurrence with `n (n + 1) / 2` triangular inverses and
    /// `T(1) = 1`; this is what the closed form for LU solves.
    pub fn lu_closed_form_kernels(n: u64, s: MulStrategy) -> u64 {
        lu_with(n, s, &|m| m * (m + 1) / 2, 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Mul,
    TriMul,
    TriInv,
    GramInv,
    Lu,
}

impl Operation {
    pub const ALL: [Operation; 5] = [Operation::Mul, Operation::TriMul, Operation::TriInv, Operation::GramInv, Operation::Lu];

    pub fn name(self) -> &'static str {
        match self {
            Operation::Mul => "mul",
            Operation::TriMul => "tri_mul",
            Operation::TriInv => "tri_inv",
            Operation::GramInv => "gram_inv",
            Operation::Lu => "lu",
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operation {
    type Err = ComplexityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Operation::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| ComplexityError::UnknownOperation(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub operation: Operation,
    pub n: u64,
    pub measured: Tally,
    pub recurrence: u64,
    pub closed_form: BigRational,
    /// Extra published figures printed next to the closed form.
    pub notes: Vec<(String, BigRational)>,
    pub annotation: Option<String>,
}

impl CountReport {
    pub fn measured_total(&self) -> u64 {
        self.measured.mul_div()
    }

    pub fn matches_recurrence(&self) -> bool {
        self.measured_total() == self.recurrence
    }

    pub fn matches_closed_form(&self) -> bool {
        self.closed_form == rat(self.measured_total() as i64)
    }

    /// A closed form with a non-unit denominator at integral input.
    pub fn closed_form_integral(&self) -> bool {
        self.closed_form.is_integer()
    }

    /// Measured agrees with the recurrence, and either with the closed form
    /// or the disagreement is a documented one.
    pub fn ok(&self) -> bool {
        self.matches_recurrence() && self.closed_form_integral() && (self.matches_closed_form() || self.annotation.is_some())
    }

    /// `op n measured recurrence closed_form match`, with a trailing
    /// `# ...` annotation on documented mismatches.
    pub fn line(&self) -> String {
        let verdict = match (self.matches_recurrence(), self.matches_closed_form()) {
            (true, true) => "match",
            (true, false) => "mismatch",
            (false, _) => "FAIL",
        };
        let mut s = format!(
            "{} {} {} {} {} {}",
            self.operation,
            self.n,
            self.measured_total(),
            self.recurrence,
            self.closed_form,
            verdict
        );
        for (k, v) in &self.notes {
            let _ = write!(s, " {k}={v}");
        }
        if let Some(a) = &self.annotation {
            let _ = write!(s, " # {a}");
        }
        s
    }
}

const TRI_INV_NOTE: &str =
    "closed form n(n+1)/2 does not describe the block recursion, which costs 2T(n/2)+2T_trimul(n/2) with T(1)=1";
const LU_NOTE: &str =
    "closed form solves the recurrence with n(n+1)/2 triangular inverses and T(1)=1; the implementation's leaf is free";

/// Runs `op` at each size on seeded random rational inputs with naive
/// products and compares the tallies with the recurrence and closed form.
pub fn verify_counts(op: Operation, sizes: &[u64], seed: u64) -> Result<Vec<CountReport>, ComplexityError> {
    let model = CostModel::naive();
    let s = MulStrategy::Naive;
    sizes
        .iter()
        .map(|&n| {
            check_power_of_two(n)?;
            if n > 64 {
                return Err(ComplexityError::TooLarge(n));
            }
            let measured = measure(op, n, seed);
            let mut notes = Vec::new();
            let mut annotation = None;
            let (recurrence, closed_form) = match op {
                Operation::Mul => (recurrence::mul(n, s), closed_form_t_mul(n, &model)?),
                Operation::TriMul => (recurrence::tri_mul(n, s), closed_form_t_trimul(n, &model)?),
                Operation::TriInv => {
                    annotation = Some(TRI_INV_NOTE.to_string());
                    (recurrence::tri_inv(n, s), closed_form_t_triinv(n))
                }
                Operation::GramInv => (recurrence::gram_inv(n, s), closed_form_t_inv(n, &model)?),
                Operation::Lu => {
                    notes.push(("tri_inv_half_square".to_string(), closed_form_t_triinv(n)));
                    notes.push(("recurrence_half_square".to_string(), rat(recurrence::lu_closed_form_kernels(n, s) as i64)));
                    annotation = Some(LU_NOTE.to_string());
                    (recurrence::lu(n, s), closed_form_t_lu(n, &model)?)
                }
            };
            let mut report = CountReport { operation: op, n, measured, recurrence, closed_form, notes, annotation };
            if report.matches_closed_form() {
                report.annotation = None;
            }
            Ok(report)
        })
        .collect()
}

fn measure(op: Operation, n: u64, seed: u64) -> Tally {
    let n = n as usize;
    let mut rng = rng_from_seed(seed ^ (n as u64).rotate_left(32));
    let mut c = OpCounter::new(op.name());
    let block = |d: crate::blockmat::DenseMatrix<Rational>| d.to_block().expect("power of two");
    match op {
        Operation::Mul => {
            let (a, b) = (block(random_unimodular(n, &mut rng)), block(random_unimodular(n, &mut rng)));
            a.mul(&b, MulStrategy::Naive, &mut c).expect("same depth");
        }
        Operation::TriMul => {
            let t = lower(block(random_unit_triangular(n, true, &mut rng)));
            let g = block(random_unimodular(n, &mut rng));
            tri_mul(&t, &g, Side::Left, &mut c).expect("same depth");
        }
        Operation::TriInv => {
            let t = lower(block(random_unit_triangular(n, true, &mut rng)));
            tri_invert(&t, &mut c).expect("unit diagonal");
        }
        Operation::GramInv => {
            let m = block(random_unimodular(n, &mut rng));
            invert_gram_transpose(&m, &mut c).expect("invertible");
        }
        Operation::Lu => {
            let m = block(random_unimodular(n, &mut rng));
            let f = lu_decompose(&m, &mut c).expect("invertible");
            debug_assert!(!f.used_randomization());
        }
    }
    c.tally()
}

fn lower(m: BlockMatrix<Rational>) -> TriangularMatrix<Rational> {
    TriangularMatrix::new(m, Orientation::Lower, true).expect("unit lower")
}

/// Aligned plain-text table.
pub fn render_table(reports: &[CountReport]) -> String {
    let header = ["op", "n", "mul", "div", "add", "scaling", "measured", "recurrence", "closed_form", "match"];
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.operation.to_string(),
                r.n.to_string(),
                r.measured.mul.to_string(),
                r.measured.div.to_string(),
                r.measured.add.to_string(),
                r.measured.scaling.to_string(),
                r.measured_total().to_string(),
                r.recurrence.to_string(),
                r.closed_form.to_string(),
                if r.matches_closed_form() && r.matches_recurrence() { "yes" } else { "no" }.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> =
        (0..header.len()).map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0)).collect();
    let mut out = String::new();
    let mut push_row = |cells: &[&str]| {
        let line: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    push_row(&header);
    for r in &rows {
        push_row(&r.iter().map(String::as_str).collect::<Vec<_>>());
    }
    let mut notes: Vec<String> = Vec::new();
    for r in reports {
        for (k, v) in &r.notes {
            notes.push(format!("{} n={}: {k} = {v}", r.operation, r.n));
        }
        if let Some(a) = &r.annotation {
            let note = format!("{}: {a}", r.operation);
            if !notes.contains(&note) {
                notes.push(note);
            }
        }
    }
    for note in notes {
        out.push_str("note: ");
        out.push_str(&note);
        out.push('\n');
    }
    out
}

pub fn render_lines(reports: &[CountReport]) -> String {
    reports.iter().map(|r| r.line() + "\n").collect()
}
