//! Text matrix format.
//!
//! ```text
//! ring gf:7
//! size 2
//! 1 2
//! 3 4
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Scalar tokens use
//! the syntax of the ring's `parse_token`; writing is canonical, so a parsed
//! canonical file re-serializes byte-identically.

use std::fmt;

use thiserror::Error;

use super::DenseMatrix;
use crate::rings::{
    Fp, GaussianRational, ParseScalarError, PrimeModulus, Quaternion, Rational, RationalFunction, Scalar,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Scalar { line: usize, source: ParseScalarError },
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
    #[error("ring `{found}` does not match expected `{expected}`")]
    RingMismatch { expected: String, found: String },
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn header(text: &str) -> Result<(String, usize), FormatError> {
    let mut lines = content_lines(text);
    let (l1, ring) = lines.next().ok_or(FormatError::Syntax { line: 1, message: "missing ring line".into() })?;
    let tag = ring
        .strip_prefix("ring ")
        .map(str::trim)
        .ok_or(FormatError::Syntax { line: l1, message: "expected `ring <tag>`".into() })?;
    let (l2, size) = lines.next().ok_or(FormatError::Syntax { line: l1 + 1, message: "missing size line".into() })?;
    let n = size
        .strip_prefix("size ")
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .ok_or(FormatError::Syntax { line: l2, message: "expected `size <n>` with n >= 1".into() })?;
    Ok((tag.to_string(), n))
}

/// Parses a matrix over `S`, rejecting files whose ring tag `S` does not
/// recognize.
pub fn parse_matrix<S: Scalar>(text: &str) -> Result<DenseMatrix<S>, FormatError> {
    let (tag, n) = header(text)?;
    let ctx = S::parse_ring_tag(&tag).ok_or_else(|| FormatError::UnknownRing(tag.clone()))?;
    let mut entries = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (line, row) in content_lines(text).skip(2) {
        let tokens: Vec<&str> = row.split_whitespace().collect();
        if tokens.len() != n {
            return Err(FormatError::Syntax { line, message: format!("expected {n} entries, found {}", tokens.len()) });
        }
        for tok in tokens {
            entries.push(S::parse_token(&ctx, tok).map_err(|source| FormatError::Scalar { line, source })?);
        }
        rows += 1;
    }
    if rows != n {
        return Err(FormatError::Syntax { line: 0, message: format!("expected {n} rows, found {rows}") });
    }
    Ok(DenseMatrix::new(n, entries).expect("shape checked"))
}

pub fn write_matrix<S: Scalar>(m: &DenseMatrix<S>) -> String {
    let mut out = format!("ring {}\nsize {}\n", S::ring_tag(&m.ctx()), m.dim());
    for row in m.rows() {
        let tokens: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    out
}

/// The ring named by a file header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingSpec {
    Rational,
    PrimeField(PrimeModulus),
    Gaussian,
    Quaternion,
    RatFunRational,
    RatFunPrime(PrimeModulus),
}

impl RingSpec {
    pub fn parse(tag: &str) -> Result<Self, FormatError> {
        let unknown = || FormatError::UnknownRing(tag.to_string());
        Ok(match tag {
            "q" => RingSpec::Rational,
            "qi" => RingSpec::Gaussian,
            "quat" => RingSpec::Quaternion,
            "ratfun:q" => RingSpec::RatFunRational,
            _ => {
                if let Some(p) = Fp::parse_ring_tag(tag) {
                    RingSpec::PrimeField(p)
                } else if let Some(p) = tag.strip_prefix("ratfun:").and_then(Fp::parse_ring_tag) {
                    RingSpec::RatFunPrime(p)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rational => f.write_str("q"),
            RingSpec::PrimeField(p) => write!(f, "gf:{p}"),
            RingSpec::Gaussian => f.write_str("qi"),
            RingSpec::Quaternion => f.write_str("quat"),
            RingSpec::RatFunRational => f.write_str("ratfun:q"),
            RingSpec::RatFunPrime(p) => write!(f, "ratfun:gf:{p}"),
        }
    }
}

/// A parsed matrix over whichever ring its header names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMatrix {
    Rational(DenseMatrix<Rational>),
    PrimeField(DenseMatrix<Fp>),
    Gaussian(DenseMatrix<GaussianRational>),
    Quaternion(DenseMatrix<Quaternion>),
    RatFunRational(DenseMatrix<RationalFunction<Rational>>),
    RatFunPrime(DenseMatrix<RationalFunction<Fp>>),
}

impl AnyMatrix {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let (tag, _) = header(text)?;
        Ok(match RingSpec::parse(&tag)? {
            RingSpec::Rational => AnyMatrix::Rational(parse_matrix(text)?),
            RingSpec::PrimeField(_) => AnyMatrix::PrimeField(parse_matrix(text)?),
            RingSpec::Gaussian => AnyMatrix::Gaussian(parse_matrix(text)?),
            RingSpec::Quaternion => AnyMatrix::Quaternion(parse_matrix(text)?),
            RingSpec::RatFunRational => AnyMatrix::RatFunRational(parse_matrix(text)?),
            RingSpec::RatFunPrime(_) => AnyMatrix::RatFunPrime(parse_matrix(text)?),
        })
    }

    pub fn ring(&self) -> RingSpec {
        match self {
            AnyMatrix::Rational(_) => RingSpec::Rational,
            AnyMatrix::PrimeField(m) => RingSpec::PrimeField(m.ctx()),
            AnyMatrix::Gaussian(_) => RingSpec::Gaussian,
            AnyMatrix::Quaternion(_) => RingSpec::Quaternion,
            AnyMatrix::RatFunRational(_) => RingSpec::RatFunRational,
            AnyMatrix::RatFunPrime(m) => RingSpec::RatFunPrime(m.ctx()),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyMatrix::Rational(m) => m.dim(),
            AnyMatrix::PrimeField(m) => m.dim(),
            AnyMatrix::Gaussian(m) => m.dim(),
            AnyMatrix::Quaternion(m) => m.dim(),
            AnyMatrix::RatFunRational(m) => m.dim(),
            AnyMatrix::RatFunPrime(m) => m.dim(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyMatrix::Rational(m) => write_matrix(m),
            AnyMatrix::PrimeField(m) => write_matrix(m),
            AnyMatrix::Gaussian(m) => write_matrix(m),
            AnyMatrix::Quaternion(m) => write_matrix(m),
            AnyMatrix::RatFunRational(m) => write_matrix(m),
            AnyMatrix::RatFunPrime(m) => write_matrix(m),
        }
    }
}
