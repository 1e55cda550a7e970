//! Exact scalar rings.
//!
//! Every matrix algorithm in this crate is generic over [`Scalar`], an exact
//! ring element with a partial inverse and an involution. Five instances are
//! provided: [`Rational`], [`Fp`] (prime field), [`GaussianRational`],
//! [`Quaternion`] and [`RationalFunction`] over a base field.

use std::fmt::{Debug, Display};

use thiserror::Error;

mod gaussian;
mod polynomial;
mod prime_field;
mod quaternion;
mod rational;
mod ratfun;
pub(crate) mod syntax;

pub use gaussian::GaussianRational;
pub use polynomial::Polynomial;
pub use prime_field::{Fp, ModulusError, PrimeModulus};
pub use quaternion::Quaternion;
pub use rational::Rational;
pub use ratfun::{ratfun_reduce, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("invalid scalar token `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("zero denominator")]
    ZeroDenominator,
}

/// An exact ring element.
///
/// Elements carry their own context (e.g. the modulus of a prime field), so
/// constants are built from the context of an element already in hand.
/// Multiplication is not assumed commutative.
pub trait Scalar: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + Debug + Send + Sync + 'static;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, value: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    /// Two-sided inverse, or `None` if `self` is not a unit.
    fn try_inv(&self) -> Option<Self>;

    /// Ring involution: `star(star(x)) = x`, `star(x*y) = star(y)*star(x)`.
    fn star(&self) -> Self {
        self.clone()
    }

    /// Header tag used by the matrix file format (`q`, `gf:7`, ...).
    fn ring_tag(ctx: &Self::Ctx) -> String;
    fn parse_ring_tag(tag: &str) -> Option<Self::Ctx>;
    fn parse_token(ctx: &Self::Ctx, token: &str) -> Result<Self, ParseScalarError>;
}

/// Commutative ring in which every nonzero element is a unit.
pub trait Field: Scalar {}

/// Fields with no way of writing `-1` as a sum of squares, so `M^T M` has
/// invertible leading blocks whenever `M` is invertible.
pub trait FormallyReal: Field {}

/// Rings whose involution satisfies `star(x) * x` = a nonzero sum of squares
/// in a formally real subfield for every nonzero `x`.
pub trait PositiveInvolution: Scalar {}

/// Rings with a distinguished transcendental `t`, used by the circ
/// conjugation `Q^-1 M^T Q` with `Q = diag(1, t, ..., t^(n-1))`.
pub trait HasIndeterminate: Field {
    /// Returns `t^exp` (negative exponents allowed).
    fn t_power(ctx: &Self::Ctx, exp: i64) -> Self;

    /// Returns `self * t^exp`.
    fn mul_t_power(&self, exp: i64) -> Self {
        self.mul(&Self::t_power(&self.ctx(), exp))
    }
}
