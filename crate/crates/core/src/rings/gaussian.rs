use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::syntax::{format_components, parse_components};
use super::{Field, ParseScalarError, PositiveInvolution, Rational, Scalar};

/// Element `re + im*i` of Q(i), stored as `(a + b*i) / d` with `d > 0` and
/// `gcd(a, b, d) = 1`, so one denominator is shared by both parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    a: BigInt,
    b: BigInt,
    d: BigInt,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        let d = re.denom().lcm(im.denom());
        let a = re.numer() * (&d / re.denom());
        let b = im.numer() * (&d / im.denom());
        Self::reduce(a, b, d)
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational { a: re.into(), b: im.into(), d: BigInt::one() }
    }

    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn re(&self) -> Rational {
        Rational::from_big(self.a.clone(), self.d.clone()).expect("positive denominator")
    }

    pub fn im(&self) -> Rational {
        Rational::from_big(self.b.clone(), self.d.clone()).expect("positive denominator")
    }

    /// `re^2 + im^2`, which equals `star(x) * x`.
    pub fn norm(&self) -> Rational {
        Rational::from_big(&self.a * &self.a + &self.b * &self.b, &self.d * &self.d).expect("positive denominator")
    }

    // d must be positive
    fn reduce(a: BigInt, b: BigInt, d: BigInt) -> Self {
        if d.is_one() {
            return GaussianRational { a, b, d };
        }
        if a.is_zero() && b.is_zero() {
            return GaussianRational { a, b, d: BigInt::one() };
        }
        let g = a.gcd(&b).gcd(&d);
        if g.is_one() {
            GaussianRational { a, b, d }
        } else {
            GaussianRational { a: a / &g, b: b / &g, d: d / &g }
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_components(&[&self.re(), &self.im()], &["", "i"]))
    }
}

impl Scalar for GaussianRational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        GaussianRational::from_ints(0, 0)
    }

    fn one(_: &()) -> Self {
        GaussianRational::from_ints(1, 0)
    }

    fn from_int(_: &(), value: i64) -> Self {
        GaussianRational::from_ints(value, 0)
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.d == rhs.d {
            return Self::reduce(&self.a + &rhs.a, &self.b + &rhs.b, self.d.clone());
        }
        Self::reduce(&self.a * &rhs.d + &rhs.a * &self.d, &self.b * &rhs.d + &rhs.b * &self.d, &self.d * &rhs.d)
    }

    fn neg(&self) -> Self {
        GaussianRational { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let a = &self.a * &rhs.a - &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Self::reduce(a, b, &self.d * &rhs.d)
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn is_one(&self) -> bool {
        self.b.is_zero() && self.a == self.d
    }

    fn try_inv(&self) -> Option<Self> {
        // d (a - b i) / (a^2 + b^2)
        let n = &self.a * &self.a + &self.b * &self.b;
        if n.is_zero() {
            return None;
        }
        let (a, b) = (&self.a * &self.d, -(&self.b * &self.d));
        Some(if n.is_negative() { Self::reduce(-a, -b, -n) } else { Self::reduce(a, b, n) })
    }

    fn star(&self) -> Self {
        GaussianRational { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    fn ring_tag(_: &()) -> String {
        "qi".to_string()
    }

    fn parse_ring_tag(tag: &str) -> Option<()> {
        (tag == "qi").then_some(())
    }

    fn parse_token(_: &(), token: &str) -> Result<Self, ParseScalarError> {
        let mut parts = parse_components(token, &["", "i"])?.into_iter();
        let re = parts.next().unwrap();
        let im = parts.next().unwrap();
        Ok(GaussianRational::new(re, im))
    }
}

impl Field for GaussianRational {}
impl PositiveInvolution for GaussianRational {}
