use std::fmt;

use super::syntax::{format_components, parse_components};
use super::{ParseScalarError, PositiveInvolution, Rational, Scalar};

const UNITS: [&str; 4] = ["", "i", "j", "k"];

/// Rational quaternion `a + b*i + c*j + d*k`. Multiplication is
/// noncommutative.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quaternion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Quaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion::new(
            Rational::from_integer(a),
            Rational::from_integer(b),
            Rational::from_integer(c),
            Rational::from_integer(d),
        )
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    /// `a^2 + b^2 + c^2 + d^2`, which equals `star(q) * q`.
    pub fn norm(&self) -> Rational {
        [&self.a, &self.b, &self.c, &self.d].iter().fold(Rational::from_integer(0), |acc, x| acc.add(&x.mul(x)))
    }

    fn scale(&self, s: &Rational) -> Self {
        Quaternion::new(self.a.mul(s), self.b.mul(s), self.c.mul(s), self.d.mul(s))
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_components(&[&self.a, &self.b, &self.c, &self.d], &UNITS))
    }
}

impl Scalar for Quaternion {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        Quaternion::from_ints(0, 0, 0, 0)
    }

    fn one(_: &()) -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    fn from_int(_: &(), value: i64) -> Self {
        Quaternion::from_ints(value, 0, 0, 0)
    }

    fn add(&self, rhs: &Self) -> Self {
        Quaternion::new(self.a.add(&rhs.a), self.b.add(&rhs.b), self.c.add(&rhs.c), self.d.add(&rhs.d))
    }

    fn neg(&self) -> Self {
        Quaternion::new(self.a.neg(), self.b.neg(), self.c.neg(), self.d.neg())
    }

    fn sub(&self, rhs: &Self) -> Self {
        Quaternion::new(self.a.sub(&rhs.a), self.b.sub(&rhs.b), self.c.sub(&rhs.c), self.d.sub(&rhs.d))
    }

    // Hamilton product
    fn mul(&self, rhs: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        Quaternion::new(
            a1.mul(a2).sub(&b1.mul(b2)).sub(&c1.mul(c2)).sub(&d1.mul(d2)),
            a1.mul(b2).add(&b1.mul(a2)).add(&c1.mul(d2)).sub(&d1.mul(c2)),
            a1.mul(c2).sub(&b1.mul(d2)).add(&c1.mul(a2)).add(&d1.mul(b2)),
            a1.mul(d2).add(&b1.mul(c2)).sub(&c1.mul(b2)).add(&d1.mul(a2)),
        )
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    fn try_inv(&self) -> Option<Self> {
        let inv_norm = self.norm().try_inv()?;
        Some(self.star().scale(&inv_norm))
    }

    fn star(&self) -> Self {
        Quaternion::new(self.a.clone(), self.b.neg(), self.c.neg(), self.d.neg())
    }

    fn ring_tag(_: &()) -> String {
        "quat".to_string()
    }

    fn parse_ring_tag(tag: &str) -> Option<()> {
        (tag == "quat").then_some(())
    }

    fn parse_token(_: &(), token: &str) -> Result<Self, ParseScalarError> {
        let p = parse_components(token, &UNITS)?;
        Ok(Quaternion::new(p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()))
    }
}

impl PositiveInvolution for Quaternion {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noncommutative_units() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&i), k.neg());
        assert_eq!(j.mul(&k), i);
        assert_eq!(k.mul(&i), j);
        assert_eq!(i.mul(&i), Quaternion::from_ints(-1, 0, 0, 0));
    }

    #[test]
    fn inverse_of_i() {
        assert_eq!(Quaternion::i().try_inv(), Some(Quaternion::i().neg()));
        assert!(Quaternion::from_ints(0, 0, 0, 0).try_inv().is_none());
    }

    #[test]
    fn involution() {
        let q = Quaternion::from_ints(1, 1, 1, 1);
        assert_eq!(q.star(), Quaternion::from_ints(1, -1, -1, -1));
        assert_eq!(q.star().mul(&q), Quaternion::from_ints(4, 0, 0, 0));
    }

    #[test]
    fn syntax() {
        let q = Quaternion::parse_token(&(), "1+i+j+k").unwrap();
        assert_eq!(q, Quaternion::from_ints(1, 1, 1, 1));
        assert_eq!(Quaternion::from_ints(0, -1, 0, 3).to_string(), "-i+3*k");
        assert_eq!(Quaternion::parse_token(&(), "1/2-2*j").unwrap().to_string(), "1/2-2*j");
    }
}
