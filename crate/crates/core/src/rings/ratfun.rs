use std::fmt;

use super::{Field, FormallyReal, HasIndeterminate, ParseScalarError, Polynomial, Rational, RingError, Scalar};

/// Element of K(t) in canonical form: monic denominator, coprime numerator
/// and denominator, zero represented as `0/1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction<F: Field> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

/// Reduces `num/den` to canonical form.
pub fn ratfun_reduce<F: Field>(num: Polynomial<F>, den: Polynomial<F>) -> Result<RationalFunction<F>, RingError> {
    if den.is_zero() {
        return Err(RingError::ZeroDenominator);
    }
    Ok(RationalFunction::reduce(num, den))
}

impl<F: Field> RationalFunction<F> {
    fn reduce(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        let ctx = num.ctx().clone();
        if num.is_zero() {
            return RationalFunction { num, den: Polynomial::one(&ctx) };
        }
        if den.is_one() {
            return RationalFunction { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_exact(&g), den.div_exact(&g));
        Self::normalize(num, den)
    }

    // assumes gcd(num, den) = 1
    fn normalize(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        if den.is_monic() {
            return RationalFunction { num, den };
        }
        let (den, lc) = den.monic();
        let inv = lc.try_inv().expect("nonzero leading coefficient");
        RationalFunction { num: num.scale(&inv), den }
    }

    pub fn from_polynomial(p: Polynomial<F>) -> Self {
        let den = Polynomial::one(p.ctx());
        RationalFunction { num: p, den }
    }

    /// Lifts a base-field constant.
    pub fn constant(c: F) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    pub fn numerator(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<F> {
        &self.den
    }

    /// The base-field value if `self` has degree-0 numerator and unit
    /// denominator.
    pub fn as_constant(&self) -> Option<F> {
        if !self.den.is_one() {
            return None;
        }
        match self.num.degree() {
            None => Some(F::zero(self.num.ctx())),
            Some(0) => Some(self.num.coeffs()[0].clone()),
            Some(_) => None,
        }
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        if !self.den.is_one() {
            write!(f, "/({})", self.den)?;
        }
        Ok(())
    }
}

impl<F: Field> Scalar for RationalFunction<F> {
    type Ctx = F::Ctx;

    fn ctx(&self) -> F::Ctx {
        self.num.ctx().clone()
    }

    fn zero(ctx: &F::Ctx) -> Self {
        Self::from_polynomial(Polynomial::zero(ctx))
    }

    fn one(ctx: &F::Ctx) -> Self {
        Self::from_polynomial(Polynomial::one(ctx))
    }

    fn from_int(ctx: &F::Ctx, value: i64) -> Self {
        Self::constant(F::from_int(ctx, value))
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        // Henrici: only the common part of the denominators can cancel
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            return Self::normalize(num, self.den.mul(&rhs.den));
        }
        let b = self.den.div_exact(&g);
        let d = rhs.den.div_exact(&g);
        let num = self.num.mul(&d).add(&rhs.num.mul(&b));
        if num.is_zero() {
            return Self::zero(&self.ctx());
        }
        let h = num.gcd(&g);
        let num = num.div_exact(&h);
        let den = b.mul(&rhs.den.div_exact(&h));
        Self::normalize(num, den)
    }

    fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero(&self.ctx());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_polynomial(self.num.mul(&rhs.num));
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = self.num.div_exact(&g1).mul(&rhs.num.div_exact(&g2));
        let den = self.den.div_exact(&g2).mul(&rhs.den.div_exact(&g1));
        Self::normalize(num, den)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn try_inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.clone(), self.num.clone()))
    }

    fn ring_tag(ctx: &F::Ctx) -> String {
        format!("ratfun:{}", F::ring_tag(ctx))
    }

    fn parse_ring_tag(tag: &str) -> Option<F::Ctx> {
        F::parse_ring_tag(tag.strip_prefix("ratfun:")?)
    }

    fn parse_token(ctx: &F::Ctx, token: &str) -> Result<Self, ParseScalarError> {
        let bad = || ParseScalarError::Invalid(token.to_string());
        let (num_text, rest) = take_parenthesized(token).ok_or_else(bad)?;
        let num = Polynomial::parse(ctx, num_text)?;
        let den = if rest.is_empty() {
            Polynomial::one(ctx)
        } else {
            let rest = rest.strip_prefix('/').ok_or_else(bad)?;
            let (den_text, tail) = take_parenthesized(rest).ok_or_else(bad)?;
            if !tail.is_empty() {
                return Err(bad());
            }
            Polynomial::parse(ctx, den_text)?
        };
        ratfun_reduce(num, den).map_err(|_| ParseScalarError::ZeroDenominator(token.to_string()))
    }
}

// `(body)rest` -> (body, rest)
fn take_parenthesized(s: &str) -> Option<(&str, &str)> {
    let inner = s.strip_prefix('(')?;
    let close = inner.find(')')?;
    Some((&inner[..close], &inner[close + 1..]))
}

impl<F: Field> Field for RationalFunction<F> {}

// Q(t) is formally real: a sum of squares of real rational functions
// vanishes only if every term does.
impl FormallyReal for RationalFunction<Rational> {}

impl<F: Field> HasIndeterminate for RationalFunction<F> {
    fn t_power(ctx: &F::Ctx, exp: i64) -> Self {
        let one = F::one(ctx);
        if exp >= 0 {
            Self::from_polynomial(Polynomial::monomial(one, exp as usize))
        } else {
            RationalFunction { num: Polynomial::one(ctx), den: Polynomial::monomial(one, exp.unsigned_abs() as usize) }
        }
    }

    fn mul_t_power(&self, exp: i64) -> Self {
        if exp == 0 || self.num.is_zero() {
            return self.clone();
        }
        // only powers of t can cancel, so shifting keeps the form canonical
        if exp > 0 {
            let e = exp as usize;
            let cancel = e.min(self.den.valuation());
            RationalFunction { num: self.num.shift_up(e - cancel), den: self.den.shift_down(cancel) }
        } else {
            let e = exp.unsigned_abs() as usize;
            let cancel = e.min(self.num.valuation());
            RationalFunction { num: self.num.shift_down(cancel), den: self.den.shift_up(e - cancel) }
        }
    }
}
