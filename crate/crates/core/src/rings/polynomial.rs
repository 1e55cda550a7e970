use std::fmt;

use super::syntax::{push_term, split_terms, strip_sign};
use super::{Field, ParseScalarError};

/// Dense univariate polynomial in `t` over a field, lowest degree first.
/// The coefficient list never ends in zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<F: Field> {
    coeffs: Vec<F>,
    ctx: F::Ctx,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ctx: &F::Ctx) -> Self {
        Polynomial { coeffs: Vec::new(), ctx: ctx.clone() }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        Polynomial::constant(F::one(ctx))
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.ctx();
        Polynomial::from_coeffs(&ctx, vec![c])
    }

    /// `c * t^degree`
    pub fn monomial(c: F, degree: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![F::zero(&ctx); degree];
        coeffs.push(c);
        Polynomial::from_coeffs(&ctx, coeffs)
    }

    pub fn from_coeffs(ctx: &F::Ctx, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs, ctx: ctx.clone() }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Number of factors of `t` (zero for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count().min(self.coeffs.len())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = c.add(s);
        }
        Polynomial::from_coeffs(&self.ctx, coeffs)
    }

    pub fn neg(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(F::neg).collect(), ctx: self.ctx.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = F::zero(&self.ctx);
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = rhs.coeffs.get(i).unwrap_or(&zero);
                a.sub(b)
            })
            .collect();
        Polynomial::from_coeffs(&self.ctx, coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let mut coeffs = vec![F::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Polynomial::from_coeffs(&self.ctx, coeffs)
    }

    pub fn scale(&self, c: &F) -> Self {
        Polynomial::from_coeffs(&self.ctx, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![F::zero(&self.ctx); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs, ctx: self.ctx.clone() }
    }

    /// Divides by `t^k`; requires `k <= valuation()`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.is_zero() || k <= self.valuation());
        Polynomial { coeffs: self.coeffs.iter().skip(k).cloned().collect(), ctx: self.ctx.clone() }
    }

    /// Returns `(self / lc, lc)` with `lc` the leading coefficient.
    pub fn monic(&self) -> (Self, F) {
        match self.leading() {
            None => (self.clone(), F::one(&self.ctx)),
            Some(lc) if lc.is_one() => (self.clone(), lc.clone()),
            Some(lc) => {
                let inv = lc.try_inv().expect("nonzero field element");
                (self.scale(&inv), lc.clone())
            }
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlen = divisor.coeffs.len();
        assert!(dlen > 0, "polynomial division by zero");
        if self.coeffs.len() < dlen {
            return (Polynomial::zero(&self.ctx), self.clone());
        }
        let lead_inv = divisor.coeffs[dlen - 1].try_inv().expect("nonzero field element");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(&self.ctx); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let q = top.mul(&lead_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&q.mul(d));
            }
            quot[k] = q;
        }
        rem.truncate(dlen - 1);
        (Polynomial::from_coeffs(&self.ctx, quot), Polynomial::from_coeffs(&self.ctx, rem))
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        if divisor.is_one() {
            return self.clone();
        }
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Polynomial::one(&self.ctx);
            }
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic().0
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(&self.ctx), |acc, c| acc.mul(x).add(c))
    }

    pub(crate) fn parse(ctx: &F::Ctx, s: &str) -> Result<Self, ParseScalarError> {
        let bad = || ParseScalarError::Invalid(s.to_string());
        if s.is_empty() {
            return Err(bad());
        }
        let mut acc = Polynomial::zero(ctx);
        for term in split_terms(s) {
            let (neg, body) = strip_sign(term);
            if body.is_empty() {
                return Err(bad());
            }
            let (coef, degree) = match body.find('t') {
                None => (Some(body), 0),
                Some(pos) => {
                    let coef = if pos == 0 {
                        None
                    } else {
                        Some(body[..pos].strip_suffix('*').ok_or_else(bad)?)
                    };
                    let rest = &body[pos + 1..];
                    let degree = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (coef, degree)
                }
            };
            let mut c = match coef {
                Some(c) if !c.is_empty() => F::parse_token(ctx, c)?,
                Some(_) => return Err(bad()),
                None => F::one(ctx),
            };
            if neg {
                c = c.neg();
            }
            acc = acc.add(&Polynomial::monomial(c, degree));
        }
        Ok(acc)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (neg, abs) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            let unit = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            push_term(&mut out, neg, &abs, &unit);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}
