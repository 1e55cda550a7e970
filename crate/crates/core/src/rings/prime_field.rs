use std::fmt;

use thiserror::Error;

use super::{Field, ParseScalarError, Scalar};

const MAX_MODULUS: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModulusError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^62")]
    TooLarge(u64),
}

/// A prime below `2^62`, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, ModulusError> {
        if p >= MAX_MODULUS {
            return Err(ModulusError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(ModulusError::NotPrime(p));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub(crate) fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Element of GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    residue: u64,
    modulus: PrimeModulus,
}

impl Fp {
    pub fn new(value: i64, modulus: PrimeModulus) -> Self {
        let p = modulus.0 as i128;
        let r = (value as i128).rem_euclid(p) as u64;
        Fp { residue: r, modulus }
    }

    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Scalar for Fp {
    type Ctx = PrimeModulus;

    fn ctx(&self) -> PrimeModulus {
        self.modulus
    }

    fn zero(ctx: &PrimeModulus) -> Self {
        Fp { residue: 0, modulus: *ctx }
    }

    fn one(ctx: &PrimeModulus) -> Self {
        Fp { residue: 1, modulus: *ctx }
    }

    fn from_int(ctx: &PrimeModulus, value: i64) -> Self {
        Fp::new(value, *ctx)
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus.0;
        let s = self.residue + rhs.residue;
        Fp { residue: if s >= p { s - p } else { s }, modulus: self.modulus }
    }

    fn neg(&self) -> Self {
        let p = self.modulus.0;
        Fp { residue: if self.residue == 0 { 0 } else { p - self.residue }, modulus: self.modulus }
    }

    fn sub(&self, rhs: &Self) -> Self {
        let p = self.modulus.0;
        let r = if self.residue >= rhs.residue { self.residue - rhs.residue } else { self.residue + p - rhs.residue };
        Fp { residue: r, modulus: self.modulus }
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { residue: mul_mod(self.residue, rhs.residue, self.modulus.0), modulus: self.modulus }
    }

    fn is_zero(&self) -> bool {
        self.residue == 0
    }

    fn is_one(&self) -> bool {
        self.residue == 1
    }

    fn try_inv(&self) -> Option<Self> {
        if self.residue == 0 {
            return None;
        }
        // extended Euclid on (residue, p)
        let (mut r0, mut r1) = (self.modulus.0 as i128, self.residue as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        let p = self.modulus.0 as i128;
        Some(Fp { residue: s0.rem_euclid(p) as u64, modulus: self.modulus })
    }

    fn ring_tag(ctx: &PrimeModulus) -> String {
        format!("gf:{}", ctx.0)
    }

    fn parse_ring_tag(tag: &str) -> Option<PrimeModulus> {
        let p: u64 = tag.strip_prefix("gf:")?.parse().ok()?;
        PrimeModulus::new(p).ok()
    }

    fn parse_token(ctx: &PrimeModulus, token: &str) -> Result<Self, ParseScalarError> {
        let v: i128 = token.parse().map_err(|_| ParseScalarError::Invalid(token.to_string()))?;
        let r = v.rem_euclid(ctx.0 as i128) as u64;
        Ok(Fp { residue: r, modulus: *ctx })
    }
}

impl Field for Fp {}
