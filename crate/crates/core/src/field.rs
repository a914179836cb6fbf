//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! A [`FieldSpec`] is a small copyable tag; field elements are [`Scalar`]
//! values and all arithmetic goes through the owning `FieldSpec`, which
//! carries the modulus.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// An odd prime `2 < p < 2^31`. Only constructible through [`FieldSpec::prime`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn get(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(Prime),
}

/// A field element. Rationals are always reduced with positive denominator
/// (guaranteed by `BigRational`); residues are least non-negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u32),
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact on `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            continue;
        }
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl FieldSpec {
    pub const Q: FieldSpec = FieldSpec::Rationals;

    /// The prime field `F_p`; rejects composites, `p = 2` and `p >= 2^31`.
    pub fn prime(p: u64) -> Result<Self> {
        if p <= 2 || p >= (1u64 << 31) || !is_prime_u64(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(FieldSpec::PrimeField(Prime(p as u32)))
    }

    /// Characteristic: 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p.0 as u64,
        }
    }

    pub fn modulus(&self) -> Option<u32> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(p.0),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    fn p(&self) -> u64 {
        match self {
            FieldSpec::PrimeField(p) => p.0 as u64,
            FieldSpec::Rationals => unreachable!("modulus of Q"),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::PrimeField(_) => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(_) => {
                Scalar::Residue((n as i128).rem_euclid(self.p() as i128) as u32)
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(_) => {
                let m = n.mod_floor(&BigInt::from(self.p()));
                Scalar::Residue(m.to_u32().expect("residue fits"))
            }
        }
    }

    /// Maps a rational number into the field; fails when the denominator
    /// vanishes modulo `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldSpec::PrimeField(_) => {
                let den = self.from_bigint(q.denom());
                if self.is_zero(&den) {
                    return Err(Error::CoefficientNotInField(q.to_string()));
                }
                let num = self.from_bigint(q.numer());
                self.div(&num, &den)
            }
        }
    }

    /// Panics if `s` does not belong to this field; used on internal invariants.
    fn check(&self, s: &Scalar) {
        match (self, s) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => {}
            (FieldSpec::PrimeField(p), Scalar::Residue(r)) if *r < p.0 => {}
            _ => panic!("scalar {s:?} does not belong to {self}"),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::PrimeField(p), Scalar::Residue(r)) => *r < p.0,
            _ => false,
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue(r) => *r == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u64 + *y as u64) % self.p()) as u32)
            }
            _ => {
                self.check(a);
                self.check(b);
                unreachable!()
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Residue(0) => Scalar::Residue(0),
            Scalar::Residue(x) => Scalar::Residue((self.p() - *x as u64) as u32),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u64 * *y as u64) % self.p()) as u32)
            }
            _ => {
                self.check(a);
                self.check(b);
                unreachable!()
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
            Scalar::Residue(x) => Scalar::Residue(self.pow_u64(*x as u64, self.p() - 2) as u32),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow_u64(&self, mut base: u64, mut e: u64) -> u64 {
        let p = self.p();
        let mut acc = 1u64;
        base %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: &Scalar, e: u64) -> Scalar {
        match a {
            Scalar::Rational(x) => {
                let e = i32::try_from(e).expect("exponent too large for rational power");
                Scalar::Rational(x.pow(e))
            }
            Scalar::Residue(x) => Scalar::Residue(self.pow_u64(*x as u64, e) as u32),
        }
    }

    /// Element `n * 1` for a non-negative integer multiplier (used by derivatives).
    pub fn multiple(&self, a: &Scalar, n: u64) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(x * BigInt::from(n)),
            Scalar::Residue(x) => {
                let p = self.p();
                Scalar::Residue(((*x as u64 % p) * (n % p) % p) as u32)
            }
        }
    }

    /// Uniform element of `F_p`, or a small random rational over `Q`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rationals => {
                let num: i64 = rng.gen_range(-9..=9);
                let den: i64 = rng.gen_range(1..=4);
                Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
            FieldSpec::PrimeField(p) => Scalar::Residue(rng.gen_range(0..p.0)),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !self.is_zero(&s) {
                return s;
            }
        }
    }

    /// Every element of a prime field, in increasing residue order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Scalar>> {
        match self {
            FieldSpec::Rationals => Err(Error::RequiresFiniteField),
            FieldSpec::PrimeField(p) => Ok((0..p.0).map(Scalar::Residue)),
        }
    }

    /// Parses an integer or `a/b` literal into the field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::InvalidArgument(format!("invalid number '{text}'"));
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, text),
        };
        let q = match body.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(body.parse().map_err(|_| bad())?),
        };
        let q = if neg { -q } else { q };
        self.from_rational(&q)
    }

    /// Sign used by printers: over `Q` a negative value prints with a minus,
    /// residues are always printed as non-negative representatives.
    pub(crate) fn is_negative(&self, s: &Scalar) -> bool {
        matches!(s, Scalar::Rational(q) if q.is_negative())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{}", p.0),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `F7`, `Fp 7` and `Fp7`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("Fp")
            .or_else(|| s.strip_prefix('F'))
            .map(str::trim)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown field '{s}'")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("unknown field '{s}'")))?;
        FieldSpec::prime(p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl Scalar {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue(_) => None,
        }
    }
}

/// Whether a rational number is the cube of a rational number.
/// Signs are absorbed since `(-1)^3 = -1`.
pub fn is_rational_cube(q: &BigRational) -> bool {
    let is_int_cube = |n: &BigInt| {
        let n = n.abs();
        let r = n.cbrt();
        &r * &r * &r == n
    };
    is_int_cube(q.numer()) && is_int_cube(q.denom())
}
