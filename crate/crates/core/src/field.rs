//! Exact field arithmetic over the rationals and prime fields GF(p).
//!
//! Every other module is parameterized by a [`FieldDescriptor`]; scalars carry
//! their field so that cross-field arithmetic is a reportable error rather
//! than a silent coercion. All arithmetic is exact: rationals use
//! arbitrary-precision integers and are kept in reduced canonical form,
//! prime-field values are residues in `[0, p)`.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Identifies the coefficient field: the rationals or GF(p) for a prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u32),
}

impl FieldDescriptor {
    pub const RATIONALS: FieldDescriptor = FieldDescriptor::Rationals;

    /// Builds a GF(p) descriptor, verifying primality by trial division.
    /// Moduli are restricted to `p < 2^31`.
    pub fn prime_field(p: u64) -> Result<FieldDescriptor> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(FieldDescriptor::PrimeField(p as u32))
    }

    /// 0 for the rationals, p for GF(p).
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::zero()),
            FieldDescriptor::PrimeField(p) => Scalar::Residue { p: *p, value: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    /// The image of an ordinary integer in the field.
    pub fn integer(&self, n: i64) -> Scalar {
        match self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from(BigInt::from(n))),
            FieldDescriptor::PrimeField(p) => {
                let m = (n % i64::from(*p) + i64::from(*p)) as u64 % u64::from(*p);
                Scalar::Residue { p: *p, value: m as u32 }
            }
        }
    }

    /// Parses a scalar literal: `-3` or `2/5` over the rationals, an integer
    /// residue (reduced mod p, signs allowed) over GF(p).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        parse_scalar_at(*self, text, 0)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "GF{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    /// Accepts `Q` or `GF<p>` (case-insensitive), e.g. `GF5`.
    fn from_str(s: &str) -> Result<FieldDescriptor> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(rest) = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix("gf"))
            .or_else(|| t.strip_prefix("Gf"))
        {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::parse(0, format!("bad field `{s}`: expected Q or GF<p>")))?;
            return FieldDescriptor::prime_field(p);
        }
        Err(Error::parse(0, format!("bad field `{s}`: expected Q or GF<p>")))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element in canonical form.
///
/// Rationals are reduced with a positive denominator; GF(p) values are
/// residues in `[0, p)`. Equality is therefore plain representational
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { p: u32, value: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rationals,
            Scalar::Residue { p, .. } => FieldDescriptor::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn ensure_same_field(&self, other: &Scalar) -> Result<()> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(Error::MixedFields(a, b))
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.ensure_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { p, value: a }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { p: *p, value: ((u64::from(*a) + u64::from(*b)) % u64::from(*p)) as u32 }
            }
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { p, value } => {
                Scalar::Residue { p: *p, value: if *value == 0 { 0 } else { p - value } }
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.ensure_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { p, value: a }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { p: *p, value: ((u64::from(*a) * u64::from(*b)) % u64::from(*p)) as u32 }
            }
            _ => unreachable!(),
        })
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { p, value } => {
                Scalar::Residue { p: *p, value: mod_inverse(*value, *p) }
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.mul(&other.inv()?)
    }

    /// Integer power; negative exponents go through the inverse and so
    /// error on zero.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        if exp < 0 {
            return self.inv()?.pow(-exp);
        }
        let mut result = self.field().one();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// extended Euclid; p prime and a in (0, p), so the inverse exists
fn mod_inverse(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (i64::from(p), i64::from(a));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime");
    (t0.rem_euclid(i64::from(p))) as u32
}

/// Parses a scalar literal starting at byte offset `base` of the surrounding
/// input, so embedded scalars report positions in the caller's coordinates.
pub(crate) fn parse_scalar_at(field: FieldDescriptor, text: &str, base: usize) -> Result<Scalar> {
    let t = text.trim();
    let offset = base + (text.len() - text.trim_start().len());
    if t.is_empty() {
        return Err(Error::parse(offset, "expected a scalar"));
    }
    let parse_int = |s: &str, at: usize| -> Result<BigInt> {
        BigInt::from_str(s).map_err(|_| Error::parse(at, format!("bad integer `{s}`")))
    };
    match field {
        FieldDescriptor::Rationals => {
            if let Some(slash) = t.find('/') {
                let numer = parse_int(&t[..slash], offset)?;
                let denom = parse_int(&t[slash + 1..], offset + slash + 1)?;
                if denom.is_zero() {
                    return Err(Error::parse(offset + slash + 1, "zero denominator"));
                }
                Ok(Scalar::Rational(BigRational::new(numer, denom)))
            } else {
                Ok(Scalar::Rational(BigRational::from(parse_int(t, offset)?)))
            }
        }
        FieldDescriptor::PrimeField(p) => {
            if t.contains('/') {
                return Err(Error::parse(
                    offset,
                    format!("fractions are not GF({p}) residues; use an integer"),
                ));
            }
            let n = parse_int(t, offset)?;
            let value = n.mod_floor(&BigInt::from(p));
            let (_, digits) = value.to_u32_digits();
            Ok(Scalar::Residue { p, value: digits.first().copied().unwrap_or(0) })
        }
    }
}
