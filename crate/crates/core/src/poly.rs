//! Exact univariate polynomials — the codomain of the unipotent-monoid
//! isomorphism. Dense coefficient lists are plenty at the degrees this
//! crate works with.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{parse_scalar_at, FieldDescriptor, Scalar};

/// `coeffs[k]` is the coefficient of `X^k`; trailing zeros are trimmed so
/// the degree is well-defined and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldDescriptor,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: FieldDescriptor, mut coeffs: Vec<Scalar>) -> Result<Polynomial> {
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::MixedFields(field, c.field()));
            }
        }
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Ok(Polynomial { field, coeffs })
    }

    pub fn zero(field: FieldDescriptor) -> Polynomial {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldDescriptor) -> Polynomial {
        Polynomial { field, coeffs: vec![field.one()] }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Exact convolution product.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field, other.field));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.field));
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Polynomial::new(self.field, out)
    }

    /// True iff the constant coefficient equals 1.
    pub fn unit_constant(&self) -> bool {
        self.coeff(0).is_one()
    }
}

impl fmt::Display for Polynomial {
    /// Text form like `1 + 2*X + X^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = match c {
                Scalar::Rational(r) if r.numer().sign() == num::bigint::Sign::Minus => {
                    ("-", c.neg())
                }
                _ => ("+", c.clone()),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{mag}*X")?,
                (_, true) => write!(f, "X^{k}")?,
                (_, false) => write!(f, "{mag}*X^{k}")?,
            }
        }
        Ok(())
    }
}

/// Parses `1 + 2*X + X^2` style text (terms may appear in any order;
/// repeated powers are summed).
pub fn parse_polynomial(field: FieldDescriptor, text: &str) -> Result<Polynomial> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos >= bytes.len() {
        return Err(Error::parse(pos, "empty polynomial"));
    }
    let mut terms: Vec<(usize, Scalar)> = Vec::new();
    let mut negate = false;
    if bytes[pos] == b'+' || bytes[pos] == b'-' {
        negate = bytes[pos] == b'-';
        pos += 1;
    }
    loop {
        skip_ws(&mut pos);
        let term_start = pos;
        let mut cursor = pos;
        let mut prev_non_ws = None::<u8>;
        while cursor < bytes.len() {
            let b = bytes[cursor];
            if (b == b'+' || b == b'-')
                && cursor != term_start
                && !matches!(prev_non_ws, Some(b'/') | Some(b'*') | Some(b'^'))
            {
                break;
            }
            if !b.is_ascii_whitespace() {
                prev_non_ws = Some(b);
            }
            cursor += 1;
        }
        let term = &text[term_start..cursor];
        if term.trim().is_empty() {
            return Err(Error::parse(term_start, "expected a term like `2*X^3`, `X` or `1`"));
        }
        let (coeff, power) = parse_poly_term(field, term, term_start)?;
        terms.push((power, if negate { coeff.neg() } else { coeff }));
        pos = cursor;
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        match bytes[pos] {
            b'+' => negate = false,
            b'-' => negate = true,
            other => {
                return Err(Error::parse(
                    pos,
                    format!("expected `+` or `-`, found `{}`", other as char),
                ));
            }
        }
        pos += 1;
    }
    let max_pow = terms.iter().map(|(p, _)| *p).max().unwrap_or(0);
    let mut coeffs = vec![field.zero(); max_pow + 1];
    for (p, c) in terms {
        coeffs[p] = coeffs[p].add(&c)?;
    }
    Polynomial::new(field, coeffs)
}

fn parse_poly_term(field: FieldDescriptor, term: &str, base: usize) -> Result<(Scalar, usize)> {
    let (coeff_text, var_text, var_at) = match term.find('*') {
        Some(star) => (Some(&term[..star]), &term[star + 1..], base + star + 1),
        None => (None, term, base),
    };
    let v = var_text.trim();
    let v_at = var_at + (var_text.len() - var_text.trim_start().len());
    if let Some(rest) = v.strip_prefix('X').or_else(|| v.strip_prefix('x')) {
        let coeff = match coeff_text {
            Some(t) => parse_scalar_at(field, t, base)?,
            None => field.one(),
        };
        let power = if rest.is_empty() {
            1
        } else if let Some(exp) = rest.strip_prefix('^') {
            exp.parse::<usize>()
                .map_err(|_| Error::parse(v_at + 2, format!("bad exponent `{exp}`")))?
        } else {
            return Err(Error::parse(v_at, format!("expected `X` or `X^k`, found `{v}`")));
        };
        Ok((coeff, power))
    } else if coeff_text.is_some() {
        Err(Error::parse(v_at, format!("expected `X` or `X^k`, found `{v}`")))
    } else {
        // bare constant term
        Ok((parse_scalar_at(field, term, base)?, 0))
    }
}
