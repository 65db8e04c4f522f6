//! Elements of the algebra and the bracket.
//!
//! The algebra has basis `a_1, a_2, a_3, ...` with multiplication table
//! `[a_1, a_n] = a_{n+1}` and `[a_m, a_k] = 0` for `m > 1`. Elements are
//! finitely supported coordinate vectors stored sparsely; no zero
//! coefficient is ever kept, so equality is structural.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{parse_scalar_at, FieldDescriptor, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    field: FieldDescriptor,
    coeffs: BTreeMap<u32, Scalar>,
}

impl Element {
    pub fn zero(field: FieldDescriptor) -> Element {
        Element { field, coeffs: BTreeMap::new() }
    }

    /// The basis vector `a_n`, `n >= 1`.
    pub fn basis(field: FieldDescriptor, n: u32) -> Result<Element> {
        if n < 1 {
            return Err(Error::BadIndex(i64::from(n)));
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(n, field.one());
        Ok(Element { field, coeffs })
    }

    /// Builds an element from `(index, coefficient)` pairs. Duplicate indices
    /// are summed and zero results dropped, so the result is normalized.
    pub fn make(field: FieldDescriptor, pairs: &[(u32, Scalar)]) -> Result<Element> {
        let mut coeffs: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (n, c) in pairs {
            if *n < 1 {
                return Err(Error::BadIndex(i64::from(*n)));
            }
            if c.field() != field {
                return Err(Error::MixedFields(field, c.field()));
            }
            let entry = match coeffs.remove(n) {
                Some(prev) => prev.add(c)?,
                None => c.clone(),
            };
            if !entry.is_zero() {
                coeffs.insert(*n, entry);
            }
        }
        Ok(Element { field, coeffs })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of `a_n` (zero when absent).
    pub fn coeff(&self, n: u32) -> Scalar {
        self.coeffs.get(&n).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn max_support(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_support(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    fn ensure_same_field(&self, other: &Element) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields(self.field, other.field))
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.ensure_same_field(other)?;
        let mut coeffs = self.coeffs.clone();
        for (n, c) in &other.coeffs {
            let entry = match coeffs.remove(n) {
                Some(prev) => prev.add(c)?,
                None => c.clone(),
            };
            if !entry.is_zero() {
                coeffs.insert(*n, entry);
            }
        }
        Ok(Element { field: self.field, coeffs })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let coeffs = self.coeffs.iter().map(|(n, c)| (*n, c.neg())).collect();
        Element { field: self.field, coeffs }
    }

    pub fn scale(&self, by: &Scalar) -> Result<Element> {
        if by.field() != self.field {
            return Err(Error::MixedFields(self.field, by.field()));
        }
        if by.is_zero() {
            return Ok(Element::zero(self.field));
        }
        let mut coeffs = BTreeMap::new();
        for (n, c) in &self.coeffs {
            let v = c.mul(by)?;
            if !v.is_zero() {
                coeffs.insert(*n, v);
            }
        }
        Ok(Element { field: self.field, coeffs })
    }

    /// The shift map `a_n -> a_{n+1}` extended linearly.
    pub fn shift(&self) -> Element {
        let coeffs = self.coeffs.iter().map(|(n, c)| (n + 1, c.clone())).collect();
        Element { field: self.field, coeffs }
    }

    /// The bracket `[x, y]`. By the multiplication table this is
    /// `x_1 * shift(y)` where `x_1` is the `a_1`-coordinate of `x`;
    /// bilinearity is immediate from that closed form.
    pub fn bracket(&self, other: &Element) -> Result<Element> {
        self.ensure_same_field(other)?;
        other.shift().scale(&self.coeff(1))
    }
}

/// `[a, [b, c]] - [[a, b], c] - [b, [a, c]]`, identically zero in a left
/// Leibniz algebra.
pub fn leibniz_defect(a: &Element, b: &Element, c: &Element) -> Result<Element> {
    let lhs = a.bracket(&b.bracket(c)?)?;
    let first = a.bracket(b)?.bracket(c)?;
    let second = b.bracket(&a.bracket(c)?)?;
    lhs.sub(&first)?.sub(&second)
}

impl fmt::Display for Element {
    /// Element syntax, e.g. `2*a1 - 1/2*a4`; the zero element prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (n, c)) in self.coeffs.iter().enumerate() {
            let (sign, mag) = match c {
                Scalar::Rational(r) if r.numer().sign() == num::bigint::Sign::Minus => {
                    ("-", c.neg())
                }
                _ => ("+", c.clone()),
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "a{n}")?;
            } else {
                write!(f, "{mag}*a{n}")?;
            }
        }
        Ok(())
    }
}

/// Parses the element grammar `term (('+'|'-') term)*` with
/// `term = [scalar '*'] 'a' index`, e.g. `2*a1 - 1/2*a4`. Whitespace is
/// insignificant; `0` parses as the zero element.
pub fn parse_element(field: FieldDescriptor, text: &str) -> Result<Element> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut pairs: Vec<(u32, Scalar)> = Vec::new();
    skip_ws(&mut pos);
    if pos >= bytes.len() {
        return Err(Error::parse(pos, "empty element"));
    }
    // explicit zero element
    if text[pos..].trim() == "0" {
        return Ok(Element::zero(field));
    }
    let mut negate = false;
    if bytes[pos] == b'+' || bytes[pos] == b'-' {
        negate = bytes[pos] == b'-';
        pos += 1;
    }
    loop {
        skip_ws(&mut pos);
        let term_start = pos;
        // scan the term up to the next top-level '+'/'-' (a '-' directly
        // after '/' or at the term start belongs to the scalar literal)
        let mut cursor = pos;
        let mut prev_non_ws = None::<u8>;
        while cursor < bytes.len() {
            let b = bytes[cursor];
            if (b == b'+' || b == b'-')
                && cursor != term_start
                && !matches!(prev_non_ws, Some(b'/') | Some(b'*'))
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
            return Err(Error::parse(term_start, "expected a term like `2*a3` or `a1`"));
        }
        let (scalar, index) = parse_term(field, term, term_start)?;
        let scalar = if negate { scalar.neg() } else { scalar };
        pairs.push((index, scalar));
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
    Element::make(field, &pairs)
}

fn parse_term(field: FieldDescriptor, term: &str, base: usize) -> Result<(Scalar, u32)> {
    let (coeff_text, basis_text, basis_at) = match term.find('*') {
        Some(star) => (Some(&term[..star]), &term[star + 1..], base + star + 1),
        None => (None, term, base),
    };
    let scalar = match coeff_text {
        Some(t) => parse_scalar_at(field, t, base)?,
        None => field.one(),
    };
    let b = basis_text.trim();
    let b_at = basis_at + (basis_text.len() - basis_text.trim_start().len());
    let digits = b
        .strip_prefix('a')
        .ok_or_else(|| Error::parse(b_at, format!("expected a basis symbol `a<n>`, found `{b}`")))?;
    let index: i64 = digits
        .parse()
        .map_err(|_| Error::parse(b_at + 1, format!("bad basis index `{digits}`")))?;
    if index < 1 {
        return Err(Error::BadIndex(index));
    }
    u32::try_from(index)
        .map(|n| (scalar, n))
        .map_err(|_| Error::BadIndex(index))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn el(s: &str) -> Element {
        parse_element(q(), s).unwrap()
    }

    #[test]
    fn make_normalizes() {
        let one = q().one();
        let a1 = Element::make(q(), &[(1, one.clone())]).unwrap();
        assert_eq!(a1, Element::basis(q(), 1).unwrap());

        let cancelled = Element::make(q(), &[(1, one.clone()), (1, one.neg())]).unwrap();
        assert!(cancelled.is_zero());
        assert_eq!(cancelled.max_support(), None);

        let mixed = Element::make(
            q(),
            &[(3, q().integer(2)), (1, q().parse_scalar("1/2").unwrap())],
        )
        .unwrap();
        assert_eq!(mixed, el("1/2*a1 + 2*a3"));
    }

    #[test]
    fn make_rejects_bad_index_and_mixed_fields() {
        assert_eq!(
            Element::make(q(), &[(0, q().one())]),
            Err(Error::BadIndex(0))
        );
        let gf5 = FieldDescriptor::prime_field(5).unwrap();
        assert_eq!(
            Element::make(q(), &[(1, gf5.one())]),
            Err(Error::MixedFields(q(), gf5))
        );
    }

    #[test]
    fn bracket_table() {
        let a1 = el("a1");
        let a2 = el("a2");
        let a5 = el("a5");
        assert_eq!(a1.bracket(&a1).unwrap(), a2);
        assert!(a2.bracket(&a5).unwrap().is_zero());
        // bilinear expansion over the table
        assert_eq!(
            el("2*a1 + a3").bracket(&el("a1 + a2")).unwrap(),
            el("2*a2 + 2*a3")
        );
    }

    #[test]
    fn leibniz_defect_vanishes() {
        let cases = [
            ("a1", "a1", "a1"),
            ("a1 + a2", "a1", "a3"),
            ("a2", "a3", "a4"),
            ("2*a1 - a4", "1/2*a1 + a2", "a1 + 3*a3"),
        ];
        for (a, b, c) in cases {
            assert!(leibniz_defect(&el(a), &el(b), &el(c)).unwrap().is_zero());
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["a1", "2*a1 - 1/2*a4", "-a2 + 3*a7", "0"] {
            assert_eq!(el(s).to_string(), s);
        }
        // normalization happens during parsing
        assert_eq!(el("a1 + a1"), el("2*a1"));
        assert_eq!(el("a1 - a1").to_string(), "0");
        assert_eq!(el(" 2 * a1  +  a2 "), el("2*a1 + a2"));
        assert_eq!(el("2/-4*a1"), el("-1/2*a1"));
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_element(q(), "a1 + b2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert_eq!(parse_element(q(), "a0"), Err(Error::BadIndex(0)));
        assert_eq!(parse_element(q(), "a-3"), Err(Error::BadIndex(-3)));
        assert!(parse_element(q(), "").is_err());
    }

    #[test]
    fn gf_elements() {
        let gf5 = FieldDescriptor::prime_field(5).unwrap();
        let x = parse_element(gf5, "3*a1 + 4*a2").unwrap();
        let y = parse_element(gf5, "2*a1 + a2").unwrap();
        // [x, y] = 3 * shift(y) = 6*a2 + 3*a3 = a2 + 3*a3 mod 5
        assert_eq!(x.bracket(&y).unwrap(), parse_element(gf5, "a2 + 3*a3").unwrap());
    }
}
