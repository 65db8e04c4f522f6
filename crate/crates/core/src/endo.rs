//! Endomorphisms of the algebra.
//!
//! An endomorphism is determined by the image of `a_1`: if
//! `f(a_1) = g_1*a_1 + ... + g_n*a_n`, then
//! `f(a_s) = sum_k g_1^(s-1) * g_k * a_(k+s-1)` and conversely every such
//! vector defines an endomorphism. Maps are therefore stored as that
//! gamma-vector alone, which makes equality of endomorphisms decidable by
//! vector equality. Composition is computed through application; the
//! window-matrix route in [`crate::finmat`] independently cross-checks it.

use std::fmt;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::field::{parse_scalar_at, FieldDescriptor, Scalar};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endo {
    field: FieldDescriptor,
    gamma: Vec<Scalar>,
}

/// The three classes of the endomorphism monoid: the zero-square ideal
/// (`g_1 = 0`), the diagonal automorphisms, and the remaining proper
/// monomorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndoClass {
    ZeroSquareIdeal,
    MonomorphismProper,
    Automorphism,
}

impl fmt::Display for EndoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EndoClass::ZeroSquareIdeal => "ZeroSquareIdeal",
            EndoClass::MonomorphismProper => "MonomorphismProper",
            EndoClass::Automorphism => "Automorphism",
        };
        write!(f, "{name}")
    }
}

/// A monomorphism split as `unipotent ∘ diagonal`; the two factors
/// recompose to the original exactly and the split is unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonFactorization {
    pub unipotent: Endo,
    pub diagonal: Scalar,
}

impl Endo {
    /// Normalizes a gamma-vector into an endomorphism. Any finitely
    /// supported vector is valid.
    pub fn from_gamma(field: FieldDescriptor, mut gamma: Vec<Scalar>) -> Result<Endo> {
        for g in &gamma {
            if g.field() != field {
                return Err(Error::MixedFields(field, g.field()));
            }
        }
        while gamma.last().is_some_and(Scalar::is_zero) {
            gamma.pop();
        }
        Ok(Endo { field, gamma })
    }

    pub fn identity(field: FieldDescriptor) -> Endo {
        Endo { field, gamma: vec![field.one()] }
    }

    pub fn zero(field: FieldDescriptor) -> Endo {
        Endo { field, gamma: Vec::new() }
    }

    /// The diagonal map `a_1 -> c*a_1`.
    pub fn diagonal(c: Scalar) -> Endo {
        let field = c.field();
        Endo::from_gamma(field, vec![c]).expect("single scalar is same-field")
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    /// Max index with nonzero gamma coordinate; 0 for the zero map.
    pub fn degree(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma(&self) -> &[Scalar] {
        &self.gamma
    }

    /// The k-th gamma coordinate (1-based; zero beyond the degree).
    pub fn gamma_at(&self, k: usize) -> Scalar {
        if k >= 1 { self.coeff(k - 1) } else { self.field.zero() }
    }

    fn coeff(&self, i: usize) -> Scalar {
        self.gamma.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn gamma1(&self) -> Scalar {
        self.coeff(0)
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.gamma.len() == 1 && self.gamma[0].is_one()
    }

    pub fn is_unipotent(&self) -> bool {
        !self.gamma.is_empty() && self.gamma[0].is_one()
    }

    /// `f(a_1)` as an element.
    pub fn image_of_generator(&self) -> Element {
        let pairs: Vec<(u32, Scalar)> = self
            .gamma
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(i, g)| (i as u32 + 1, g.clone()))
            .collect();
        Element::make(self.field, &pairs).expect("gamma indices start at 1")
    }

    /// `f(a_s) = sum_k g_1^(s-1) g_k a_(k+s-1)`.
    pub fn image_of_basis(&self, s: u32) -> Result<Element> {
        if s < 1 {
            return Err(Error::BadIndex(i64::from(s)));
        }
        let lead = self.gamma1().pow(i64::from(s) - 1)?;
        let mut pairs = Vec::with_capacity(self.gamma.len());
        for (i, g) in self.gamma.iter().enumerate() {
            let k = i as u32 + 1;
            pairs.push((k + s - 1, lead.mul(g)?));
        }
        Element::make(self.field, &pairs)
    }

    /// Linear extension to arbitrary elements. The support bound of the
    /// result is `max_support(x) + degree - 1`.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.field() != self.field {
            return Err(Error::MixedFields(self.field, x.field()));
        }
        let mut acc = Element::zero(self.field);
        for (s, c) in x.terms() {
            acc = acc.add(&self.image_of_basis(s)?.scale(c)?)?;
        }
        Ok(acc)
    }

    /// `self ∘ other`, read right to left; the gamma-vector of the
    /// composite is `self(other(a_1))`.
    pub fn compose(&self, other: &Endo) -> Result<Endo> {
        let image = self.apply(&other.image_of_generator())?;
        Ok(Endo::from_element(image))
    }

    fn from_element(image: Element) -> Endo {
        let field = image.field();
        let len = image.max_support().unwrap_or(0) as usize;
        let gamma = (1..=len as u32).map(|n| image.coeff(n)).collect();
        Endo { field, gamma }
    }

    pub fn classify(&self) -> EndoClass {
        if self.gamma1().is_zero() {
            EndoClass::ZeroSquareIdeal
        } else if self.degree() == 1 {
            EndoClass::Automorphism
        } else {
            EndoClass::MonomorphismProper
        }
    }

    /// Inverse of a diagonal automorphism. Proper monomorphisms have no
    /// inverse within the finitely-supported maps.
    pub fn inverse(&self) -> Result<Endo> {
        match self.classify() {
            EndoClass::Automorphism => Ok(Endo::diagonal(self.gamma1().inv()?)),
            _ => Err(Error::NotInvertible),
        }
    }

    /// Splits a monomorphism as `u ∘ d` with `u` unipotent (`g_1 = 1`) and
    /// `d` the diagonal map by `g_1`.
    pub fn factorize(&self) -> Result<MonFactorization> {
        let g1 = self.gamma1();
        if g1.is_zero() {
            return Err(Error::NotMonomorphism);
        }
        let g1_inv = g1.inv()?;
        let mut u = Vec::with_capacity(self.gamma.len());
        u.push(self.field.one());
        for g in &self.gamma[1..] {
            u.push(g1_inv.mul(g)?);
        }
        Ok(MonFactorization { unipotent: Endo::from_gamma(self.field, u)?, diagonal: g1 })
    }

    /// The polynomial with constant term 1 attached to a unipotent map:
    /// the coefficient of `X^(k-1)` is `g_k`. A monoid isomorphism onto
    /// the unit-constant polynomials.
    pub fn phi(&self) -> Result<Polynomial> {
        if !self.is_unipotent() {
            return Err(Error::NotUnipotent);
        }
        Polynomial::new(self.field, self.gamma.clone())
    }

    /// Inverse transcription of [`Endo::phi`].
    pub fn phi_inverse(p: &Polynomial) -> Result<Endo> {
        if !p.unit_constant() {
            return Err(Error::BadConstantTerm);
        }
        Endo::from_gamma(p.field(), p.coeffs().to_vec())
    }

    /// Conjugation of a unipotent map by the diagonal map of `mu`:
    /// `d^{-1} ∘ u ∘ d` in closed form, `g_k -> mu^(1-k) * g_k`. The result
    /// is again unipotent.
    pub fn conjugate_diag(&self, mu: &Scalar) -> Result<Endo> {
        if mu.is_zero() {
            return Err(Error::ZeroDiagonal);
        }
        if !self.is_unipotent() {
            return Err(Error::NotUnipotent);
        }
        if mu.field() != self.field {
            return Err(Error::MixedFields(self.field, mu.field()));
        }
        let mut gamma = Vec::with_capacity(self.gamma.len());
        for (i, g) in self.gamma.iter().enumerate() {
            // k = i + 1, factor mu^(1-k) = mu^(-i)
            gamma.push(mu.pow(-(i as i64))?.mul(g)?);
        }
        Endo::from_gamma(self.field, gamma)
    }
}

impl fmt::Display for Endo {
    /// Endo syntax, e.g. `endo [1, 1/2]`; the zero map prints `endo [0]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "endo {}", format_gamma(&self.gamma, self.field))
    }
}

pub(crate) fn format_gamma(gamma: &[Scalar], field: FieldDescriptor) -> String {
    if gamma.is_empty() {
        return format!("[{}]", field.zero());
    }
    let parts: Vec<String> = gamma.iter().map(Scalar::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Parses a bracketed scalar list like `[1, 1/2, 0]` starting at `base`
/// bytes into the caller's input.
pub(crate) fn parse_gamma_list(
    field: FieldDescriptor,
    text: &str,
    base: usize,
) -> Result<Vec<Scalar>> {
    let t = text.trim();
    let at = base + (text.len() - text.trim_start().len());
    let inner = t
        .strip_prefix('[')
        .and_then(|rest| rest.strip_suffix(']'))
        .ok_or_else(|| Error::parse(at, "expected a bracketed list like [1, 2]"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = at + 1;
    for piece in inner.split(',') {
        out.push(parse_scalar_at(field, piece, offset)?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// Parses the endo syntax `endo [g1, ..., gn]`.
pub fn parse_endo(field: FieldDescriptor, text: &str) -> Result<Endo> {
    let t = text.trim_start();
    let at = text.len() - t.len();
    let rest = t
        .strip_prefix("endo")
        .ok_or_else(|| Error::parse(at, "expected `endo [g1, ..., gn]`"))?;
    Endo::from_gamma(field, parse_gamma_list(field, rest, at + 4)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::parse_element;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn endo(gammas: &[i64]) -> Endo {
        Endo::from_gamma(q(), gammas.iter().map(|g| q().integer(*g)).collect()).unwrap()
    }

    fn el(s: &str) -> Element {
        parse_element(q(), s).unwrap()
    }

    #[test]
    fn from_gamma_normalizes() {
        assert_eq!(endo(&[1]), Endo::identity(q()));
        assert_eq!(endo(&[0]), Endo::zero(q()));
        assert_eq!(endo(&[1, 1, 0, 0]).degree(), 2);
        assert_eq!(endo(&[1, 1]).image_of_generator(), el("a1 + a2"));
    }

    #[test]
    fn apply_examples() {
        // diagonal map scales a_s by g_1^s
        assert_eq!(endo(&[2]).apply(&el("a3")).unwrap(), el("8*a3"));
        assert_eq!(endo(&[1, 1]).apply(&el("a2")).unwrap(), el("a2 + a3"));
        // maps in the ideal kill everything past a_1
        assert!(endo(&[0, 1]).apply(&el("a2")).unwrap().is_zero());
    }

    #[test]
    fn compose_examples() {
        let sq = endo(&[0, 1]);
        assert!(sq.compose(&sq).unwrap().is_zero());

        let g = endo(&[3, 0, 2]);
        assert_eq!(Endo::identity(q()).compose(&g).unwrap(), g);
        assert_eq!(g.compose(&Endo::identity(q())).unwrap(), g);

        let u = endo(&[1, 1]);
        assert_eq!(u.compose(&u).unwrap(), endo(&[1, 2, 1]));
    }

    #[test]
    fn homomorphism_law_spot_check() {
        let f = endo(&[2, 1, 3]);
        let x = el("a1 + 2*a2");
        let y = el("3*a1 - a4");
        let lhs = f.apply(&x.bracket(&y).unwrap()).unwrap();
        let rhs = f.apply(&x).unwrap().bracket(&f.apply(&y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(endo(&[0, 1]).classify(), EndoClass::ZeroSquareIdeal);
        assert_eq!(Endo::zero(q()).classify(), EndoClass::ZeroSquareIdeal);
        assert_eq!(endo(&[2]).classify(), EndoClass::Automorphism);
        assert_eq!(endo(&[1, 1]).classify(), EndoClass::MonomorphismProper);
    }

    #[test]
    fn inverse_examples() {
        let two = endo(&[2]);
        let half = two.inverse().unwrap();
        assert_eq!(half, Endo::diagonal(q().parse_scalar("1/2").unwrap()));
        assert_eq!(two.compose(&half).unwrap(), Endo::identity(q()));
        assert_eq!(half.compose(&two).unwrap(), Endo::identity(q()));
        assert_eq!(Endo::identity(q()).inverse().unwrap(), Endo::identity(q()));
        assert_eq!(endo(&[1, 1]).inverse(), Err(Error::NotInvertible));
        assert_eq!(endo(&[0, 1]).inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn factorization_examples() {
        let f = endo(&[2, 4]);
        let split = f.factorize().unwrap();
        assert_eq!(split.unipotent, endo(&[1, 2]));
        assert_eq!(split.diagonal, q().integer(2));
        let recomposed =
            split.unipotent.compose(&Endo::diagonal(split.diagonal.clone())).unwrap();
        assert_eq!(recomposed, f);

        let already = endo(&[1, 1]).factorize().unwrap();
        assert_eq!(already.unipotent, endo(&[1, 1]));
        assert!(already.diagonal.is_one());

        assert_eq!(endo(&[0, 1]).factorize(), Err(Error::NotMonomorphism));
    }

    #[test]
    fn phi_examples() {
        use crate::poly::parse_polynomial;
        let p = |s: &str| parse_polynomial(q(), s).unwrap();

        assert_eq!(Endo::identity(q()).phi().unwrap(), p("1"));
        assert_eq!(endo(&[1, 1]).phi().unwrap(), p("1 + X"));
        assert_eq!(endo(&[1, 2, 1]).phi().unwrap(), p("1 + 2*X + X^2"));
        // homomorphism: (1 + X)^2 from the compose example
        let u = endo(&[1, 1]);
        assert_eq!(
            u.compose(&u).unwrap().phi().unwrap(),
            u.phi().unwrap().mul(&u.phi().unwrap()).unwrap()
        );
        assert_eq!(endo(&[2]).phi(), Err(Error::NotUnipotent));

        assert_eq!(Endo::phi_inverse(&p("1")).unwrap(), Endo::identity(q()));
        assert_eq!(Endo::phi_inverse(&p("1 + 3*X^2")).unwrap(), endo(&[1, 0, 3]));
        assert_eq!(Endo::phi_inverse(&p("2 + X")), Err(Error::BadConstantTerm));
        // round trip through the product
        assert_eq!(
            Endo::phi_inverse(&p("1 + X").mul(&p("1 + X")).unwrap()).unwrap(),
            u.compose(&u).unwrap()
        );
    }

    #[test]
    fn conjugation_examples() {
        let u = endo(&[1, 1]);
        let conj = u.conjugate_diag(&q().integer(2)).unwrap();
        assert_eq!(conj, Endo::from_gamma(q(), vec![q().one(), q().parse_scalar("1/2").unwrap()]).unwrap());

        assert_eq!(
            Endo::identity(q()).conjugate_diag(&q().integer(5)).unwrap(),
            Endo::identity(q())
        );
        // mu^(1-3) = 1 for mu = -1
        assert_eq!(endo(&[1, 0, 3]).conjugate_diag(&q().integer(-1)).unwrap(), endo(&[1, 0, 3]));

        assert_eq!(u.conjugate_diag(&q().zero()), Err(Error::ZeroDiagonal));
        assert_eq!(endo(&[2, 1]).conjugate_diag(&q().one()), Err(Error::NotUnipotent));

        // closed form agrees with actual composition d^{-1} o u o d
        let mu = q().integer(3);
        let d = Endo::diagonal(mu.clone());
        let by_composition =
            d.inverse().unwrap().compose(&u.compose(&d).unwrap()).unwrap();
        assert_eq!(u.conjugate_diag(&mu).unwrap(), by_composition);
    }

    #[test]
    fn parse_and_display() {
        let f = endo(&[1, 0, 3]);
        assert_eq!(f.to_string(), "endo [1, 0, 3]");
        assert_eq!(parse_endo(q(), "endo [1, 0, 3]").unwrap(), f);
        assert_eq!(parse_endo(q(), "  endo [ 1 , 0 , 3 ]  ").unwrap(), f);
        assert_eq!(parse_endo(q(), &f.to_string()).unwrap(), f);
        assert_eq!(Endo::zero(q()).to_string(), "endo [0]");
        assert!(parse_endo(q(), "endo 1, 2").is_err());
        assert!(parse_endo(q(), "der [1]").is_err());
    }

    #[test]
    fn gf_composition_wraps() {
        let gf5 = FieldDescriptor::prime_field(5).unwrap();
        let f = Endo::from_gamma(gf5, vec![gf5.integer(2), gf5.integer(3)]).unwrap();
        let g = Endo::from_gamma(gf5, vec![gf5.integer(4)]).unwrap();
        // f(g(a1)) = f(4*a1) = 4*(2*a1 + 3*a2) = 8*a1 + 12*a2 = 3*a1 + 2*a2 mod 5
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.gamma(), &[gf5.integer(3), gf5.integer(2)]);
    }
}
