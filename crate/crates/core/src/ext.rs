//! Simple extensions `K = F[t]/(m(t))` of a base field.
//!
//! Elements are polynomials in the generator reduced modulo `m`. The
//! modulus is assumed irreducible; inversion fails loudly otherwise.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldCtx, FieldElem};
use crate::poly::UPoly;

#[derive(Debug)]
struct Inner {
    modulus: UPoly,
    var: String,
}

/// The field `F(u)` with `u` a root of an irreducible monic polynomial.
#[derive(Clone)]
pub struct ExtField {
    inner: Arc<Inner>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.modulus == other.inner.modulus
    }
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ExtField({}[{}]/({}))",
            self.base(),
            self.inner.var,
            self.inner.modulus
        )
    }
}

impl ExtField {
    /// `var` names the generator when elements are printed.
    pub fn new(modulus: UPoly, var: impl Into<String>) -> Result<Self> {
        match modulus.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => {
                return Err(Error::InvalidInput(
                    "modulus must have positive degree".into(),
                ))
            }
            _ => {}
        }
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(ExtField {
            inner: Arc::new(Inner {
                modulus,
                var: var.into(),
            }),
        })
    }

    pub fn base(&self) -> FieldCtx {
        self.inner.modulus.ctx()
    }

    pub fn modulus(&self) -> &UPoly {
        &self.inner.modulus
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.degree().unwrap()
    }

    pub fn var(&self) -> &str {
        &self.inner.var
    }

    /// Reduces an arbitrary polynomial in the generator.
    pub fn reduce(&self, p: &UPoly) -> UPoly {
        p.rem(&self.inner.modulus).expect("modulus is nonzero")
    }

    /// The base field embedded as constants.
    pub fn embed(&self, c: &FieldElem) -> UPoly {
        UPoly::constant(self.base(), c.clone())
    }

    /// The generator `u` itself.
    pub fn generator(&self) -> UPoly {
        self.reduce(&UPoly::t(self.base()))
    }

    /// Coefficient vector of length `degree()`.
    pub fn coords(&self, a: &UPoly) -> Vec<FieldElem> {
        (0..self.degree()).map(|i| a.coeff(i)).collect()
    }

    pub fn from_coords(&self, cs: Vec<FieldElem>) -> UPoly {
        self.reduce(&UPoly::new(self.base(), cs))
    }

    /// True if `a` lies in the base field.
    pub fn is_base(&self, a: &UPoly) -> bool {
        a.degree().unwrap_or(0) == 0
    }
}

impl Field for ExtField {
    type Elem = UPoly;

    fn zero(&self) -> UPoly {
        UPoly::zero(self.base())
    }

    fn one(&self) -> UPoly {
        UPoly::one(self.base())
    }

    fn from_int(&self, n: i64) -> UPoly {
        UPoly::constant(self.base(), self.base().from_int(n))
    }

    fn is_zero(&self, a: &UPoly) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &UPoly, b: &UPoly) -> UPoly {
        a + b
    }

    fn sub(&self, a: &UPoly, b: &UPoly) -> UPoly {
        a - b
    }

    fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        self.reduce(&(a * b))
    }

    fn neg(&self, a: &UPoly) -> UPoly {
        a.neg()
    }

    fn inv(&self, a: &UPoly) -> Option<UPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.inner.modulus).expect("same base field");
        assert_eq!(g.degree(), Some(0), "extension modulus is not irreducible");
        Some(self.reduce(&s))
    }

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn render(&self, a: &UPoly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.to_string().replace('t', &self.inner.var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_rationals() {
        let k = ExtField::new(UPoly::from_ints(FieldCtx::Rational, &[1, 0, 1]), "i").unwrap();
        let i = k.generator();
        assert_eq!(k.mul(&i, &i), k.from_int(-1));
        let one_plus_i = k.add(&k.one(), &i);
        let inv = k.inv(&one_plus_i).unwrap();
        assert!(k.is_one(&k.mul(&inv, &one_plus_i)));
        assert_eq!(k.render(&inv), "-1/2*i + 1/2");
        assert_eq!(k.render(&k.neg(&i)), "-i");
    }
}
