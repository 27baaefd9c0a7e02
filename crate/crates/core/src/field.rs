//! Exact base fields: the rationals and prime fields.
//!
//! Linear algebra and polynomial code is written against the [`Field`] trait,
//! a context object that carries whatever an element needs to be combined
//! (the modulus of a prime field, the defining polynomial of an extension).
//! [`FieldCtx`] is the base-field implementation; [`crate::ext::ExtField`]
//! provides simple extensions `F(u)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A field given by a context object; elements are plain values.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Human-readable rendering of an element; compound values (sums) must
    /// contain a space so callers know to parenthesize them.
    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The base field: either ℚ or 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldCtx {
    Rational,
    Prime(u64),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// The prime field 𝔽_p; fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldCtx::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldCtx::Rational => None,
            FieldCtx::Prime(p) => Some(*p),
        }
    }

    pub fn rational(&self, r: &Rational) -> Result<FieldElem> {
        match self {
            FieldCtx::Rational => Ok(FieldElem::Rational(r.clone())),
            FieldCtx::Prime(_) => {
                let num = self.from_bigint(&r.numer());
                let den = self.from_bigint(&r.denom());
                let den_inv = den.inv().ok_or(Error::DivisionByZero)?;
                Ok(&num * &den_inv)
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match self {
            FieldCtx::Rational => FieldElem::Rational(Rational::from_bigint(n.clone())),
            FieldCtx::Prime(p) => {
                let m = BigInt::from(*p);
                let r = ((n % &m) + &m) % &m;
                FieldElem::Residue {
                    value: r.to_u64().unwrap(),
                    modulus: *p,
                }
            }
        }
    }

    /// Parses a literal: `-3/2` style over ℚ, a decimal residue (optionally
    /// signed, reduced mod p) over 𝔽_p.
    pub fn parse(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        let r: Rational = s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("malformed scalar literal `{s}`")))?;
        match self {
            FieldCtx::Prime(_) if !r.is_integer() => Err(Error::InvalidInput(format!(
                "prime-field literal `{s}` must be an integer"
            ))),
            _ => self.rational(&r),
        }
    }

    /// All field elements, for finite fields.
    pub fn elements(&self) -> Option<Vec<FieldElem>> {
        match self {
            FieldCtx::Rational => None,
            FieldCtx::Prime(p) => Some(
                (0..*p)
                    .map(|v| FieldElem::Residue {
                        value: v,
                        modulus: *p,
                    })
                    .collect(),
            ),
        }
    }
}

/// An exact scalar. Rational values are always reduced with a positive
/// denominator; residues always lie in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldElem {
    Rational(Rational),
    Residue { value: u64, modulus: u64 },
}

/// The four field operations, for [`field_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic on two scalars.
pub fn field_arithmetic(x: &FieldElem, y: &FieldElem, op: BinOp) -> Result<FieldElem> {
    match op {
        BinOp::Add => x.checked_add(y),
        BinOp::Sub => x.checked_sub(y),
        BinOp::Mul => x.checked_mul(y),
        BinOp::Div => x.checked_div(y),
    }
}

impl FieldElem {
    pub fn ctx(&self) -> FieldCtx {
        match self {
            FieldElem::Rational(_) => FieldCtx::Rational,
            FieldElem::Residue { modulus, .. } => FieldCtx::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_zero(),
            FieldElem::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_one(),
            FieldElem::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElem::Rational(r) => Some(r),
            FieldElem::Residue { .. } => None,
        }
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx() == other.ctx() {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        match self {
            FieldElem::Rational(r) => r.recip().map(FieldElem::Rational),
            FieldElem::Residue { value: 0, .. } => None,
            FieldElem::Residue { value, modulus } => {
                // Fermat: a^(p-2).
                Some(FieldElem::Residue {
                    value: pow_mod(*value, modulus - 2, *modulus),
                    modulus: *modulus,
                })
            }
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn mismatch() -> ! {
    panic!("field context mismatch in scalar arithmetic")
}

impl<'a> std::ops::Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (
                FieldElem::Residue {
                    value: a,
                    modulus: p,
                },
                FieldElem::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => {
                let s = *a as u128 + *b as u128;
                FieldElem::Residue {
                    value: (s % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> std::ops::Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a - b),
            (
                FieldElem::Residue {
                    value: a,
                    modulus: p,
                },
                FieldElem::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => {
                let v = if a >= b { a - b } else { p - (b - a) };
                FieldElem::Residue {
                    value: v,
                    modulus: *p,
                }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> std::ops::Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (
                FieldElem::Residue {
                    value: a,
                    modulus: p,
                },
                FieldElem::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => {
                let v = (*a as u128 * *b as u128) % *p as u128;
                FieldElem::Residue {
                    value: v as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(),
        }
    }
}

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Residue { value: 0, modulus } => FieldElem::Residue {
                value: 0,
                modulus: *modulus,
            },
            FieldElem::Residue { value, modulus } => FieldElem::Residue {
                value: modulus - value,
                modulus: *modulus,
            },
        }
    }
}

impl std::ops::AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, rhs: &FieldElem) {
        *self = &*self + rhs;
    }
}

impl std::ops::SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, rhs: &FieldElem) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(r) => write!(f, "{r}"),
            FieldElem::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rational => write!(f, "Q"),
            FieldCtx::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl Field for FieldCtx {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        self.from_int(0)
    }

    fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    fn from_int(&self, n: i64) -> FieldElem {
        match self {
            FieldCtx::Rational => FieldElem::Rational(Rational::from_int(n)),
            FieldCtx::Prime(p) => {
                let v = n.rem_euclid(*p as i64) as u64;
                FieldElem::Residue {
                    value: v,
                    modulus: *p,
                }
            }
        }
    }

    fn is_zero(&self, a: &FieldElem) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &FieldElem) -> bool {
        a.is_one()
    }

    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a + b
    }

    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a - b
    }

    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a * b
    }

    fn neg(&self, a: &FieldElem) -> FieldElem {
        -a
    }

    fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        a.inv()
    }

    fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    fn render(&self, a: &FieldElem) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldElem {
        FieldElem::Rational(Rational::new(n, d))
    }

    #[test]
    fn rational_addition() {
        assert_eq!(
            field_arithmetic(&q(1, 2), &q(1, 3), BinOp::Add).unwrap(),
            q(5, 6)
        );
    }

    #[test]
    fn prime_multiplication() {
        let f7 = FieldCtx::prime(7).unwrap();
        let r = field_arithmetic(&f7.from_int(3), &f7.from_int(5), BinOp::Mul).unwrap();
        assert_eq!(r, f7.one());
    }

    #[test]
    fn self_subtraction_is_zero() {
        for x in [q(7, 3), q(-1, 9), q(0, 1)] {
            assert!(field_arithmetic(&x, &x, BinOp::Sub).unwrap().is_zero());
        }
    }

    #[test]
    fn errors() {
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(
            field_arithmetic(&q(1, 1), &f5.one(), BinOp::Add),
            Err(Error::ContextMismatch)
        );
        assert_eq!(
            field_arithmetic(&q(1, 1), &q(0, 1), BinOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(FieldCtx::prime(4), Err(Error::NotPrime(4)));
        assert_eq!(FieldCtx::prime(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn inverses_exhaustive_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let ctx = FieldCtx::prime(p).unwrap();
            for x in ctx.elements().unwrap() {
                if x.is_zero() {
                    assert!(x.inv().is_none());
                } else {
                    assert!((&x * &x.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn literals() {
        let f7 = FieldCtx::prime(7).unwrap();
        assert_eq!(f7.parse("-1").unwrap(), f7.from_int(6));
        assert!(f7.parse("1/2").is_err());
        assert_eq!(FieldCtx::Rational.parse(" -3/2 ").unwrap(), q(-3, 2));
        // 1/2 as a rational reduces to 4 in F_7.
        assert_eq!(f7.rational(&Rational::new(1, 2)).unwrap(), f7.from_int(4));
        assert_eq!(
            f7.rational(&Rational::new(1, 7)),
            Err(Error::DivisionByZero)
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rational_inverse(n in -10_000i64..10_000, d in 1i64..10_000) {
                let x = q(n, d);
                prop_assume!(!x.is_zero());
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }

            #[test]
            fn rational_distributive(a in -500i64..500, b in -500i64..500, c in 1i64..500) {
                let (x, y, z) = (q(a, c), q(b, 7), q(c, a.abs() + 1));
                prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            }
        }
    }
}
