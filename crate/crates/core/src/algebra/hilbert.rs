//! Hilbert symbols over ℚ and the division test for rational quaternion
//! algebras.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::rational::Rational;

/// A place of ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// `a = num/den` has the same square class as the integer `num * den`.
fn square_class(a: &Rational) -> BigInt {
    a.numer() * a.denom()
}

/// `n = p^v * u` with `p ∤ u`.
fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut u = n.clone();
    let mut v = 0;
    while (&u % &p).is_zero() {
        u /= &p;
        v += 1;
    }
    (v, u)
}

fn residue(u: &BigInt, m: u64) -> u64 {
    u.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

/// Legendre symbol `(u/p)` for an odd prime `p ∤ u`.
fn legendre(u: &BigInt, p: u64) -> i8 {
    let e = BigInt::from((p - 1) / 2);
    let r = BigInt::from(residue(u, p)).modpow(&e, &BigInt::from(p));
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// The Hilbert symbol `(a, b)_v`: 1 if `a x^2 + b y^2 = z^2` has a
/// nontrivial solution over the completion at `v`, else -1.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let (a, b) = (square_class(a), square_class(b));
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(&a, 2);
            let (beta, v) = split_valuation(&b, 2);
            let eps = |x: &BigInt| u32::from(residue(x, 4) == 3);
            let omega = |x: &BigInt| u32::from(matches!(residue(x, 8), 3 | 5));
            let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            let (alpha, u) = split_valuation(&a, p);
            let (beta, v) = split_valuation(&b, p);
            let mut s: i8 = if (alpha * beta) % 2 == 1 && p % 4 == 3 {
                -1
            } else {
                1
            };
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, p);
            }
            Ok(s)
        }
    }
}

fn odd_prime_divisors(n: &BigInt, out: &mut Vec<u64>) {
    let mut m = n.abs();
    while m.is_even() && !m.is_zero() {
        m /= 2;
    }
    let mut d = 3u64;
    while BigInt::from(d) * BigInt::from(d) <= m {
        let bd = BigInt::from(d);
        if (&m % &bd).is_zero() {
            out.push(d);
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += 2;
    }
    if m > BigInt::one() {
        out.push(m.to_u64().expect("prime factor fits in u64"));
    }
}

/// The places where `(a, b)_v` can be nontrivial, with their symbols:
/// infinity, 2 and the odd primes dividing numerators or denominators.
pub fn local_symbols(a: &Rational, b: &Rational) -> Result<Vec<(Place, i8)>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let mut primes = Vec::new();
    odd_prime_divisors(&square_class(a), &mut primes);
    odd_prime_divisors(&square_class(b), &mut primes);
    primes.sort_unstable();
    primes.dedup();
    let places = [Place::Infinity, Place::Prime(2)]
        .into_iter()
        .chain(primes.into_iter().map(Place::Prime));
    places.map(|v| Ok((v, hilbert_symbol(a, b, v)?))).collect()
}

/// `(a, b / ℚ)` is a division algebra iff some local symbol is -1.
pub fn is_division_quaternion(a: &Rational, b: &Rational) -> Result<bool> {
    Ok(local_symbols(a, b)?.iter().any(|(_, s)| *s == -1))
}
