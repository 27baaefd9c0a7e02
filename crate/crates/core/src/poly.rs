//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldCtx};
use crate::rational::{exact_sqrt, positive_divisors, Rational};

/// A polynomial in `t`, coefficients lowest degree first. The leading
/// coefficient is nonzero unless the polynomial is zero (empty `coeffs`).
#[derive(Clone)]
pub struct Poly<F: Field = FieldCtx> {
    field: F,
    coeffs: Vec<F::Elem>,
}

/// A polynomial over the base field.
pub type UPoly = Poly<FieldCtx>;

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Poly {
            field,
            coeffs: vec![one],
        }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// `c * t^deg`.
    pub fn monomial(field: F, c: F::Elem, deg: usize) -> Self {
        let mut coeffs = vec![field.zero(); deg];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    /// The indeterminate `t`.
    pub fn t(field: F) -> Self {
        let one = field.one();
        Poly::monomial(field, one, 1)
    }

    pub fn from_ints(field: F, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| field.from_int(c)).collect();
        Poly::new(field, cs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(Poly::new(self.field.clone(), cs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..n)
            .map(|i| self.field.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(Poly::new(self.field.clone(), cs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field.clone()));
        }
        let f = &self.field;
        let mut cs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                cs[i + j] = f.add(&cs[i + j], &f.mul(a, b));
            }
        }
        Ok(Poly::new(f.clone(), cs))
    }

    pub fn neg(&self) -> Self {
        let cs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly {
            field: self.field.clone(),
            coeffs: cs,
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let cs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Poly::new(self.field.clone(), cs)
    }

    /// Euclidean division: `(q, r)` with `self = q*g + r`, `deg r < deg g`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self)> {
        self.check_field(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f
            .inv(g.leading().unwrap())
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len().saturating_sub(dg)];
        while rem.len() > dg {
            let top = rem.len() - 1;
            let c = f.mul(rem.last().unwrap(), &lead_inv);
            let shift = top - dg;
            for (i, gc) in g.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(&rem[shift + i], &f.mul(&c, gc));
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|x| f.is_zero(x)) {
                rem.pop();
            }
        }
        Ok((Poly::new(f.clone(), quot), Poly::new(f.clone(), rem)))
    }

    pub fn rem(&self, g: &Self) -> Result<Self> {
        Ok(self.divmod(g)?.1)
    }

    /// Scales to leading coefficient 1.
    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        let inv = self.field.inv(lead).expect("nonzero leading coefficient");
        Ok(self.scale(&inv))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.check_field(other)?;
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f.clone()), Poly::zero(f.clone()));
        let (mut t0, mut t1) = (Poly::zero(f.clone()), Poly::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => Ok((r0, s0, t0)),
            Some(lead) => {
                let inv = f.inv(lead).unwrap();
                Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
            }
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
            .collect();
        Poly::new(f.clone(), cs)
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Maps the coefficients into another field.
    pub fn map<G: Field>(&self, target: G, phi: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        let cs = self.coeffs.iter().map(phi).collect();
        Poly::new(target, cs)
    }

    /// `gcd(f, f')` is constant.
    pub fn is_separable(&self) -> Result<bool> {
        if self.degree().unwrap_or(0) == 0 {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative())?;
        Ok(g.degree() == Some(0))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one(self.field.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

macro_rules! poly_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, F: Field> std::ops::$tr<&'a Poly<F>> for &'a Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: &Poly<F>) -> Poly<F> {
                self.$checked(rhs)
                    .expect("polynomials over different fields")
            }
        }
    };
}

poly_op!(Add, add, checked_add);
poly_op!(Sub, sub, checked_sub);
poly_op!(Mul, mul, checked_mul);

impl<F: Field> fmt::Display for Poly<F> {
    /// Renders like `t^2 - 2*t + 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let s = self.field.render(c);
            let compound = s.contains(' ');
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, s.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff_str = if compound { format!("({mag})") } else { mag };
            match i {
                0 => write!(f, "{coeff_str}")?,
                _ => {
                    if coeff_str != "1" {
                        write!(f, "{coeff_str}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Poly<FieldCtx> {
    pub fn ctx(&self) -> FieldCtx {
        self.field
    }

    /// Decides irreducibility of a monic polynomial of positive degree.
    ///
    /// Over 𝔽_p every monic candidate factor of degree at most `deg/2` is
    /// tried. Over ℚ the polynomial is rescaled to a monic integer polynomial
    /// and searched for integer roots and, in degree 4, monic integer
    /// quadratic factors; degrees above 4 are rejected.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        if n == 0 {
            return Err(Error::InvalidInput("constant polynomial".into()));
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if n == 1 {
            return Ok(true);
        }
        match self.field {
            FieldCtx::Prime(p) => Ok(irreducible_mod_p(self, p)),
            FieldCtx::Rational => {
                if n > 4 {
                    return Err(Error::UnsupportedDegree(n));
                }
                Ok(irreducible_over_q(self))
            }
        }
    }
}

/// Every monic polynomial over 𝔽_p of the given degree.
pub(crate) fn monic_polys_mod_p(p: u64, deg: usize) -> impl Iterator<Item = UPoly> {
    let ctx = FieldCtx::Prime(p);
    let total = (p as u128).pow(deg as u32);
    (0..total).map(move |mut idx| {
        let mut cs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            cs.push(ctx.from_int((idx % p as u128) as i64));
            idx /= p as u128;
        }
        cs.push(ctx.one());
        Poly::new(ctx, cs)
    })
}

fn irreducible_mod_p(f: &UPoly, p: u64) -> bool {
    let n = f.degree().unwrap();
    for k in 1..=n / 2 {
        for g in monic_polys_mod_p(p, k) {
            if f.rem(&g).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

/// Coefficients of `L^n f(t/L)`, a monic integer polynomial when `L` clears
/// all denominators of the monic rational `f`.
fn monic_integer_model(f: &UPoly) -> Vec<BigInt> {
    let n = f.degree().unwrap();
    let rats: Vec<Rational> = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    let mut l = BigInt::one();
    for r in &rats {
        l = num_integer::lcm(l, r.denom());
    }
    // coefficient of t^i becomes c_i * L^(n-i)
    (0..=n)
        .map(|i| {
            let scaled = rats[i].to_big()
                * num_rational::BigRational::from_integer(num_traits::pow(l.clone(), n - i));
            assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect()
}

fn eval_int(h: &[BigInt], x: &BigInt) -> BigInt {
    h.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn irreducible_over_q(f: &UPoly) -> bool {
    let h = monic_integer_model(f);
    let n = h.len() - 1;
    if h[0].is_zero() {
        return false;
    }
    // Integer roots divide the constant term.
    for d in positive_divisors(&h[0]) {
        if eval_int(&h, &d).is_zero() || eval_int(&h, &-d).is_zero() {
            return false;
        }
    }
    if n <= 3 {
        return true;
    }
    // n == 4: look for h = (t^2 + b t + c)(t^2 + e t + g) over ℤ.
    let (h0, h1, h2, h3) = (&h[0], &h[1], &h[2], &h[3]);
    for d in positive_divisors(h0) {
        for c in [d.clone(), -d] {
            let g = h0 / &c;
            if g != c {
                // b + e = h3, c e + g b = h1  =>  b (g - c) = h1 - c h3
                let num = h1 - &c * h3;
                let den = &g - &c;
                if (&num % &den).is_zero() {
                    let b = &num / &den;
                    let e = h3 - &b;
                    if &c + &g + &b * &e == *h2 {
                        return false;
                    }
                }
            } else if *h1 == &c * h3 {
                // b, e are the roots of z^2 - h3 z + (h2 - 2c).
                let disc = h3 * h3 - BigInt::from(4) * (h2 - BigInt::from(2) * &c);
                if let Some(s) = exact_sqrt(&disc) {
                    if ((h3 + &s) % BigInt::from(2)).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Squarefree exponents by brute force over 𝔽_p: the multiset of exponents
/// in a complete factorization into monic irreducibles. Test oracle only.
#[cfg(test)]
pub(crate) fn factor_exponents_mod_p(f: &UPoly, p: u64) -> Vec<usize> {
    let mut f = f.monic().unwrap();
    let mut exps = Vec::new();
    let mut k = 1;
    while f.degree().unwrap() > 0 {
        if 2 * k > f.degree().unwrap() {
            // what remains is irreducible
            exps.push(1);
            break;
        }
        // Lower-degree factors are already divided out, so any g that
        // divides here is irreducible.
        for g in monic_polys_mod_p(p, k) {
            let mut e = 0;
            loop {
                let (q, r) = f.divmod(&g).unwrap();
                if !r.is_zero() {
                    break;
                }
                f = q;
                e += 1;
            }
            if e > 0 {
                exps.push(e);
            }
        }
        k += 1;
    }
    exps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElem;

    fn q(cs: &[i64]) -> UPoly {
        Poly::from_ints(FieldCtx::Rational, cs)
    }

    fn fp(p: u64, cs: &[i64]) -> UPoly {
        Poly::from_ints(FieldCtx::prime(p).unwrap(), cs)
    }

    #[test]
    fn gcd_common_factor() {
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 1])).unwrap(), q(&[-1, 1]));
    }

    #[test]
    fn divmod_simple() {
        let (qq, r) = q(&[1, 0, 1]).divmod(&q(&[0, 1])).unwrap();
        assert_eq!(qq, q(&[0, 1]));
        assert_eq!(r, q(&[1]));
    }

    #[test]
    fn product_difference_of_squares() {
        assert_eq!(&q(&[1, 1]) * &q(&[-1, 1]), q(&[-1, 0, 1]));
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        assert_eq!(q(&[1, 1]).divmod(&q(&[])), Err(Error::DivisionByZero));
        assert_eq!(
            q(&[1]).checked_add(&fp(5, &[1])),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn separability() {
        assert!(q(&[-2, 0, 1]).is_separable().unwrap());
        assert!(!fp(2, &[0, 0, 1]).is_separable().unwrap());
        assert!(!q(&[1, -2, 1]).is_separable().unwrap());
        assert_eq!(q(&[3]).is_separable(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(q(&[1, 0, 1]).is_irreducible().unwrap());
        assert!(!fp(5, &[1, 0, 1]).is_irreducible().unwrap());
        // 3^2 = 2 in F_7, so t^2 - 2 splits there; 3 is a non-residue.
        assert!(!fp(7, &[-2, 0, 1]).is_irreducible().unwrap());
        assert!(fp(7, &[-3, 0, 1]).is_irreducible().unwrap());
        assert_eq!(
            q(&[1, 0, 0, 0, 0, 1]).is_irreducible(),
            Err(Error::UnsupportedDegree(5))
        );
    }

    #[test]
    fn quartic_factorizations_over_q() {
        // t^4 - 10 t^2 + 1 is the minimal polynomial of sqrt2 + sqrt3.
        assert!(q(&[1, 0, -10, 0, 1]).is_irreducible().unwrap());
        // (t^2+1)(t^2+2): no roots, splits into quadratics with c != g.
        assert!(!q(&[2, 0, 3, 0, 1]).is_irreducible().unwrap());
        // (t^2+t+1)^2: the c == g branch.
        assert!(!q(&[1, 2, 3, 2, 1]).is_irreducible().unwrap());
        // (t^2 - 2)(t^2 + 2) = t^4 - 4.
        assert!(!q(&[-4, 0, 0, 0, 1]).is_irreducible().unwrap());
        // t^4 + 1 is irreducible over Q.
        assert!(q(&[1, 0, 0, 0, 1]).is_irreducible().unwrap());
        // Rational coefficients: t^2 - 1/4 = (t - 1/2)(t + 1/2).
        let f = UPoly::new(
            FieldCtx::Rational,
            vec![
                FieldCtx::Rational.parse("-1/4").unwrap(),
                FieldCtx::Rational.from_int(0),
                FieldCtx::Rational.from_int(1),
            ],
        );
        assert!(!f.is_irreducible().unwrap());
        // t^4 + t^3/2 + 1 has no rational factorization.
        let g = UPoly::new(
            FieldCtx::Rational,
            vec![
                FieldCtx::Rational.from_int(1),
                FieldCtx::Rational.from_int(0),
                FieldCtx::Rational.from_int(0),
                FieldCtx::Rational.parse("1/2").unwrap(),
                FieldCtx::Rational.from_int(1),
            ],
        );
        assert_eq!(g.is_irreducible(), Ok(irreducible_by_brute_force(&g)));
    }

    /// Exhaustive search for monic rational factors with small numerators
    /// and denominators; independent of the integer-model argument.
    fn irreducible_by_brute_force(f: &UPoly) -> bool {
        let n = f.degree().unwrap();
        let vals: Vec<FieldElem> = (-6..=6)
            .flat_map(|a| {
                (1..=4).map(move |b| FieldCtx::Rational.rational(&Rational::new(a, b)).unwrap())
            })
            .collect();
        for k in 1..=n / 2 {
            let mut idx = vec![0usize; k];
            loop {
                let mut cs: Vec<FieldElem> = idx.iter().map(|&i| vals[i].clone()).collect();
                cs.push(FieldCtx::Rational.from_int(1));
                let g = UPoly::new(FieldCtx::Rational, cs);
                if f.rem(&g).unwrap().is_zero() {
                    return false;
                }
                let mut pos = 0;
                while pos < k {
                    idx[pos] += 1;
                    if idx[pos] < vals.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
        true
    }

    #[test]
    fn quadratic_irreducibility_matches_brute_force() {
        for a in -5..=5 {
            for b in -5..=5 {
                let f = q(&[b, a, 1]);
                assert_eq!(
                    f.is_irreducible().unwrap(),
                    irreducible_by_brute_force(&f),
                    "{f}"
                );
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(q(&[4, -2, 1]).to_string(), "t^2 - 2*t + 4");
        assert_eq!(q(&[0, 0, -1]).to_string(), "-t^2");
        assert_eq!(q(&[]).to_string(), "0");
        assert_eq!(fp(5, &[-1, 1]).to_string(), "t + 4");
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = q(&[1, 0, 1]);
        let b = q(&[2, 1]);
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(g, q(&[1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn separable_iff_squarefree_exhaustive() {
        for p in [2u64, 3, 5, 7] {
            for deg in 1..=5usize {
                if (p as u128).pow(deg as u32) > 20_000 {
                    continue;
                }
                for f in monic_polys_mod_p(p, deg) {
                    let squarefree = factor_exponents_mod_p(&f, p).iter().all(|&e| e == 1);
                    assert_eq!(f.is_separable().unwrap(), squarefree, "{f} over F_{p}");
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(max_deg: usize) -> impl Strategy<Value = UPoly> {
            proptest::collection::vec(-20i64..20, 0..=max_deg + 1).prop_map(|cs| q(&cs))
        }

        proptest! {
            #[test]
            fn divmod_reconstructs(f in arb_poly(6), g in arb_poly(4)) {
                prop_assume!(!g.is_zero());
                let (qq, r) = f.divmod(&g).unwrap();
                prop_assert_eq!(&(&qq * &g) + &r, f);
                prop_assert!(r.is_zero() || r.degree() < g.degree());
            }

            #[test]
            fn gcd_divides_both(f in arb_poly(5), g in arb_poly(5), h in arb_poly(2)) {
                let (f, g) = (&f * &h, &g * &h);
                prop_assume!(!f.is_zero() || !g.is_zero());
                let d = f.gcd(&g).unwrap();
                prop_assert!(d.is_monic());
                prop_assert!(f.rem(&d).unwrap().is_zero());
                prop_assert!(g.rem(&d).unwrap().is_zero());
            }
        }
    }
}
