//! Finite-dimensional algebras over a base field, given by structure
//! constants in a distinguished basis.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldCtx, FieldElem};
use crate::linalg::{Krylov, Matrix};
use crate::poly::UPoly;
use crate::rational::Rational;

pub mod hilbert;

pub use hilbert::{hilbert_symbol, is_division_quaternion, Place};

/// How an algebra was constructed; kept for reporting and parsing.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraKind {
    Quaternion { a: FieldElem, b: FieldElem },
    Matrix { n: usize },
    Table,
}

struct Data {
    ctx: FieldCtx,
    dim: usize,
    names: Vec<String>,
    kind: AlgebraKind,
    // table[i * dim + j] lists the nonzero (k, c) with e_i e_j = sum c e_k
    table: Vec<Vec<(usize, FieldElem)>>,
    unit: Vec<FieldElem>,
    center: OnceLock<Vec<Vec<FieldElem>>>,
    commutative: bool,
}

/// An associative unital algebra. Cheap to clone; clones compare equal.
#[derive(Clone)]
pub struct AlgebraDef {
    data: Arc<Data>,
}

impl PartialEq for AlgebraDef {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.ctx == other.data.ctx
                && self.data.names == other.data.names
                && self.data.table == other.data.table
                && self.data.unit == other.data.unit)
    }
}

impl fmt::Debug for AlgebraDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgebraDef({:?}, dim {} over {})",
            self.data.kind, self.data.dim, self.data.ctx
        )
    }
}

impl AlgebraDef {
    /// Builds an algebra from a dense table `constants[i][j][k]` (the
    /// coefficient of `e_k` in `e_i e_j`) and the coordinates of the unit.
    /// Associativity and the unit law are checked on all basis elements.
    pub fn from_table(
        ctx: FieldCtx,
        names: Vec<String>,
        constants: &[Vec<Vec<FieldElem>>],
        unit: Vec<FieldElem>,
    ) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::InvalidInput(
                "algebra must have positive dimension".into(),
            ));
        }
        let shape_ok = constants.len() == dim
            && constants
                .iter()
                .all(|r| r.len() == dim && r.iter().all(|c| c.len() == dim))
            && unit.len() == dim;
        if !shape_ok {
            return Err(Error::ShapeMismatch(format!(
                "structure constants must be {dim}x{dim}x{dim}"
            )));
        }
        let mut table = Vec::with_capacity(dim * dim);
        for row in constants {
            for entry in row {
                table.push(
                    entry
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k, c.clone()))
                        .collect(),
                );
            }
        }
        Self::build(ctx, names, AlgebraKind::Table, table, unit)
    }

    fn build(
        ctx: FieldCtx,
        names: Vec<String>,
        kind: AlgebraKind,
        table: Vec<Vec<(usize, FieldElem)>>,
        unit: Vec<FieldElem>,
    ) -> Result<Self> {
        let dim = names.len();
        let commutative =
            (0..dim).all(|i| (0..i).all(|j| table[i * dim + j] == table[j * dim + i]));
        let alg = AlgebraDef {
            data: Arc::new(Data {
                ctx,
                dim,
                names,
                kind,
                table,
                unit,
                center: OnceLock::new(),
                commutative,
            }),
        };
        alg.check_associative()?;
        alg.check_unit()?;
        Ok(alg)
    }

    fn check_associative(&self) -> Result<()> {
        let dim = self.dim();
        let basis: Vec<AlgebraElem> = (0..dim).map(|i| self.basis(i)).collect();
        let products: Vec<AlgebraElem> = (0..dim * dim)
            .map(|ij| basis[ij / dim].mul_unchecked(&basis[ij % dim]))
            .collect();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let left = products[i * dim + j].mul_unchecked(&basis[k]);
                    let right = basis[i].mul_unchecked(&products[j * dim + k]);
                    if left != right {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        let one = self.one();
        for i in 0..self.dim() {
            let e = self.basis(i);
            if one.mul_unchecked(&e) != e || e.mul_unchecked(&one) != e {
                return Err(Error::BadUnit);
            }
        }
        Ok(())
    }

    /// The quaternion algebra `(a, b / F)` with basis `1, i, j, k`,
    /// `i^2 = a`, `j^2 = b`, `ij = k = -ji`.
    pub fn quaternion(ctx: FieldCtx, a: FieldElem, b: FieldElem) -> Result<Self> {
        if ctx.characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if a.ctx() != ctx || b.ctx() != ctx {
            return Err(Error::ContextMismatch);
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let one = ctx.one();
        let ab = &a * &b;
        // Products e_x e_y = c e_z, indexed 0 = 1, 1 = i, 2 = j, 3 = k.
        let rules: [[(usize, FieldElem); 4]; 4] = [
            [
                (0, one.clone()),
                (1, one.clone()),
                (2, one.clone()),
                (3, one.clone()),
            ],
            [
                (1, one.clone()),
                (0, a.clone()),
                (3, one.clone()),
                (2, a.clone()),
            ],
            [(2, one.clone()), (3, -&one), (0, b.clone()), (1, -&b)],
            [(3, one.clone()), (2, -&a), (1, b.clone()), (0, -&ab)],
        ];
        let table = rules
            .iter()
            .flat_map(|row| row.iter().map(|(k, c)| vec![(*k, c.clone())]))
            .collect();
        let names = ["1", "i", "j", "k"].map(String::from).to_vec();
        let mut unit = vec![ctx.zero(); 4];
        unit[0] = ctx.one();
        Self::build(ctx, names, AlgebraKind::Quaternion { a, b }, table, unit)
    }

    /// The full matrix algebra `M_n(F)` on matrix units `e_rs` (1-based
    /// names, row-major basis order).
    pub fn matrix_algebra(ctx: FieldCtx, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix size must be at least 1".into()));
        }
        let dim = n * n;
        let mut table = vec![Vec::new(); dim * dim];
        for r in 0..n {
            for s in 0..n {
                for v in 0..n {
                    table[(r * n + s) * dim + s * n + v] = vec![(r * n + v, ctx.one())];
                }
            }
        }
        let names = (0..dim)
            .map(|k| format!("e{}{}", k / n + 1, k % n + 1))
            .collect();
        let unit = (0..dim)
            .map(|k| {
                if k / n == k % n {
                    ctx.one()
                } else {
                    ctx.zero()
                }
            })
            .collect();
        Self::build(ctx, names, AlgebraKind::Matrix { n }, table, unit)
    }

    /// `F(√a)` as a 2-dimensional commutative algebra with basis `1, s`.
    pub fn quadratic_field(ctx: FieldCtx, a: FieldElem) -> Result<Self> {
        let z = ctx.zero();
        let o = ctx.one();
        let constants = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![a, z.clone()]],
        ];
        Self::from_table(ctx, vec!["1".into(), "s".into()], &constants, vec![o, z])
    }

    /// `F(√a, √b)` with basis `1, s, t, st` (`s^2 = a`, `t^2 = b`).
    pub fn biquadratic_field(ctx: FieldCtx, a: FieldElem, b: FieldElem) -> Result<Self> {
        // Basis index encodes the exponents: bit 0 for s, bit 1 for t.
        let mut constants = vec![vec![vec![ctx.zero(); 4]; 4]; 4];
        for x in 0..4usize {
            for y in 0..4usize {
                let mut c = ctx.one();
                if x & y & 1 != 0 {
                    c = &c * &a;
                }
                if x & y & 2 != 0 {
                    c = &c * &b;
                }
                constants[x][y][x ^ y] = c;
            }
        }
        let mut unit = vec![ctx.zero(); 4];
        unit[0] = ctx.one();
        let names = ["1", "s", "t", "st"].map(String::from).to_vec();
        Self::from_table(ctx, names, &constants, unit)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.data.ctx
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    pub fn names(&self) -> &[String] {
        &self.data.names
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.data.kind
    }

    pub fn is_commutative(&self) -> bool {
        self.data.commutative
    }

    /// `n` with `n^2 = dim`, if the dimension is a perfect square.
    pub fn degree(&self) -> Option<usize> {
        let n = (self.dim() as f64).sqrt().round() as usize;
        (n * n == self.dim()).then_some(n)
    }

    /// Dense structure constant: coefficient of `e_k` in `e_i e_j`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> FieldElem {
        self.data.table[i * self.dim() + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| self.ctx().zero(), |(_, c)| c.clone())
    }

    pub fn zero(&self) -> AlgebraElem {
        AlgebraElem {
            alg: self.clone(),
            coords: vec![self.ctx().zero(); self.dim()],
        }
    }

    pub fn one(&self) -> AlgebraElem {
        AlgebraElem {
            alg: self.clone(),
            coords: self.data.unit.clone(),
        }
    }

    pub fn basis(&self, i: usize) -> AlgebraElem {
        let mut coords = vec![self.ctx().zero(); self.dim()];
        coords[i] = self.ctx().one();
        AlgebraElem {
            alg: self.clone(),
            coords,
        }
    }

    pub fn scalar(&self, c: &FieldElem) -> AlgebraElem {
        self.one().scale(c)
    }

    pub fn element(&self, coords: Vec<FieldElem>) -> Result<AlgebraElem> {
        if coords.len() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        if coords.iter().any(|c| c.ctx() != self.ctx()) {
            return Err(Error::ContextMismatch);
        }
        Ok(AlgebraElem {
            alg: self.clone(),
            coords,
        })
    }

    pub fn from_ints(&self, coords: &[i64]) -> Result<AlgebraElem> {
        self.element(coords.iter().map(|&c| self.ctx().from_int(c)).collect())
    }

    /// Index of the basis element with the given name.
    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.data.names.iter().position(|n| n == name)
    }

    /// Basis of the center `{z : z e_i = e_i z for all i}`.
    pub fn center(&self) -> Vec<AlgebraElem> {
        self.center_coords()
            .iter()
            .map(|c| AlgebraElem {
                alg: self.clone(),
                coords: c.clone(),
            })
            .collect()
    }

    pub fn center_dim(&self) -> usize {
        self.center_coords().len()
    }

    fn center_coords(&self) -> &Vec<Vec<FieldElem>> {
        self.data.center.get_or_init(|| {
            let dim = self.dim();
            let ctx = self.ctx();
            // Row (i, k), column s: coefficient of e_k in e_s e_i - e_i e_s.
            let m = Matrix::from_fn(ctx, dim * dim, dim, |row, s| {
                let (i, k) = (row / dim, row % dim);
                &self.constant(s, i, k) - &self.constant(i, s, k)
            });
            m.nullspace()
        })
    }

    /// Matrix of `y -> x y` in the distinguished basis.
    pub fn left_mult_matrix(&self, x: &AlgebraElem) -> Matrix {
        let cols: Vec<AlgebraElem> = (0..self.dim())
            .map(|j| x.mul_unchecked(&self.basis(j)))
            .collect();
        Matrix::from_fn(self.ctx(), self.dim(), self.dim(), |r, c| {
            cols[c].coords[r].clone()
        })
    }
}

/// An element of an algebra, as coordinates in its distinguished basis.
#[derive(Clone)]
pub struct AlgebraElem {
    alg: AlgebraDef,
    coords: Vec<FieldElem>,
}

impl PartialEq for AlgebraElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.alg == other.alg
    }
}

impl fmt::Debug for AlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElem({self})")
    }
}

impl fmt::Display for AlgebraElem {
    /// Linear combination of basis names, e.g. `1/2 + 3*i - j`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coords.iter().zip(&self.alg.data.names) {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if name == "1" {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl AlgebraElem {
    pub fn alg(&self) -> &AlgebraDef {
        &self.alg
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.coords
    }

    pub fn ctx(&self) -> FieldCtx {
        self.alg.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElem::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords == self.alg.data.unit
    }

    fn same_alg(&self, other: &Self) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_alg(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(AlgebraElem {
            alg: self.alg.clone(),
            coords,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_alg(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(AlgebraElem {
            alg: self.alg.clone(),
            coords,
        })
    }

    /// Bilinear extension of the structure constants.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_alg(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let dim = self.alg.dim();
        let table = &self.alg.data.table;
        let mut out: Vec<FieldElem> = vec![self.ctx().zero(); dim];
        for (i, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &table[i * dim + j] {
                    out[*k] += &(&xy * c);
                }
            }
        }
        AlgebraElem {
            alg: self.alg.clone(),
            coords: out,
        }
    }

    /// `self * e_b` for a basis element, using only one table column.
    pub(crate) fn mul_basis_right(&self, b: usize) -> Self {
        let dim = self.alg.dim();
        let table = &self.alg.data.table;
        let mut out: Vec<FieldElem> = vec![self.ctx().zero(); dim];
        for (i, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, c) in &table[i * dim + b] {
                out[*k] += &(x * c);
            }
        }
        AlgebraElem {
            alg: self.alg.clone(),
            coords: out,
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        AlgebraElem {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        AlgebraElem {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = self.alg.one();
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Evaluates a polynomial over the base field at this element.
    pub fn eval_poly(&self, p: &UPoly) -> Self {
        let mut acc = self.alg.zero();
        for c in p.coeffs().iter().rev() {
            acc = acc
                .mul_unchecked(self)
                .checked_add(&self.alg.scalar(c))
                .unwrap();
        }
        acc
    }

    /// Commutes with every basis element.
    pub fn is_central(&self) -> bool {
        (0..self.alg.dim()).all(|i| {
            let e = self.alg.basis(i);
            self.mul_unchecked(&e) == e.mul_unchecked(self)
        })
    }

    /// Lies in `F * 1`.
    pub fn is_scalar(&self) -> bool {
        let ctx = self.ctx();
        let one = &self.alg.data.unit;
        let Some(p) = one.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let Some(lambda) = ctx.div(&self.coords[p], &one[p]) else {
            return false;
        };
        self.alg.scalar(&lambda) == *self
    }

    /// The monic relation of least degree among `1, x, x^2, ...` over the
    /// base field. No assumption on the center is made.
    pub fn min_relation(&self) -> UPoly {
        let mut k = Krylov::new(self.ctx(), self.alg.dim());
        let mut power = self.alg.one();
        loop {
            if let Some(p) = k.push(power.coords.clone()) {
                return p;
            }
            power = power.mul_unchecked(self);
        }
    }

    /// Inverse via the minimal relation: if `x^n + ... + a_1 x + a_0 = 0`
    /// with `a_0 ≠ 0` then `x^{-1} = (x^{n-1} + ... + a_1)(-a_0^{-1})`.
    /// `None` when `x` is a zero divisor.
    pub fn inverse(&self) -> Result<Option<Self>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let p = self.min_relation();
        let a0 = p.coeff(0);
        if a0.is_zero() {
            return Ok(None);
        }
        let tail = UPoly::new(self.ctx(), p.coeffs()[1..].to_vec());
        let factor = -&a0.inv().unwrap();
        Ok(Some(self.eval_poly(&tail).scale(&factor)))
    }

    /// Inverse, or `NotInvertible`.
    pub fn try_inverse(&self) -> Result<Self> {
        match self.inverse() {
            Ok(Some(inv)) => Ok(inv),
            Ok(None) | Err(Error::ZeroElement) => Err(Error::NotInvertible),
            Err(e) => Err(e),
        }
    }
}

macro_rules! elem_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&AlgebraElem> for &AlgebraElem {
            type Output = AlgebraElem;
            /// Panics if the operands live in different algebras.
            fn $method(self, rhs: &AlgebraElem) -> AlgebraElem {
                self.$checked(rhs).expect("elements of different algebras")
            }
        }
    };
}

elem_op!(Add, add, checked_add);
elem_op!(Sub, sub, checked_sub);
elem_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &AlgebraElem {
    type Output = AlgebraElem;
    fn neg(self) -> AlgebraElem {
        AlgebraElem::neg(self)
    }
}

/// `x^{-1}` or `None` for zero divisors; `ZeroElement` on zero.
pub fn alg_inverse(x: &AlgebraElem) -> Result<Option<AlgebraElem>> {
    x.inverse()
}

/// `(a b a^{-1} b^{-1}, a b - b a)`.
pub fn commutators(a: &AlgebraElem, b: &AlgebraElem) -> Result<(AlgebraElem, AlgebraElem)> {
    a.same_alg(b)?;
    let ab = a * b;
    let ai = a.try_inverse()?;
    let bi = b.try_inverse()?;
    let mult = &(&ab * &ai) * &bi;
    let add = &ab - &(b * a);
    Ok((mult, add))
}

/// Deterministic element sampler: integer coordinates in `[-h, h]` over ℚ,
/// uniform residues over 𝔽_p.
pub struct Sampler {
    rng: ChaCha8Rng,
    height: i64,
}

impl Sampler {
    pub fn new(seed: u64, height: i64) -> Self {
        assert!(height >= 1, "height must be positive");
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            height,
        }
    }

    pub fn scalar(&mut self, ctx: FieldCtx) -> FieldElem {
        match ctx {
            FieldCtx::Rational => ctx.from_int(self.rng.gen_range(-self.height..=self.height)),
            FieldCtx::Prime(p) => ctx.from_int(self.rng.gen_range(0..p) as i64),
        }
    }

    pub fn element(&mut self, alg: &AlgebraDef) -> AlgebraElem {
        let coords = (0..alg.dim()).map(|_| self.scalar(alg.ctx())).collect();
        AlgebraElem {
            alg: alg.clone(),
            coords,
        }
    }

    pub fn matrix(&mut self, ctx: FieldCtx, n: usize) -> Matrix {
        Matrix::from_fn(ctx, n, n, |_, _| self.scalar(ctx))
    }

    /// A nonzero element.
    pub fn nonzero_element(&mut self, alg: &AlgebraDef) -> AlgebraElem {
        loop {
            let x = self.element(alg);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// One sampled element; equal seeds give equal elements.
pub fn random_element(alg: &AlgebraDef, height: i64, seed: u64) -> AlgebraElem {
    Sampler::new(seed, height).element(alg)
}

/// Rational helper for tests and callers: `n/d` in ℚ.
pub fn q(n: i64, d: i64) -> FieldElem {
    FieldElem::Rational(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldCtx = FieldCtx::Rational;

    fn hamilton() -> AlgebraDef {
        AlgebraDef::quaternion(Q, q(-1, 1), q(-1, 1)).unwrap()
    }

    fn el(alg: &AlgebraDef, c: &[i64]) -> AlgebraElem {
        alg.from_ints(c).unwrap()
    }

    #[test]
    fn quaternion_relations() {
        let h = hamilton();
        let (i, j, k) = (h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(&i * &j, k);
        assert_eq!(&k * &k, el(&h, &[-1, 0, 0, 0]));
        assert_eq!(&j * &i, k.neg());
        let f5 = FieldCtx::prime(5).unwrap();
        assert!(AlgebraDef::quaternion(f5, f5.from_int(-1), f5.from_int(-1)).is_ok());
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(
            AlgebraDef::quaternion(f2, f2.one(), f2.one()).unwrap_err(),
            Error::CharacteristicTwo
        );
        assert_eq!(
            AlgebraDef::quaternion(Q, q(0, 1), q(1, 1)).unwrap_err(),
            Error::ZeroParameter
        );
    }

    /// Independent oracle: Hamilton-style product formula for (a, b / F).
    fn quaternion_product(
        a: &FieldElem,
        b: &FieldElem,
        x: &[FieldElem],
        y: &[FieldElem],
    ) -> Vec<FieldElem> {
        let ab = a * b;
        let (x0, x1, x2, x3) = (&x[0], &x[1], &x[2], &x[3]);
        let (y0, y1, y2, y3) = (&y[0], &y[1], &y[2], &y[3]);
        let c0 = &(&(&(x0 * y0) + &(&(x1 * y1) * a)) + &(&(x2 * y2) * b)) - &(&(x3 * y3) * &ab);
        let c1 = &(&(&(x0 * y1) + &(x1 * y0)) - &(&(x2 * y3) * b)) + &(&(x3 * y2) * b);
        let c2 = &(&(&(x0 * y2) + &(x2 * y0)) + &(&(x1 * y3) * a)) - &(&(x3 * y1) * a);
        let c3 = &(&(&(x0 * y3) + &(x3 * y0)) + &(x1 * y2)) - &(x2 * y1);
        vec![c0, c1, c2, c3]
    }

    #[test]
    fn quaternion_product_matches_formula() {
        let mut s = Sampler::new(3, 4);
        for (a, b) in [(-1, -1), (2, 3), (-2, 5)] {
            let h = AlgebraDef::quaternion(Q, q(a, 1), q(b, 1)).unwrap();
            for _ in 0..200 {
                let x = s.element(&h);
                let y = s.element(&h);
                assert_eq!(
                    (&x * &y).coords(),
                    quaternion_product(&q(a, 1), &q(b, 1), x.coords(), y.coords())
                );
            }
        }
    }

    #[test]
    fn matrix_units() {
        let m2 = AlgebraDef::matrix_algebra(Q, 2).unwrap();
        let e = |n: &str| m2.basis(m2.basis_index(n).unwrap());
        assert_eq!(&e("e12") * &e("e21"), e("e11"));
        assert!((&e("e12") * &e("e12")).is_zero());
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(AlgebraDef::matrix_algebra(f2, 3).unwrap().dim(), 9);
        assert_eq!(m2.one(), &e("e11") + &e("e22"));
    }

    #[test]
    fn multiplication_examples() {
        let h = hamilton();
        let x = el(&h, &[1, 1, 0, 0]);
        let y = el(&h, &[1, -1, 0, 0]);
        assert_eq!(&x * &y, el(&h, &[2, 0, 0, 0]));
        assert_eq!(&x * &h.one(), x);
    }

    #[test]
    fn inverse_examples() {
        let h = hamilton();
        assert_eq!(h.basis(1).inverse().unwrap(), Some(el(&h, &[0, -1, 0, 0])));
        let m2 = AlgebraDef::matrix_algebra(Q, 2).unwrap();
        assert_eq!(m2.basis(0).inverse().unwrap(), None);
        let x = el(&h, &[1, 1, 1, 1]);
        let inv = x.inverse().unwrap().unwrap();
        assert_eq!(
            inv,
            h.element(vec![q(1, 4), q(-1, 4), q(-1, 4), q(-1, 4)])
                .unwrap()
        );
        assert!((&x * &inv).is_one());
        assert_eq!(h.zero().inverse(), Err(Error::ZeroElement));
    }

    #[test]
    fn centers() {
        let h = hamilton();
        let c = h.center();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_scalar());
        let m2 = AlgebraDef::matrix_algebra(Q, 2).unwrap();
        let c = m2.center();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_scalar());
        let l = AlgebraDef::quadratic_field(Q, q(2, 1)).unwrap();
        assert_eq!(l.center_dim(), 2);
        assert!(l.is_commutative());
    }

    #[test]
    fn commutator_examples() {
        let h = hamilton();
        let (i, j, k) = (h.basis(1), h.basis(2), h.basis(3));
        let (m, a) = commutators(&i, &j).unwrap();
        assert_eq!(m, el(&h, &[-1, 0, 0, 0]));
        assert_eq!(a, k.scale(&q(2, 1)));
        let x = el(&h, &[1, 2, -1, 3]);
        let (m, a) = commutators(&x, &x).unwrap();
        assert!(m.is_one() && a.is_zero());
        let (m, _) = commutators(&i, &el(&h, &[1, 0, 1, 0])).unwrap();
        assert_eq!(m, j.neg());
        let m2 = AlgebraDef::matrix_algebra(Q, 2).unwrap();
        assert_eq!(
            commutators(&m2.basis(0), &m2.one()).unwrap_err(),
            Error::NotInvertible
        );
    }

    #[test]
    fn bad_tables_rejected() {
        // b1 b2 = b1, b2 b1 = 0, b2 b2 = b1: (b2 b2) b2 = b1 but b2 (b2 b2) = 0.
        let z = Q.zero();
        let o = Q.one();
        let mut c = vec![vec![vec![z.clone(); 3]; 3]; 3];
        for x in 0..3 {
            c[0][x][x] = o.clone();
            c[x][0][x] = o.clone();
        }
        c[1][2][1] = o.clone();
        c[2][2][1] = o.clone();
        let names: Vec<String> = ["b0", "b1", "b2"].map(String::from).to_vec();
        let unit = vec![o.clone(), z.clone(), z.clone()];
        assert!(matches!(
            AlgebraDef::from_table(Q, names.clone(), &c, unit),
            Err(Error::NotAssociative(..))
        ));
        let good = AlgebraDef::quadratic_field(Q, q(2, 1)).unwrap();
        let mut consts = vec![vec![vec![z.clone(); 2]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    consts[i][j][k] = good.constant(i, j, k);
                }
            }
        }
        assert_eq!(
            AlgebraDef::from_table(Q, vec!["1".into(), "s".into()], &consts, vec![z, o]),
            Err(Error::BadUnit)
        );
    }

    #[test]
    fn sampler_is_deterministic() {
        let h = hamilton();
        assert_eq!(random_element(&h, 5, 9), random_element(&h, 5, 9));
        let f2 = FieldCtx::prime(2).unwrap();
        let m = AlgebraDef::matrix_algebra(f2, 2).unwrap();
        let mut seen = [[false; 2]; 4];
        for seed in 0..16 {
            let x = random_element(&m, 1, seed);
            for (c, v) in x.coords().iter().enumerate() {
                seen[c][usize::from(!v.is_zero())] = true;
            }
        }
        assert!(seen.iter().all(|s| s[0] && s[1]));
    }

    #[test]
    fn display() {
        let h = hamilton();
        let x = h
            .element(vec![q(1, 2), q(3, 1), q(-1, 1), q(0, 1)])
            .unwrap();
        assert_eq!(x.to_string(), "1/2 + 3*i - j");
        assert_eq!(h.zero().to_string(), "0");
        assert_eq!(h.basis(3).neg().to_string(), "-k");
    }

    #[test]
    fn biquadratic_table() {
        let l = AlgebraDef::biquadratic_field(Q, q(2, 1), q(3, 1)).unwrap();
        let (s, t) = (l.basis(1), l.basis(2));
        assert_eq!(&s * &s, l.scalar(&q(2, 1)));
        assert_eq!(&s * &t, l.basis(3));
        assert_eq!(&l.basis(3) * &l.basis(3), l.scalar(&q(6, 1)));
    }

    mod props {
        use super::*;

        #[test]
        fn associativity_on_random_triples() {
            let f5 = FieldCtx::prime(5).unwrap();
            let algebras = [
                hamilton(),
                AlgebraDef::quaternion(Q, q(2, 1), q(3, 1)).unwrap(),
                AlgebraDef::quaternion(f5, f5.from_int(-1), f5.from_int(-1)).unwrap(),
                AlgebraDef::matrix_algebra(Q, 3).unwrap(),
            ];
            let mut s = Sampler::new(1, 5);
            for alg in &algebras {
                for _ in 0..1000 {
                    let (x, y, z) = (s.element(alg), s.element(alg), s.element(alg));
                    assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                }
            }
        }

        #[test]
        fn inverses_are_two_sided() {
            let mut s = Sampler::new(2, 3);
            for alg in [hamilton(), AlgebraDef::matrix_algebra(Q, 2).unwrap()] {
                for _ in 0..500 {
                    let x = s.nonzero_element(&alg);
                    if let Some(inv) = x.inverse().unwrap() {
                        assert!((&x * &inv).is_one() && (&inv * &x).is_one());
                    }
                }
            }
        }

        #[test]
        fn division_algebra_has_no_zero_divisors() {
            let h = hamilton();
            let mut s = Sampler::new(4, 5);
            for _ in 0..10_000 {
                let x = s.element(&h);
                if x.is_zero() {
                    continue;
                }
                let inv = x
                    .inverse()
                    .unwrap()
                    .expect("nonzero quaternion is invertible");
                assert!((&x * &inv).is_one());
            }
        }

        #[test]
        fn multiplicative_commutators_are_units() {
            let h = AlgebraDef::quaternion(Q, q(2, 1), q(3, 1)).unwrap();
            let mut s = Sampler::new(6, 4);
            for _ in 0..300 {
                let (a, b) = (s.nonzero_element(&h), s.nonzero_element(&h));
                let (m, _) = commutators(&a, &b).unwrap();
                assert!(m.inverse().unwrap().is_some());
            }
        }

        #[test]
        fn division_quaternions_have_trivial_center() {
            for (a, b) in [(-1, -1), (2, 3), (-1, 3), (3, 5), (-2, -5)] {
                if is_division_quaternion(&Rational::from_int(a), &Rational::from_int(b)).unwrap() {
                    let h = AlgebraDef::quaternion(Q, q(a, 1), q(b, 1)).unwrap();
                    assert_eq!(h.center_dim(), 1);
                }
            }
            for n in 1..=3 {
                assert_eq!(AlgebraDef::matrix_algebra(Q, n).unwrap().center_dim(), 1);
            }
        }
    }
}
