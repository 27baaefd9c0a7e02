//! A maximal subfield `K = F(u)` inside an algebra `D`, the one-sided
//! `K`-vector-space structure of `D`, and the right regular representation
//! `D -> M_n(K)`.

use crate::algebra::{AlgebraDef, AlgebraElem};
use crate::error::{Error, Result};
use crate::ext::ExtField;
use crate::field::FieldCtx;
use crate::identities::minpoly_element;
use crate::linalg::Matrix;
use crate::poly::UPoly;

/// Which side `K` acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `K = F(u)` with cached left and right `K`-bases of `D`.
#[derive(Clone, Debug)]
pub struct SubfieldCtx {
    alg: AlgebraDef,
    generator: AlgebraElem,
    minpoly: UPoly,
    field: ExtField,
    powers: Vec<AlgebraElem>,
    right_basis: Vec<AlgebraElem>,
    left_basis: Vec<AlgebraElem>,
    // Inverses of the F-matrices whose columns are B_s u^i (right) and
    // u^i B_s (left), column index s * n + i.
    right_inv: Matrix,
    left_inv: Matrix,
}

/// Coordinates of an element in a one-sided `K`-basis.
#[derive(Clone, Debug, PartialEq)]
pub struct KCoordinates {
    pub side: Side,
    pub coords: Vec<UPoly>,
}

impl SubfieldCtx {
    /// Builds `K = F(u)` for a noncentral `u` whose minimal polynomial is
    /// irreducible of degree `sqrt(dim D)`.
    pub fn new(alg: &AlgebraDef, u: &AlgebraElem) -> Result<Self> {
        if u.alg() != alg {
            return Err(Error::AlgebraMismatch);
        }
        if u.is_central() {
            return Err(Error::CentralGenerator);
        }
        let n_expected = alg.degree().ok_or(Error::DimensionNotSquare(alg.dim()))?;
        let minpoly = minpoly_element(u)?;
        if !minpoly.is_irreducible()? {
            return Err(Error::NotIrreducible);
        }
        let n = minpoly.degree().unwrap();
        if n != n_expected {
            return Err(Error::WrongDegree {
                expected: n_expected,
                found: n,
            });
        }
        // Print K-elements in terms of the generator's basis name when it
        // is a single basis vector, e.g. `i`.
        let var = (0..alg.dim())
            .find(|&b| alg.basis(b) == *u)
            .map_or_else(|| "u".to_string(), |b| alg.names()[b].clone());
        let field = ExtField::new(minpoly.clone(), var)?;
        let powers: Vec<AlgebraElem> = (0..n).map(|i| u.pow(i)).collect();
        let (right_basis, right_inv) = extend_basis(alg, &powers, Side::Right)?;
        let (left_basis, left_inv) = extend_basis(alg, &powers, Side::Left)?;
        Ok(SubfieldCtx {
            alg: alg.clone(),
            generator: u.clone(),
            minpoly,
            field,
            powers,
            right_basis,
            left_basis,
            right_inv,
            left_inv,
        })
    }

    /// Renames the generator in printed `K`-elements.
    pub fn with_var(mut self, var: &str) -> Self {
        self.field = ExtField::new(self.minpoly.clone(), var).expect("modulus already validated");
        self
    }

    pub fn alg(&self) -> &AlgebraDef {
        &self.alg
    }

    pub fn generator(&self) -> &AlgebraElem {
        &self.generator
    }

    pub fn minpoly(&self) -> &UPoly {
        &self.minpoly
    }

    /// `n = [K:F]`.
    pub fn degree(&self) -> usize {
        self.powers.len()
    }

    /// `K` as a field, elements being polynomials in `u`.
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn basis(&self, side: Side) -> &[AlgebraElem] {
        match side {
            Side::Left => &self.left_basis,
            Side::Right => &self.right_basis,
        }
    }

    /// The element `κ(u)` of `D`.
    pub fn embed(&self, kappa: &UPoly) -> AlgebraElem {
        let r = self.field.reduce(kappa);
        r.coeffs()
            .iter()
            .zip(&self.powers)
            .fold(self.alg.zero(), |acc, (c, p)| &acc + &p.scale(c))
    }

    /// Multiplies `x` by `κ` on the given side.
    pub fn act(&self, kappa: &UPoly, x: &AlgebraElem, side: Side) -> AlgebraElem {
        let k = self.embed(kappa);
        match side {
            Side::Left => &k * x,
            Side::Right => x * &k,
        }
    }

    /// Unique coordinates `x = sum B_s κ_s` (right) or `sum κ_s B_s` (left).
    pub fn k_coordinates(&self, x: &AlgebraElem, side: Side) -> KCoordinates {
        let inv = match side {
            Side::Left => &self.left_inv,
            Side::Right => &self.right_inv,
        };
        let n = self.degree();
        let col = Matrix::column(self.alg.ctx(), x.coords().to_vec());
        let c = inv.checked_mul(&col).expect("dimensions agree");
        let coords = (0..n)
            .map(|s| {
                UPoly::new(
                    self.alg.ctx(),
                    (0..n).map(|i| c.get(s * n + i, 0).clone()).collect(),
                )
            })
            .collect();
        KCoordinates { side, coords }
    }

    /// Rebuilds the element from its coordinates.
    pub fn assemble(&self, kc: &KCoordinates) -> AlgebraElem {
        self.basis(kc.side)
            .iter()
            .zip(&kc.coords)
            .fold(self.alg.zero(), |acc, (b, k)| {
                &acc + &self.act(k, b, kc.side)
            })
    }

    /// True when `x` lies in `K`.
    pub fn contains(&self, x: &AlgebraElem) -> bool {
        let kc = self.k_coordinates(x, Side::Right);
        // The first right basis vector is 1.
        kc.coords.iter().skip(1).all(UPoly::is_zero)
    }

    /// Matrix over `K` of `x -> αx` in the right `K`-basis.
    pub fn regular_rep(&self, alpha: &AlgebraElem) -> Matrix<ExtField> {
        let n = self.degree();
        let cols: Vec<Vec<UPoly>> = self
            .right_basis
            .iter()
            .map(|b| self.k_coordinates(&(alpha * b), Side::Right).coords)
            .collect();
        Matrix::from_fn(self.field.clone(), n, n, |r, c| cols[c][r].clone())
    }
}

/// Greedily extends `{1}` to a one-sided `K`-basis by scanning the
/// distinguished basis in index order. Returns the basis and the inverse of
/// the `F`-matrix of the products with powers of `u`.
fn extend_basis(
    alg: &AlgebraDef,
    powers: &[AlgebraElem],
    side: Side,
) -> Result<(Vec<AlgebraElem>, Matrix)> {
    let n = powers.len();
    let ctx: FieldCtx = alg.ctx();
    let span = |b: &AlgebraElem| -> Vec<Vec<_>> {
        powers
            .iter()
            .map(|p| match side {
                Side::Right => (b * p).coords().to_vec(),
                Side::Left => (p * b).coords().to_vec(),
            })
            .collect()
    };
    let mut basis = vec![alg.one()];
    let mut cols = span(&alg.one());
    for i in 0..alg.dim() {
        if basis.len() == n {
            break;
        }
        let e = alg.basis(i);
        let mut trial = cols.clone();
        trial.extend(span(&e));
        let m = Matrix::from_fn(ctx, alg.dim(), trial.len(), |r, c| trial[c][r].clone());
        if m.rank() == trial.len() {
            basis.push(e);
            cols = trial;
        }
    }
    if basis.len() != n {
        return Err(Error::NotGenerating);
    }
    let m = Matrix::from_fn(ctx, alg.dim(), alg.dim(), |r, c| cols[c][r].clone());
    let inv = m.inverse()?.ok_or(Error::NotGenerating)?;
    Ok((basis, inv))
}

/// Builds the subfield context; see [`SubfieldCtx::new`].
pub fn build_subfield(alg: &AlgebraDef, u: &AlgebraElem) -> Result<SubfieldCtx> {
    SubfieldCtx::new(alg, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, Sampler};
    use crate::field::Field;

    const Q: FieldCtx = FieldCtx::Rational;

    fn hamilton() -> AlgebraDef {
        AlgebraDef::quaternion(Q, q(-1, 1), q(-1, 1)).unwrap()
    }

    fn k_of(ctx: &SubfieldCtx, cs: &[i64]) -> UPoly {
        UPoly::from_ints(ctx.alg().ctx(), cs)
    }

    #[test]
    fn build_examples() {
        let h = hamilton();
        let ctx = build_subfield(&h, &h.basis(1)).unwrap();
        assert_eq!(ctx.degree(), 2);
        assert_eq!(ctx.basis(Side::Right), &[h.one(), h.basis(2)]);
        assert_eq!(
            build_subfield(&h, &h.one()).unwrap_err(),
            Error::CentralGenerator
        );
        let cj = build_subfield(&h, &h.basis(2)).unwrap();
        assert_eq!(cj.degree(), 2);
        assert_eq!(cj.basis(Side::Right), &[h.one(), h.basis(1)]);
    }

    #[test]
    fn build_errors() {
        let m2 = AlgebraDef::matrix_algebra(Q, 2).unwrap();
        // e11 has minimal polynomial t^2 - t, reducible.
        assert_eq!(
            build_subfield(&m2, &m2.basis(0)).unwrap_err(),
            Error::NotIrreducible
        );
        let m3 = AlgebraDef::matrix_algebra(Q, 3).unwrap();
        // A 2x2 rotation block plus a 1: minimal polynomial (t^2+1)(t-1).
        let x = m3.from_ints(&[0, -1, 0, 1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(build_subfield(&m3, &x).unwrap_err(), Error::NotIrreducible);
        // The permutation-free companion of t^3 - 2 is fine.
        let c = m3.from_ints(&[0, 0, 2, 1, 0, 0, 0, 1, 0]).unwrap();
        assert_eq!(build_subfield(&m3, &c).unwrap().degree(), 3);
        let l = AlgebraDef::biquadratic_field(Q, q(2, 1), q(3, 1)).unwrap();
        assert_eq!(
            build_subfield(&l, &l.basis(1)).unwrap_err(),
            Error::CentralGenerator
        );
    }

    #[test]
    fn coordinate_examples() {
        let h = hamilton();
        let ctx = build_subfield(&h, &h.basis(1)).unwrap();
        let k = ctx.k_coordinates(&h.basis(3), Side::Right);
        assert_eq!(k.coords, vec![k_of(&ctx, &[]), k_of(&ctx, &[0, -1])]);
        // j * (-i) = k, checked by direct multiplication.
        assert_eq!(&h.basis(2) * &h.basis(1).neg(), h.basis(3));
        assert_eq!(
            ctx.k_coordinates(&h.one(), Side::Right).coords,
            vec![k_of(&ctx, &[1]), k_of(&ctx, &[])]
        );
        assert_eq!(ctx.basis(Side::Left), &[h.one(), h.basis(2)]);
        assert_eq!(
            ctx.k_coordinates(&h.basis(1), Side::Left).coords,
            vec![k_of(&ctx, &[0, 1]), k_of(&ctx, &[])]
        );
    }

    #[test]
    fn regular_rep_examples() {
        let h = hamilton();
        let ctx = build_subfield(&h, &h.basis(1)).unwrap();
        let kf = ctx.field().clone();
        let i = kf.generator();
        let mi = kf.neg(&i);
        assert_eq!(
            ctx.regular_rep(&h.basis(1)),
            Matrix::diag(kf.clone(), vec![i, mi])
        );
        let rj = ctx.regular_rep(&h.basis(2));
        let z = kf.zero();
        let o = kf.one();
        assert_eq!(
            rj,
            Matrix::from_rows(
                kf.clone(),
                vec![vec![z.clone(), kf.neg(&o)], vec![o.clone(), z]]
            )
            .unwrap()
        );
        assert_eq!(ctx.regular_rep(&h.one()), Matrix::identity(kf, 2));
    }

    #[test]
    fn coordinate_round_trip() {
        let f5 = FieldCtx::prime(5).unwrap();
        let algebras = [
            (hamilton(), 1),
            (AlgebraDef::quaternion(Q, q(2, 1), q(3, 1)).unwrap(), 2),
            (AlgebraDef::matrix_algebra(f5, 2).unwrap(), usize::MAX),
        ];
        let mut s = Sampler::new(8, 6);
        for (alg, gen) in algebras {
            let u = if gen == usize::MAX {
                // companion of t^2 - 2, irreducible mod 5
                alg.element(vec![f5.zero(), f5.from_int(2), f5.one(), f5.zero()])
                    .unwrap()
            } else {
                alg.basis(gen)
            };
            let ctx = build_subfield(&alg, &u).unwrap();
            let mut xs: Vec<AlgebraElem> = (0..alg.dim()).map(|i| alg.basis(i)).collect();
            xs.extend((0..1000).map(|_| s.element(&alg)));
            for x in &xs {
                for side in [Side::Left, Side::Right] {
                    assert_eq!(&ctx.assemble(&ctx.k_coordinates(x, side)), x);
                }
            }
        }
    }
}
