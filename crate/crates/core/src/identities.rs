//! Algebraicity over the center and over a subfield: element minimal
//! polynomials, left minimal polynomials, the alternating identity `g_d`
//! and the bounded-degree test it characterizes.

use crate::algebra::{AlgebraElem, Sampler};
use crate::error::{Error, Result};
use crate::ext::ExtField;
use crate::field::Field;
use crate::linalg::{Krylov, Matrix};
use crate::poly::{Poly, UPoly};
use crate::subfield::{Side, SubfieldCtx};

fn require_central_base(x: &AlgebraElem) -> Result<()> {
    let alg = x.alg();
    if alg.is_commutative() {
        return Ok(());
    }
    match alg.center_dim() {
        1 => Ok(()),
        c => Err(Error::CenterNotField(c)),
    }
}

/// Minimal polynomial of `x` over the base field, which must be the center
/// (or the algebra commutative).
pub fn minpoly_element(x: &AlgebraElem) -> Result<UPoly> {
    require_central_base(x)?;
    Ok(x.min_relation())
}

/// Least-degree monic `p` over `K` with `sum k_i x^i = 0`, coefficients
/// acting on the left.
pub fn left_minpoly(ctx: &SubfieldCtx, x: &AlgebraElem) -> Poly<ExtField> {
    let kf = ctx.field().clone();
    let mut relation = Krylov::new(kf, ctx.degree());
    let mut power = ctx.alg().one();
    loop {
        let coords = ctx.k_coordinates(&power, Side::Left).coords;
        if let Some(p) = relation.push(coords) {
            return p;
        }
        power = &power * x;
    }
}

/// Degree of the left minimal polynomial over `K`.
pub fn left_degree(ctx: &SubfieldCtx, x: &AlgebraElem) -> usize {
    left_minpoly(ctx, x).degree().unwrap()
}

/// `g_d(x, y_1, ..., y_d) = sum_σ sign(σ) x^σ(0) y_1 x^σ(1) ... y_d x^σ(d)`
/// over permutations of `{0, ..., d}`, enumerated lexicographically with
/// shared prefix products.
pub fn eval_gd(x: &AlgebraElem, ys: &[AlgebraElem]) -> Result<AlgebraElem> {
    let d = ys.len();
    if d == 0 {
        return Err(Error::InvalidInput("g_d needs d >= 1".into()));
    }
    if ys.iter().any(|y| y.alg() != x.alg()) {
        return Err(Error::AlgebraMismatch);
    }
    let powers: Vec<AlgebraElem> = (0..=d).map(|e| x.pow(e)).collect();
    let mut acc = x.alg().zero();
    gd_rec(&powers, ys, 0, 0, x.alg().one(), false, &mut acc);
    Ok(acc)
}

fn gd_rec(
    powers: &[AlgebraElem],
    ys: &[AlgebraElem],
    level: usize,
    used: u32,
    prefix: AlgebraElem,
    negative: bool,
    acc: &mut AlgebraElem,
) {
    let d = ys.len();
    for e in 0..=d {
        if used & (1 << e) != 0 {
            continue;
        }
        // Appending e adds one inversion per larger exponent already used.
        let flips = (used >> (e + 1)).count_ones();
        let neg = negative ^ (flips % 2 == 1);
        let term = &prefix * &powers[e];
        if level == d {
            *acc = if neg { &*acc - &term } else { &*acc + &term };
        } else {
            gd_rec(
                powers,
                ys,
                level + 1,
                used | (1 << e),
                &term * &ys[level],
                neg,
                acc,
            );
        }
    }
}

/// Decides whether `x` is algebraic of degree at most `d` over the center
/// by checking `g_d(x, b_1, ..., b_d) = 0` on all tuples of basis elements.
///
/// The sweep is a tree over `(b_1, ..., b_d)`. At depth `j` it keeps, for
/// each set `S` of `j` exponents already placed, the signed sum over
/// orderings of `S` of `x^σ(0) b_1 ... x^σ(j-1) b_j`; extending a node costs
/// one pass over subsets instead of a pass over all permutations.
pub fn is_alg_bounded(x: &AlgebraElem, d: usize) -> Result<bool> {
    require_central_base(x)?;
    if d == 0 {
        return Err(Error::InvalidInput(
            "degree bound must be at least 1".into(),
        ));
    }
    let alg = x.alg();
    let powers: Vec<AlgebraElem> = (0..=d).map(|e| x.pow(e)).collect();
    let mut level0 = vec![None; 1 << (d + 1)];
    level0[0] = Some(alg.one());
    Ok(bounded_rec(&powers, d, 0, &level0))
}

fn bounded_rec(
    powers: &[AlgebraElem],
    d: usize,
    j: usize,
    partial: &[Option<AlgebraElem>],
) -> bool {
    let alg = powers[0].alg();
    let full = (1u32 << (d + 1)) - 1;
    // R[mask] for |mask| = j + 1: append the exponent e as the last one.
    let mut r: Vec<Option<AlgebraElem>> = vec![None; partial.len()];
    for mask in 1..=full {
        if mask.count_ones() as usize != j + 1 {
            continue;
        }
        let mut sum = alg.zero();
        for e in 0..=d {
            if mask & (1 << e) == 0 {
                continue;
            }
            let rest = mask & !(1 << e);
            let Some(p) = &partial[rest as usize] else {
                continue;
            };
            let term = p * &powers[e];
            let flips = (rest >> (e + 1)).count_ones();
            sum = if flips % 2 == 1 {
                &sum - &term
            } else {
                &sum + &term
            };
        }
        r[mask as usize] = Some(sum);
    }
    if j == d {
        return r[full as usize].as_ref().is_none_or(AlgebraElem::is_zero);
    }
    for b in 0..alg.dim() {
        let next: Vec<Option<AlgebraElem>> = r
            .iter()
            .map(|x| x.as_ref().map(|x| x.mul_basis_right(b)))
            .collect();
        if !bounded_rec(powers, d, j + 1, &next) {
            return false;
        }
    }
    true
}

/// Inverse of `a` read off its left minimal polynomial over `K`:
/// from `a^m + k_{m-1} a^{m-1} + ... + k_0 = 0`,
/// `a^{-1} = (-k_0)^{-1} (a^{m-1} + k_{m-1} a^{m-2} + ... + k_1)`.
pub fn left_inverse_from_minpoly(ctx: &SubfieldCtx, a: &AlgebraElem) -> Result<AlgebraElem> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let p = left_minpoly(ctx, a);
    let kf = ctx.field();
    let k0 = p.coeff(0);
    if kf.is_zero(&k0) {
        return Err(Error::ZeroConstantTerm);
    }
    let mut q = ctx.alg().zero();
    let mut power = ctx.alg().one();
    for i in 1..p.coeffs().len() {
        q = &q + &ctx.act(&p.coeff(i), &power, Side::Left);
        power = &power * a;
    }
    let scale = kf.inv(&kf.neg(&k0)).unwrap();
    let inv = ctx.act(&scale, &q, Side::Left);
    if !(&inv * a).is_one() || !(a * &inv).is_one() {
        return Err(Error::NotInvertible);
    }
    Ok(inv)
}

/// True when the elements are left linearly independent over `K`.
pub fn left_independent(ctx: &SubfieldCtx, elems: &[AlgebraElem]) -> bool {
    let kf = ctx.field().clone();
    let rows: Vec<Vec<UPoly>> = elems
        .iter()
        .map(|e| ctx.k_coordinates(e, Side::Left).coords)
        .collect();
    let m = Matrix::from_fn(kf, rows.len(), ctx.degree(), |r, c| rows[r][c].clone());
    m.rank() == elems.len()
}

/// Candidates for cyclic vectors: basis elements, then `e_a ± e_b`, then
/// `e_a ± e_b ± e_c`, with the first coefficient always +1.
fn small_combinations(alg: &crate::algebra::AlgebraDef) -> Vec<AlgebraElem> {
    let dim = alg.dim();
    let mut out: Vec<AlgebraElem> = (0..dim).map(|i| alg.basis(i)).collect();
    for a in 0..dim {
        for b in a + 1..dim {
            for sb in [1, -1] {
                out.push(&alg.basis(a) + &alg.basis(b).scale(&alg.ctx().from_int(sb)));
            }
        }
    }
    for a in 0..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                for (sb, sc) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let x = &alg.basis(a) + &alg.basis(b).scale(&alg.ctx().from_int(sb));
                    out.push(&x + &alg.basis(c).scale(&alg.ctx().from_int(sc)));
                }
            }
        }
    }
    out
}

/// Finds an invertible `u` with `{u, uα, ..., uα^{n-1}}` left independent
/// over `K`, so that `uαu^{-1}` has left degree `n`.
pub fn cyclic_vector(ctx: &SubfieldCtx, alpha: &AlgebraElem) -> Result<AlgebraElem> {
    let n = ctx.degree();
    if minpoly_element(alpha)?.degree() != Some(n) {
        return Err(Error::NotMaximalGenerator);
    }
    let powers: Vec<AlgebraElem> = (0..n).map(|i| alpha.pow(i)).collect();
    let candidates = small_combinations(ctx.alg());
    let tried = candidates.len();
    for u in candidates {
        if !matches!(u.inverse(), Ok(Some(_))) {
            continue;
        }
        let orbit: Vec<AlgebraElem> = powers.iter().map(|p| &u * p).collect();
        if left_independent(ctx, &orbit) {
            return Ok(u);
        }
    }
    Err(Error::SearchExhausted { tried })
}

/// Sampled maxima of `deg_F` and `ldeg_K`.
///
/// `sampled_*` cover the random sample only; the unprefixed maxima also
/// include the constructed witness `uαu^{-1}` when one was added.
#[derive(Clone, Debug)]
pub struct DegreeProfile {
    pub sample_size: usize,
    pub sampled_max_deg_f: usize,
    pub sampled_max_ldeg_k: usize,
    pub max_deg_f: usize,
    pub max_ldeg_k: usize,
    pub arg_max_deg_f: AlgebraElem,
    pub arg_max_ldeg_k: AlgebraElem,
    pub witness: Option<AlgebraElem>,
}

impl DegreeProfile {
    /// Profile of an explicit list of elements; `None` if it is empty.
    pub fn of_elements(ctx: &SubfieldCtx, elems: &[AlgebraElem]) -> Result<Option<Self>> {
        let mut best: Option<DegreeProfile> = None;
        for x in elems {
            let df = minpoly_element(x)?.degree().unwrap();
            let dk = left_degree(ctx, x);
            match &mut best {
                None => {
                    best = Some(DegreeProfile {
                        sample_size: 0,
                        sampled_max_deg_f: df,
                        sampled_max_ldeg_k: dk,
                        max_deg_f: df,
                        max_ldeg_k: dk,
                        arg_max_deg_f: x.clone(),
                        arg_max_ldeg_k: x.clone(),
                        witness: None,
                    })
                }
                Some(p) => {
                    if df > p.max_deg_f {
                        p.max_deg_f = df;
                        p.sampled_max_deg_f = df;
                        p.arg_max_deg_f = x.clone();
                    }
                    if dk > p.max_ldeg_k {
                        p.max_ldeg_k = dk;
                        p.sampled_max_ldeg_k = dk;
                        p.arg_max_ldeg_k = x.clone();
                    }
                }
            }
        }
        if let Some(p) = &mut best {
            p.sample_size = elems.len();
        }
        Ok(best)
    }

    /// Folds in a constructed witness without touching the sampled maxima.
    pub fn add_witness(&mut self, ctx: &SubfieldCtx, w: &AlgebraElem) -> Result<()> {
        let df = minpoly_element(w)?.degree().unwrap();
        let dk = left_degree(ctx, w);
        if df > self.max_deg_f {
            self.max_deg_f = df;
            self.arg_max_deg_f = w.clone();
        }
        if dk > self.max_ldeg_k {
            self.max_ldeg_k = dk;
            self.arg_max_ldeg_k = w.clone();
        }
        self.witness = Some(w.clone());
        Ok(())
    }
}

/// Samples `size` elements, profiles them, and adds the cyclic-conjugate
/// witness `uαu^{-1}` built from the subfield generator `α`.
pub fn degree_profile(
    ctx: &SubfieldCtx,
    sampler: &mut Sampler,
    size: usize,
) -> Result<DegreeProfile> {
    if size == 0 {
        return Err(Error::InvalidInput("sample size must be positive".into()));
    }
    let sample: Vec<AlgebraElem> = (0..size).map(|_| sampler.element(ctx.alg())).collect();
    let mut profile = DegreeProfile::of_elements(ctx, &sample)?.expect("nonempty sample");
    let alpha = ctx.generator();
    let u = cyclic_vector(ctx, alpha)?;
    let w = &(&u * alpha) * &u.try_inverse()?;
    profile.add_witness(ctx, &w)?;
    Ok(profile)
}
