//! Maximal-subfield generators from commutators, the block structure of
//! regular representations of field extensions, commutator searches in
//! matrix rings, and the degree-bound report.

use std::fmt;

use serde::Serialize;

use crate::algebra::{is_division_quaternion, AlgebraDef, AlgebraElem, AlgebraKind, Sampler};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::identities::minpoly_element;
use crate::linalg::Matrix;
use crate::poly::UPoly;

fn square_degree(alg: &AlgebraDef) -> Result<usize> {
    alg.degree().ok_or(Error::DimensionNotSquare(alg.dim()))
}

/// `α` generates a maximal subfield: its minimal polynomial has degree
/// `n = sqrt(dim D)` and, where irreducibility is decidable, is irreducible.
pub fn is_max_subfield_gen(alpha: &AlgebraElem) -> Result<bool> {
    let n = square_degree(alpha.alg())?;
    let p = minpoly_element(alpha)?;
    if p.degree() != Some(n) {
        return Ok(false);
    }
    match p.is_irreducible() {
        Ok(irr) => Ok(irr),
        Err(Error::UnsupportedDegree(_)) => Ok(true),
        Err(e) => Err(e),
    }
}

/// A partner element whose commutator with `a` has degree `n`.
#[derive(Clone, Debug)]
pub struct CommutatorWitness {
    pub partner: AlgebraElem,
    pub commutator: AlgebraElem,
    pub minpoly: UPoly,
    /// Candidates examined, including the successful one.
    pub tried: usize,
    /// Found by the deterministic scan rather than the seeded phase.
    pub from_scan: bool,
}

/// Basis elements, then `e_a + e_b`, then `e_a - e_b`.
fn scan_candidates(alg: &AlgebraDef) -> Vec<AlgebraElem> {
    let dim = alg.dim();
    let mut out: Vec<AlgebraElem> = (0..dim).map(|i| alg.basis(i)).collect();
    for sign in [1, -1] {
        for a in 0..dim {
            for b in a + 1..dim {
                out.push(&alg.basis(a) + &alg.basis(b).scale(&alg.ctx().from_int(sign)));
            }
        }
    }
    out
}

fn search_commutator(
    a: &AlgebraElem,
    budget: usize,
    seed: u64,
    make: impl Fn(&AlgebraElem) -> Option<AlgebraElem>,
) -> Result<CommutatorWitness> {
    let alg = a.alg();
    let n = square_degree(alg)?;
    if a.is_central() {
        return Err(Error::CentralElement);
    }
    let mut tried = 0;
    let check =
        |b: AlgebraElem, tried: usize, from_scan: bool| -> Result<Option<CommutatorWitness>> {
            let Some(c) = make(&b) else { return Ok(None) };
            let p = minpoly_element(&c)?;
            Ok((p.degree() == Some(n)).then(|| CommutatorWitness {
                partner: b,
                commutator: c,
                minpoly: p,
                tried,
                from_scan,
            }))
        };
    for b in scan_candidates(alg) {
        tried += 1;
        if let Some(w) = check(b, tried, true)? {
            return Ok(w);
        }
    }
    let mut sampler = Sampler::new(seed, 3);
    for _ in 0..budget {
        tried += 1;
        let b = sampler.element(alg);
        if let Some(w) = check(b, tried, false)? {
            return Ok(w);
        }
    }
    Err(Error::SearchExhausted { tried })
}

/// Searches for `b` with `a b a^{-1} b^{-1}` of degree `n`: a fixed scan of
/// small candidates, then `budget` seeded random elements.
pub fn search_mult_commutator(
    a: &AlgebraElem,
    budget: usize,
    seed: u64,
) -> Result<CommutatorWitness> {
    if a.is_central() {
        return Err(Error::CentralElement);
    }
    let ai = a.try_inverse()?;
    search_commutator(a, budget, seed, |b| {
        let bi = b.inverse().ok().flatten()?;
        Some(&(&(a * b) * &ai) * &bi)
    })
}

/// Searches for `c` with `a c - c a` of degree `n`.
pub fn search_add_commutator(
    a: &AlgebraElem,
    budget: usize,
    seed: u64,
) -> Result<CommutatorWitness> {
    search_commutator(a, budget, seed, |c| Some(&(a * c) - &(c * a)))
}

/// Checks the ring identity
/// `(α+1)((α+1)^{-1} a (α+1) a^{-1} - α^{-1} a α a^{-1}) = 1 - α^{-1} a α a^{-1}`
/// and returns the common value.
pub fn verify_conjugate_identity(a: &AlgebraElem, alpha: &AlgebraElem) -> Result<AlgebraElem> {
    if a.alg() != alpha.alg() {
        return Err(Error::AlgebraMismatch);
    }
    let one = a.alg().one();
    let ap1 = alpha + &one;
    let ai = a.try_inverse()?;
    let alphai = alpha.try_inverse()?;
    let ap1i = ap1.try_inverse()?;
    let conj = &(&(&alphai * a) * alpha) * &ai;
    let shifted = &(&(&ap1i * a) * &ap1) * &ai;
    let lhs = &ap1 * &(&shifted - &conj);
    let rhs = &one - &conj;
    if lhs != rhs {
        return Err(Error::IdentityViolated(format!("{lhs} != {rhs}")));
    }
    Ok(rhs)
}

/// The ordered basis `α^i β^j` of a field `L = F(α)(β)` and the matrix of
/// multiplication by `α` in it.
#[derive(Clone, Debug)]
pub struct BlockBasis {
    pub basis: Vec<AlgebraElem>,
    pub matrix: Matrix,
    /// `C_p` for the minimal polynomial `p` of `α`.
    pub block: Matrix,
    /// Number of repeated blocks, `[L:F] / deg p`.
    pub blocks: usize,
}

/// Certifies that a commutative algebra is a field by finding an element
/// `α + cβ` of full degree and testing its minimal polynomial.
fn certify_field(l: &AlgebraDef, alpha: &AlgebraElem, beta: &AlgebraElem) -> Result<()> {
    let n = l.dim();
    let mut tried = 0;
    for c in 0..=(2 * n as i64 + 2) {
        tried += 1;
        let gamma = alpha + &beta.scale(&l.ctx().from_int(c));
        let p = minpoly_element(&gamma)?;
        if p.degree() == Some(n) {
            return if p.is_irreducible()? {
                Ok(())
            } else {
                Err(Error::NotAField)
            };
        }
    }
    Err(Error::SearchExhausted { tried })
}

/// Builds the basis `{1, α, ..., α^{d-1}, β, αβ, ..., α^{d-1}β^{k-1}}` and
/// checks that multiplication by `α` is `C_p ⊕ ... ⊕ C_p` (`k` copies).
pub fn build_block_basis(
    l: &AlgebraDef,
    alpha: &AlgebraElem,
    beta: &AlgebraElem,
) -> Result<BlockBasis> {
    if alpha.alg() != l || beta.alg() != l {
        return Err(Error::AlgebraMismatch);
    }
    if !l.is_commutative() {
        return Err(Error::NotAField);
    }
    let p = minpoly_element(alpha)?;
    if !p.is_irreducible()? {
        return Err(Error::NotAField);
    }
    if !p.is_separable()? {
        return Err(Error::InvalidInput(format!(
            "minimal polynomial {p} is not separable"
        )));
    }
    let n = l.dim();
    let d = p.degree().unwrap();
    if !n.is_multiple_of(d) {
        return Err(Error::NotGenerating);
    }
    let k = n / d;
    let mut basis = Vec::with_capacity(n);
    let mut bj = l.one();
    for _ in 0..k {
        let mut term = bj.clone();
        for _ in 0..d {
            basis.push(term.clone());
            term = &term * alpha;
        }
        bj = &bj * beta;
    }
    let to_basis = Matrix::from_fn(l.ctx(), n, n, |r, c| basis[c].coords()[r].clone());
    let inv = to_basis.inverse()?.ok_or(Error::NotGenerating)?;
    certify_field(l, alpha, beta)?;
    let images = Matrix::from_fn(l.ctx(), n, n, |r, c| {
        (alpha * &basis[c]).coords()[r].clone()
    });
    let matrix = inv.checked_mul(&images)?;
    let block = Matrix::companion(&p)?;
    let expected = Matrix::direct_sum(&vec![block.clone(); k])?;
    if matrix != expected {
        return Err(Error::IdentityViolated(format!(
            "regular matrix {matrix} is not {k} copies of {block}"
        )));
    }
    Ok(BlockBasis {
        basis,
        matrix,
        block,
        blocks: k,
    })
}

/// Splits a matrix into its companion blocks `C_1 ⊕ ... ⊕ C_t`, each of
/// size greater than one, with total size greater than two.
pub fn companion_blocks(c: &Matrix) -> Result<Vec<UPoly>> {
    if !c.is_square() {
        return Err(Error::NotSquare);
    }
    let n = c.rows();
    let one = c.field().one();
    let mut polys = Vec::new();
    let mut bounds = Vec::new();
    let mut s = 0;
    while s < n {
        let mut e = s;
        while e + 1 < n && c.get(e + 1, e) == &one {
            e += 1;
        }
        let size = e - s + 1;
        if size < 2 {
            return Err(Error::BadBlockStructure);
        }
        let mut coeffs: Vec<FieldElem> = (s..=e).map(|r| -c.get(r, e)).collect();
        coeffs.push(one.clone());
        polys.push(UPoly::new(c.ctx(), coeffs));
        bounds.push((s, e));
        s = e + 1;
    }
    if n <= 2 {
        return Err(Error::BadBlockStructure);
    }
    let blocks: Vec<Matrix> = polys.iter().map(Matrix::companion).collect::<Result<_>>()?;
    if Matrix::direct_sum(&blocks)? != *c {
        return Err(Error::BadBlockStructure);
    }
    Ok(polys)
}

/// Witnesses `A ∈ GL_n(F)`, `B ∈ M_n(F)` with `C A C^{-1} A^{-1}` and
/// `B C - C B` both of degree `n`.
#[derive(Clone, Debug)]
pub struct CompanionCommutators {
    pub a: Matrix,
    pub b: Matrix,
    pub mult: Matrix,
    pub add: Matrix,
    pub mult_minpoly: UPoly,
    pub add_minpoly: UPoly,
    /// Field the additive partner `B` was drawn from.
    pub b_field: &'static str,
    pub tried_a: usize,
    pub tried_b: usize,
}

/// Seeded random search for the two witnesses; `B` is drawn from `M_n(F)`.
pub fn search_companion_commutators(
    c: &Matrix,
    budget: usize,
    seed: u64,
) -> Result<CompanionCommutators> {
    companion_blocks(c)?;
    let n = c.rows();
    let ctx = c.ctx();
    let ci = c.inverse()?.ok_or(Error::NotInvertible)?;
    let mut sampler = Sampler::new(seed, 2);
    let mut found_a = None;
    let mut tried_a = 0;
    while tried_a < budget {
        tried_a += 1;
        let a = sampler.matrix(ctx, n);
        let Some(ai) = a.inverse()? else { continue };
        let mult = c.checked_mul(&a)?.checked_mul(&ci)?.checked_mul(&ai)?;
        let p = mult.minpoly()?;
        if p.degree() == Some(n) {
            found_a = Some((a, mult, p));
            break;
        }
    }
    let Some((a, mult, mult_minpoly)) = found_a else {
        return Err(Error::SearchExhausted { tried: tried_a });
    };
    let mut tried_b = 0;
    while tried_b < budget {
        tried_b += 1;
        let b = sampler.matrix(ctx, n);
        let add = b.checked_mul(c)?.checked_sub(&c.checked_mul(&b)?)?;
        let p = add.minpoly()?;
        if p.degree() == Some(n) {
            return Ok(CompanionCommutators {
                a,
                b,
                mult,
                add,
                mult_minpoly,
                add_minpoly: p,
                b_field: "F",
                tried_a,
                tried_b,
            });
        }
    }
    Err(Error::SearchExhausted {
        tried: tried_a + tried_b,
    })
}

/// Which family of elements the degree bound is measured on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundMode {
    /// All of `D*`.
    NormalSubgroup,
    /// Multiplicative commutators `a b a^{-1} b^{-1}`.
    MultComm,
    /// Additive commutators `a c - c a`.
    AddComm,
}

impl BoundMode {
    pub const ALL: [BoundMode; 3] = [
        BoundMode::NormalSubgroup,
        BoundMode::MultComm,
        BoundMode::AddComm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundMode::NormalSubgroup => "normal_subgroup",
            BoundMode::MultComm => "mult_comm",
            BoundMode::AddComm => "add_comm",
        }
    }
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of checking `[D:F] <= d^2` on one element family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub mode: String,
    /// Largest degree seen, witness included.
    pub d: usize,
    pub n: usize,
    pub witness: String,
    /// Minimal polynomial of the witness.
    pub certificate: String,
    pub dim: usize,
    /// Largest degree over the sample alone.
    pub sampled_d: usize,
    pub sample_size: usize,
    pub bound_holds: bool,
    pub tight: bool,
    /// True unless the algebra is a certified division algebra; matrix
    /// rings stand in for division algebras of higher degree.
    pub surrogate: bool,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mode {}: d = {}, n = {}, [D:F] = {} {} d^2 = {}{}; witness {} with minimal polynomial {}{}",
            self.mode,
            self.d,
            self.n,
            self.dim,
            if self.bound_holds { "<=" } else { ">" },
            self.d * self.d,
            if self.tight { " (tight)" } else { "" },
            self.witness,
            self.certificate,
            if self.surrogate { " [surrogate]" } else { "" },
        )
    }
}

fn certified_division(alg: &AlgebraDef) -> bool {
    match alg.kind() {
        AlgebraKind::Quaternion { a, b } => match (a.as_rational(), b.as_rational()) {
            (Some(a), Some(b)) => is_division_quaternion(a, b).unwrap_or(false),
            _ => false,
        },
        _ => alg.dim() == 1,
    }
}

/// Measures the degree of the mode's element family on a sample, adds an
/// explicit witness built from `generator` (a noncentral element, absent
/// for commutative algebras), and checks `[D:F] <= d^2`.
pub fn verify_bound_d2(
    alg: &AlgebraDef,
    generator: Option<&AlgebraElem>,
    mode: BoundMode,
    sample: &[AlgebraElem],
    seed: u64,
) -> Result<BoundReport> {
    let n = square_degree(alg)?;
    let family: Vec<AlgebraElem> = match mode {
        BoundMode::NormalSubgroup => sample.iter().filter(|x| !x.is_zero()).cloned().collect(),
        BoundMode::MultComm => sample
            .chunks_exact(2)
            .filter_map(|p| crate::algebra::commutators(&p[0], &p[1]).ok().map(|c| c.0))
            .collect(),
        BoundMode::AddComm => sample
            .chunks_exact(2)
            .map(|p| &(&p[0] * &p[1]) - &(&p[1] * &p[0]))
            .collect(),
    };
    let mut sampled_d = 1;
    for x in &family {
        sampled_d = sampled_d.max(minpoly_element(x)?.degree().unwrap());
    }
    let (witness, certificate) = match generator {
        None => (alg.one(), minpoly_element(&alg.one())?),
        Some(g) => match mode {
            BoundMode::NormalSubgroup => (g.clone(), minpoly_element(g)?),
            BoundMode::MultComm => {
                let w = search_mult_commutator(g, 200, seed)?;
                (w.commutator, w.minpoly)
            }
            BoundMode::AddComm => {
                let w = search_add_commutator(g, 200, seed)?;
                (w.commutator, w.minpoly)
            }
        },
    };
    let d = sampled_d.max(certificate.degree().unwrap());
    Ok(BoundReport {
        mode: mode.name().to_string(),
        d,
        n,
        witness: witness.to_string(),
        certificate: certificate.to_string(),
        dim: alg.dim(),
        sampled_d,
        sample_size: family.len(),
        bound_holds: n * n <= d * d,
        tight: d == n,
        surrogate: !certified_division(alg),
    })
}
