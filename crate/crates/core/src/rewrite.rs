//! Rewriting a word in generators of bounded left degree over a maximal
//! subfield `K` into a `K`-combination of words of bounded length.
//!
//! A word `v1 u^d v2` is reduced with the left minimal polynomial of the
//! conjugate `c = p q p^{-1}` (`p = v1(gens)`, `q = u(gens)`): after padding
//! to degree `d`, `c^d = -sum_j β_j c^j` and so
//! `p q^d r = -sum_j β_j p q^j r`. A Shirshov word `v1 u_1...u_d v2` is
//! reduced with the polarization identity, the power terms `u_T^d` being
//! reduced in the same way with `q_T = u_T(gens)`.

use crate::algebra::{AlgebraDef, AlgebraElem};
use crate::error::{Error, Result};
use crate::ext::ExtField;
use crate::field::Field;
use crate::identities::left_minpoly;
use crate::linalg::Matrix;
use crate::poly::UPoly;
use crate::subfield::{Side, SubfieldCtx};
use crate::words::{
    all_words, bell_decompose, polarization_terms, BellDecomposition, FormalSum, Word,
};

/// `w(gens)`; the empty word is 1.
pub fn eval_word(alg: &AlgebraDef, gens: &[AlgebraElem], w: &Word) -> Result<AlgebraElem> {
    check_gens(alg, gens, w.alphabet_size())?;
    Ok(w.letters()
        .iter()
        .fold(alg.one(), |acc, &l| &acc * &gens[l - 1]))
}

/// `sum κ_w w(gens)` with `K` acting on the left.
pub fn eval_sum(
    ctx: &SubfieldCtx,
    gens: &[AlgebraElem],
    s: &FormalSum<ExtField>,
) -> Result<AlgebraElem> {
    let mut acc = ctx.alg().zero();
    for (w, k) in s.terms() {
        acc = &acc + &ctx.act(k, &eval_word(ctx.alg(), gens, w)?, Side::Left);
    }
    Ok(acc)
}

fn check_gens(alg: &AlgebraDef, gens: &[AlgebraElem], m: usize) -> Result<()> {
    if gens.len() != m {
        return Err(Error::InvalidInput(format!(
            "{} generators for words over {m} letters",
            gens.len()
        )));
    }
    if gens.iter().any(|g| g.alg() != alg) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// Coefficients `γ_0..γ_{d-1}` in `K` with `p q^d p^{-1} = sum γ_j p q^j p^{-1}`,
/// from the left minimal polynomial of `p q p^{-1}` padded to degree `d`.
fn power_relation(
    ctx: &SubfieldCtx,
    p: &AlgebraElem,
    pinv: &AlgebraElem,
    q: &AlgebraElem,
    d: usize,
) -> Result<Vec<UPoly>> {
    let c = &(p * q) * pinv;
    let m = left_minpoly(ctx, &c);
    let k = m.degree().unwrap();
    if k > d {
        return Err(Error::DegreeTooLarge { bound: d, found: k });
    }
    let kf = ctx.field();
    let mut gamma = vec![kf.zero(); d];
    for (i, a) in m.coeffs()[..k].iter().enumerate() {
        gamma[i + d - k] = kf.neg(a);
    }
    Ok(gamma)
}

fn check_decomposition(w: &Word, decomp: &BellDecomposition) -> Result<()> {
    if decomp.reassemble() != *w {
        return Err(Error::InvalidInput(format!(
            "decomposition {decomp} does not reassemble to {w}"
        )));
    }
    Ok(())
}

/// Replaces `w = v1 u^d v2` by `sum_j γ_j [v1 u^j v2]`.
pub fn reduce_power_case(
    ctx: &SubfieldCtx,
    gens: &[AlgebraElem],
    w: &Word,
    decomp: &BellDecomposition,
) -> Result<FormalSum<ExtField>> {
    let BellDecomposition::Power { v1, u, v2, d } = decomp else {
        return Err(Error::InvalidInput("expected a power decomposition".into()));
    };
    check_decomposition(w, decomp)?;
    let alg = ctx.alg();
    let p = eval_word(alg, gens, v1)?;
    let pinv = p.try_inverse()?;
    let q = eval_word(alg, gens, u)?;
    let gamma = power_relation(ctx, &p, &pinv, &q, *d)?;
    let mut out = FormalSum::zero(ctx.field().clone());
    for (j, g) in gamma.iter().enumerate() {
        out.add_term(v1.concat(&u.pow(j)).concat(v2), g);
    }
    Ok(out)
}

/// Every word `u_{s_1}...u_{s_j}` for sequences `s` over `t`.
fn expand_power(us: &[Word], t: &[usize], j: usize, m: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(m)];
    for _ in 0..j {
        out = out
            .iter()
            .flat_map(|w| t.iter().map(move |&i| w.concat(&us[i - 1])))
            .collect();
    }
    out
}

/// Replaces `w = v1 u_1...u_d v2` by the polarization expansion, with each
/// `v1 u_T^d v2` power-reduced through `q_T = u_T(gens)`. For `d = 1` the
/// identity is trivial and `w` is returned unchanged.
pub fn reduce_shirshov_case(
    ctx: &SubfieldCtx,
    gens: &[AlgebraElem],
    w: &Word,
    decomp: &BellDecomposition,
    d: usize,
) -> Result<FormalSum<ExtField>> {
    let BellDecomposition::Shirshov { v1, us, v2 } = decomp else {
        return Err(Error::InvalidInput(
            "expected a Shirshov decomposition".into(),
        ));
    };
    if us.len() != d {
        return Err(Error::InvalidInput(format!(
            "{} factors for degree {d}",
            us.len()
        )));
    }
    check_decomposition(w, decomp)?;
    let kf = ctx.field().clone();
    if d == 1 {
        return Ok(FormalSum::word(kf, w.clone()));
    }
    let alg = ctx.alg();
    let m = w.alphabet_size();
    let p = eval_word(alg, gens, v1)?;
    let pinv = p.try_inverse()?;
    let u_vals: Vec<AlgebraElem> = us
        .iter()
        .map(|u| eval_word(alg, gens, u))
        .collect::<Result<_>>()?;
    let (subsets, perms) = polarization_terms(d);
    let mut out = FormalSum::zero(kf.clone());
    for (t, sign) in subsets {
        let q_t = t.iter().fold(alg.zero(), |acc, &i| &acc + &u_vals[i - 1]);
        let gamma = power_relation(ctx, &p, &pinv, &q_t, d)?;
        let sign = kf.from_int(sign);
        for (j, g) in gamma.iter().enumerate() {
            if kf.is_zero(g) {
                continue;
            }
            let c = kf.mul(&sign, g);
            for mid in expand_power(us, &t, j, m) {
                out.add_term(v1.concat(&mid).concat(v2), &c);
            }
        }
    }
    let minus_one = kf.from_int(-1);
    for sigma in perms {
        let mid = sigma
            .iter()
            .fold(Word::empty(m), |acc, &i| acc.concat(&us[i]));
        out.add_term(v1.concat(&mid).concat(v2), &minus_one);
    }
    Ok(out)
}

/// Counters from one run of the driver.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub steps: usize,
    pub power_steps: usize,
    pub shirshov_steps: usize,
}

/// Rewrites `w` until every word in the support has length at most
/// `length_cap`, always reducing the deg-lex greatest long word.
pub fn rewrite_word(
    ctx: &SubfieldCtx,
    gens: &[AlgebraElem],
    w: &Word,
    d: usize,
    length_cap: usize,
    step_cap: usize,
) -> Result<FormalSum<ExtField>> {
    rewrite_word_checked(ctx, gens, w, d, length_cap, step_cap, false).map(|(s, _)| s)
}

/// As [`rewrite_word`]; with `check` set, every step is re-verified: the
/// reduced word evaluates to its replacement and every new word is
/// deg-lex smaller than the one it replaces.
pub fn rewrite_word_checked(
    ctx: &SubfieldCtx,
    gens: &[AlgebraElem],
    w: &Word,
    d: usize,
    length_cap: usize,
    step_cap: usize,
    check: bool,
) -> Result<(FormalSum<ExtField>, RewriteStats)> {
    if d == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    check_gens(ctx.alg(), gens, w.alphabet_size())?;
    let kf = ctx.field().clone();
    let mut sum = FormalSum::word(kf, w.clone());
    let mut stats = RewriteStats::default();
    loop {
        let Some(top) = sum.leading_word().filter(|t| t.len() > length_cap).cloned() else {
            return Ok((sum, stats));
        };
        if stats.steps == step_cap {
            return Err(Error::StepBudgetExceeded(step_cap));
        }
        stats.steps += 1;
        let decomp = if d == 1 {
            // Each letter is its own first power.
            let n = top.len();
            BellDecomposition::Power {
                v1: top.factor(0, n - 1),
                u: top.factor(n - 1, n),
                v2: Word::empty(top.alphabet_size()),
                d: 1,
            }
        } else {
            bell_decompose(&top, d).ok_or_else(|| Error::Undecomposable(top.clone()))?
        };
        let replacement = match decomp {
            BellDecomposition::Power { .. } => {
                stats.power_steps += 1;
                reduce_power_case(ctx, gens, &top, &decomp)?
            }
            BellDecomposition::Shirshov { .. } => {
                stats.shirshov_steps += 1;
                reduce_shirshov_case(ctx, gens, &top, &decomp, d)?
            }
        };
        if check {
            if let Some(bad) = replacement.terms().map(|(v, _)| v).find(|v| *v >= &top) {
                return Err(Error::IdentityViolated(format!(
                    "{top} rewritten into the larger word {bad}"
                )));
            }
            let lhs = eval_word(ctx.alg(), gens, &top)?;
            let rhs = eval_sum(ctx, gens, &replacement)?;
            if lhs != rhs {
                return Err(Error::IdentityViolated(format!(
                    "{top} evaluates to {lhs}, its rewrite to {rhs}"
                )));
            }
        }
        let c = sum.remove(&top).expect("leading word is in the support");
        sum.add_scaled(&replacement, &c);
    }
}

/// Left `K`-dimension of the span of `w(gens)` over all words of length at
/// most `max_len`.
pub fn verify_span_dim(ctx: &SubfieldCtx, gens: &[AlgebraElem], max_len: usize) -> Result<usize> {
    let m = gens.len();
    check_gens(ctx.alg(), gens, m)?;
    let mut rows = Vec::new();
    for len in 0..=max_len {
        for w in all_words(m, len) {
            rows.push(
                ctx.k_coordinates(&eval_word(ctx.alg(), gens, &w)?, Side::Left)
                    .coords,
            );
        }
    }
    Ok(Matrix::from_rows(ctx.field().clone(), rows)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, Sampler};
    use crate::field::FieldCtx;
    use crate::words::power_factorization;
    use proptest::prelude::*;

    const Q: FieldCtx = FieldCtx::Rational;

    fn setup() -> (SubfieldCtx, Vec<AlgebraElem>) {
        let h = AlgebraDef::quaternion(Q, q(-1, 1), q(-1, 1)).unwrap();
        let ctx = SubfieldCtx::new(&h, &h.basis(1)).unwrap();
        (ctx, vec![h.basis(1), h.basis(2)])
    }

    fn w(text: &str) -> Word {
        Word::parse(2, text).unwrap()
    }

    fn kelem(ctx: &SubfieldCtx, c: &[i64]) -> UPoly {
        UPoly::from_ints(Q, c).map(ctx.field().base(), |x| x.clone())
    }

    fn power(word: &Word) -> BellDecomposition {
        let (v1, u, v2) = power_factorization(word, 2).unwrap();
        BellDecomposition::Power { v1, u, v2, d: 2 }
    }

    #[test]
    fn power_case_examples() {
        let (ctx, gens) = setup();
        // i^2 - i*i = 0 is the padded left relation of i over Q(i).
        let r = reduce_power_case(&ctx, &gens, &w("x1 x1"), &power(&w("x1 x1"))).unwrap();
        let mut expected = FormalSum::zero(ctx.field().clone());
        expected.add_term(w("x1"), &kelem(&ctx, &[0, 1]));
        assert_eq!(r, expected);
        assert_eq!(
            eval_sum(&ctx, &gens, &r).unwrap(),
            ctx.alg().scalar(&q(-1, 1))
        );
        let r = reduce_power_case(&ctx, &gens, &w("x2 x2"), &power(&w("x2 x2"))).unwrap();
        assert_eq!(
            eval_sum(&ctx, &gens, &r).unwrap(),
            ctx.alg().scalar(&q(-1, 1))
        );
        let ws = w("x1 x2 x2 x1");
        let r = reduce_power_case(&ctx, &gens, &ws, &power(&ws)).unwrap();
        assert!(r.terms().all(|(v, _)| v.len() < 4));
        assert_eq!(eval_sum(&ctx, &gens, &r).unwrap(), ctx.alg().one());
        assert_eq!(r, {
            let mut e = FormalSum::zero(ctx.field().clone());
            e.add_term(w("x1 x1"), &kelem(&ctx, &[-1]));
            e
        });
        let full = rewrite_word(&ctx, &gens, &ws, 2, 1, 10).unwrap();
        let mut expected = FormalSum::zero(ctx.field().clone());
        expected.add_term(w("x1"), &kelem(&ctx, &[0, -1]));
        assert_eq!(full, expected);
    }

    #[test]
    fn power_case_rejects_high_degree() {
        let m2 = AlgebraDef::matrix_algebra(Q, 2).unwrap();
        let u = m2.from_ints(&[0, -1, 1, 0]).unwrap();
        let ctx = SubfieldCtx::new(&m2, &u).unwrap();
        let g = m2.from_ints(&[1, 1, 0, 1]).unwrap();
        let gens = vec![g.clone(), u];
        let word = w("x1 x1 x1");
        let decomp = BellDecomposition::Power {
            v1: Word::empty(2),
            u: w("x1"),
            v2: w("x1"),
            d: 2,
        };
        let r = reduce_power_case(&ctx, &gens, &word, &decomp).unwrap();
        assert_eq!(eval_sum(&ctx, &gens, &r).unwrap(), g.pow(3));
        let wrong = BellDecomposition::Power {
            v1: Word::empty(2),
            u: w("x1"),
            v2: w("x1"),
            d: 1,
        };
        assert!(matches!(
            reduce_power_case(&ctx, &gens, &w("x1 x1"), &wrong),
            Err(Error::DegreeTooLarge { bound: 1, found: 2 })
        ));
    }

    #[test]
    fn shirshov_case_examples() {
        let (ctx, gens) = setup();
        let word = w("x1 x2");
        let decomp = BellDecomposition::Shirshov {
            v1: Word::empty(2),
            us: vec![w("x1"), w("x2")],
            v2: Word::empty(2),
        };
        let r = reduce_shirshov_case(&ctx, &gens, &word, &decomp, 2).unwrap();
        assert_eq!(eval_sum(&ctx, &gens, &r).unwrap(), ctx.alg().basis(3));
        assert_eq!(r.coeff(&w("x2 x1")), ctx.field().from_int(-1));
        let word = w("x1 x2 x1");
        let decomp = crate::words::shirshov_split(&word, 2).unwrap();
        let r = reduce_shirshov_case(&ctx, &gens, &word, &decomp, 2).unwrap();
        assert_eq!(
            eval_sum(&ctx, &gens, &r).unwrap(),
            eval_word(ctx.alg(), &gens, &word).unwrap()
        );
        let single = BellDecomposition::Shirshov {
            v1: w("x1"),
            us: vec![w("x2")],
            v2: Word::empty(2),
        };
        let r = reduce_shirshov_case(&ctx, &gens, &word.factor(0, 2), &single, 1).unwrap();
        assert_eq!(r, FormalSum::word(ctx.field().clone(), w("x1 x2")));
    }

    #[test]
    fn shirshov_case_in_matrices() {
        let m2 = AlgebraDef::matrix_algebra(Q, 2).unwrap();
        let ctx = SubfieldCtx::new(&m2, &m2.from_ints(&[0, 2, 1, 0]).unwrap()).unwrap();
        let mut s = Sampler::new(5, 3);
        let word = w("x1 x2 x1");
        let decomp = crate::words::shirshov_split(&word, 2).unwrap();
        let mut checked = 0;
        while checked < 50 {
            let gens = vec![s.element(&m2), s.element(&m2)];
            if gens.iter().any(|g| g.inverse().unwrap().is_none()) {
                continue;
            }
            let r = reduce_shirshov_case(&ctx, &gens, &word, &decomp, 2).unwrap();
            assert_eq!(
                eval_sum(&ctx, &gens, &r).unwrap(),
                eval_word(&m2, &gens, &word).unwrap()
            );
            checked += 1;
        }
    }

    #[test]
    fn rewrite_examples() {
        let (ctx, gens) = setup();
        let word = w("x1 x2 x1 x2");
        let (r, stats) = rewrite_word_checked(&ctx, &gens, &word, 2, 2, 100, true).unwrap();
        assert!(r.max_len() <= 2);
        assert_eq!(
            eval_sum(&ctx, &gens, &r).unwrap(),
            ctx.alg().scalar(&q(-1, 1))
        );
        assert!(stats.steps > 0);
        let short = w("x2 x1");
        assert_eq!(
            rewrite_word(&ctx, &gens, &short, 2, 2, 0).unwrap(),
            FormalSum::word(ctx.field().clone(), short)
        );
        assert_eq!(
            rewrite_word(&ctx, &gens, &w("x1 x2 x1 x2 x1 x2"), 2, 2, 0),
            Err(Error::StepBudgetExceeded(0))
        );
    }

    #[test]
    fn span_dims() {
        let (ctx, gens) = setup();
        assert_eq!(verify_span_dim(&ctx, &gens, 0).unwrap(), 1);
        assert_eq!(verify_span_dim(&ctx, &gens, 1).unwrap(), 2);
        assert_eq!(verify_span_dim(&ctx, &gens, 4).unwrap(), 2);
        let only_i = vec![gens[0].clone()];
        assert_eq!(verify_span_dim(&ctx, &only_i, 3).unwrap(), 1);
    }

    #[test]
    fn degree_one_generators() {
        let (ctx, _) = setup();
        let h = ctx.alg().clone();
        let gens = vec![h.from_ints(&[1, 2, 0, 0]).unwrap(), h.basis(1)];
        let word = w("x1 x2 x1 x1");
        let r = rewrite_word(&ctx, &gens, &word, 1, 0, 10).unwrap();
        assert_eq!(r.max_len(), 0);
        assert_eq!(
            eval_sum(&ctx, &gens, &r).unwrap(),
            eval_word(&h, &gens, &word).unwrap()
        );
        assert!(matches!(
            rewrite_word(&ctx, &[h.basis(2), h.basis(1)], &word, 1, 0, 10),
            Err(Error::DegreeTooLarge { bound: 1, found: 2 })
        ));
    }

    #[test]
    fn cap_below_bound_is_undecomposable() {
        let (ctx, gens) = setup();
        assert_eq!(
            rewrite_word(&ctx, &gens, &w("x2 x1"), 2, 1, 10),
            Err(Error::Undecomposable(w("x2 x1")))
        );
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec(1usize..=2, 0..=8).prop_map(|l| Word::new(2, l).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn rewrite_is_sound(word in word_strategy()) {
            let (ctx, gens) = setup();
            let (r, _) = rewrite_word_checked(&ctx, &gens, &word, 2, 2, 10_000, true).unwrap();
            prop_assert!(r.max_len() <= 2);
            prop_assert_eq!(eval_sum(&ctx, &gens, &r).unwrap(), eval_word(ctx.alg(), &gens, &word).unwrap());
        }

        #[test]
        fn rewrite_sound_in_other_quaternions(word in word_strategy(), a in 1i64..6, b in 1i64..6) {
            let h = AlgebraDef::quaternion(Q, q(-a, 1), q(-b, 1)).unwrap();
            let ctx = SubfieldCtx::new(&h, &h.basis(1)).unwrap();
            let gens = vec![h.from_ints(&[1, 1, 0, 0]).unwrap(), h.from_ints(&[0, 1, 1, 1]).unwrap()];
            let (r, _) = rewrite_word_checked(&ctx, &gens, &word, 2, 2, 10_000, true).unwrap();
            prop_assert!(r.max_len() <= 2);
            prop_assert_eq!(eval_sum(&ctx, &gens, &r).unwrap(), eval_word(&h, &gens, &word).unwrap());
        }
    }
}
