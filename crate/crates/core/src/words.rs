//! Words in the free monoid on `x1, ..., xm`, degree-lex order, and the
//! power / Shirshov decompositions used by the rewriting engine.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// A word over the alphabet `x1, ..., xm`. Letters are stored 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    m: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(m: usize, letters: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l > m) {
            return Err(Error::InvalidInput(format!(
                "letter x{bad} outside alphabet x1..x{m}"
            )));
        }
        Ok(Word { m, letters })
    }

    pub fn empty(m: usize) -> Self {
        Word {
            m,
            letters: Vec::new(),
        }
    }

    pub fn letter(m: usize, l: usize) -> Result<Self> {
        Word::new(m, vec![l])
    }

    /// Parses `x1 x2 x1` (spaces optional). `ε`, `e` and the empty string
    /// denote the empty word.
    pub fn parse(m: usize, text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "ε" || s == "e" {
            return Ok(Word::empty(m));
        }
        let mut letters = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            if c != 'x' {
                return Err(Error::InvalidInput(format!(
                    "expected `x` in word `{text}`, found `{c}`"
                )));
            }
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            // Single-digit letters, so `x1x2` and `x12` (= x1 x2) agree.
            if digits.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "missing letter index in `{text}`"
                )));
            }
            for d in digits.chars() {
                letters.push(d.to_digit(10).unwrap() as usize);
            }
        }
        Word::new(m, letters)
    }

    pub fn alphabet_size(&self) -> usize {
        self.m
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            m: self.m.max(other.m),
            letters,
        }
    }

    pub fn pow(&self, k: usize) -> Word {
        Word {
            m: self.m,
            letters: self.letters.repeat(k),
        }
    }

    /// The factor `w[start..end]`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word {
            m: self.m,
            letters: self.letters[start..end].to_vec(),
        }
    }

    /// Degree-lex comparison: shorter words are smaller; among words of the
    /// same length the first differing letter decides, with `x1` greatest.
    pub fn deglex_cmp(&self, other: &Word) -> Result<Ordering> {
        if self.m != other.m {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| other.letters.cmp(&self.letters))
            .then_with(|| self.m.cmp(&other.m))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{l}")?;
        }
        Ok(())
    }
}

/// A factorization of a word witnessing that it is reducible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BellDecomposition {
    /// `w = v1 u^d v2` with `u` nonempty.
    Power {
        v1: Word,
        u: Word,
        v2: Word,
        d: usize,
    },
    /// `w = v1 u_1 ... u_d v2` with `u_1...u_d` strictly greater than every
    /// nontrivial rearrangement and `(d-1) len(u_i) < len(u_1...u_d)`.
    Shirshov { v1: Word, us: Vec<Word>, v2: Word },
}

impl BellDecomposition {
    pub fn reassemble(&self) -> Word {
        match self {
            BellDecomposition::Power { v1, u, v2, d } => v1.concat(&u.pow(*d)).concat(v2),
            BellDecomposition::Shirshov { v1, us, v2 } => us
                .iter()
                .fold(v1.clone(), |acc, u| acc.concat(u))
                .concat(v2),
        }
    }

    /// Re-checks the defining conditions from scratch.
    pub fn verify(&self, d: usize) -> bool {
        match self {
            BellDecomposition::Power { u, d: e, .. } => !u.is_empty() && *e == d,
            BellDecomposition::Shirshov { us, .. } => us.len() == d && shirshov_valid(us),
        }
    }
}

impl fmt::Display for BellDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BellDecomposition::Power { v1, u, v2, d } => {
                write!(f, "power: v1 = {v1}, u = {u}, d = {d}, v2 = {v2}")
            }
            BellDecomposition::Shirshov { v1, us, v2 } => {
                write!(f, "shirshov: v1 = {v1}")?;
                for (i, u) in us.iter().enumerate() {
                    write!(f, ", u{} = {u}", i + 1)?;
                }
                write!(f, ", v2 = {v2}")
            }
        }
    }
}

/// The leftmost factor of `w` that is a `d`-th power, preferring the
/// shortest period at a given start.
pub fn power_factorization(w: &Word, d: usize) -> Option<(Word, Word, Word)> {
    assert!(d >= 2, "power factorization needs d >= 2");
    let l = &w.letters;
    let n = l.len();
    for start in 0..n {
        for period in 1..=(n - start) / d {
            let end = start + period * d;
            if (start + period..end).all(|i| l[i] == l[i - period]) {
                return Some((
                    w.factor(0, start),
                    w.factor(start, start + period),
                    w.factor(end, n),
                ));
            }
        }
    }
    None
}

/// Calls `f` on every permutation of `0..n` except the identity, in
/// lexicographic order; stops early when `f` returns false.
pub(crate) fn for_each_nontrivial_perm(n: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut p: Vec<usize> = (0..n).collect();
    while next_permutation(&mut p) {
        if !f(&p) {
            return false;
        }
    }
    true
}

/// Advances to the lexicographically next permutation; false at the last.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn shirshov_valid(us: &[Word]) -> bool {
    let d = us.len();
    if us.iter().any(Word::is_empty) {
        return false;
    }
    let block: Vec<usize> = us.iter().flat_map(|u| u.letters.iter().copied()).collect();
    if us.iter().any(|u| (d - 1) * u.len() >= block.len()) {
        return false;
    }
    let mut scratch = Vec::with_capacity(block.len());
    for_each_nontrivial_perm(d, |sigma| {
        scratch.clear();
        for &s in sigma {
            scratch.extend_from_slice(&us[s].letters);
        }
        // Same length, so deg-lex is reversed lexicographic order.
        block < scratch
    })
}

/// Compositions of `total` into `parts` positive pieces, in lexicographic
/// order of the piece vector.
fn compositions(total: usize, parts: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        left: usize,
        parts: usize,
        acc: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if parts == 1 {
            if left == 0 {
                return true;
            }
            acc.push(left);
            let go = f(acc);
            acc.pop();
            return go;
        }
        for first in 1..left {
            if left - first < parts - 1 {
                break;
            }
            acc.push(first);
            let go = rec(left - first, parts - 1, acc, f);
            acc.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(total, parts, &mut Vec::with_capacity(parts), f)
}

/// Searches for a Shirshov decomposition. Candidates are enumerated by the
/// length of `v1`, then the length of `v2` (longest block first), then the
/// vector of block lengths lexicographically.
pub fn shirshov_split(w: &Word, d: usize) -> Option<BellDecomposition> {
    assert!(d >= 2, "Shirshov decomposition needs d >= 2");
    let n = w.len();
    for a in 0..n {
        for b in 0..n - a {
            let block = n - a - b;
            if block < d {
                break;
            }
            let mut found = None;
            compositions(block, d, &mut |lens: &[usize]| {
                let mut pos = a;
                let us: Vec<Word> = lens
                    .iter()
                    .map(|&len| {
                        let u = w.factor(pos, pos + len);
                        pos += len;
                        u
                    })
                    .collect();
                if shirshov_valid(&us) {
                    found = Some(us);
                    return false;
                }
                true
            });
            if let Some(us) = found {
                return Some(BellDecomposition::Shirshov {
                    v1: w.factor(0, a),
                    us,
                    v2: w.factor(n - b, n),
                });
            }
        }
    }
    None
}

/// Power factorization first, then Shirshov.
pub fn bell_decompose(w: &Word, d: usize) -> Option<BellDecomposition> {
    if let Some((v1, u, v2)) = power_factorization(w, d) {
        return Some(BellDecomposition::Power { v1, u, v2, d });
    }
    shirshov_split(w, d)
}

/// All words of length `len` over `m` letters, in increasing deg-lex order
/// reversed (x1 x1 ... first).
pub fn all_words(m: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = m.checked_pow(len as u32).expect("word count overflows");
    (0..total).map(move |mut k| {
        let mut letters = vec![0; len];
        for slot in letters.iter_mut().rev() {
            *slot = k % m + 1;
            k /= m;
        }
        Word { m, letters }
    })
}

/// Outcome of the exhaustive decomposition oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEstimate {
    /// Every word longer than `n` (up to `max_len`) decomposes.
    pub n: usize,
    /// A word of length `n` that does not decompose.
    pub witness: Word,
}

/// Smallest `n` such that every word of length in `(n, max_len]`
/// decomposes, found by enumerating all words.
pub fn estimate_bound_n(m: usize, d: usize, max_len: usize) -> Result<BoundEstimate> {
    if m == 0 {
        return Err(Error::InvalidInput("alphabet must be nonempty".into()));
    }
    let mut last_failure = None;
    for len in 0..=max_len {
        if let Some(w) = all_words(m, len).find(|w| bell_decompose(w, d).is_none()) {
            last_failure = Some(w);
        }
    }
    let witness = last_failure.expect("the empty word never decomposes");
    if witness.len() == max_len {
        return Err(Error::NotFoundUpTo(max_len));
    }
    Ok(BoundEstimate {
        n: witness.len(),
        witness,
    })
}

/// Term lists of the polarization identity
/// `u_1...u_d = sum_T (-1)^{d-|T|} u_T^d - sum_{σ ≠ id} u_σ(1)...u_σ(d)`:
/// nonempty subsets `T` (1-based, ascending bitmask order) with their signs,
/// and the nontrivial permutations (0-based images) in lexicographic order.
pub fn polarization_terms(d: usize) -> (Vec<(Vec<usize>, i64)>, Vec<Vec<usize>>) {
    assert!(d >= 1);
    let subsets = (1u32..(1 << d))
        .map(|mask| {
            let t: Vec<usize> = (0..d)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| i + 1)
                .collect();
            let sign = if (d - t.len()).is_multiple_of(2) {
                1
            } else {
                -1
            };
            (t, sign)
        })
        .collect();
    let mut perms = Vec::new();
    for_each_nontrivial_perm(d, |p| {
        perms.push(p.to_vec());
        true
    });
    (subsets, perms)
}

/// A finite linear combination of words with coefficients in `F`.
#[derive(Clone)]
pub struct FormalSum<F: Field> {
    field: F,
    terms: BTreeMap<Word, F::Elem>,
}

impl<F: Field> PartialEq for FormalSum<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for FormalSum<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalSum({self})")
    }
}

impl<F: Field> FormalSum<F> {
    pub fn zero(field: F) -> Self {
        FormalSum {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(field: F, w: Word) -> Self {
        let mut s = FormalSum::zero(field);
        let one = s.field.one();
        s.add_term(w, &one);
        s
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn add_term(&mut self, w: Word, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = self.field.add(v, c);
                if self.field.is_zero(v) {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    /// Adds `c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &F::Elem) {
        for (w, v) in &other.terms {
            let cv = self.field.mul(c, v);
            self.add_term(w.clone(), &cv);
        }
    }

    pub fn remove(&mut self, w: &Word) -> Option<F::Elem> {
        self.terms.remove(w)
    }

    pub fn coeff(&self, w: &Word) -> F::Elem {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The deg-lex greatest word in the support.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }
}

impl<F: Field> fmt::Display for FormalSum<F> {
    /// Greatest word first: `-i*[x1] - [ε] - [x2 x1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let s = self.field.render(c);
            let compound = s.contains(' ');
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, s),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if compound {
                write!(f, "({mag})*")?;
            } else if mag != "1" {
                write!(f, "{mag}*")?;
            }
            write!(f, "[{w}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn w(s: &str) -> Word {
        Word::parse(2, s).unwrap()
    }

    #[test]
    fn deglex_examples() {
        assert_eq!(w("x2x2").deglex_cmp(&w("x1")).unwrap(), Ordering::Greater);
        assert_eq!(w("x1x2").deglex_cmp(&w("x2x1")).unwrap(), Ordering::Greater);
        assert_eq!(w("x1x2").deglex_cmp(&w("x1x2")).unwrap(), Ordering::Equal);
        assert_eq!(
            w("x1").deglex_cmp(&Word::parse(3, "x1").unwrap()),
            Err(Error::AlphabetMismatch)
        );
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(w("x1 x2 x1").letters(), &[1, 2, 1]);
        assert_eq!(w("x1 x2 x1").to_string(), "x1 x2 x1");
        assert_eq!(w("").to_string(), "ε");
        assert!(Word::parse(2, "x3").is_err());
        assert!(Word::parse(2, "y1").is_err());
    }

    #[test]
    fn power_examples() {
        assert_eq!(
            power_factorization(&w("x1x2x1x2"), 2),
            Some((w(""), w("x1x2"), w("")))
        );
        assert_eq!(power_factorization(&w("x1x2x1"), 2), None);
        assert_eq!(
            power_factorization(&w("x2x1x1x2"), 2),
            Some((w("x2"), w("x1"), w("x2")))
        );
    }

    #[test]
    fn shirshov_examples() {
        assert_eq!(
            shirshov_split(&w("x1x2x1"), 2),
            Some(BellDecomposition::Shirshov {
                v1: w(""),
                us: vec![w("x1"), w("x2x1")],
                v2: w("")
            })
        );
        assert_eq!(
            shirshov_split(&w("x1x2"), 2),
            Some(BellDecomposition::Shirshov {
                v1: w(""),
                us: vec![w("x1"), w("x2")],
                v2: w("")
            })
        );
        assert_eq!(shirshov_split(&w("x2x2x2"), 2), None);
    }

    #[test]
    fn bell_examples() {
        assert_eq!(
            bell_decompose(&w("x2x1x1"), 2),
            Some(BellDecomposition::Power {
                v1: w("x2"),
                u: w("x1"),
                v2: w(""),
                d: 2
            })
        );
        assert!(matches!(
            bell_decompose(&w("x1x2x1"), 2),
            Some(BellDecomposition::Shirshov { .. })
        ));
        assert_eq!(bell_decompose(&w("x1"), 2), None);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(estimate_bound_n(1, 2, 10).unwrap().n, 1);
        assert_eq!(estimate_bound_n(2, 2, 1), Err(Error::NotFoundUpTo(1)));
        let est = estimate_bound_n(2, 2, 8).unwrap();
        assert_eq!(est.n, 2);
        assert_eq!(est.witness, w("x2x1"));
    }

    #[test]
    fn polarization_small() {
        let (s, p) = polarization_terms(1);
        assert_eq!(s, vec![(vec![1], 1)]);
        assert!(p.is_empty());
        let (s, p) = polarization_terms(2);
        assert_eq!(s, vec![(vec![1], -1), (vec![2], -1), (vec![1, 2], 1)]);
        assert_eq!(p, vec![vec![1, 0]]);
        let (s, p) = polarization_terms(3);
        assert_eq!((s.len(), p.len()), (7, 5));
    }

    /// Expands the right-hand side in the free algebra on u_1..u_d and
    /// compares monomial coefficients with the single monomial u_1...u_d.
    fn polarization_holds_symbolically(d: usize) -> bool {
        let (subsets, perms) = polarization_terms(d);
        let mut coeffs: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (t, sign) in subsets {
            // u_T^d = sum over all sequences in T^d
            let k = t.len();
            for code in 0..k.pow(d as u32) {
                let mut c = code;
                let mono: Vec<usize> = (0..d)
                    .map(|_| {
                        let v = t[c % k];
                        c /= k;
                        v
                    })
                    .collect();
                *coeffs.entry(mono).or_default() += sign;
            }
        }
        for p in perms {
            let mono: Vec<usize> = p.iter().map(|i| i + 1).collect();
            *coeffs.entry(mono).or_default() -= 1;
        }
        coeffs.retain(|_, v| *v != 0);
        let id: Vec<usize> = (1..=d).collect();
        coeffs.len() == 1 && coeffs.get(&id) == Some(&1)
    }

    #[test]
    fn polarization_free_algebra() {
        for d in 1..=4 {
            assert!(polarization_holds_symbolically(d), "d = {d}");
        }
    }

    #[test]
    fn perms_are_lexicographic() {
        let mut all = Vec::new();
        for_each_nontrivial_perm(3, |p| {
            all.push(p.to_vec());
            true
        });
        assert_eq!(
            all,
            vec![
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
    }

    #[test]
    fn formal_sum_bookkeeping() {
        let q = FieldCtx::Rational;
        let mut s = FormalSum::word(q, w("x1"));
        s.add_term(w("x2x1"), &q.from_int(-1));
        s.add_term(w(""), &q.from_int(3));
        assert_eq!(s.to_string(), "-[x2 x1] + [x1] + 3*[ε]");
        s.add_term(w("x2x1"), &q.from_int(1));
        assert_eq!(s.len(), 2);
        assert_eq!(s.leading_word(), Some(&w("x1")));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_word(max: usize) -> impl Strategy<Value = Word> {
            proptest::collection::vec(1usize..=3, 0..max).prop_map(|l| Word::new(3, l).unwrap())
        }

        proptest! {
            #[test]
            fn deglex_compatible_with_concatenation(a in arb_word(6), b in arb_word(6), c in arb_word(4)) {
                let ord = a.cmp(&b);
                prop_assert_eq!(c.concat(&a).cmp(&c.concat(&b)), ord);
                prop_assert_eq!(a.concat(&c).cmp(&b.concat(&c)), ord);
            }

            #[test]
            fn decompositions_reassemble(word in arb_word(10), d in 2usize..4) {
                if let Some(dec) = bell_decompose(&word, d) {
                    prop_assert_eq!(dec.reassemble(), word.clone());
                    prop_assert!(dec.verify(d));
                }
                if let Some(dec) = shirshov_split(&word, d) {
                    prop_assert_eq!(dec.reassemble(), word);
                    prop_assert!(dec.verify(d));
                }
            }
        }
    }
}
