//! Words over a graded letter space: truncated tensor algebras and
//! coalgebras, with the standard lifts (coderivations, coalgebra morphisms,
//! derivations) and word-level multi-insertion.
//!
//! A word is a finite letter-index sequence; `WordVec` is a sparse rational
//! combination of words. Weight is the letter count (or a per-letter weight
//! sum when configured); spaces are truncated at a maximum weight, and any
//! operation that would produce a word beyond the cutoff marks the
//! evaluation context instead of silently dropping information.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{EvalCtx, GradedSpace, Vector};
use crate::linalg::{neg_one_pow, Rational};
use crate::multimap::MultiMap;

/// Sparse combination of words (letter-index sequences).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordVec {
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl WordVec {
    pub fn zero() -> Self {
        WordVec::default()
    }

    pub fn single(word: Vec<u32>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, Rational::one());
        WordVec { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[u32]) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, word: Vec<u32>, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let cur = self.terms.remove(&word).unwrap_or_else(Rational::zero);
        let next = cur + coeff;
        if !next.is_zero() {
            self.terms.insert(word, next);
        }
    }

    pub fn add(&self, other: &WordVec) -> WordVec {
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &WordVec) -> WordVec {
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_term(w.clone(), &(-c.clone()));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> WordVec {
        if c.is_zero() {
            return WordVec::zero();
        }
        WordVec {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &WordVec, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, v) in other.iter() {
            self.add_term(w.clone(), &(v * c));
        }
    }

    /// The length-1 component as a letter vector (corestriction).
    pub fn corestrict(&self) -> Vector {
        let mut out = Vector::zero();
        for (w, c) in &self.terms {
            if w.len() == 1 {
                out.add_term(w[0], c);
            }
        }
        out
    }

    /// Embed a letter vector as length-1 words.
    pub fn from_letters(v: &Vector) -> WordVec {
        let mut out = WordVec::zero();
        for (i, c) in v.iter() {
            out.add_term(vec![i], c);
        }
        out
    }
}

/// Total degree of a word.
pub fn word_degree(space: &GradedSpace, word: &[u32]) -> i64 {
    word.iter().map(|&l| space.degree(l)).sum()
}

/// A family of multilinear maps indexed by arity, with a declared knowledge
/// horizon. Arities up to `known_up_to` are fully specified (absent means
/// zero); beyond it the family is unknown, and probing it marks the
/// context.
#[derive(Debug, Clone)]
pub struct MapFamily {
    degree: i64,
    maps: BTreeMap<usize, MultiMap>,
    known_up_to: usize,
}

impl MapFamily {
    pub fn new(degree: i64, known_up_to: usize) -> Self {
        MapFamily { degree, maps: BTreeMap::new(), known_up_to }
    }

    /// A family known at every arity (all unset components exactly zero).
    pub fn total(degree: i64) -> Self {
        MapFamily::new(degree, usize::MAX)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn known_up_to(&self) -> usize {
        self.known_up_to
    }

    pub fn insert(&mut self, map: MultiMap) -> Result<()> {
        if map.degree() != self.degree {
            return Err(Error::InvalidData(format!(
                "family of degree {} given a component of degree {}",
                self.degree,
                map.degree()
            )));
        }
        if map.arity() > self.known_up_to {
            return Err(Error::InvalidData(format!(
                "family known up to arity {} given a component of arity {}",
                self.known_up_to,
                map.arity()
            )));
        }
        self.maps.insert(map.arity(), map);
        Ok(())
    }

    pub fn component(&self, arity: usize) -> Option<&MultiMap> {
        self.maps.get(&arity)
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.maps.keys().copied()
    }

    /// Apply the arity-`block.len()` component to a basis block. Unknown
    /// arities mark the context and contribute nothing.
    pub fn apply_block(&self, block: &[u32], ctx: &mut EvalCtx) -> Vector {
        let m = block.len();
        if m > self.known_up_to {
            ctx.mark_truncated(format!(
                "arity-{m} component beyond declared horizon {}",
                self.known_up_to
            ));
            return Vector::zero();
        }
        match self.maps.get(&m) {
            Some(f) => f.apply_basis(block),
            None => Vector::zero(),
        }
    }
}

/// Generator data for a derivation of the free algebra: a word-valued
/// assignment on letters.
#[derive(Debug, Clone, Default)]
pub struct WordMap {
    degree: i64,
    table: BTreeMap<u32, WordVec>,
}

impl WordMap {
    pub fn new(degree: i64) -> Self {
        WordMap { degree, table: BTreeMap::new() }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn set(&mut self, letter: u32, value: WordVec) {
        if value.is_zero() {
            self.table.remove(&letter);
        } else {
            self.table.insert(letter, value);
        }
    }

    pub fn apply_letter(&self, letter: u32) -> WordVec {
        self.table.get(&letter).cloned().unwrap_or_else(WordVec::zero)
    }
}

/// Coderivation lift to the reduced tensor coalgebra: on a word, sum over
/// consecutive blocks, applying the family to the block in place, with the
/// Koszul sign of moving the (homogeneous) family past the prefix.
pub fn lift_coderivation(
    family: &MapFamily,
    word: &[u32],
    space: &GradedSpace,
    ctx: &mut EvalCtx,
) -> WordVec {
    let n = word.len();
    let mut out = WordVec::zero();
    let mut prefix_degree: i64 = 0;
    for start in 0..n {
        for len in 1..=(n - start) {
            let block = &word[start..start + len];
            let val = family.apply_block(block, ctx);
            if val.is_zero() {
                continue;
            }
            let sign = neg_one_pow(family.degree() * prefix_degree);
            for (letter, c) in val.iter() {
                let mut w = Vec::with_capacity(n - len + 1);
                w.extend_from_slice(&word[..start]);
                w.push(letter);
                w.extend_from_slice(&word[start + len..]);
                out.add_term(w, &(c * &sign));
            }
        }
        prefix_degree += space.degree(word[start]);
    }
    out
}

/// Coalgebra-morphism lift: on a word, sum over compositions of the word
/// into consecutive blocks, applying the (degree-0) family to each block
/// and tensoring the letter outputs. No signs arise since all components
/// are degree 0; non-zero-degree families are rejected.
pub fn lift_coalgebra_morphism(
    family: &MapFamily,
    word: &[u32],
    ctx: &mut EvalCtx,
) -> Result<WordVec> {
    if family.degree() != 0 {
        return Err(Error::NotAMorphismDatum(format!(
            "coalgebra-morphism components must have degree 0, found {}",
            family.degree()
        )));
    }
    let n = word.len();
    if n == 0 {
        return Ok(WordVec::single(vec![]));
    }
    // Dynamic programming over suffixes: result[i] = lift on word[i..].
    let mut result: Vec<WordVec> = vec![WordVec::zero(); n + 1];
    result[n] = WordVec::single(vec![]);
    for i in (0..n).rev() {
        let mut acc = WordVec::zero();
        for m in 1..=(n - i) {
            let block = &word[i..i + m];
            let head = family.apply_block(block, ctx);
            if head.is_zero() {
                continue;
            }
            let tail = result[i + m].clone();
            for (letter, hc) in head.iter() {
                for (rest, rc) in tail.iter() {
                    let mut w = Vec::with_capacity(1 + rest.len());
                    w.push(letter);
                    w.extend_from_slice(rest);
                    acc.add_term(w, &(hc * rc));
                }
            }
        }
        result[i] = acc;
    }
    Ok(result[0].clone())
}

/// Derivation lift to the free algebra: on a word, sum over single letters,
/// replacing the letter by its generator value, with the Koszul sign of
/// moving the derivation past the prefix. Words that would exceed
/// `max_weight` mark the context and are dropped.
pub fn lift_derivation(
    gen: &WordMap,
    word: &[u32],
    space: &GradedSpace,
    max_weight: usize,
    ctx: &mut EvalCtx,
) -> WordVec {
    let mut out = WordVec::zero();
    let mut prefix_degree: i64 = 0;
    for (i, &letter) in word.iter().enumerate() {
        let val = gen.apply_letter(letter);
        if !val.is_zero() {
            let sign = neg_one_pow(gen.degree() * prefix_degree);
            for (mid, c) in val.iter() {
                let new_len = word.len() - 1 + mid.len();
                if new_len > max_weight {
                    ctx.mark_truncated(format!(
                        "derivation output weight {new_len} beyond cutoff {max_weight}"
                    ));
                    continue;
                }
                let mut w = Vec::with_capacity(new_len);
                w.extend_from_slice(&word[..i]);
                w.extend_from_slice(mid);
                w.extend_from_slice(&word[i + 1..]);
                out.add_term(w, &(c * &sign));
            }
        }
        prefix_degree += space.degree(letter);
    }
    out
}

/// Word-level multi-insertion: apply the ordered operator components to
/// disjoint consecutive blocks of the word (in order), splicing each output
/// letter in place, summed over all such placements. Each component takes
/// `arity ≥ 1` letters to one letter, so words only shrink; the Koszul sign
/// moves each component past the original letters strictly before its
/// block.
pub fn multi_insert_word(
    ops: &[&MultiMap],
    word: &[u32],
    space: &GradedSpace,
) -> WordVec {
    fn rec(
        ops: &[&MultiMap],
        word: &[u32],
        from: usize,
        degree_before: i64,
        space: &GradedSpace,
        prefix: &[u32],
        coeff: &Rational,
        out: &mut WordVec,
    ) {
        let Some((op, rest)) = ops.split_first() else {
            let mut w = prefix.to_vec();
            w.extend_from_slice(&word[from..]);
            out.add_term(w, coeff);
            return;
        };
        let a = op.arity();
        // Choose the start of this component's block.
        let mut deg = degree_before;
        for start in from..=word.len().saturating_sub(a) {
            if start + a > word.len() {
                break;
            }
            // Letters passed through before the block: word[from..start].
            let mut new_prefix = prefix.to_vec();
            new_prefix.extend_from_slice(&word[from..start]);
            let block = &word[start..start + a];
            let val = op.apply_basis(block);
            if !val.is_zero() {
                let sign = neg_one_pow(op.degree() * deg);
                for (letter, c) in val.iter() {
                    let mut p = new_prefix.clone();
                    p.push(letter);
                    let block_deg: i64 = block.iter().map(|&l| space.degree(l)).sum();
                    rec(
                        rest,
                        word,
                        start + a,
                        deg + block_deg,
                        space,
                        &p,
                        &(coeff * c * &sign),
                        out,
                    );
                }
            }
            deg += space.degree(word[start]);
        }
    }
    let mut out = WordVec::zero();
    rec(
        ops,
        word,
        0,
        0,
        space,
        &[],
        &Rational::one(),
        &mut out,
    );
    out
}

/// Mirror of [`multi_insert_word`] for operators acting from the right:
/// the Koszul sign moves each component past the original letters strictly
/// after its block instead of before it. Placements and splicing are
/// otherwise identical.
pub fn multi_insert_word_right(
    ops: &[&MultiMap],
    word: &[u32],
    space: &GradedSpace,
) -> WordVec {
    fn rec(
        ops: &[&MultiMap],
        word: &[u32],
        from: usize,
        degree_before: i64,
        total_degree: i64,
        space: &GradedSpace,
        prefix: &[u32],
        coeff: &Rational,
        out: &mut WordVec,
    ) {
        let Some((op, rest)) = ops.split_first() else {
            let mut w = prefix.to_vec();
            w.extend_from_slice(&word[from..]);
            out.add_term(w, coeff);
            return;
        };
        let a = op.arity();
        let mut deg = degree_before;
        for start in from..=word.len().saturating_sub(a) {
            if start + a > word.len() {
                break;
            }
            let mut new_prefix = prefix.to_vec();
            new_prefix.extend_from_slice(&word[from..start]);
            let block = &word[start..start + a];
            let val = op.apply_basis(block);
            if !val.is_zero() {
                let block_deg: i64 = block.iter().map(|&l| space.degree(l)).sum();
                let suffix_deg = total_degree - deg - block_deg;
                let sign = neg_one_pow(op.degree() * suffix_deg);
                for (letter, c) in val.iter() {
                    let mut p = new_prefix.clone();
                    p.push(letter);
                    rec(
                        rest,
                        word,
                        start + a,
                        deg + block_deg,
                        total_degree,
                        space,
                        &p,
                        &(coeff * c * &sign),
                        out,
                    );
                }
            }
            deg += space.degree(word[start]);
        }
    }
    let total: i64 = word.iter().map(|&l| space.degree(l)).sum();
    let mut out = WordVec::zero();
    rec(
        ops,
        word,
        0,
        0,
        total,
        space,
        &[],
        &Rational::one(),
        &mut out,
    );
    out
}

/// All deconcatenation splits of a word into two nonempty halves.
pub fn deconcat(word: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    (1..word.len())
        .map(|i| (word[..i].to_vec(), word[i..].to_vec()))
        .collect()
}

/// Concatenate with a weight cap; overflow marks the context and yields
/// `None`.
pub fn concat_checked(
    left: &[u32],
    right: &[u32],
    max_weight: usize,
    ctx: &mut EvalCtx,
) -> Option<Vec<u32>> {
    if left.len() + right.len() > max_weight {
        ctx.mark_truncated(format!(
            "concatenation weight {} beyond cutoff {max_weight}",
            left.len() + right.len()
        ));
        return None;
    }
    let mut w = left.to_vec();
    w.extend_from_slice(right);
    Some(w)
}

/// Enumerated truncated word space over a letter space: all words with
/// length in `min_len..=max_weight`, ordered by (length, lexicographic).
/// Supplies dense indices for matrix assembly.
#[derive(Debug, Clone)]
pub struct WordSpace {
    letters: GradedSpace,
    max_weight: usize,
    min_len: usize,
    words: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
}

impl WordSpace {
    /// Reduced truncated tensor (co)algebra: words of length 1..=cap.
    pub fn reduced(letters: GradedSpace, max_weight: usize) -> Self {
        WordSpace::build(letters, max_weight, 1)
    }

    /// Including the empty word (length 0..=cap).
    pub fn with_unit(letters: GradedSpace, max_weight: usize) -> Self {
        WordSpace::build(letters, max_weight, 0)
    }

    fn build(letters: GradedSpace, max_weight: usize, min_len: usize) -> Self {
        let dim = letters.dim() as u32;
        let mut words: Vec<Vec<u32>> = Vec::new();
        let mut frontier: Vec<Vec<u32>> = vec![vec![]];
        for len in 0..=max_weight {
            if len >= min_len {
                words.extend(frontier.iter().cloned());
            }
            if len == max_weight {
                break;
            }
            let mut next = Vec::with_capacity(frontier.len() * dim as usize);
            for w in &frontier {
                for l in 0..dim {
                    let mut nw = w.clone();
                    nw.push(l);
                    next.push(nw);
                }
            }
            frontier = next;
        }
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        WordSpace { letters, max_weight, min_len, words, index }
    }

    pub fn letters(&self) -> &GradedSpace {
        &self.letters
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    pub fn word_index(&self, word: &[u32]) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        word.len() >= self.min_len
            && word.len() <= self.max_weight
            && word.iter().all(|&l| (l as usize) < self.letters.dim())
    }

    /// Degree of a word in this space.
    pub fn degree(&self, word: &[u32]) -> i64 {
        word_degree(&self.letters, word)
    }

    /// Dense coordinates of a WordVec, for matrix assembly. Words outside
    /// the space are an error (caller should have capped weights already).
    pub fn to_sparse(&self, wv: &WordVec) -> Result<BTreeMap<usize, Rational>> {
        let mut out = BTreeMap::new();
        for (w, c) in wv.iter() {
            let idx = self.word_index(w).ok_or_else(|| {
                Error::InvalidData(format!("word {w:?} outside enumerated space"))
            })?;
            out.insert(idx, c.clone());
        }
        Ok(out)
    }
}

/// Extend a word-in/word-out operation linearly over a `WordVec`.
pub fn apply_linear(
    wv: &WordVec,
    mut f: impl FnMut(&[u32]) -> WordVec,
) -> WordVec {
    let mut out = WordVec::zero();
    for (w, c) in wv.iter() {
        out.add_scaled(&f(w), c);
    }
    out
}

/// Evaluate a letter-valued multilinear expression on word blocks: expands
/// a vector of letter-vector arguments (used when splicing non-basis
/// outputs into words).
pub fn splice_letters(
    prefix: &[u32],
    letters: &[Vector],
    suffix: &[u32],
) -> WordVec {
    let mut out = WordVec::zero();
    fn rec(
        prefix: &mut Vec<u32>,
        letters: &[Vector],
        suffix: &[u32],
        coeff: &Rational,
        out: &mut WordVec,
    ) {
        match letters.split_first() {
            None => {
                let mut w = prefix.clone();
                w.extend_from_slice(suffix);
                out.add_term(w, coeff);
            }
            Some((first, rest)) => {
                for (i, c) in first.iter() {
                    prefix.push(i);
                    rec(prefix, rest, suffix, &(coeff * c), out);
                    prefix.pop();
                }
            }
        }
    }
    let mut pfx = prefix.to_vec();
    rec(&mut pfx, letters, suffix, &Rational::one(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat_int, Rational};

    fn space() -> GradedSpace {
        GradedSpace::from_pairs(&[("x", 0), ("t", 1)])
    }

    #[test]
    fn wordvec_arithmetic() {
        let a = WordVec::single(vec![0, 1]);
        let b = a.scale(&rat_int(3));
        let c = a.add(&b);
        assert_eq!(c.coeff(&[0, 1]), rat_int(4));
        assert!(c.sub(&c).is_zero());
    }

    #[test]
    fn corestriction_picks_single_letters() {
        let mut wv = WordVec::zero();
        wv.add_term(vec![1], &rat_int(2));
        wv.add_term(vec![0, 1], &rat_int(5));
        let v = wv.corestrict();
        assert_eq!(v.coord(1), rat_int(2));
        assert_eq!(v.coord(0), Rational::zero());
    }

    #[test]
    fn enumeration_counts() {
        let ws = WordSpace::reduced(space(), 3);
        // 2 + 4 + 8 words.
        assert_eq!(ws.dim(), 14);
        assert_eq!(ws.word_index(&[0]), Some(0));
        assert_eq!(ws.word_index(&[1]), Some(1));
        assert_eq!(ws.word_index(&[0, 0]), Some(2));
        let with_unit = WordSpace::with_unit(space(), 2);
        assert_eq!(with_unit.dim(), 1 + 2 + 4);
        assert_eq!(with_unit.word_index(&[]), Some(0));
    }

    #[test]
    fn coderivation_lift_two_letters() {
        // Family: single arity-1 component D of degree 1 with D(x) = t.
        let sp = space();
        let mut d1 = MultiMap::new(1, 1);
        d1.set_entry(vec![0], Vector::basis(1));
        let mut fam = MapFamily::new(1, 4);
        fam.insert(d1).unwrap();
        let mut ctx = EvalCtx::new();
        // D̂(x t) = D(x) t + (-1)^{1*|x|} x D(t) = (t t) + 0.
        let got = lift_coderivation(&fam, &[0, 1], &sp, &mut ctx);
        assert_eq!(got.coeff(&[1, 1]), rat_int(1));
        assert!(!ctx.is_truncated());
        // D̂(t x) = D(t) x + (-1)^{1*|t|} t D(x) = 0 - (t t).
        let got = lift_coderivation(&fam, &[1, 0], &sp, &mut ctx);
        assert_eq!(got.coeff(&[1, 1]), rat_int(-1));
    }

    #[test]
    fn coderivation_lift_marks_unknown_arity() {
        let sp = space();
        let fam = MapFamily::new(1, 1); // only arity 1 known
        let mut ctx = EvalCtx::new();
        let got = lift_coderivation(&fam, &[0, 0], &sp, &mut ctx);
        assert!(got.is_zero());
        assert!(ctx.is_truncated()); // the arity-2 block was probed
    }

    #[test]
    fn coalgebra_morphism_lift_counts_compositions() {
        let sp = space();
        let mut f1 = MultiMap::new(1, 0);
        f1.set_entry(vec![0], Vector::basis(0));
        f1.set_entry(vec![1], Vector::basis(1));
        let mut f2 = MultiMap::new(2, 0);
        f2.set_entry(vec![0, 0], Vector::basis(0));
        let mut fam = MapFamily::new(0, 4);
        fam.insert(f1).unwrap();
        fam.insert(f2).unwrap();
        let mut ctx = EvalCtx::new();
        // f̂(x x) = f1(x) f1(x) + f2(x x) = (x x) + (x).
        let got = lift_coalgebra_morphism(&fam, &[0, 0], &mut ctx).unwrap();
        assert_eq!(got.coeff(&[0, 0]), rat_int(1));
        assert_eq!(got.coeff(&[0]), rat_int(1));
        assert!(!ctx.is_truncated());
        let _ = sp;
    }

    #[test]
    fn coalgebra_morphism_rejects_nonzero_degree() {
        let fam = MapFamily::new(1, 4);
        let mut ctx = EvalCtx::new();
        assert!(matches!(
            lift_coalgebra_morphism(&fam, &[0], &mut ctx),
            Err(Error::NotAMorphismDatum(_))
        ));
    }

    #[test]
    fn derivation_lift_signs_and_overflow() {
        let sp = space();
        // Generator of degree 1: x -> (t t) (degree 2 = |x| + 1? |t t| = 2,
        // |x| = 0, degree 1 would need output degree 1 — use x -> t).
        let mut gen = WordMap::new(1);
        gen.set(0, WordVec::single(vec![1]));
        let mut ctx = EvalCtx::new();
        // D(t x) = D(t) x + (-1)^{|t|} t D(x) = -(t t).
        let got = lift_derivation(&gen, &[1, 0], &sp, 8, &mut ctx);
        assert_eq!(got.coeff(&[1, 1]), rat_int(-1));
        assert!(!ctx.is_truncated());
        // Expanding generator overflowing the cap marks the context.
        let mut grow = WordMap::new(0);
        grow.set(0, WordVec::single(vec![0, 0]));
        let mut ctx = EvalCtx::new();
        let got = lift_derivation(&grow, &[0, 0], &sp, 2, &mut ctx);
        assert!(got.is_zero());
        assert!(ctx.is_truncated());
    }

    #[test]
    fn multi_insert_word_placements_and_signs() {
        let sp = space();
        // One operator of arity 2, degree 0: m(x,x) = x.
        let mut m = MultiMap::new(2, 0);
        m.set_entry(vec![0, 0], Vector::basis(0));
        // Word (x x x): placements at 0 and 1, both give (x x).
        let got = multi_insert_word(&[&m], &[0, 0, 0], &sp);
        assert_eq!(got.coeff(&[0, 0]), rat_int(2));
        // Operator of odd degree passing an odd letter picks up a sign:
        // g arity 1 degree 1, g(x) = t; word (t x): t-prefix gives -1.
        let mut g = MultiMap::new(1, 1);
        g.set_entry(vec![0], Vector::basis(1));
        let got = multi_insert_word(&[&g], &[1, 0], &sp);
        assert_eq!(got.coeff(&[1, 1]), rat_int(-1));
        // And at the front of (x t): +1.
        let got = multi_insert_word(&[&g], &[0, 1], &sp);
        assert_eq!(got.coeff(&[1, 1]), rat_int(1));
    }

    #[test]
    fn multi_insert_two_ops_ordered_blocks() {
        let sp = space();
        let mut g = MultiMap::new(1, 0);
        g.set_entry(vec![0], Vector::basis(1)); // g(x) = t
        // Two copies on (x x): only placement blocks {0},{1}: (t t). Signs:
        // second op passes |x| = 0: +1.
        let got = multi_insert_word(&[&g, &g], &[0, 0], &sp);
        assert_eq!(got.coeff(&[1, 1]), rat_int(1));
        // On (x x x): placements (0,1), (0,2), (1,2).
        let got = multi_insert_word(&[&g, &g], &[0, 0, 0], &sp);
        assert_eq!(got.coeff(&[1, 1, 0]), rat_int(1));
        assert_eq!(got.coeff(&[1, 0, 1]), rat_int(1));
        assert_eq!(got.coeff(&[0, 1, 1]), rat_int(1));
    }

    #[test]
    fn deconcat_splits() {
        let splits = deconcat(&[0, 1, 0]);
        assert_eq!(splits.len(), 2);
        assert_eq!(splits[0], (vec![0], vec![1, 0]));
        assert_eq!(splits[1], (vec![0, 1], vec![0]));
        assert!(deconcat(&[0]).is_empty());
    }

    #[test]
    fn concat_overflow_marks() {
        let mut ctx = EvalCtx::new();
        assert_eq!(
            concat_checked(&[0], &[1], 2, &mut ctx),
            Some(vec![0, 1])
        );
        assert!(!ctx.is_truncated());
        assert_eq!(concat_checked(&[0, 1], &[1], 2, &mut ctx), None);
        assert!(ctx.is_truncated());
    }

    #[test]
    fn splice_expands_letter_vectors() {
        let a = Vector::from_coords([(0, rat_int(2)), (1, rat_int(1))]);
        let out = splice_letters(&[1], &[a], &[0]);
        assert_eq!(out.coeff(&[1, 0, 0]), rat_int(2));
        assert_eq!(out.coeff(&[1, 1, 0]), rat_int(1));
    }
}
