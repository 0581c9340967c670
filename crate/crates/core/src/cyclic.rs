//! The signed cyclic operator, canonical cyclic classes and the Connes
//! complex.

use std::collections::{BTreeMap, BTreeSet};

use ainf_exactlin::{Exec, Scalar};

use crate::ainfty::AInftyData;
use crate::error::{CoreError, Result};
use crate::hochschild::{b_apply, homology_from_basis, reliability, HomologyReport};
use crate::lincomb::LinComb;
use crate::word::{enumerate_words, full_window, DegreeWindow, Word, DEFAULT_WORD_CAP};

fn parity(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// `t̄^k(w)`: the last `k` letters moved to the front, with the Koszul sign
/// of passing them over the rest. Returns the word and whether the sign is
/// negative.
pub fn rotate(data: &AInftyData, w: &Word, k: usize) -> (Word, bool) {
    let l = w.letters();
    let n = l.len();
    let k = k % n.max(1);
    if k == 0 {
        return (w.clone(), false);
    }
    let tail: i64 = data.word_sdeg(&l[n - k..]);
    let rest: i64 = data.word_sdeg(&l[..n - k]);
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&l[n - k..]);
    out.extend_from_slice(&l[..n - k]);
    (Word::new(out), parity(tail * rest))
}

/// `t̄(ā_0,...,ā_n) = (-1)^{|ā_n|(|ā_0|+...+|ā_{n-1}|)} (ā_n, ā_0, ..., ā_{n-1})`.
pub fn t_bar(data: &AInftyData, w: &Word) -> (Word, bool) {
    rotate(data, w, 1)
}

/// `N = 1 + t̄ + ... + t̄^n`.
pub fn norm_n(data: &AInftyData, w: &Word) -> LinComb<Word> {
    let f = data.field();
    let mut out = LinComb::zero(f);
    for k in 0..w.len() {
        let (r, neg) = rotate(data, w, k);
        out.add_term(r, f.sign(neg));
    }
    out
}

/// A word's image in the coinvariants `coker(1 - t̄)`: `[w] = ±[rep]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicClass {
    pub rep: Word,
    /// `[w] = -[rep]`.
    pub negative: bool,
    /// Some rotation maps the word to minus itself, so its class is zero.
    pub vanishes: bool,
}

pub fn canonicalize(data: &AInftyData, w: &Word) -> CyclicClass {
    let mut best: Option<(Word, bool)> = None;
    let mut vanishes = false;
    for k in 0..w.len().max(1) {
        let (r, neg) = rotate(data, w, k);
        match &best {
            None => best = Some((r, neg)),
            Some((b, bneg)) => {
                if r < *b {
                    best = Some((r, neg));
                } else if r == *b && neg != *bneg {
                    vanishes = true;
                }
            }
        }
    }
    let (rep, negative) = best.expect("nonempty rotation set");
    // A conflicting sign on the minimal rotation implies a conflict on every
    // rotation; checking after the fact keeps the scan single-pass.
    if !vanishes {
        vanishes = (1..w.len()).any(|k| {
            let (r, neg) = rotate(data, &rep, k);
            r == rep && neg
        });
    }
    CyclicClass { rep, negative, vanishes }
}

/// `[w]` as a combination of canonical representatives (empty if it vanishes).
pub fn class_of(data: &AInftyData, w: &Word) -> LinComb<Word> {
    let c = canonicalize(data, w);
    if c.vanishes {
        LinComb::zero(data.field())
    } else {
        LinComb::single(data.field(), c.rep, data.field().sign(c.negative))
    }
}

/// Re-expresses a combination of words in canonical representatives.
pub fn classes_of(data: &AInftyData, x: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::zero(data.field());
    for (w, c) in x.iter() {
        out.add_scaled(&class_of(data, w), c);
    }
    out
}

pub fn fmt_class(data: &AInftyData, c: &CyclicClass) -> String {
    if c.vanishes {
        return "0".to_string();
    }
    format!("{}{}", if c.negative { "-" } else { "" }, data.fmt_word(&c.rep))
}

/// The induced differential on a class, given by its representative.
pub fn connes_b(data: &AInftyData, rep: &Word) -> LinComb<Word> {
    classes_of(data, &b_apply(data, rep))
}

/// Checks that `b` computed from every rotation of `rep` agrees with `b` of
/// `rep` on classes.
pub fn check_representative_independence(data: &AInftyData, rep: &Word) -> Result<()> {
    let base = connes_b(data, rep);
    for k in 1..rep.len() {
        let (r, neg) = rotate(data, rep, k);
        // t̄^k(rep) = ±r, so [rep] = ±[r] and b[rep] = ±b[r].
        let other = connes_b(data, &r).scaled(&data.field().sign(neg));
        if other != base {
            return Err(CoreError::NotWellDefinedOnClasses(data.fmt_word(rep)));
        }
    }
    Ok(())
}

/// The Connes complex: non-vanishing canonical classes per degree.
#[derive(Clone, Debug)]
pub struct ConnesComplex {
    pub classes_by_degree: BTreeMap<i64, Vec<Word>>,
    pub max_length: usize,
    pub window: DegreeWindow,
}

impl ConnesComplex {
    pub fn build(data: &AInftyData, max_length: usize, window: DegreeWindow, exec: Exec) -> Result<Self> {
        let space = enumerate_words(data, max_length, Some(window), DEFAULT_WORD_CAP)?;
        let mut classes_by_degree = BTreeMap::new();
        for (d, words) in &space.words_by_degree {
            let reps: BTreeSet<Word> = words
                .iter()
                .map(|w| canonicalize(data, w))
                .filter(|c| !c.vanishes)
                .map(|c| c.rep)
                .collect();
            if !reps.is_empty() {
                let mut reps: Vec<Word> = reps.into_iter().collect();
                reps.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
                classes_by_degree.insert(*d, reps);
            }
        }
        let all: Vec<&Word> = classes_by_degree.values().flatten().collect();
        for r in exec.map(&all, |w| check_representative_independence(data, w)) {
            r?;
        }
        Ok(ConnesComplex { classes_by_degree, max_length, window })
    }

    pub fn len(&self) -> usize {
        self.classes_by_degree.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Truncated cyclic homology in suspended degrees.
pub fn connes_homology(
    data: &AInftyData,
    max_length: usize,
    window: Option<DegreeWindow>,
    exec: Exec,
) -> Result<HomologyReport> {
    let window = window.unwrap_or_else(|| full_window(data, max_length));
    let cx = ConnesComplex::build(data, max_length, window.widened(1), exec)?;
    let dims = homology_from_basis(data.field(), &cx.classes_by_degree, window, |w| Ok(connes_b(data, w)), exec)?;
    let chain_sizes =
        (window.lo..=window.hi).map(|d| (d, cx.classes_by_degree.get(&d).map_or(0, Vec::len))).collect();
    Ok(HomologyReport { dims, reliable: reliability(data, max_length, window), chain_sizes, max_length })
}

/// Whether `f(w) = f(t̄ w)` for every word of the space, reading `t̄ w` with
/// its sign.
pub fn cochain_is_cyclic(data: &AInftyData, f: &BTreeMap<Word, Scalar>, words: &[Word]) -> bool {
    let zero = data.field().zero();
    let val = |w: &Word| f.get(w).cloned().unwrap_or_else(|| zero.clone());
    words.iter().all(|w| {
        let (r, neg) = t_bar(data, w);
        val(w) == val(&r).signed(neg)
    })
}
