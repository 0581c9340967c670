//! The Hochschild chain complex on cyclically composable words.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use ainf_exactlin::{ChainComplexSlice, Exec, Field, SparseMatrix};

use crate::ainfty::AInftyData;
use crate::error::{CoreError, Result};
use crate::lincomb::LinComb;
use crate::word::{degree_complete, enumerate_words, DegreeWindow, Word, DEFAULT_WORD_CAP};

fn parity(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// Hochschild differential on a cyclic word `(w_0, ..., w_n)` with `w_0`
/// in the marked slot.
///
/// Blocks containing `w_0` are handled by first rotating the `j` tail
/// letters in front (Koszul sign of moving them past the rest) and then
/// applying `m̄_k` at the front; the other blocks pick up the sign of the
/// letters to their left.
pub fn b_apply(data: &AInftyData, w: &Word) -> LinComb<Word> {
    let letters = w.letters();
    let n1 = letters.len();
    let mut out = LinComb::zero(data.field());
    let sd: Vec<i64> = letters.iter().map(|a| data.sdeg(*a)).collect();
    let total: i64 = sd.iter().sum();
    let max_k = data.max_arity().min(n1);

    // Blocks containing slot 0.
    let mut rotated = Vec::with_capacity(n1);
    for j in 0..n1 {
        // Tail of j letters moved to the front.
        let tail_deg: i64 = sd[n1 - j..].iter().sum();
        let sign = parity(tail_deg * (total - tail_deg));
        rotated.clear();
        rotated.extend_from_slice(&letters[n1 - j..]);
        rotated.extend_from_slice(&letters[..n1 - j]);
        for k in (j + 1).max(1)..=max_k {
            let Some(m) = data.apply_op(&rotated[..k]) else { continue };
            for (o, c) in m.iter() {
                let mut word = Vec::with_capacity(n1 - k + 1);
                word.push(*o);
                word.extend_from_slice(&rotated[k..]);
                out.add_term(Word::new(word), c.clone().signed(sign));
            }
        }
    }

    // Blocks strictly after slot 0.
    let mut prefix = sd[0];
    for s in 1..n1 {
        for k in 1..=(n1 - s).min(max_k) {
            let Some(m) = data.apply_op(&letters[s..s + k]) else { continue };
            for (o, c) in m.iter() {
                let mut word = Vec::with_capacity(n1 - k + 1);
                word.extend_from_slice(&letters[..s]);
                word.push(*o);
                word.extend_from_slice(&letters[s + k..]);
                out.add_term(Word::new(word), c.clone().signed(parity(prefix)));
            }
        }
        prefix += sd[s];
    }
    out
}

/// Homology dimensions in suspended degrees, with per-degree reliability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub dims: BTreeMap<i64, usize>,
    pub reliable: BTreeMap<i64, bool>,
    /// Size of the chain group in each reported degree.
    pub chain_sizes: BTreeMap<i64, usize>,
    pub max_length: usize,
}

impl HomologyReport {
    pub fn reliable_dims(&self) -> BTreeMap<i64, usize> {
        self.dims.iter().filter(|(d, _)| self.reliable[d]).map(|(d, n)| (*d, *n)).collect()
    }
}

/// Assembles the complex on `basis` (keyed by suspended degree; the
/// differential raises it by one) and returns homology over `window`.
/// Differential outputs must land in the basis; anything else is an error
/// rather than a silent drop.
pub(crate) fn homology_from_basis<K, F>(
    field: Field,
    basis: &BTreeMap<i64, Vec<K>>,
    window: DegreeWindow,
    diff: F,
    exec: Exec,
) -> Result<BTreeMap<i64, usize>>
where
    K: Ord + Clone + Hash + Sync + Send + std::fmt::Debug,
    F: Fn(&K) -> Result<LinComb<K>> + Sync + Send,
{
    // Homological degree h = -(suspended degree), so the differential
    // lowers h by one as the slice expects.
    let empty = Vec::new();
    let sizes: BTreeMap<i64, usize> = basis.iter().map(|(d, v)| (-d, v.len())).collect();
    let mut slice = ChainComplexSlice::new(field, -window.hi - 1, -window.lo + 1, sizes);
    for h in -window.hi..=-window.lo + 1 {
        let src = basis.get(&-h).unwrap_or(&empty);
        let tgt = basis.get(&(-h + 1)).unwrap_or(&empty);
        if src.is_empty() {
            continue;
        }
        let index: HashMap<&K, usize> = tgt.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let columns = exec.map(src, |k| diff(k));
        let mut trip = Vec::new();
        for (col, image) in columns.into_iter().enumerate() {
            for (key, c) in image?.iter() {
                let Some(&row) = index.get(key) else {
                    return Err(CoreError::OutsideEnumeration(format!("{key:?}")));
                };
                trip.push((row, col, c.clone()));
            }
        }
        slice.set_differential(h, SparseMatrix::from_triplets(field, tgt.len(), src.len(), trip)?)?;
    }
    let table = slice.homology_dims(exec)?;
    Ok(table.dims.into_iter().map(|(h, n)| (-h, n)).filter(|(d, _)| window.contains(*d)).collect())
}

/// A degree is reliable when every cyclic word of degree `d - 1`, `d` and
/// `d + 1` has length at most `max_length`.
pub fn reliability(data: &AInftyData, max_length: usize, window: DegreeWindow) -> BTreeMap<i64, bool> {
    (window.lo..=window.hi)
        .map(|d| (d, (d - 1..=d + 1).all(|e| degree_complete(data, max_length, e))))
        .collect()
}

/// Truncated Hochschild homology. Without a window, every degree reached by
/// words of length `<= max_length` is reported.
pub fn hochschild_homology(
    data: &AInftyData,
    max_length: usize,
    window: Option<DegreeWindow>,
    exec: Exec,
) -> Result<HomologyReport> {
    let window = window.unwrap_or_else(|| crate::word::full_window(data, max_length));
    let space = enumerate_words(data, max_length, Some(window.widened(1)), DEFAULT_WORD_CAP)?;
    let dims = homology_from_basis(data.field(), &space.words_by_degree, window, |w| Ok(b_apply(data, w)), exec)?;
    let chain_sizes = (window.lo..=window.hi)
        .map(|d| (d, space.words_by_degree.get(&d).map_or(0, Vec::len)))
        .collect();
    Ok(HomologyReport { dims, reliable: reliability(data, max_length, window), chain_sizes, max_length })
}
