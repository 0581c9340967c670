//! Cyclically composable words and their enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::ainfty::{AInftyData, Letter, ObjectId};
use crate::error::{CoreError, Result};

/// Default cap on the number of enumerated words.
pub const DEFAULT_WORD_CAP: usize = 2_000_000;

/// A word `(ā_0, ..., ā_n)` in suspended letters. Composability is a
/// property checked against the owning category, not stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.0.to_string()).collect();
        write!(f, "[{}]", parts.join("|"))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Inclusive range of suspended degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Self {
        DegreeWindow { lo, hi }
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn widened(&self, by: i64) -> Self {
        DegreeWindow { lo: self.lo - by, hi: self.hi + by }
    }
}

/// All cyclically composable words with `1 <= length <= max_length` and
/// suspended degree in the window, grouped by degree and sorted by
/// (length, letters).
#[derive(Clone, Debug)]
pub struct WordSpace {
    pub words_by_degree: BTreeMap<i64, Vec<Word>>,
    pub max_length: usize,
    pub window: DegreeWindow,
    /// True when words of the window exist beyond `max_length`.
    pub truncated: bool,
}

impl WordSpace {
    pub fn len(&self) -> usize {
        self.words_by_degree.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words_by_degree.values().flatten()
    }

    pub fn degree_of(&self, data: &AInftyData, w: &Word) -> i64 {
        data.word_sdeg(w.letters())
    }
}

/// Range of suspended degrees reachable by words of length `1..=max_length`.
pub fn full_window(data: &AInftyData, max_length: usize) -> DegreeWindow {
    let degs: Vec<i64> = data.all_letters().map(|a| data.sdeg(a)).collect();
    let (Some(&lo), Some(&hi)) = (degs.iter().min(), degs.iter().max()) else {
        return DegreeWindow::new(0, 0);
    };
    let n = max_length as i64;
    DegreeWindow::new((lo * n).min(lo), (hi * n).max(hi))
}

pub fn enumerate_words(
    data: &AInftyData,
    max_length: usize,
    window: Option<DegreeWindow>,
    cap: usize,
) -> Result<WordSpace> {
    if max_length == 0 {
        return Err(CoreError::Invalid("maxLength must be at least 1".into()));
    }
    let window = window.unwrap_or_else(|| full_window(data, max_length));
    let degs: Vec<i64> = data.all_letters().map(|a| data.sdeg(a)).collect();
    let dmin = degs.iter().copied().min().unwrap_or(0);
    let dmax = degs.iter().copied().max().unwrap_or(0);
    let mut found: Vec<Word> = Vec::new();
    let mut cur = Vec::with_capacity(max_length);
    for obj in 0..data.objects().len() {
        let start = ObjectId(obj as u32);
        let mut e = Enumerator { data, max_length, window, dmin, dmax, cap, start, found: &mut found };
        e.walk(start, 0, &mut cur)?;
    }
    let mut words_by_degree: BTreeMap<i64, Vec<Word>> = BTreeMap::new();
    for w in found {
        words_by_degree.entry(data.word_sdeg(w.letters())).or_default().push(w);
    }
    for ws in words_by_degree.values_mut() {
        ws.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    }
    let truncated = (window.lo..=window.hi).any(|d| !degree_complete(data, max_length, d));
    Ok(WordSpace { words_by_degree, max_length, window, truncated })
}

struct Enumerator<'a> {
    data: &'a AInftyData,
    max_length: usize,
    window: DegreeWindow,
    dmin: i64,
    dmax: i64,
    cap: usize,
    start: ObjectId,
    found: &'a mut Vec<Word>,
}

impl Enumerator<'_> {
    fn walk(&mut self, at: ObjectId, deg: i64, cur: &mut Vec<Letter>) -> Result<()> {
        if !cur.is_empty() && at == self.start && self.window.contains(deg) {
            if self.found.len() >= self.cap {
                return Err(CoreError::ExplosionGuard { cap: self.cap });
            }
            self.found.push(Word(cur.clone()));
        }
        let remaining = (self.max_length - cur.len()) as i64;
        if remaining == 0 {
            return Ok(());
        }
        for &a in self.data.letters_from(at) {
            let d = deg + self.data.sdeg(a);
            let r = remaining - 1;
            let lo = d + (r * self.dmin).min(0);
            let hi = d + (r * self.dmax).max(0);
            if hi < self.window.lo || lo > self.window.hi {
                continue;
            }
            cur.push(a);
            self.walk(self.data.target(a), d, cur)?;
            cur.pop();
        }
        Ok(())
    }
}

/// Whether every cyclic word of suspended degree `d` has length at most
/// `max_length`.
///
/// Cyclic words are closed walks in the object graph, so each lies in one
/// strongly connected component. In a component whose simple cycles all
/// have strictly negative (or all strictly positive) degree, a closed walk
/// of length `L` has degree at most `-L/|C|`, which bounds `L` by
/// `|C|·|d|`; the lengths between `max_length` and that bound are counted
/// by dynamic programming. Components with cycles of degree zero or of
/// both signs admit arbitrarily long words of a fixed degree and are
/// treated as incomplete.
pub fn degree_complete(data: &AInftyData, max_length: usize, d: i64) -> bool {
    component_analysis(data).iter().all(|c| c.complete(data, max_length, d))
}

struct Component {
    objects: Vec<ObjectId>,
    letters: Vec<Letter>,
    sign: CycleSign,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum CycleSign {
    Acyclic,
    Negative,
    Positive,
    Mixed,
}

impl Component {
    fn complete(&self, data: &AInftyData, max_length: usize, d: i64) -> bool {
        let size = self.objects.len() as i64;
        match self.sign {
            CycleSign::Acyclic => true,
            CycleSign::Mixed => false,
            CycleSign::Negative | CycleSign::Positive => {
                if (self.sign == CycleSign::Negative && d >= 0) || (self.sign == CycleSign::Positive && d <= 0) {
                    return true;
                }
                let bound = (size * d.abs()) as usize;
                bound <= max_length || !self.has_closed_walk(data, max_length + 1, bound, d)
            }
        }
    }

    /// Whether a closed walk of degree `d` with length in `from..=to` exists.
    fn has_closed_walk(&self, data: &AInftyData, from: usize, to: usize, d: i64) -> bool {
        let k = self.objects.len();
        let pos: BTreeMap<ObjectId, usize> = self.objects.iter().enumerate().map(|(i, o)| (*o, i)).collect();
        // A prefix of a closed walk differs from the whole by a path plus
        // cycles of one sign, so its degree stays within |d| + k·M.
        let m = self.letters.iter().map(|a| data.sdeg(*a).abs()).max().unwrap_or(0);
        let limit = d.abs() + k as i64 * m;
        for si in 0..k {
            let mut reach: Vec<BTreeSet<i64>> = vec![BTreeSet::new(); k];
            reach[si].insert(0);
            for len in 1..=to {
                let mut next: Vec<BTreeSet<i64>> = vec![BTreeSet::new(); k];
                for &a in &self.letters {
                    let (s, t) = (pos[&data.source(a)], pos[&data.target(a)]);
                    for &deg in &reach[s] {
                        let nd = deg + data.sdeg(a);
                        if nd.abs() <= limit {
                            next[t].insert(nd);
                        }
                    }
                }
                reach = next;
                if len >= from && reach[si].contains(&d) {
                    return true;
                }
            }
        }
        false
    }
}

fn component_analysis(data: &AInftyData) -> Vec<Component> {
    let n = data.objects().len();
    // Tarjan-free SCCs by reachability closure; object counts are small.
    let mut reach = vec![vec![false; n]; n];
    for a in data.all_letters() {
        reach[data.source(a).0 as usize][data.target(a).0 as usize] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut comps = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&j| j == i || (reach[i][j] && reach[j][i])).collect();
        for &m in &members {
            assigned[m] = true;
        }
        let objects: Vec<ObjectId> = members.iter().map(|&m| ObjectId(m as u32)).collect();
        let letters: Vec<Letter> = data
            .all_letters()
            .filter(|a| objects.contains(&data.source(*a)) && objects.contains(&data.target(*a)))
            .collect();
        let sign = cycle_sign(data, &objects, &letters);
        comps.push(Component { objects, letters, sign });
    }
    comps
}

/// Classifies the simple cycles of a component by the sign of their degree,
/// using max/min closed-walk degrees over lengths up to the component size.
fn cycle_sign(data: &AInftyData, objects: &[ObjectId], letters: &[Letter]) -> CycleSign {
    if letters.is_empty() {
        return CycleSign::Acyclic;
    }
    let k = objects.len();
    let pos = |o: ObjectId| objects.iter().position(|x| *x == o).unwrap();
    let (mut any_nonneg, mut any_nonpos) = (false, false);
    for s in 0..k {
        let mut best: Vec<Option<(i64, i64)>> = vec![None; k];
        best[s] = Some((0, 0));
        for _ in 0..k {
            let mut next: Vec<Option<(i64, i64)>> = vec![None; k];
            for &a in letters {
                let (u, v) = (pos(data.source(a)), pos(data.target(a)));
                if let Some((lo, hi)) = best[u] {
                    let d = data.sdeg(a);
                    next[v] = Some(match next[v] {
                        None => (lo + d, hi + d),
                        Some((l, h)) => (l.min(lo + d), h.max(hi + d)),
                    });
                }
            }
            if let Some((lo, hi)) = next[s] {
                any_nonneg |= hi >= 0;
                any_nonpos |= lo <= 0;
            }
            best = next;
        }
    }
    match (any_nonneg, any_nonpos) {
        (true, true) => CycleSign::Mixed,
        (true, false) => CycleSign::Positive,
        (false, true) => CycleSign::Negative,
        (false, false) => CycleSign::Acyclic,
    }
}
