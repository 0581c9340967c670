//! Calabi-Yau pairings and the induced symplectic form on suspended homs.

use std::collections::BTreeMap;

use ainf_exactlin::{invert, rank_and_kernel, Exec, Scalar, SparseMatrix};

use crate::ainfty::{fmt_chain, AInftyData, Letter, ObjectId};
use crate::error::{CoreError, Result};
use crate::report::{Check, VerificationReport};
use crate::word::Word;

fn parity(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// A degree `n` pairing `⟨a, b⟩` between `Hom(B, A)` and `Hom(A, B)`,
/// stored entry by entry in unsuspended degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingData {
    degree: i64,
    entries: BTreeMap<(Letter, Letter), Scalar>,
}

impl PairingData {
    pub fn new(degree: i64, entries: BTreeMap<(Letter, Letter), Scalar>) -> Self {
        PairingData { degree, entries }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn entries(&self) -> &BTreeMap<(Letter, Letter), Scalar> {
        &self.entries
    }

    pub fn get(&self, a: Letter, b: Letter) -> Option<&Scalar> {
        self.entries.get(&(a, b))
    }

    pub(crate) fn entries_mut(&mut self) -> &mut BTreeMap<(Letter, Letter), Scalar> {
        &mut self.entries
    }
}

/// One block of `ω`: rows are the letters of `Hom(A, B)`, columns those of
/// `Hom(B, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaBlock {
    pub source: ObjectId,
    pub target: ObjectId,
    pub rows: Vec<Letter>,
    pub cols: Vec<Letter>,
    pub matrix: SparseMatrix,
    /// `(ω^{pq})`: rows indexed by `cols`, columns by `rows`.
    pub inverse: SparseMatrix,
}

/// `ω` on suspended letters (see [`omega_entry`]) with its blockwise inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    /// CY degree `n`; `ω` has degree `n - 2` on suspended letters.
    pub n: i64,
    values: BTreeMap<(Letter, Letter), Scalar>,
    inverse: BTreeMap<(Letter, Letter), Scalar>,
    partners: BTreeMap<Letter, Vec<(Letter, Scalar)>>,
    pub blocks: Vec<OmegaBlock>,
}

impl SymplecticForm {
    pub fn omega(&self, a: Letter, b: Letter) -> Option<&Scalar> {
        self.values.get(&(a, b))
    }

    /// `ω^{ab}`, the entry of the inverse block with row `a`, column `b`.
    pub fn omega_inv(&self, a: Letter, b: Letter) -> Option<&Scalar> {
        self.inverse.get(&(a, b))
    }

    /// Letters `b` with `ω(a, b) ≠ 0`, with the value.
    pub fn partners(&self, a: Letter) -> &[(Letter, Scalar)] {
        self.partners.get(&a).map_or(&[], Vec::as_slice)
    }

    pub fn values(&self) -> &BTreeMap<(Letter, Letter), Scalar> {
        &self.values
    }

    pub fn inverse_values(&self) -> &BTreeMap<(Letter, Letter), Scalar> {
        &self.inverse
    }
}

/// `ω(ā, b̄) = -⟨a, b⟩`.
///
/// This is `(-1)^{|ā|}⟨a, b⟩` whenever `|a|` is even. On odd letters that
/// sign would break Koszul-only cyclic invariance of
/// `ω(ā_0, m̄(ā_1, ...))` (already for `m_2` on an odd sphere), so the sign
/// is taken constant instead. `ω` is then graded antisymmetric for even
/// `n` and graded symmetric for odd `n`.
pub fn omega_entry(pairing: &Scalar) -> Scalar {
    -pairing.clone()
}

fn hom(data: &AInftyData, s: ObjectId, t: ObjectId) -> Vec<Letter> {
    data.letters_from(s).iter().copied().filter(|a| data.target(*a) == t).collect()
}

/// Builds `ω` and its inverse blocks from the attached pairing.
pub fn induced_omega(data: &AInftyData) -> Result<SymplecticForm> {
    let p = data.pairing().ok_or(CoreError::NoPairing)?;
    omega_from_pairing(data, p)
}

pub fn omega_from_pairing(data: &AInftyData, p: &PairingData) -> Result<SymplecticForm> {
    let f = data.field();
    let mut values = BTreeMap::new();
    for ((a, b), c) in p.entries() {
        values.insert((*a, *b), omega_entry(c));
    }
    let mut inverse = BTreeMap::new();
    let mut blocks = Vec::new();
    let nobj = data.objects().len() as u32;
    for s in 0..nobj {
        for t in 0..nobj {
            let (s, t) = (ObjectId(s), ObjectId(t));
            let rows = hom(data, s, t);
            let cols = hom(data, t, s);
            if rows.is_empty() && cols.is_empty() {
                continue;
            }
            let trip = rows.iter().enumerate().flat_map(|(i, a)| {
                cols.iter().enumerate().filter_map({
                    let values = &values;
                    move |(j, b)| values.get(&(*a, *b)).map(|c: &Scalar| (i, j, c.clone()))
                })
            });
            let matrix = SparseMatrix::from_triplets(f, rows.len(), cols.len(), trip)?;
            let null_vector = |m: &SparseMatrix, basis: &[Letter]| -> String {
                let rk = rank_and_kernel(m);
                match rk.kernel.first() {
                    Some(v) => fmt_vector(data, basis, v),
                    None => "(shape mismatch)".to_string(),
                }
            };
            if rows.len() != cols.len() {
                let (m, basis) = if rows.len() > cols.len() { (matrix.transpose(), &rows) } else { (matrix.clone(), &cols) };
                return Err(CoreError::DegeneratePairing(null_vector(&m, basis)));
            }
            let inv = invert(&matrix).map_err(|_| CoreError::DegeneratePairing(null_vector(&matrix.transpose(), &rows)))?;
            for (i, j, c) in inv.triplets() {
                inverse.insert((cols[i], rows[j]), c.clone());
            }
            blocks.push(OmegaBlock { source: s, target: t, rows, cols, matrix, inverse: inv });
        }
    }
    let mut partners: BTreeMap<Letter, Vec<(Letter, Scalar)>> = BTreeMap::new();
    for ((a, b), c) in &values {
        partners.entry(*a).or_default().push((*b, c.clone()));
    }
    Ok(SymplecticForm { n: p.degree(), values, inverse, partners, blocks })
}

fn fmt_vector(data: &AInftyData, basis: &[Letter], v: &[Scalar]) -> String {
    let terms: Vec<String> = basis
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| format!("{c}·{}", data.letter_label(*a)))
        .collect();
    terms.join(" + ")
}

/// Checks graded symmetry, degree support, nondegeneracy and cyclic
/// invariance of `ω(ā_0, m̄_k(ā_1, ..., ā_k))` for every arity up to
/// `max_arity`, reporting each arity separately.
pub fn verify_cy(data: &AInftyData, p: &PairingData, max_arity: usize, exec: Exec) -> VerificationReport {
    let mut report = VerificationReport::default();

    let mut sym = Check::passing("pairing graded symmetry".into(), 0);
    let mut support = Check::passing("pairing degree support".into(), 0);
    for ((a, b), c) in p.entries() {
        sym.tuples += 1;
        support.tuples += 1;
        let odd = parity(data.info(*a).degree * data.info(*b).degree);
        let partner = p.get(*b, *a).cloned().unwrap_or_else(|| data.field().zero());
        if partner != c.clone().signed(odd) {
            sym.fail(format!("<{}, {}>", data.letter_label(*a), data.letter_label(*b)), c.magnitude());
        }
        if data.info(*a).degree + data.info(*b).degree != p.degree() {
            support.fail(format!("<{}, {}>", data.letter_label(*a), data.letter_label(*b)), c.magnitude());
        }
    }
    report.push(sym);
    report.push(support);

    let mut nondeg = Check::passing("pairing nondegeneracy".into(), 1);
    if let Err(e) = omega_from_pairing(data, p) {
        nondeg.fail(e.to_string(), ainf_exactlin::Rational::one());
    }
    report.push(nondeg);

    // Cyclic invariance uses ω straight from the entries, so it is still
    // meaningful when nondegeneracy fails.
    let omega_vals: BTreeMap<(Letter, Letter), Scalar> = p
        .entries()
        .iter()
        .map(|((a, b), c)| ((*a, *b), omega_entry(c)))
        .collect();
    for k in 1..=max_arity.min(data.max_arity()) {
        let words = cyclic_words_of_length(data, k + 1);
        let results = exec.map(&words, |w| {
            let (r, neg) = crate::cyclic::t_bar(data, w);
            let lhs = cy_functional(data, &omega_vals, w.letters());
            let rhs = cy_functional(data, &omega_vals, r.letters()).signed(neg);
            let diff = &lhs - &rhs;
            (!diff.is_zero()).then(|| (fmt_chain(data, w.letters()), diff.magnitude()))
        });
        report.push(Check::from_results(format!("cyclic invariance arity {k}"), words.len(), results));
    }
    report
}

/// `ω(ā_0, m̄_k(ā_1, ..., ā_k))`.
pub fn cy_functional(data: &AInftyData, omega: &BTreeMap<(Letter, Letter), Scalar>, w: &[Letter]) -> Scalar {
    let f = data.field();
    let mut acc = f.zero();
    if let Some(m) = data.apply_op(&w[1..]) {
        for (o, c) in m.iter() {
            if let Some(v) = omega.get(&(w[0], *o)) {
                acc += &(c * v);
            }
        }
    }
    acc
}

/// All cyclically composable words of exactly this length.
pub fn cyclic_words_of_length(data: &AInftyData, len: usize) -> Vec<Word> {
    data.chains(len).into_iter().filter(|c| data.is_cyclic(c)).map(Word::new).collect()
}
