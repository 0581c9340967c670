//! Finite A∞ categories stored in suspended (bar) form.
//!
//! Letters are the basis elements of the hom spaces. Each letter carries its
//! unsuspended degree `|a|`; the suspended degree is `|a| - 1`. The
//! operations are kept as the suspended maps `m̄_i`, so every sign that
//! appears downstream is a plain Koszul sign.
//!
//! Degrees are cohomological: `m_i` raises degree by `2 - i` and `m̄_i`
//! raises the suspended degree by 1. Read homologically (degree `-|ā|`),
//! `m_i` has degree `i - 2` and `m̄` is a degree `-1` codifferential.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use ainf_exactlin::{Exec, Field, Rational, Scalar};

use crate::calabi_yau::PairingData;
use crate::error::{CoreError, Result};
use crate::lincomb::LinComb;
use crate::report::{Check, VerificationReport};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub u32);

/// Index of a basis element. Indices follow the order (source, target, name),
/// which is the letter order used for canonical cyclic representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterInfo {
    pub name: String,
    pub source: ObjectId,
    pub target: ObjectId,
    /// Unsuspended degree `|a|`.
    pub degree: i64,
}

impl LetterInfo {
    pub fn sdeg(&self) -> i64 {
        self.degree - 1
    }
}

/// A single structure constant: `op(inputs) ∋ coeff · output`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawOp {
    pub inputs: Vec<Letter>,
    pub output: Letter,
    pub coeff: Scalar,
}

/// Sign relating `m_i` and `m̄_i` on inputs of the given suspended degrees:
/// exponent `(i-1)|ā_1| + (i-2)|ā_2| + ... + |ā_{i-1}|`.
pub fn desuspension_sign(sdegs: &[i64]) -> bool {
    let i = sdegs.len() as i64;
    sdegs
        .iter()
        .enumerate()
        .map(|(j, d)| (i - 1 - j as i64) * d)
        .sum::<i64>()
        .rem_euclid(2)
        == 1
}

/// Converts structure constants of `m_i` into those of the suspended `m̄_i`.
pub fn desuspend_convert(letters: &[LetterInfo], raw: &[RawOp]) -> Result<Vec<RawOp>> {
    raw.iter()
        .map(|op| {
            let input_deg: i64 = op.inputs.iter().map(|a| letters[a.idx()].degree).sum();
            let expected = input_deg + 2 - op.inputs.len() as i64;
            let out = &letters[op.output.idx()];
            if out.degree != expected {
                return Err(CoreError::DegreeMismatch(format!(
                    "m_{}({}) -> {} has output degree {}, expected {}",
                    op.inputs.len(),
                    op.inputs.iter().map(|a| letters[a.idx()].name.as_str()).collect::<Vec<_>>().join(","),
                    out.name,
                    out.degree,
                    expected
                )));
            }
            let sdegs: Vec<i64> = op.inputs.iter().map(|a| letters[a.idx()].sdeg()).collect();
            Ok(RawOp {
                inputs: op.inputs.clone(),
                output: op.output,
                coeff: op.coeff.clone().signed(desuspension_sign(&sdegs)),
            })
        })
        .collect()
}

/// Inverse of [`desuspend_convert`]. The sign is its own inverse.
pub fn resuspend_convert(letters: &[LetterInfo], ops: &[RawOp]) -> Vec<RawOp> {
    ops.iter()
        .map(|op| {
            let sdegs: Vec<i64> = op.inputs.iter().map(|a| letters[a.idx()].sdeg()).collect();
            RawOp { coeff: op.coeff.clone().signed(desuspension_sign(&sdegs)), ..op.clone() }
        })
        .collect()
}

/// A finite A∞ category with optional Calabi-Yau pairing. Immutable once
/// built; construct through [`AInftyBuilder`].
#[derive(Clone, PartialEq, Eq)]
pub struct AInftyData {
    field: Field,
    objects: Vec<String>,
    letters: Vec<LetterInfo>,
    max_arity: usize,
    ops: BTreeMap<Vec<Letter>, LinComb<Letter>>,
    pairing: Option<PairingData>,
    provenance: Option<String>,
    // Derived lookups.
    by_source: Vec<Vec<Letter>>,
}

impl fmt::Debug for AInftyData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AInftyData")
            .field("field", &self.field)
            .field("objects", &self.objects)
            .field("letters", &self.letters.iter().map(|l| &l.name).collect::<Vec<_>>())
            .field("ops", &self.ops.len())
            .finish()
    }
}

impl AInftyData {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn letters(&self) -> &[LetterInfo] {
        &self.letters
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn info(&self, a: Letter) -> &LetterInfo {
        &self.letters[a.idx()]
    }

    pub fn sdeg(&self, a: Letter) -> i64 {
        self.letters[a.idx()].sdeg()
    }

    pub fn source(&self, a: Letter) -> ObjectId {
        self.letters[a.idx()].source
    }

    pub fn target(&self, a: Letter) -> ObjectId {
        self.letters[a.idx()].target
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn pairing(&self) -> Option<&PairingData> {
        self.pairing.as_ref()
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn all_letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.letters.len() as u32).map(Letter)
    }

    /// Letters whose source is `obj`, in letter order.
    pub fn letters_from(&self, obj: ObjectId) -> &[Letter] {
        &self.by_source[obj.0 as usize]
    }

    pub fn object_named(&self, name: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == name).map(|i| ObjectId(i as u32))
    }

    /// The letter with this name, if the name is unique across all hom spaces.
    pub fn letter_named(&self, name: &str) -> Option<Letter> {
        let mut hits = self.all_letters().filter(|a| self.info(*a).name == name);
        let first = hits.next()?;
        hits.next().is_none().then_some(first)
    }

    pub fn letter_in(&self, source: ObjectId, target: ObjectId, name: &str) -> Option<Letter> {
        self.all_letters().find(|a| {
            let i = self.info(*a);
            i.source == source && i.target == target && i.name == name
        })
    }

    /// Printable letter reference: the bare name when unique, else
    /// `name[source,target]`.
    pub fn letter_label(&self, a: Letter) -> String {
        let info = self.info(a);
        if self.letters.iter().filter(|l| l.name == info.name).count() == 1 {
            info.name.clone()
        } else {
            format!(
                "{}[{},{}]",
                info.name, self.objects[info.source.0 as usize], self.objects[info.target.0 as usize]
            )
        }
    }

    /// `[a_0|a_1|...]`.
    pub fn fmt_word(&self, w: &Word) -> String {
        let parts: Vec<String> = w.letters().iter().map(|a| self.letter_label(*a)).collect();
        format!("[{}]", parts.join("|"))
    }

    /// The suspended structure constants, keyed by input tuple.
    pub fn ops(&self) -> &BTreeMap<Vec<Letter>, LinComb<Letter>> {
        &self.ops
    }

    /// All suspended coefficients as flat records, in canonical order.
    pub fn suspended_ops(&self) -> Vec<RawOp> {
        self.ops
            .iter()
            .flat_map(|(inputs, out)| {
                out.iter().map(move |(o, c)| RawOp { inputs: inputs.clone(), output: *o, coeff: c.clone() })
            })
            .collect()
    }

    /// `m̄_k(inputs)`; zero for arities without data.
    pub fn apply_op(&self, inputs: &[Letter]) -> Option<&LinComb<Letter>> {
        self.ops.get(inputs)
    }

    pub fn word_sdeg(&self, letters: &[Letter]) -> i64 {
        letters.iter().map(|a| self.sdeg(*a)).sum()
    }

    /// Whether `letters` is composable as a chain (not necessarily closed).
    pub fn is_chain(&self, letters: &[Letter]) -> bool {
        letters.windows(2).all(|w| self.target(w[0]) == self.source(w[1]))
    }

    pub fn is_cyclic(&self, letters: &[Letter]) -> bool {
        !letters.is_empty()
            && self.is_chain(letters)
            && self.target(*letters.last().unwrap()) == self.source(letters[0])
    }

    /// A copy with the pairing replaced.
    pub fn with_pairing(&self, pairing: Option<PairingData>) -> AInftyData {
        AInftyData { pairing, ..self.clone() }
    }

    /// A copy with one suspended coefficient replaced (zero removes it).
    pub(crate) fn with_op_coeff(&self, inputs: &[Letter], output: Letter, coeff: Scalar) -> AInftyData {
        let mut out = self.clone();
        let entry = out.ops.entry(inputs.to_vec()).or_insert_with(|| LinComb::zero(self.field));
        let old = entry.coeff(&output);
        entry.add_term(output, coeff - old);
        if entry.is_zero() {
            out.ops.remove(inputs);
        }
        out
    }

    pub fn with_provenance(&self, provenance: Option<String>) -> AInftyData {
        AInftyData { provenance, ..self.clone() }
    }

    /// All composable chains of length `len`, in lexicographic letter order.
    pub fn chains(&self, len: usize) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        for a in self.all_letters() {
            cur.push(a);
            self.extend_chains(len, &mut cur, &mut out);
            cur.pop();
        }
        out
    }

    fn extend_chains(&self, len: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let t = self.target(*cur.last().unwrap());
        for &b in self.letters_from(t) {
            cur.push(b);
            self.extend_chains(len, cur, out);
            cur.pop();
        }
    }
}

/// Applies the coderivation extension of `m̄` to a composable chain:
/// `Σ (-1)^{|ā_1|+...+|ā_p|} (ā_1,...,ā_p, m̄_k(...), ...)`.
pub fn bar_apply(data: &AInftyData, w: &[Letter]) -> Result<LinComb<Vec<Letter>>> {
    if w.is_empty() || !data.is_chain(w) {
        return Err(CoreError::NotComposable(format!("{:?}", w)));
    }
    let mut out = LinComb::zero(data.field());
    let mut prefix_deg = 0i64;
    for p in 0..w.len() {
        for k in 1..=(w.len() - p).min(data.max_arity()) {
            let Some(m) = data.apply_op(&w[p..p + k]) else { continue };
            for (o, c) in m.iter() {
                let mut word = Vec::with_capacity(w.len() - k + 1);
                word.extend_from_slice(&w[..p]);
                word.push(*o);
                word.extend_from_slice(&w[p + k..]);
                out.add_term(word, c.clone().signed(prefix_deg.rem_euclid(2) == 1));
            }
        }
        prefix_deg += data.sdeg(w[p]);
    }
    Ok(out)
}

/// `m̄` applied to a whole chain, i.e. `m̄_{len}(w)`.
fn apply_full(data: &AInftyData, w: &[Letter]) -> LinComb<Letter> {
    data.apply_op(w).cloned().unwrap_or_else(|| LinComb::zero(data.field()))
}

/// Residual of the A∞ relation on one input chain: `m̄ ∘ bar(w)`.
pub fn ainfty_residual(data: &AInftyData, w: &[Letter]) -> LinComb<Letter> {
    let mut out = LinComb::zero(data.field());
    let Ok(bar) = bar_apply(data, w) else { return out };
    for (u, c) in bar.iter() {
        out.add_scaled(&apply_full(data, u), c);
    }
    out
}

/// Checks the A∞ relations on every composable chain of length at most
/// `max_word_arity`.
pub fn verify_ainfty(data: &AInftyData, max_word_arity: usize, exec: Exec) -> VerificationReport {
    let mut report = VerificationReport::default();
    for len in 1..=max_word_arity {
        let chains = data.chains(len);
        let results = exec.map(&chains, |w| {
            let r = ainfty_residual(data, w);
            (!r.is_zero()).then(|| {
                let residual = r.max_magnitude();
                let detail = r
                    .iter()
                    .map(|(o, c)| format!("{c}·{}", data.letter_label(*o)))
                    .collect::<Vec<_>>()
                    .join(" + ");
                (format!("{} -> {detail}", fmt_chain(data, w)), residual)
            })
        });
        report.push(Check::from_results(format!("ainfty arity {len}"), chains.len(), results));
    }
    report
}

pub fn fmt_chain(data: &AInftyData, w: &[Letter]) -> String {
    format!("({})", w.iter().map(|a| data.letter_label(*a)).collect::<Vec<_>>().join(","))
}

/// Checks that `unit` letters act as strict units: `m̄_2(1̄,ā) = -ā`,
/// `m̄_2(ā,1̄) = (-1)^{|ā|} ā`, and `m̄_k` vanishes with a unit input for
/// `k ≠ 2`. Checked on chains up to `max_word_arity`.
pub fn check_strict_units(data: &AInftyData, units: &[Letter], max_word_arity: usize) -> VerificationReport {
    let unit_set: BTreeSet<Letter> = units.iter().copied().collect();
    let mut results = Vec::new();
    let mut tuples = 0;
    for len in 1..=max_word_arity.min(data.max_arity()) {
        for w in data.chains(len) {
            if !w.iter().any(|a| unit_set.contains(a)) {
                continue;
            }
            tuples += 1;
            let got = apply_full(data, &w);
            let mut expected = LinComb::zero(data.field());
            if len == 2 {
                let f = data.field();
                if unit_set.contains(&w[0]) {
                    expected.add_term(w[1], f.from_int(-1));
                } else {
                    expected.add_term(w[0], f.one().signed(data.sdeg(w[0]).rem_euclid(2) == 1));
                }
            }
            let mut diff = got;
            diff.sub(&expected);
            results.push((!diff.is_zero()).then(|| (fmt_chain(data, &w), diff.max_magnitude())));
        }
    }
    let mut report = VerificationReport::default();
    report.push(Check::from_results("strict units".to_string(), tuples, results));
    report
}

/// Incremental constructor for [`AInftyData`]. Letter handles returned here
/// are only meaningful for this builder; `build` reorders letters into
/// canonical order.
#[derive(Clone, Debug)]
pub struct AInftyBuilder {
    field: Field,
    objects: Vec<String>,
    letters: Vec<LetterInfo>,
    max_arity: usize,
    ops: Vec<(RawOp, bool)>,
    pairing_degree: Option<i64>,
    pairs: Vec<(Letter, Letter, Scalar)>,
    provenance: Option<String>,
}

impl AInftyBuilder {
    pub fn new(field: Field) -> Self {
        AInftyBuilder {
            field,
            objects: Vec::new(),
            letters: Vec::new(),
            max_arity: 2,
            ops: Vec::new(),
            pairing_degree: None,
            pairs: Vec::new(),
            provenance: None,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn object(&mut self, name: &str) -> Result<ObjectId> {
        if self.objects.iter().any(|o| o == name) {
            return Err(CoreError::Invalid(format!("duplicate object {name}")));
        }
        self.objects.push(name.to_string());
        Ok(ObjectId(self.objects.len() as u32 - 1))
    }

    pub fn letter(&mut self, name: &str, source: ObjectId, target: ObjectId, degree: i64) -> Result<Letter> {
        let n = self.objects.len() as u32;
        if source.0 >= n || target.0 >= n {
            return Err(CoreError::Invalid(format!("letter {name} refers to an unknown object")));
        }
        if self.letters.iter().any(|l| l.name == name && l.source == source && l.target == target) {
            return Err(CoreError::Invalid(format!(
                "duplicate basis element {name} in Hom({}, {})",
                self.objects[source.0 as usize], self.objects[target.0 as usize]
            )));
        }
        self.letters.push(LetterInfo { name: name.to_string(), source, target, degree });
        Ok(Letter(self.letters.len() as u32 - 1))
    }

    pub fn max_arity(&mut self, k: usize) -> &mut Self {
        self.max_arity = k;
        self
    }

    /// Adds a structure constant of the unsuspended `m_i`.
    pub fn op(&mut self, inputs: &[Letter], output: Letter, coeff: Scalar) -> &mut Self {
        self.ops.push((RawOp { inputs: inputs.to_vec(), output, coeff }, false));
        self
    }

    /// Adds a structure constant of the suspended `m̄_i`.
    pub fn op_suspended(&mut self, inputs: &[Letter], output: Letter, coeff: Scalar) -> &mut Self {
        self.ops.push((RawOp { inputs: inputs.to_vec(), output, coeff }, true));
        self
    }

    pub fn pairing_degree(&mut self, n: i64) -> &mut Self {
        self.pairing_degree = Some(n);
        self
    }

    /// Adds `⟨a, b⟩ = coeff` (one ordered entry).
    pub fn pair(&mut self, a: Letter, b: Letter, coeff: Scalar) -> &mut Self {
        self.pairs.push((a, b, coeff));
        self
    }

    /// Adds `⟨a, b⟩ = coeff` and the graded-symmetric partner `⟨b, a⟩`.
    pub fn pair_symmetric(&mut self, a: Letter, b: Letter, coeff: Scalar) -> &mut Self {
        let odd = (self.letters[a.idx()].degree * self.letters[b.idx()].degree).rem_euclid(2) == 1;
        self.pairs.push((a, b, coeff.clone()));
        if a != b {
            self.pairs.push((b, a, coeff.signed(odd)));
        }
        self
    }

    pub fn provenance(&mut self, p: &str) -> &mut Self {
        self.provenance = Some(p.to_string());
        self
    }

    pub fn build(&self) -> Result<AInftyData> {
        // Canonical letter order.
        let mut order: Vec<usize> = (0..self.letters.len()).collect();
        order.sort_by(|&i, &j| {
            let (a, b) = (&self.letters[i], &self.letters[j]);
            (a.source, a.target, &a.name).cmp(&(b.source, b.target, &b.name))
        });
        let mut remap = vec![Letter(0); self.letters.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = Letter(new as u32);
        }
        let letters: Vec<LetterInfo> = order.iter().map(|&i| self.letters[i].clone()).collect();
        let names = |ws: &[Letter]| ws.iter().map(|a| letters[a.idx()].name.clone()).collect::<Vec<_>>().join(",");

        let mut ops: BTreeMap<Vec<Letter>, LinComb<Letter>> = BTreeMap::new();
        for (op, suspended) in &self.ops {
            if op.coeff.field() != self.field {
                return Err(CoreError::Invalid("coefficient from a different field".into()));
            }
            let inputs: Vec<Letter> = op.inputs.iter().map(|a| remap[a.idx()]).collect();
            let output = remap[op.output.idx()];
            let arity = inputs.len();
            if arity == 0 || arity > self.max_arity {
                return Err(CoreError::Invalid(format!(
                    "operation of arity {arity} outside 1..={}",
                    self.max_arity
                )));
            }
            let chain_ok = inputs.windows(2).all(|w| letters[w[0].idx()].target == letters[w[1].idx()].source);
            let out = &letters[output.idx()];
            if !chain_ok
                || out.source != letters[inputs[0].idx()].source
                || out.target != letters[inputs[arity - 1].idx()].target
            {
                return Err(CoreError::NotComposable(format!("m_{arity}({}) -> {}", names(&inputs), out.name)));
            }
            let raw = RawOp { inputs, output, coeff: op.coeff.clone() };
            let converted = if *suspended {
                let expected: i64 = raw.inputs.iter().map(|a| letters[a.idx()].sdeg()).sum::<i64>() + 1;
                if out.sdeg() != expected {
                    return Err(CoreError::DegreeMismatch(format!(
                        "suspended m_{arity}({}) -> {} has output degree {}, expected {}",
                        names(&raw.inputs),
                        out.name,
                        out.sdeg(),
                        expected
                    )));
                }
                raw
            } else {
                desuspend_convert(&letters, std::slice::from_ref(&raw))?.remove(0)
            };
            let entry = ops.entry(converted.inputs).or_insert_with(|| LinComb::zero(self.field));
            entry.add_term(converted.output, converted.coeff);
        }
        ops.retain(|_, v| !v.is_zero());

        let pairing = match self.pairing_degree {
            None if self.pairs.is_empty() => None,
            None => return Err(CoreError::Invalid("pairing entries without a pairing degree".into())),
            Some(n) => {
                let mut entries = BTreeMap::new();
                for (a, b, c) in &self.pairs {
                    let (a, b) = (remap[a.idx()], remap[b.idx()]);
                    let (ia, ib) = (&letters[a.idx()], &letters[b.idx()]);
                    if ia.source != ib.target || ia.target != ib.source {
                        return Err(CoreError::NotComposable(format!(
                            "pairing <{}, {}> between non-opposite hom spaces",
                            ia.name, ib.name
                        )));
                    }
                    if !c.is_zero() && ia.degree + ib.degree != n {
                        return Err(CoreError::DegreeMismatch(format!(
                            "pairing <{}, {}> has degree {} but the pairing degree is {n}",
                            ia.name,
                            ib.name,
                            ia.degree + ib.degree
                        )));
                    }
                    if !c.is_zero() {
                        entries.insert((a, b), c.clone());
                    }
                }
                Some(PairingData::new(n, entries))
            }
        };

        let mut by_source = vec![Vec::new(); self.objects.len()];
        for (i, l) in letters.iter().enumerate() {
            by_source[l.source.0 as usize].push(Letter(i as u32));
        }
        Ok(AInftyData {
            field: self.field,
            objects: self.objects.clone(),
            letters,
            max_arity: self.max_arity,
            ops,
            pairing,
            provenance: self.provenance.clone(),
            by_source,
        })
    }
}

/// Builder seeded from existing data (letters keep their canonical indices).
impl From<&AInftyData> for AInftyBuilder {
    fn from(d: &AInftyData) -> Self {
        let mut b = AInftyBuilder::new(d.field);
        b.objects = d.objects.clone();
        b.letters = d.letters.clone();
        b.max_arity = d.max_arity;
        b.ops = d.suspended_ops().into_iter().map(|op| (op, true)).collect();
        if let Some(p) = &d.pairing {
            b.pairing_degree = Some(p.degree());
            b.pairs = p.entries().iter().map(|((a, b), c)| (*a, *b, c.clone())).collect();
        }
        b.provenance = d.provenance.clone();
        b
    }
}

/// Exact rational helper for fixtures and tests.
pub fn q(n: i64) -> Scalar {
    Scalar::Q(Rational::from_int(n))
}
