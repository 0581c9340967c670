//! Noncommutative differential forms on a graded vector space, de Rham
//! classes, constant symplectic forms and the Lie bialgebra on `DR⁰`.
//!
//! `Ω•` of the free algebra on generators `x_p` is free on `x_p` and `dx_p`
//! (the bimodule relation `(x ⊗ y)·a = x ⊗ ya - xy ⊗ a` is the Leibniz
//! rule), so forms are kept as combinations of words in marked letters.
//! Koszul signs use the total degree `|x_p| + (1 if marked)`.

use std::collections::BTreeMap;

use ainf_exactlin::{invert, rank, Exec, Field, Scalar, SparseMatrix};

use crate::ainfty::{AInftyData, Letter};
use crate::calabi_yau::SymplecticForm;
use crate::error::{CoreError, Result};
use crate::liebialg::{bialgebra_axioms, cochain_basis, BialgebraOps, CochainTensor, CyclicCochain, CyclicLie};
use crate::lincomb::LinComb;
use crate::report::{Check, VerificationReport};
use crate::word::Word;

fn parity(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// A generator, plain (`x`) or differential (`dx`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormLetter {
    pub generator: u32,
    pub d: bool,
}

pub type FormWord = Vec<FormLetter>;

/// An element of `Ω•` in normal form.
pub type NcForm = LinComb<FormWord>;

/// A derivation of the free algebra, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub degree: i64,
    pub values: BTreeMap<u32, NcForm>,
}

/// Generators with names and degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcSpace {
    field: Field,
    names: Vec<String>,
    degrees: Vec<i64>,
}

impl NcSpace {
    pub fn new(field: Field, generators: &[(&str, i64)]) -> Self {
        NcSpace {
            field,
            names: generators.iter().map(|(n, _)| n.to_string()).collect(),
            degrees: generators.iter().map(|(_, d)| *d).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn generator(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn name(&self, p: u32) -> &str {
        &self.names[p as usize]
    }

    pub fn degree(&self, p: u32) -> i64 {
        self.degrees[p as usize]
    }

    pub fn letter_degree(&self, l: FormLetter) -> i64 {
        self.degree(l.generator) + i64::from(l.d)
    }

    pub fn word_degree(&self, w: &[FormLetter]) -> i64 {
        w.iter().map(|l| self.letter_degree(*l)).sum()
    }

    /// Number of differential letters.
    pub fn form_degree(w: &[FormLetter]) -> usize {
        w.iter().filter(|l| l.d).count()
    }

    pub fn x(&self, p: u32) -> NcForm {
        LinComb::single(self.field, vec![FormLetter { generator: p, d: false }], self.field.one())
    }

    pub fn dx(&self, p: u32) -> NcForm {
        LinComb::single(self.field, vec![FormLetter { generator: p, d: true }], self.field.one())
    }

    pub fn one(&self) -> NcForm {
        LinComb::single(self.field, Vec::new(), self.field.one())
    }

    pub fn mul(&self, f: &NcForm, g: &NcForm) -> NcForm {
        let mut out = LinComb::zero(self.field);
        for (u, a) in f.iter() {
            for (v, b) in g.iter() {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }

    /// `uv - (-1)^{|u||v|} vu`.
    pub fn commutator(&self, f: &NcForm, g: &NcForm) -> NcForm {
        let mut out = self.mul(f, g);
        for (u, a) in f.iter() {
            for (v, b) in g.iter() {
                let s = parity(self.word_degree(u) * self.word_degree(v));
                let mut w = v.clone();
                w.extend_from_slice(u);
                out.add_term(w, -(&(a * b)).clone().signed(s));
            }
        }
        out
    }

    /// Extends `image` on letters to a derivation of degree `degree`.
    pub fn apply_derivation(&self, f: &NcForm, degree: i64, image: impl Fn(FormLetter) -> NcForm) -> NcForm {
        let mut out = LinComb::zero(self.field);
        for (w, c) in f.iter() {
            let mut prefix_deg = 0;
            for i in 0..w.len() {
                let img = image(w[i]);
                let sign = self.field.sign(parity(degree * prefix_deg));
                for (m, cm) in img.iter() {
                    let mut word = w[..i].to_vec();
                    word.extend_from_slice(m);
                    word.extend_from_slice(&w[i + 1..]);
                    out.add_term(word, &(c * cm) * &sign);
                }
                prefix_deg += self.letter_degree(w[i]);
            }
        }
        out
    }

    /// `d(x) = dx`, `d(dx) = 0`, extended as a degree 1 derivation.
    pub fn d_apply(&self, f: &NcForm) -> NcForm {
        self.apply_derivation(f, 1, |l| if l.d { LinComb::zero(self.field) } else { self.dx(l.generator) })
    }

    /// `L_ξ(x) = ξ(x)`, `L_ξ(dx) = (-1)^{|ξ|} d(ξ(x))`.
    pub fn lie_derivative(&self, xi: &VectorField, f: &NcForm) -> NcForm {
        let zero = LinComb::zero(self.field);
        self.apply_derivation(f, xi.degree, |l| {
            let v = xi.values.get(&l.generator).unwrap_or(&zero);
            if l.d {
                self.d_apply(v).scaled(&self.field.sign(parity(xi.degree)))
            } else {
                v.clone()
            }
        })
    }

    /// `ι_ξ(x) = 0`, `ι_ξ(dx) = ξ(x)`.
    pub fn contraction(&self, xi: &VectorField, f: &NcForm) -> NcForm {
        let zero = LinComb::zero(self.field);
        self.apply_derivation(f, xi.degree - 1, |l| {
            if l.d {
                xi.values.get(&l.generator).unwrap_or(&zero).clone()
            } else {
                zero.clone()
            }
        })
    }

    fn rotate(&self, w: &[FormLetter], k: usize) -> (FormWord, bool) {
        let n = w.len();
        let k = k % n.max(1);
        let tail = self.word_degree(&w[n - k..]);
        let rest = self.word_degree(&w[..n - k]);
        let mut out = w[n - k..].to_vec();
        out.extend_from_slice(&w[..n - k]);
        (out, parity(tail * rest))
    }

    /// The class of a word modulo graded commutators: `(rep, negative)`, or
    /// `None` when it vanishes.
    pub fn dr_class(&self, w: &[FormLetter]) -> Option<(FormWord, bool)> {
        let mut best: Option<(FormWord, bool)> = None;
        for k in 0..w.len().max(1) {
            let (r, neg) = self.rotate(w, k);
            match &best {
                Some((b, bneg)) if r == *b && neg != *bneg => return None,
                Some((b, _)) if r >= *b => {}
                _ => best = Some((r, neg)),
            }
        }
        let (rep, neg) = best.expect("at least one rotation");
        let anti = (1..rep.len()).any(|k| {
            let (r, n) = self.rotate(&rep, k);
            r == rep && n
        });
        (!anti).then_some((rep, neg))
    }

    /// Projection `Ω• → DR•` onto canonical representatives.
    pub fn dr_project(&self, f: &NcForm) -> NcForm {
        let mut out = LinComb::zero(self.field);
        for (w, c) in f.iter() {
            if let Some((rep, neg)) = self.dr_class(w) {
                out.add_term(rep, c.clone().signed(neg));
            }
        }
        out
    }

    /// A `DR¹` class as `Σ_p A_p dx_p`: every word rotated so that its
    /// differential letter comes last.
    pub fn dr1_components(&self, f: &NcForm) -> Result<BTreeMap<u32, NcForm>> {
        let mut out: BTreeMap<u32, NcForm> = BTreeMap::new();
        for (w, c) in f.iter() {
            let pos: Vec<usize> = (0..w.len()).filter(|i| w[*i].d).collect();
            let [k] = pos[..] else {
                return Err(CoreError::Invalid(format!("not a 1-form: {}", self.fmt_word(w))));
            };
            let (r, neg) = self.rotate(w, w.len() - k - 1);
            let p = r[r.len() - 1].generator;
            out.entry(p)
                .or_insert_with(|| LinComb::zero(self.field))
                .add_term(r[..r.len() - 1].to_vec(), c.clone().signed(neg));
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn fmt_word(&self, w: &[FormLetter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> =
            w.iter().map(|l| format!("{}{}", if l.d { "d" } else { "" }, self.name(l.generator))).collect();
        parts.join("·")
    }

    pub fn fmt_form(&self, f: &NcForm) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = f.iter().map(|(w, c)| format!("{c}·{}", self.fmt_word(w))).collect();
        parts.join(" + ")
    }

    /// Checks whether a 2-form is symplectic. Closedness is decided for any
    /// form; nondegeneracy only for constant forms `Σ c_pq dx_p dx_q`.
    pub fn is_symplectic(&self, w: &NcForm) -> Result<SymplecticCertificate> {
        let closed = self.dr_project(&self.d_apply(w)).is_zero();
        let class = self.dr_project(w);
        let constant = class.keys().all(|u| u.len() == 2 && u.iter().all(|l| l.d));
        if !closed {
            return Ok(SymplecticCertificate { closed, pairing: None, rank: 0, symplectic: false });
        }
        if !constant {
            return Err(CoreError::NonConstantForm);
        }
        let n = self.len();
        let mut entries: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (u, c) in class.iter() {
            let (p, q) = (u[0].generator as usize, u[1].generator as usize);
            let s = parity(self.letter_degree(u[0]) * self.letter_degree(u[1]));
            *entries.entry((p, q)).or_insert_with(|| self.field.zero()) += c;
            *entries.entry((q, p)).or_insert_with(|| self.field.zero()) += &c.clone().signed(s);
        }
        let pairing = SparseMatrix::from_triplets(self.field, n, n, entries.into_iter().map(|((i, j), c)| (i, j, c)))?;
        let r = rank(&pairing);
        Ok(SymplecticCertificate { closed, symplectic: r == n, rank: r, pairing: Some(pairing) })
    }
}

/// Outcome of [`NcSpace::is_symplectic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticCertificate {
    pub closed: bool,
    /// `P[p][q]`: the coefficient of `dx_p dx_q` in the class, read off both
    /// orderings. Absent when the form is not closed.
    pub pairing: Option<SparseMatrix>,
    pub rank: usize,
    pub symplectic: bool,
}

/// `DR⁰` with the Poisson bracket of a constant symplectic form and the
/// cobracket `Δ`.
///
/// The bracket is `{f, g} = -(-1)^{|f| + |Ω|} L_{X_f} g` with the Hamiltonian
/// field defined by `ι_{X_f} Ω = df` in `DR¹`; the sign makes it graded
/// antisymmetric in the shifted grading. The cobracket contracts pairs of
/// letters of one word with `ω(x_a, x_b) = (-1)^{|Ω||x_a|} {x_a, x_b}`.
#[derive(Clone, Debug)]
pub struct PoissonDr0 {
    pub space: NcSpace,
    pub form: NcForm,
    /// `(P^T)^{-1}`: solves `ι_ξ Ω = Σ_q g_q dx_q` by `ξ(x_p) = Σ_q Q[p][q] g_q`.
    hamiltonian: Vec<Vec<Scalar>>,
    /// `ω(x_a, x_b)` on generators.
    omega: BTreeMap<u32, Vec<(u32, Scalar)>>,
    /// `|Ω|`, the total degree of the form.
    form_degree: i64,
    pub keep_empty: bool,
}

impl PoissonDr0 {
    pub fn new(space: NcSpace, form: NcForm) -> Result<Self> {
        let cert = space.is_symplectic(&form)?;
        let pairing = match (&cert.pairing, cert.symplectic) {
            (Some(p), true) => p,
            _ => return Err(CoreError::Invalid("form is not symplectic".into())),
        };
        let degs: Vec<i64> = form.keys().map(|w| space.word_degree(w)).collect();
        let form_degree = degs.first().copied().unwrap_or(0);
        if let Some(e) = degs.iter().find(|e| **e != form_degree) {
            return Err(CoreError::MixedDegrees(form_degree, *e));
        }
        let q = invert(&pairing.transpose())?.to_dense();
        let mut p = PoissonDr0 { space, form, hamiltonian: q, omega: BTreeMap::new(), form_degree, keep_empty: false };
        for a in 0..p.space.len() as u32 {
            for (b, c) in p.generator_pairing(a) {
                p.omega.entry(a).or_default().push((b, c));
            }
        }
        Ok(p)
    }

    pub fn with_empty_word(mut self, keep: bool) -> Self {
        self.keep_empty = keep;
        self
    }

    fn generator_pairing(&self, a: u32) -> Vec<(u32, Scalar)> {
        let f = self.space.field();
        let xa = self.space.x(a);
        let ham = self.hamiltonian_field(&xa).expect("generators are homogeneous");
        (0..self.space.len() as u32)
            .filter_map(|b| {
                let v = self.raw_bracket(&xa, &ham, &self.space.x(b));
                let c = v.coeff(&Vec::new()).signed(parity(self.form_degree * self.space.degree(a)));
                (!c.is_zero()).then(|| (b, c))
            })
            .filter(|(_, c)| *c != f.zero())
            .collect()
    }

    /// `ω(x_a, x_b)`, zero when unpaired.
    pub fn omega(&self, a: u32, b: u32) -> Scalar {
        self.omega
            .get(&a)
            .and_then(|v| v.iter().find(|(x, _)| *x == b))
            .map_or_else(|| self.space.field().zero(), |(_, c)| c.clone())
    }

    fn to_form(&self, w: &Word) -> NcForm {
        let letters = w.letters().iter().map(|l| FormLetter { generator: l.0, d: false }).collect();
        LinComb::single(self.space.field(), letters, self.space.field().one())
    }

    fn to_classes(&self, f: &NcForm) -> CyclicCochain {
        let mut out = LinComb::zero(self.space.field());
        for (w, c) in self.space.dr_project(f).iter() {
            if w.is_empty() && !self.keep_empty {
                continue;
            }
            out.add_term(Word::new(w.iter().map(|l| Letter(l.generator)).collect()), c.clone());
        }
        out
    }

    /// The Hamiltonian vector field of a homogeneous 0-form.
    pub fn hamiltonian_field(&self, f: &NcForm) -> Result<VectorField> {
        let sp = &self.space;
        let mut degs = f.keys().map(|w| sp.word_degree(w));
        let deg = degs.next().unwrap_or(0);
        if let Some(e) = degs.find(|e| *e != deg) {
            return Err(CoreError::MixedDegrees(deg, e));
        }
        let df = sp.dr1_components(&sp.d_apply(f))?;
        let mut values = BTreeMap::new();
        for p in 0..sp.len() {
            let mut v = LinComb::zero(sp.field());
            for (q, g) in &df {
                let c = &self.hamiltonian[p][*q as usize];
                if !c.is_zero() {
                    v.add_scaled(g, c);
                }
            }
            if !v.is_zero() {
                values.insert(p as u32, v);
            }
        }
        Ok(VectorField { degree: deg + 2 - self.form_degree, values })
    }

    /// `ι_{X_f} Ω - df` in `DR¹`; zero when the Hamiltonian field is right.
    pub fn hamiltonian_residual(&self, f: &NcForm) -> Result<BTreeMap<u32, NcForm>> {
        let sp = &self.space;
        let xi = self.hamiltonian_field(f)?;
        let mut lhs = sp.dr1_components(&sp.contraction(&xi, &self.form))?;
        for (q, g) in sp.dr1_components(&sp.d_apply(f))? {
            lhs.entry(q).or_insert_with(|| LinComb::zero(sp.field())).sub(&g);
        }
        lhs.retain(|_, v| !v.is_zero());
        Ok(lhs)
    }

    /// `{f, g}` on `DR⁰`.
    pub fn poisson_bracket(&self, f: &NcForm, g: &NcForm) -> Result<CyclicCochain> {
        let xi = self.hamiltonian_field(f)?;
        Ok(self.to_classes(&self.raw_bracket(f, &xi, g)))
    }

    fn raw_bracket(&self, f: &NcForm, xi: &VectorField, g: &NcForm) -> NcForm {
        let fd = f.keys().next().map_or(0, |w| self.space.word_degree(w));
        let odd = !parity(fd + self.form_degree);
        self.space.lie_derivative(xi, g).scaled(&self.space.field().sign(odd))
    }

    pub fn delta(&self, f: &CyclicCochain) -> CochainTensor {
        let mut out = LinComb::zero(self.space.field());
        for (u, c) in f.iter() {
            out.add_scaled(&BialgebraOps::cobracket_word(self, u), c);
        }
        out
    }

    fn sdeg(&self, letters: &[Letter]) -> i64 {
        letters.iter().map(|l| self.space.degree(l.0)).sum()
    }

    fn class(&self, letters: Vec<Letter>) -> CyclicCochain {
        let f: FormWord = letters.iter().map(|l| FormLetter { generator: l.0, d: false }).collect();
        self.to_classes(&LinComb::single(self.space.field(), f, self.space.field().one()))
    }
}

impl BialgebraOps for PoissonDr0 {
    fn field(&self) -> Field {
        self.space.field()
    }

    /// The bracket has degree `2 - |Ω|`.
    fn e_odd(&self, w: &Word) -> bool {
        parity(self.sdeg(w.letters()) + self.form_degree)
    }

    fn bracket_words(&self, u: &Word, v: &Word) -> CyclicCochain {
        self.poisson_bracket(&self.to_form(u), &self.to_form(v)).expect("words are homogeneous")
    }

    fn cobracket_word(&self, u: &Word) -> CochainTensor {
        let f = self.space.field();
        let mut out = LinComb::zero(f);
        let ul = u.letters();
        for i in 0..ul.len() {
            let Some(partners) = self.omega.get(&ul[i].0) else { continue };
            let s1 = parity(self.sdeg(&ul[i..]) * self.sdeg(&ul[..i]));
            let mut r: Vec<Letter> = ul[i + 1..].to_vec();
            r.extend_from_slice(&ul[..i]);
            for p in 0..r.len() {
                let Some((_, w)) = partners.iter().find(|(b, _)| *b == r[p].0) else { continue };
                let (inner, outer) = (&r[..p], &r[p + 1..]);
                let coeff = w.clone().signed(s1 ^ parity(self.space.degree(r[p].0) * self.sdeg(inner)));
                for (wa, ca) in self.class(inner.to_vec()).iter() {
                    for (wb, cb) in self.class(outer.to_vec()).iter() {
                        out.add_term((wa.clone(), wb.clone()), &(ca * cb) * &coeff);
                    }
                }
            }
        }
        out
    }

    fn fmt_word(&self, w: &Word) -> String {
        let f: FormWord = w.letters().iter().map(|l| FormLetter { generator: l.0, d: false }).collect();
        format!("[{}]", self.space.fmt_word(&f))
    }
}

/// The constant 2-form on `ΣV` whose Poisson bracket on generators is the
/// bracket of the cyclic Lie algebra: `Ω = ½ Σ_{a,b} K_{ba} dx_a dx_b` with
/// `K = ω^{-1}`.
pub fn induced_constant_form(data: &AInftyData, omega: &SymplecticForm) -> Result<(NcSpace, NcForm)> {
    let gens: Vec<(String, i64)> = data.all_letters().map(|a| (data.letter_label(a), data.sdeg(a))).collect();
    let refs: Vec<(&str, i64)> = gens.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let space = NcSpace::new(data.field(), &refs);
    let f = data.field();
    let half = f.from_int(2).inv().map_err(|_| CoreError::Invalid("characteristic 2".into()))?;
    let mut form = LinComb::zero(f);
    for ((a, b), c) in omega.inverse_values() {
        // Each unordered pair occurs twice in the inverse, once per order.
        let coeff = c * &half;
        let w = vec![FormLetter { generator: b.0, d: true }, FormLetter { generator: a.0, d: true }];
        form.add_term(w, coeff);
    }
    Ok((space, form))
}

/// Compares the cyclic Lie bialgebra of a one-object CY category with the
/// Poisson bialgebra on `DR⁰` of `(ΣV, ω)`, class by class.
pub fn quillen_compare(data: &AInftyData, omega: &SymplecticForm, max_length: usize, exec: Exec) -> Result<VerificationReport> {
    if data.objects().len() != 1 {
        return Err(CoreError::MultiObjectUnsupported(data.objects().len()));
    }
    let (space, form) = induced_constant_form(data, omega)?;
    let poisson = PoissonDr0::new(space, form)?;
    compare_with(&CyclicLie::new(data, omega), &poisson, max_length, exec)
}

/// The class-by-class comparison behind [`quillen_compare`], against any
/// `DR⁰` model with the same generators.
pub fn compare_with(lie: &CyclicLie, poisson: &PoissonDr0, max_length: usize, exec: Exec) -> Result<VerificationReport> {
    let basis = cochain_basis(lie.data, max_length, exec)?;
    let nb = basis.len();
    let pairs: Vec<(usize, usize)> = (0..nb).flat_map(|i| (0..nb).map(move |j| (i, j))).collect();
    let fw = |w: &Word| lie.data.fmt_word(w);
    let mut report = VerificationReport::default();
    let br = exec.map(&pairs, |&(i, j)| {
        let (a, b) = (&basis[i], &basis[j]);
        let mut r = lie.bracket_words(a, b);
        r.sub(&BialgebraOps::bracket_words(poisson, a, b));
        (!r.is_zero()).then(|| (format!("{}, {}", fw(a), fw(b)), r.max_magnitude()))
    });
    report.push(Check::from_results("bracket vs poisson".into(), pairs.len(), br));
    let co = exec.map(&basis, |a| {
        let mut r = lie.cobracket_word(a);
        r.sub(&BialgebraOps::cobracket_word(poisson, a));
        (!r.is_zero()).then(|| (fw(a), r.max_magnitude()))
    });
    report.push(Check::from_results("cobracket vs delta".into(), basis.len(), co));
    let ham = exec.map(&basis, |a| match poisson.hamiltonian_residual(&poisson.to_form(a)) {
        Ok(r) if r.is_empty() => None,
        Ok(_) => Some((fw(a), ainf_exactlin::Rational::one())),
        Err(e) => Some((e.to_string(), ainf_exactlin::Rational::one())),
    });
    report.push(Check::from_results("hamiltonian fields".into(), basis.len(), ham));
    Ok(report)
}

/// Runs the shared axiom engine on `DR⁰` classes up to `max_length`.
pub fn poisson_axioms(poisson: &PoissonDr0, basis: &[Word], exec: Exec) -> VerificationReport {
    bialgebra_axioms(poisson, basis, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calabi_yau::induced_omega;
    use crate::modelzoo::named_fixture;

    fn xl(p: u32) -> FormLetter {
        FormLetter { generator: p, d: false }
    }

    fn dl(p: u32) -> FormLetter {
        FormLetter { generator: p, d: true }
    }

    fn word(sp: &NcSpace, w: &[FormLetter]) -> NcForm {
        LinComb::single(sp.field(), w.to_vec(), sp.field().one())
    }

    // x even, y odd.
    fn mixed() -> NcSpace {
        NcSpace::new(Field::Rational, &[("x", 0), ("y", 1)])
    }

    fn darboux() -> (NcSpace, NcForm) {
        let sp = NcSpace::new(Field::Rational, &[("x", 0), ("y", 0)]);
        let form = word(&sp, &[dl(0), dl(1)]);
        (sp, form)
    }

    fn all_words(len: usize) -> Vec<FormWord> {
        let letters = [xl(0), xl(1), dl(0), dl(1)];
        let mut out = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|w: &FormWord| {
                    letters.iter().map(move |l| {
                        let mut v = w.clone();
                        v.push(*l);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn d_on_small_words() {
        let sp = mixed();
        assert!(sp.d_apply(&sp.one()).is_zero());
        assert_eq!(sp.d_apply(&sp.x(0)), sp.dx(0));
        // d(xy) = dx·y + x·dy
        let mut want = word(&sp, &[dl(0), xl(1)]);
        want.add_term(vec![xl(0), dl(1)], sp.field().one());
        assert_eq!(sp.d_apply(&word(&sp, &[xl(0), xl(1)])), want);
        // d(yx) = dy·x - y·dx, since |y| is odd
        let mut want = word(&sp, &[dl(1), xl(0)]);
        want.add_term(vec![xl(1), dl(0)], -sp.field().one());
        assert_eq!(sp.d_apply(&word(&sp, &[xl(1), xl(0)])), want);
    }

    #[test]
    fn d_squares_to_zero() {
        let sp = mixed();
        for w in all_words(4) {
            assert!(sp.d_apply(&sp.d_apply(&word(&sp, &w))).is_zero(), "{}", sp.fmt_word(&w));
        }
    }

    #[test]
    fn contraction_and_lie_derivative_examples() {
        let sp = mixed();
        // ξ = x ∂/∂y has degree |x| - |y| = -1
        let xi = VectorField { degree: -1, values: BTreeMap::from([(1, sp.x(0))]) };
        assert_eq!(sp.contraction(&xi, &sp.dx(1)), sp.x(0));
        assert!(sp.contraction(&xi, &sp.x(1)).is_zero());
        assert_eq!(sp.lie_derivative(&xi, &sp.x(1)), sp.x(0));
        // L_ξ(dy) = (-1)^{|ξ|} d(ξ(y)) = -dx
        assert_eq!(sp.lie_derivative(&xi, &sp.dx(1)), sp.dx(0).scaled(&-sp.field().one()));
        // ι_ξ has even degree -2, so ι_ξ(dy·dy) = x·dy + dy·x.
        let got = sp.contraction(&xi, &word(&sp, &[dl(1), dl(1)]));
        let mut want = word(&sp, &[xl(0), dl(1)]);
        want.add_term(vec![dl(1), xl(0)], sp.field().one());
        assert_eq!(got, want);
    }

    #[test]
    fn derivations_preserve_commutators() {
        let sp = mixed();
        let fields = [
            VectorField { degree: -1, values: BTreeMap::from([(1, sp.x(0))]) },
            VectorField { degree: 1, values: BTreeMap::from([(0, sp.x(1)), (1, word(&sp, &[xl(1), xl(1)]))]) },
            VectorField { degree: 0, values: BTreeMap::from([(0, word(&sp, &[xl(0), xl(0)])), (1, word(&sp, &[xl(0), xl(1)]))]) },
        ];
        let words = all_words(4);
        for f in &words {
            for g in words.iter().filter(|g| f.len() + g.len() <= 4) {
                let c = sp.commutator(&word(&sp, f), &word(&sp, g));
                assert!(sp.dr_project(&c).is_zero());
                assert!(sp.dr_project(&sp.d_apply(&c)).is_zero());
                for xi in &fields {
                    assert!(sp.dr_project(&sp.lie_derivative(xi, &c)).is_zero(), "L on {}", sp.fmt_form(&c));
                    assert!(sp.dr_project(&sp.contraction(xi, &c)).is_zero(), "ι on {}", sp.fmt_form(&c));
                }
            }
        }
    }

    #[test]
    fn symplectic_detection() {
        let (sp, form) = darboux();
        let cert = sp.is_symplectic(&form).unwrap();
        assert!(cert.closed && cert.symplectic);
        assert_eq!(cert.rank, 2);

        let sp3 = NcSpace::new(Field::Rational, &[("x", 0), ("y", 0), ("z", 0)]);
        let cert = sp3.is_symplectic(&word(&sp3, &[dl(0), dl(1)])).unwrap();
        assert!(cert.closed && !cert.symplectic);
        assert_eq!(cert.rank, 2);

        let cert = sp.is_symplectic(&word(&sp, &[xl(0), dl(0), dl(1)])).unwrap();
        assert!(!cert.closed && !cert.symplectic);

        // dx·dx·dy is closed but not constant.
        assert!(matches!(sp.is_symplectic(&word(&sp, &[dl(0), dl(0), dl(1)])), Err(CoreError::NonConstantForm)));
    }

    #[test]
    fn darboux_bracket_of_generators_is_a_constant() {
        let (sp, form) = darboux();
        let p = PoissonDr0::new(sp.clone(), form).unwrap().with_empty_word(true);
        let xy = p.poisson_bracket(&sp.x(0), &sp.x(1)).unwrap();
        let yx = p.poisson_bracket(&sp.x(1), &sp.x(0)).unwrap();
        assert_eq!(xy.len(), 1);
        let c = xy.coeff(&Word::new(vec![]));
        assert!(c == sp.field().one() || c == -sp.field().one());
        assert_eq!(yx, xy.scaled(&-sp.field().one()));
        assert_eq!(p.omega(0, 1), c);
        assert!(p.hamiltonian_residual(&word(&sp, &[xl(0), xl(1), xl(1)])).unwrap().is_empty());
        // Without the empty word the bracket of two generators vanishes.
        let q = PoissonDr0::new(sp.clone(), word(&sp, &[dl(0), dl(1)])).unwrap();
        assert!(q.poisson_bracket(&sp.x(0), &sp.x(1)).unwrap().is_zero());
    }

    #[test]
    fn delta_of_xy() {
        // Δ[xy] = ω(x, y)[∅]⊗[∅] + ω(y, x)[∅]⊗[∅], and ω is antisymmetric on
        // even generators.
        let (sp, form) = darboux();
        let p = PoissonDr0::new(sp, form).unwrap().with_empty_word(true);
        let xy = LinComb::single(Field::Rational, Word::new(vec![Letter(0), Letter(1)]), Field::Rational.one());
        assert!(p.delta(&xy).is_zero());
        // Δ[xyy] also cancels term by term.
        let xyy = LinComb::single(Field::Rational, Word::new(vec![Letter(0), Letter(1), Letter(1)]), Field::Rational.one());
        let w = p.omega(0, 1);
        let e = Word::new(vec![]);
        let y = Word::new(vec![Letter(1)]);
        let mut want = LinComb::zero(Field::Rational);
        // i = 0 (x): R = y y, p = 0 → [∅]⊗[y], p = 1 → [y]⊗[∅]
        want.add_term((e.clone(), y.clone()), w.clone());
        want.add_term((y.clone(), e.clone()), w.clone());
        // i = 1 (y): R = y x, p = 1 → [y]⊗[∅]; i = 2 (y): R = x y, p = 0 → [∅]⊗[y]
        want.add_term((y.clone(), e.clone()), -w.clone());
        want.add_term((e, y), -w);
        assert_eq!(p.delta(&xyy), want);
    }

    #[test]
    fn even_fixtures_agree_with_cyclic_bialgebra() {
        for name in ["s2", "cp2", "lambda2"] {
            let d = named_fixture(name, Field::Rational).unwrap();
            let om = induced_omega(&d).unwrap();
            let rep = quillen_compare(&d, &om, 3, Exec::Serial).unwrap();
            assert!(rep.passed(), "{name}: {rep:?}");
        }
    }

    #[test]
    fn odd_fixture_agrees_with_cyclic_bialgebra() {
        let d = named_fixture("lambda1", Field::Rational).unwrap();
        let om = induced_omega(&d).unwrap();
        let rep = quillen_compare(&d, &om, 4, Exec::Serial).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn rescaled_form_is_detected() {
        let d = named_fixture("s2", Field::Rational).unwrap();
        let om = induced_omega(&d).unwrap();
        let (sp, form) = induced_constant_form(&d, &om).unwrap();
        let two = sp.field().from_int(2);
        let p = PoissonDr0::new(sp, form.scaled(&two)).unwrap();
        let rep = compare_with(&CyclicLie::new(&d, &om), &p, 3, Exec::Serial).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn multi_object_rejected() {
        let s2 = named_fixture("s2", Field::Rational).unwrap();
        let om = induced_omega(&s2).unwrap();
        let d = named_fixture("directed2", Field::Rational).unwrap();
        assert!(matches!(quillen_compare(&d, &om, 2, Exec::Serial), Err(CoreError::MultiObjectUnsupported(2))));
    }
}
