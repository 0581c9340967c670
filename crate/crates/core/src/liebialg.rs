//! The Lie bracket and cobracket on cyclic cochains of a Calabi-Yau A∞
//! category, in the coinvariant model, and the axiom checks.
//!
//! A cochain is a combination of canonical cyclic words in the suspended
//! letters, the class `[u]` standing for `N(u)`. Its degree is
//! `D = -(sum of suspended letter degrees)`; both operations shift `D` by
//! `n - 2`. Identities use Koszul signs in the grading `e = D + n - 2`, in
//! which both operations are even and the differential is odd.
//!
//! Sign rules. The bracket term contracting `u_i` with `v_j` rotates `u` to
//! `(X, u_i)` and `v` to `(v_j, Y)` (Koszul rotation signs), and carries
//! `(-1)^{n|ū_i|} ω(ū_i, v̄_j)`. The cobracket term contracting `u_i` with a
//! later `u_j` rotates `u_i` to the front, `u = (u_i, A, u_j, B)`, moves
//! `u_j` over `A` and emits `ω(ū_i, ū_j) [A] ⊗ [B]`.

use std::collections::{BTreeMap, BTreeSet};

use ainf_exactlin::{Exec, Field, Scalar};

use crate::ainfty::{AInftyData, Letter};
use crate::calabi_yau::SymplecticForm;
use crate::cyclic::{canonicalize, connes_b, rotate, ConnesComplex};
use crate::error::{CoreError, Result};
use crate::lincomb::LinComb;
use crate::report::{Check, VerificationReport};
use crate::word::{full_window, Word};

fn parity(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// A cyclic cochain: canonical representatives with coefficients. The
/// empty word appears only when [`CyclicLie::keep_empty`] is set.
pub type CyclicCochain = LinComb<Word>;
pub type CochainTensor = LinComb<(Word, Word)>;
pub type CochainTensor3 = LinComb<(Word, Word, Word)>;

/// The cyclic Lie bialgebra of a CY category.
#[derive(Clone, Debug)]
pub struct CyclicLie<'a> {
    pub data: &'a AInftyData,
    pub omega: &'a SymplecticForm,
    /// Keep the empty word as a class instead of sending it to zero.
    pub keep_empty: bool,
    /// For each letter, the input strings of operations whose output involves it.
    preimages: BTreeMap<Letter, Vec<Vec<Letter>>>,
}

impl<'a> CyclicLie<'a> {
    pub fn new(data: &'a AInftyData, omega: &'a SymplecticForm) -> Self {
        let mut preimages: BTreeMap<Letter, Vec<Vec<Letter>>> = BTreeMap::new();
        for (inputs, out) in data.ops() {
            for o in out.keys() {
                preimages.entry(*o).or_default().push(inputs.clone());
            }
        }
        CyclicLie { data, omega, keep_empty: false, preimages }
    }

    pub fn with_empty_word(mut self, keep: bool) -> Self {
        self.keep_empty = keep;
        self
    }

    pub fn n(&self) -> i64 {
        self.omega.n
    }

    fn sdeg(&self, letters: &[Letter]) -> i64 {
        self.data.word_sdeg(letters)
    }

    /// `D` of a word.
    pub fn degree(&self, w: &Word) -> i64 {
        -self.sdeg(w.letters())
    }

    /// The class of an arbitrary cyclic word in canonical representatives.
    pub fn class(&self, letters: Vec<Letter>) -> CyclicCochain {
        let f = self.field();
        if letters.is_empty() {
            return if self.keep_empty {
                LinComb::single(f, Word::new(Vec::new()), f.one())
            } else {
                LinComb::zero(f)
            };
        }
        let c = canonicalize(self.data, &Word::new(letters));
        if c.vanishes {
            LinComb::zero(f)
        } else {
            LinComb::single(f, c.rep, f.sign(c.negative))
        }
    }

    /// Re-expresses a combination of arbitrary cyclic words in canonical
    /// representatives.
    pub fn normalize(&self, x: &CyclicCochain) -> CyclicCochain {
        let mut out = LinComb::zero(self.field());
        for (w, c) in x.iter() {
            out.add_scaled(&self.class(w.letters().to_vec()), c);
        }
        out
    }

    /// Homogeneous degree of a cochain; zero cochains have none.
    pub fn homogeneous_degree(&self, x: &CyclicCochain) -> Result<Option<i64>> {
        let mut deg = None;
        for w in x.keys() {
            let d = self.degree(w);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(CoreError::MixedDegrees(e, d)),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Bracket of two representatives.
    pub fn bracket_words(&self, u: &Word, v: &Word) -> CyclicCochain {
        let f = self.field();
        let mut out = LinComb::zero(f);
        let (ul, vl) = (u.letters(), v.letters());
        for i in 0..ul.len() {
            let partners = self.omega.partners(ul[i]);
            if partners.is_empty() {
                continue;
            }
            // u ~ (X, u_i) with X = u_{i+1..} u_{..i-1}.
            let s1 = parity(self.sdeg(&ul[i + 1..]) * self.sdeg(&ul[..=i]))
                ^ parity(self.n() * self.data.sdeg(ul[i]));
            let mut x: Vec<Letter> = ul[i + 1..].to_vec();
            x.extend_from_slice(&ul[..i]);
            for j in 0..vl.len() {
                let Some(w) = partners.iter().find(|(b, _)| *b == vl[j]).map(|(_, w)| w) else { continue };
                // v ~ (v_j, Y) with Y = v_{j+1..} v_{..j-1}.
                let s2 = parity(self.sdeg(&vl[j..]) * self.sdeg(&vl[..j]));
                let mut word = x.clone();
                word.extend_from_slice(&vl[j + 1..]);
                word.extend_from_slice(&vl[..j]);
                out.add_scaled(&self.class(word), &w.clone().signed(s1 ^ s2));
            }
        }
        out
    }

    /// `[α, β]` for homogeneous cochains.
    pub fn bracket(&self, x: &CyclicCochain, y: &CyclicCochain) -> Result<CyclicCochain> {
        self.homogeneous_degree(x)?;
        self.homogeneous_degree(y)?;
        Ok(self.bracket_lin(x, y))
    }

    /// Cobracket of one representative.
    pub fn cobracket_word(&self, u: &Word) -> CochainTensor {
        let f = self.field();
        let mut out = LinComb::zero(f);
        let ul = u.letters();
        for i in 0..ul.len() {
            let partners = self.omega.partners(ul[i]);
            if partners.is_empty() {
                continue;
            }
            // u ~ (u_i, R), R = u_{i+1..} u_{..i-1}.
            let s1 = parity(self.sdeg(&ul[i..]) * self.sdeg(&ul[..i]));
            let mut r: Vec<Letter> = ul[i + 1..].to_vec();
            r.extend_from_slice(&ul[..i]);
            for p in 0..r.len() {
                let Some(w) = partners.iter().find(|(b, _)| *b == r[p]).map(|(_, w)| w) else { continue };
                let (inner, outer) = (&r[..p], &r[p + 1..]);
                let sign = s1 ^ parity(self.data.sdeg(r[p]) * self.sdeg(inner));
                let coeff = w.clone().signed(sign);
                let a = self.class(inner.to_vec());
                let b = self.class(outer.to_vec());
                for (wa, ca) in a.iter() {
                    for (wb, cb) in b.iter() {
                        out.add_term((wa.clone(), wb.clone()), &(ca * cb) * &coeff);
                    }
                }
            }
        }
        out
    }

    /// `δα` for a homogeneous cochain.
    pub fn cobracket(&self, x: &CyclicCochain) -> Result<CochainTensor> {
        self.homogeneous_degree(x)?;
        Ok(self.cobracket_lin(x))
    }

    /// Number of rotations fixing a representative.
    fn stabilizer(&self, w: &Word) -> i64 {
        (0..w.len()).filter(|k| rotate(self.data, w, *k).0 == *w).count() as i64
    }

    /// The cochain differential: the transpose of `b` on cyclic chains,
    /// written in the basis `N(u)`.
    pub fn differential_word(&self, u: &Word) -> Result<CyclicCochain> {
        let f = self.field();
        let ul = u.letters();
        let mut candidates = BTreeSet::new();
        for i in 0..ul.len() {
            for inputs in self.preimages.get(&ul[i]).map_or(&[][..], Vec::as_slice) {
                let mut w = ul[..i].to_vec();
                w.extend_from_slice(inputs);
                w.extend_from_slice(&ul[i + 1..]);
                let c = canonicalize(self.data, &Word::new(w));
                if !c.vanishes {
                    candidates.insert(c.rep);
                }
            }
        }
        let su = f.from_int(self.stabilizer(u));
        let mut out = LinComb::zero(f);
        for v in candidates {
            let c = connes_b(self.data, &v).coeff(u);
            if c.is_zero() {
                continue;
            }
            let sv = f.from_int(self.stabilizer(&v)).inv()?;
            out.add_term(v, &(&c * &su) * &sv);
        }
        Ok(out)
    }

    pub fn differential(&self, x: &CyclicCochain) -> Result<CyclicCochain> {
        let mut out = LinComb::zero(self.field());
        for (u, c) in x.iter() {
            out.add_scaled(&self.differential_word(u)?, c);
        }
        Ok(out)
    }

    /// `d[a,b] - [da,b] - (-1)^{e_a}[a,db]`.
    pub fn bracket_derivation(&self, a: &Word, b: &Word) -> Result<CyclicCochain> {
        let f = self.field();
        let mut r = self.differential(&self.bracket_words(a, b))?;
        r.sub(&self.bracket_lin(&self.differential_word(a)?, &self.single(b)));
        r.add_scaled(&self.bracket_lin(&self.single(a), &self.differential_word(b)?), &f.sign(!self.e_odd(a)));
        Ok(r)
    }

    /// `δ(da) - (d ⊗ 1 + 1 ⊗ d)δa`.
    pub fn cobracket_coderivation(&self, a: &Word) -> Result<CochainTensor> {
        let f = self.field();
        let mut r = self.cobracket_lin(&self.differential_word(a)?);
        for ((x, y), c) in self.cobracket_word(a).iter() {
            for (dx, cx) in self.differential_word(x)?.iter() {
                r.add_term((dx.clone(), y.clone()), -(c * cx));
            }
            let s = f.sign(!self.e_odd(x));
            for (dy, cy) in self.differential_word(y)?.iter() {
                r.add_term((x.clone(), dy.clone()), &(c * cy) * &s);
            }
        }
        Ok(r)
    }

    /// Whether every output term obeys `D(out) = D(a) + D(b) + n - 2`.
    pub fn degree_law(&self, a: &Word, b: &Word) -> bool {
        let want = self.degree(a) + self.degree(b) + self.n() - 2;
        let br = self.bracket_words(a, b).keys().all(|w| self.degree(w) == want);
        let want = self.degree(a) + self.n() - 2;
        let co = self.cobracket_word(a).keys().all(|(x, y)| self.degree(x) + self.degree(y) == want);
        br && co
    }

    pub fn fmt_cochain(&self, x: &CyclicCochain) -> String {
        fmt_terms(x.iter().map(|(w, c)| (c, self.data.fmt_word(w))))
    }

    pub fn fmt_tensor(&self, x: &CochainTensor) -> String {
        fmt_terms(x.iter().map(|((a, b), c)| (c, format!("{} ⊗ {}", self.data.fmt_word(a), self.data.fmt_word(b)))))
    }
}

/// The operations the axiom checks need: a bracket and cobracket on basis
/// words, and the parity used for Koszul signs.
pub trait BialgebraOps: Sync {
    fn field(&self) -> Field;
    /// Parity of the grading in which both operations are even.
    fn e_odd(&self, w: &Word) -> bool;
    fn bracket_words(&self, u: &Word, v: &Word) -> CyclicCochain;
    fn cobracket_word(&self, u: &Word) -> CochainTensor;
    fn fmt_word(&self, w: &Word) -> String;

    fn single(&self, w: &Word) -> CyclicCochain {
        LinComb::single(self.field(), w.clone(), self.field().one())
    }

    fn bracket_lin(&self, x: &CyclicCochain, y: &CyclicCochain) -> CyclicCochain {
        let mut out = LinComb::zero(self.field());
        for (u, a) in x.iter() {
            for (v, b) in y.iter() {
                out.add_scaled(&self.bracket_words(u, v), &(a * b));
            }
        }
        out
    }

    fn cobracket_lin(&self, x: &CyclicCochain) -> CochainTensor {
        let mut out = LinComb::zero(self.field());
        for (u, a) in x.iter() {
            out.add_scaled(&self.cobracket_word(u), a);
        }
        out
    }

    /// Koszul flip `x ⊗ y ↦ (-1)^{e_x e_y} y ⊗ x`.
    fn flip(&self, t: &CochainTensor) -> CochainTensor {
        t.map_keys(|(a, b)| Some(((b.clone(), a.clone()), self.e_odd(a) && self.e_odd(b))))
    }

    /// `[α, β] + (-1)^{e_α e_β}[β, α]`.
    fn antisymmetry(&self, a: &Word, b: &Word) -> CyclicCochain {
        let mut r = self.bracket_words(a, b);
        r.add_scaled(&self.bracket_words(b, a), &self.field().sign(self.e_odd(a) && self.e_odd(b)));
        r
    }

    /// `Σ_cyc (-1)^{e_x e_z} [x, [y, z]]`.
    fn jacobi(&self, a: &Word, b: &Word, c: &Word) -> CyclicCochain {
        let f = self.field();
        let mut r = LinComb::zero(f);
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            let outer = self.bracket_lin(&self.single(x), &self.bracket_words(y, z));
            r.add_scaled(&outer, &f.sign(self.e_odd(x) && self.e_odd(z)));
        }
        r
    }

    /// `δα + τδα`.
    fn co_antisymmetry(&self, a: &Word) -> CochainTensor {
        let d = self.cobracket_word(a);
        let mut r = d.clone();
        r.add(&self.flip(&d));
        r
    }

    /// `(1 + ξ + ξ²)(1 ⊗ δ)δα` with `ξ` the Koszul cyclic permutation.
    fn co_jacobi(&self, a: &Word) -> CochainTensor3 {
        let mut t: CochainTensor3 = LinComb::zero(self.field());
        for ((x, y), c) in self.cobracket_word(a).iter() {
            for ((y1, y2), c2) in self.cobracket_word(y).iter() {
                t.add_term((x.clone(), y1.clone(), y2.clone()), c * c2);
            }
        }
        let cyc = |t: &CochainTensor3| -> CochainTensor3 {
            t.map_keys(|(x, y, z)| {
                let s = self.e_odd(x) && (self.e_odd(y) ^ self.e_odd(z));
                Some(((y.clone(), z.clone(), x.clone()), s))
            })
        };
        let t1 = cyc(&t);
        let t2 = cyc(&t1);
        let mut r = t;
        r.add(&t1);
        r.add(&t2);
        r
    }

    /// `δ[a,b]` minus the right-hand side of the Drinfeld compatibility.
    fn drinfeld(&self, a: &Word, b: &Word) -> CochainTensor {
        let f = self.field();
        let mut r = self.cobracket_lin(&self.bracket_words(a, b));
        for ((a1, a2), c) in self.cobracket_word(a).iter() {
            let s = f.sign(self.e_odd(a2) && self.e_odd(b));
            for (w, cw) in self.bracket_words(a1, b).iter() {
                r.add_term((w.clone(), a2.clone()), -(&(c * cw) * &s));
            }
            for (w, cw) in self.bracket_words(a2, b).iter() {
                r.add_term((a1.clone(), w.clone()), -(c * cw));
            }
        }
        for ((b1, b2), c) in self.cobracket_word(b).iter() {
            for (w, cw) in self.bracket_words(a, b1).iter() {
                r.add_term((w.clone(), b2.clone()), -(c * cw));
            }
            let s = f.sign(self.e_odd(a) && self.e_odd(b1));
            for (w, cw) in self.bracket_words(a, b2).iter() {
                r.add_term((b1.clone(), w.clone()), -(&(c * cw) * &s));
            }
        }
        r
    }

    /// `[,] ∘ δ`.
    fn involutivity(&self, a: &Word) -> CyclicCochain {
        let mut out = LinComb::zero(self.field());
        for ((x, y), c) in self.cobracket_word(a).iter() {
            out.add_scaled(&self.bracket_words(x, y), c);
        }
        out
    }

}

impl BialgebraOps for CyclicLie<'_> {
    fn field(&self) -> Field {
        self.data.field()
    }

    fn e_odd(&self, w: &Word) -> bool {
        parity(self.degree(w) + self.n())
    }

    fn bracket_words(&self, u: &Word, v: &Word) -> CyclicCochain {
        CyclicLie::bracket_words(self, u, v)
    }

    fn cobracket_word(&self, u: &Word) -> CochainTensor {
        CyclicLie::cobracket_word(self, u)
    }

    fn fmt_word(&self, w: &Word) -> String {
        self.data.fmt_word(w)
    }
}

fn fmt_terms<'s>(terms: impl Iterator<Item = (&'s Scalar, String)>) -> String {
    let parts: Vec<String> = terms.map(|(c, t)| format!("{c}·{t}")).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Non-vanishing canonical classes of length `1..=max_length`, ordered by
/// degree, then length, then letters.
pub fn cochain_basis(data: &AInftyData, max_length: usize, exec: Exec) -> Result<Vec<Word>> {
    let cx = ConnesComplex::build(data, max_length, full_window(data, max_length), exec)?;
    Ok(cx.classes_by_degree.into_values().flatten().collect())
}

fn residual_check<T: Sync, R>(
    name: &str,
    tuples: &[T],
    exec: Exec,
    eval: impl Fn(&T) -> Result<(String, LinComb<R>)> + Sync + Send,
) -> Check
where
    R: Ord + Clone + Send,
{
    let results = exec.map(tuples, |t| match eval(t) {
        Ok((_, r)) if r.is_zero() => None,
        Ok((locus, r)) => Some((locus, r.max_magnitude())),
        Err(e) => Some((e.to_string(), ainf_exactlin::Rational::one())),
    });
    Check::from_results(name.to_string(), tuples.len(), results)
}

fn pairs_of(nb: usize) -> Vec<(usize, usize)> {
    (0..nb).flat_map(|i| (0..nb).map(move |j| (i, j))).collect()
}

/// Exhaustive checks of antisymmetry, Jacobi, co-antisymmetry, co-Jacobi,
/// Drinfeld compatibility and involutivity over a basis.
///
/// Antisymmetry and Drinfeld run over all ordered pairs; Jacobi over
/// unordered triples, which suffices once antisymmetry holds.
pub fn bialgebra_axioms<B: BialgebraOps>(ops: &B, basis: &[Word], exec: Exec) -> VerificationReport {
    let nb = basis.len();
    let pairs = pairs_of(nb);
    let triples: Vec<(usize, usize, usize)> =
        (0..nb).flat_map(|i| (i..nb).flat_map(move |j| (j..nb).map(move |k| (i, j, k)))).collect();
    let fw = |w: &Word| ops.fmt_word(w);
    let pair = |i: usize, j: usize| format!("{}, {}", fw(&basis[i]), fw(&basis[j]));
    let mut report = VerificationReport::default();
    report.push(residual_check("antisymmetry", &pairs, exec, |&(i, j)| {
        Ok((pair(i, j), ops.antisymmetry(&basis[i], &basis[j])))
    }));
    report.push(residual_check("jacobi", &triples, exec, |&(i, j, k)| {
        let r = ops.jacobi(&basis[i], &basis[j], &basis[k]);
        Ok((format!("{}, {}", pair(i, j), fw(&basis[k])), r))
    }));
    report.push(residual_check("co-antisymmetry", basis, exec, |a| Ok((fw(a), ops.co_antisymmetry(a)))));
    report.push(residual_check("co-jacobi", basis, exec, |a| Ok((fw(a), ops.co_jacobi(a)))));
    report.push(residual_check("drinfeld", &pairs, exec, |&(i, j)| {
        Ok((pair(i, j), ops.drinfeld(&basis[i], &basis[j])))
    }));
    report.push(residual_check("involutivity", basis, exec, |a| Ok((fw(a), ops.involutivity(a)))));
    report
}

/// [`bialgebra_axioms`] on all cyclic classes up to `max_length`, plus the
/// degree law and compatibility with the differential.
pub fn axiom_suite(lie: &CyclicLie, max_length: usize, exec: Exec) -> Result<VerificationReport> {
    let basis = cochain_basis(lie.data, max_length, exec)?;
    let pairs = pairs_of(basis.len());
    let fw = |w: &Word| lie.data.fmt_word(w);
    let pair = |i: usize, j: usize| format!("{}, {}", fw(&basis[i]), fw(&basis[j]));
    let mut report = VerificationReport::default();

    let degree = exec.map(&pairs, |&(i, j)| {
        (!lie.degree_law(&basis[i], &basis[j])).then(|| (pair(i, j), ainf_exactlin::Rational::one()))
    });
    report.push(Check::from_results("degree law".into(), pairs.len(), degree));
    report.extend(bialgebra_axioms(lie, &basis, exec));
    report.push(residual_check("bracket derivation", &pairs, exec, |&(i, j)| {
        Ok((pair(i, j), lie.bracket_derivation(&basis[i], &basis[j])?))
    }));
    report.push(residual_check("cobracket coderivation", &basis, exec, |a| {
        Ok((fw(a), lie.cobracket_coderivation(a)?))
    }));
    Ok(report)
}
