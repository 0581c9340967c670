//! Brute-force oracles: dense exact elimination over `BigRational`, words by
//! exhaustive tuple enumeration, Hochschild and cyclic homology of the
//! truncated complexes. Shares nothing with the library beyond reading the
//! structure constants.
#![allow(dead_code)]

use std::collections::BTreeMap;

pub mod calculus;

use num_rational::BigRational;
use num_traits::{One, Zero};

use ainf_core::ainfty::{AInftyData, Letter};

pub type Q = BigRational;
pub type Vector = BTreeMap<Vec<Letter>, Q>;

pub fn to_q(s: &ainf_core::Scalar) -> Q {
    s.to_string().parse().expect("rational coefficient")
}

/// Rank by Gaussian elimination on a dense copy.
pub fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|r| !m[*r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for k in c..cols {
                    let v = &m[rank][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn sdeg(data: &AInftyData, w: &[Letter]) -> i64 {
    w.iter().map(|a| data.info(*a).degree - 1).sum()
}

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// All cyclically composable words of the given length.
pub fn cyclic_words(data: &AInftyData, len: usize) -> Vec<Vec<Letter>> {
    let n = data.num_letters() as u32;
    let mut out = Vec::new();
    let total = (n as u64).pow(len as u32);
    for mut code in 0..total {
        let mut w = Vec::with_capacity(len);
        for _ in 0..len {
            w.push(Letter((code % n as u64) as u32));
            code /= n as u64;
        }
        let ok = (0..len).all(|i| data.info(w[i]).target == data.info(w[(i + 1) % len]).source);
        if ok {
            out.push(w);
        }
    }
    out.sort();
    out
}

/// Hochschild differential by direct enumeration of cyclic intervals: an
/// interval not containing position 0 keeps its place, one containing it is
/// rotated to the front first.
pub fn b_oracle(data: &AInftyData, w: &[Letter]) -> Vector {
    let n = w.len();
    let mut out = Vector::new();
    for s in 0..n {
        for k in 1..=n {
            let wraps = s + k > n;
            let Some(m) = data.apply_op(&(0..k).map(|i| w[(s + i) % n]).collect::<Vec<_>>()) else { continue };
            for (o, c) in m.iter() {
                let (word, neg) = if s == 0 || wraps {
                    let mut r: Vec<Letter> = w[s..].iter().chain(&w[..s]).copied().collect();
                    let neg = odd(sdeg(data, &w[s..]) * sdeg(data, &w[..s]));
                    r.splice(0..k, [*o]);
                    (r, neg)
                } else {
                    let mut r = w.to_vec();
                    r.splice(s..s + k, [*o]);
                    (r, odd(sdeg(data, &w[..s])))
                };
                let c = to_q(c);
                *out.entry(word).or_insert_with(Q::zero) += if neg { -c } else { c };
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `(1 - t̄) w` with `t̄` moving the last letter to the front.
pub fn one_minus_t(data: &AInftyData, w: &[Letter]) -> Vector {
    let n = w.len();
    let mut out = Vector::new();
    *out.entry(w.to_vec()).or_insert_with(Q::zero) += Q::one();
    let mut r = vec![w[n - 1]];
    r.extend_from_slice(&w[..n - 1]);
    let neg = odd(sdeg(data, &w[n - 1..]) * sdeg(data, &w[..n - 1]));
    *out.entry(r).or_insert_with(Q::zero) -= if neg { -Q::one() } else { Q::one() };
    out.retain(|_, c| !c.is_zero());
    out
}

struct Graded {
    by_degree: BTreeMap<i64, Vec<Vec<Letter>>>,
}

impl Graded {
    fn new(data: &AInftyData, max_len: usize) -> Self {
        let mut by_degree: BTreeMap<i64, Vec<Vec<Letter>>> = BTreeMap::new();
        for len in 1..=max_len {
            for w in cyclic_words(data, len) {
                by_degree.entry(sdeg(data, &w)).or_default().push(w);
            }
        }
        Graded { by_degree }
    }

    fn words(&self, d: i64) -> &[Vec<Letter>] {
        self.by_degree.get(&d).map_or(&[], Vec::as_slice)
    }

    /// Dense matrix whose columns are the images of `src` in the basis `tgt`.
    fn matrix(tgt: &[Vec<Letter>], cols: Vec<Vector>) -> Vec<Vec<Q>> {
        let index: BTreeMap<&Vec<Letter>, usize> = tgt.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = vec![vec![Q::zero(); cols.len()]; tgt.len()];
        for (j, v) in cols.into_iter().enumerate() {
            for (w, c) in v {
                m[index[&w]][j] = c;
            }
        }
        m
    }
}

/// Truncated Hochschild homology, keyed by suspended degree (the
/// differential raises it by one).
pub fn hh_oracle(data: &AInftyData, max_len: usize) -> BTreeMap<i64, usize> {
    let g = Graded::new(data, max_len);
    let rank_b = |d: i64| {
        let src = g.words(d);
        let cols = src.iter().map(|w| b_oracle(data, w)).collect();
        dense_rank(Graded::matrix(g.words(d + 1), cols))
    };
    g.by_degree.iter().map(|(d, ws)| (*d, ws.len() - rank_b(*d) - rank_b(d - 1))).collect()
}

/// Truncated cyclic homology: homology of `C / (1 - t̄)C`. The rank of the
/// induced `C_d → C_{d+1}/im(1 - t̄)` is `rank[b | 1 - t̄] - rank(1 - t̄)`.
pub fn ch_oracle(data: &AInftyData, max_len: usize) -> BTreeMap<i64, usize> {
    let g = Graded::new(data, max_len);
    let rank_r = |d: i64| {
        let src = g.words(d);
        dense_rank(Graded::matrix(src, src.iter().map(|w| one_minus_t(data, w)).collect()))
    };
    let rank_bbar = |d: i64| {
        let tgt = g.words(d + 1);
        let mut cols: Vec<Vector> = g.words(d).iter().map(|w| b_oracle(data, w)).collect();
        cols.extend(tgt.iter().map(|w| one_minus_t(data, w)));
        dense_rank(Graded::matrix(tgt, cols)) - rank_r(d + 1)
    };
    g.by_degree
        .iter()
        .map(|(d, ws)| (*d, ws.len() - rank_r(*d) - rank_bbar(*d) - rank_bbar(d - 1)))
        .collect()
}

/// Random upward quiver on `r` vertices with arrow degrees in `degrees`,
/// realised as its path algebra with every basis path rescaled by a random
/// nonzero rational. The rescaling is an isomorphism, so the result is an
/// honest algebra with nontrivial structure constants.
pub fn random_upper(
    rng: &mut impl rand::Rng,
    r: usize,
    degrees: &[i64],
) -> ainf_core::modelzoo::UpperHomData {
    use ainf_core::Field;
    let mut arrows = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for _ in 0..rng.gen_range(0..=2) {
                arrows.push((i, j, degrees[rng.gen_range(0..degrees.len())]));
            }
        }
    }
    let mut data = ainf_core::modelzoo::UpperHomData::path_algebra(&arrows);
    let f = Field::Rational;
    let scale: BTreeMap<String, ainf_core::Scalar> = data
        .homs
        .iter()
        .map(|h| {
            let s = f.from_int(rng.gen_range(1..=5)).div(&f.from_int(rng.gen_range(1..=4))).unwrap();
            (h.name.clone(), if rng.gen_bool(0.5) { s } else { s.signed(true) })
        })
        .collect();
    // In the rescaled basis p' = s_p p, m(p', q') = s_p s_q / s_pq (pq)'.
    for op in &mut data.ops {
        let c = &(&scale[&op.inputs[0].2] * &scale[&op.inputs[1].2]) * &op.coeff;
        op.coeff = c.div(&scale[&op.output.2]).unwrap();
    }
    data
}

/// `b(b(w))` over the library differential.
pub fn b_squared(data: &AInftyData, w: &ainf_core::word::Word) -> ainf_core::lincomb::LinComb<ainf_core::word::Word> {
    use ainf_core::hochschild::b_apply;
    let mut out = ainf_core::lincomb::LinComb::zero(data.field());
    for (u, c) in b_apply(data, w).iter() {
        out.add_scaled(&b_apply(data, u), c);
    }
    out
}

/// How a mutated category was caught, if at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Detection {
    BSquared(String),
    Ainfty,
    CalabiYau,
    Undetected,
}

/// Runs the detectors on a mutated category: b² on cyclic words up to
/// `max_len`, the A∞ relations up to `2·max_arity + 1`, and the Calabi-Yau
/// conditions when a pairing is present.
pub fn detect(data: &AInftyData, max_len: usize) -> Detection {
    use ainf_core::ainfty::verify_ainfty;
    use ainf_core::calabi_yau::verify_cy;
    use ainf_core::word::enumerate_words;
    use ainf_core::Exec;
    if !verify_ainfty(data, 2 * data.max_arity() + 1, Exec::Serial).passed() {
        return Detection::Ainfty;
    }
    if let Some(p) = data.pairing() {
        if !verify_cy(data, p, data.max_arity(), Exec::Serial).passed() {
            return Detection::CalabiYau;
        }
    }
    let space = enumerate_words(data, max_len, None, usize::MAX).expect("small fixture");
    for w in space.words() {
        if !b_squared(data, w).is_zero() {
            return Detection::BSquared(data.fmt_word(w));
        }
    }
    Detection::Undetected
}

/// Nondegeneracy of the constant form `Σ c[p][q] dx_p dx_q` decided from
/// scratch: modulo graded commutators `dx_p dx_q = ±dx_q dx_p`, so the
/// pairing matrix is `c + ε ∘ cᵀ` with `ε[p][q]` the Koszul sign of `dx_p`
/// past `dx_q`.
pub fn constant_form_rank(degrees: &[i64], c: &[Vec<i64>]) -> usize {
    let n = degrees.len();
    let m = (0..n)
        .map(|p| {
            (0..n)
                .map(|q| {
                    let s = if odd((degrees[p] + 1) * (degrees[q] + 1)) { -1 } else { 1 };
                    Q::from_integer((c[p][q] + s * c[q][p]).into())
                })
                .collect()
        })
        .collect();
    dense_rank(m)
}
