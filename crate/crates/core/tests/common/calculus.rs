//! Identities of the noncommutative calculus, checked exhaustively on short
//! words over one even and one odd generator.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ainf_core::lincomb::LinComb;
use ainf_core::ncsymp::{FormLetter, FormWord, NcForm, NcSpace, VectorField};
use ainf_core::Field;

pub fn space() -> NcSpace {
    NcSpace::new(Field::Rational, &[("x", 0), ("y", 1)])
}

pub fn words(max_len: usize) -> Vec<FormWord> {
    let letters: Vec<FormLetter> =
        (0..2).flat_map(|g| [false, true].map(|d| FormLetter { generator: g, d })).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &FormWord| letters.iter().map(move |l| [w.as_slice(), &[*l]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn form(sp: &NcSpace, w: &FormWord) -> NcForm {
    LinComb::single(sp.field(), w.clone(), sp.field().one())
}

pub fn fields(sp: &NcSpace) -> Vec<VectorField> {
    let xy = sp.mul(&sp.x(0), &sp.x(1));
    vec![
        VectorField { degree: 0, values: BTreeMap::from([(0, sp.x(0))]) },
        VectorField { degree: -1, values: BTreeMap::from([(1, sp.x(0))]) },
        VectorField { degree: 1, values: BTreeMap::from([(0, sp.x(1)), (1, sp.mul(&sp.x(1), &sp.x(1)))]) },
        VectorField { degree: 1, values: BTreeMap::from([(0, xy.clone()), (1, sp.mul(&xy, &sp.x(1)))]) },
    ]
}

pub fn graded_sign(sp: &NcSpace, odd: bool) -> ainf_core::Scalar {
    sp.field().sign(odd)
}

pub fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// `d² = 0` on every word of length at most `max_len`.
pub fn check_d_squared(max_len: usize) -> Result<usize, String> {
    let sp = space();
    let ws = words(max_len);
    for w in &ws {
        if !sp.d_apply(&sp.d_apply(&form(&sp, w))).is_zero() {
            return Err(format!("d² {}", sp.fmt_word(w)));
        }
    }
    Ok(ws.len())
}

/// `L = [ι, d]`, `[L, d] = 0` and `[ι_ξ, ι_η] = 0` on every word of length
/// at most `max_len`, for a few fields of mixed degrees.
pub fn check_cartan(max_len: usize) -> Result<usize, String> {
    let sp = space();
    let fs = fields(&sp);
    let mut checked = 0;
    for w in words(max_len) {
        let f = form(&sp, &w);
        for xi in &fs {
            // L_ξ = ι_ξ d - (-1)^{|ξ| - 1} d ι_ξ
            let mut cartan = sp.contraction(xi, &sp.d_apply(&f));
            cartan.add_scaled(&sp.d_apply(&sp.contraction(xi, &f)), &-graded_sign(&sp, odd(xi.degree - 1)));
            if sp.lie_derivative(xi, &f) != cartan {
                return Err(format!("Cartan on {}", sp.fmt_word(&w)));
            }
            // L_ξ d - (-1)^{|ξ|} d L_ξ = 0
            let mut comm = sp.lie_derivative(xi, &sp.d_apply(&f));
            comm.add_scaled(&sp.d_apply(&sp.lie_derivative(xi, &f)), &-graded_sign(&sp, odd(xi.degree)));
            if !comm.is_zero() {
                return Err(format!("[L, d] on {}", sp.fmt_word(&w)));
            }
            for eta in &fs {
                // ι_ξ ι_η - (-1)^{(|ξ|-1)(|η|-1)} ι_η ι_ξ = 0
                let mut ii = sp.contraction(xi, &sp.contraction(eta, &f));
                let s = graded_sign(&sp, odd((xi.degree - 1) * (eta.degree - 1)));
                ii.add_scaled(&sp.contraction(eta, &sp.contraction(xi, &f)), &-s);
                if !ii.is_zero() {
                    return Err(format!("[ι, ι] on {}", sp.fmt_word(&w)));
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Random constant forms, checked against a dense rank computation.
pub fn symplectic_cases(seed: u64, cases: usize) -> Vec<(bool, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["a", "b", "c", "d"];
    (0..cases)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            let degrees: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=2)).collect();
            let gens: Vec<(&str, i64)> = names.iter().copied().zip(degrees.iter().copied()).take(n).collect();
            let sp = NcSpace::new(Field::Rational, &gens);
            let c: Vec<Vec<i64>> =
                (0..n).map(|_| (0..n).map(|_| if rng.gen_bool(0.4) { rng.gen_range(-3..=3) } else { 0 }).collect()).collect();
            let mut omega = LinComb::zero(sp.field());
            for p in 0..n {
                for q in 0..n {
                    omega.add_scaled(&sp.mul(&sp.dx(p as u32), &sp.dx(q as u32)), &sp.field().from_int(c[p][q]));
                }
            }
            let lib = sp.is_symplectic(&omega).unwrap().symplectic;
            (lib, super::constant_form_rank(&degrees, &c) == n)
        })
        .collect()
}
