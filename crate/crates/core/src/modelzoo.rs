//! Fixture generators: the ground field, directed categories, strong
//! exceptional collections, Poincaré-duality algebras, and single
//! coefficient mutations.

use std::collections::BTreeMap;

use ainf_exactlin::{Exec, Field, Scalar};

use crate::ainfty::{verify_ainfty, AInftyBuilder, AInftyData, Letter, ObjectId};
use crate::calabi_yau::verify_cy;
use crate::error::{CoreError, Result};

/// One basis element of `Hom(L_from, L_to)` for `from < to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomEntry {
    pub from: usize,
    pub to: usize,
    pub name: String,
    pub degree: i64,
}

/// A letter reference `(from, to, name)` inside [`UpperHomData`].
pub type UpperRef = (usize, usize, String);

/// Structure constant of the unsuspended `m_i` among off-diagonal letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperOp {
    pub inputs: Vec<UpperRef>,
    pub output: UpperRef,
    pub coeff: Scalar,
}

/// Off-diagonal hom bases and operations of a directed category. Identities
/// and their unit products are added by the constructors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpperHomData {
    pub homs: Vec<HomEntry>,
    pub ops: Vec<UpperOp>,
    pub max_arity: usize,
}

impl UpperHomData {
    /// The path algebra of a quiver whose arrows `(from, to, degree)` all go
    /// up the object order: `Hom(L_i, L_j)` is spanned by paths and `m_2` is
    /// concatenation. Arrow `k` is named `a{k}`, paths join arrow names
    /// with dots.
    pub fn path_algebra(arrows: &[(usize, usize, i64)]) -> Self {
        // Paths as arrow-index sequences; every path is finite since arrows
        // go up.
        let mut paths: Vec<Vec<usize>> = (0..arrows.len()).map(|k| vec![k]).collect();
        let mut frontier = paths.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let end = arrows[*p.last().unwrap()].1;
                for (k, a) in arrows.iter().enumerate() {
                    if a.0 == end {
                        let mut q = p.clone();
                        q.push(k);
                        next.push(q);
                    }
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        let name = |p: &[usize]| p.iter().map(|k| format!("a{k}")).collect::<Vec<_>>().join(".");
        let ends = |p: &[usize]| (arrows[p[0]].0, arrows[*p.last().unwrap()].1);
        let homs = paths
            .iter()
            .map(|p| HomEntry {
                from: ends(p).0,
                to: ends(p).1,
                name: name(p),
                degree: p.iter().map(|k| arrows[*k].2).sum(),
            })
            .collect();
        let mut ops = Vec::new();
        for p in &paths {
            for q in &paths {
                if ends(p).1 == ends(q).0 {
                    let pq: Vec<usize> = p.iter().chain(q).copied().collect();
                    ops.push(UpperOp {
                        inputs: vec![(ends(p).0, ends(p).1, name(p)), (ends(q).0, ends(q).1, name(q))],
                        output: (ends(p).0, ends(q).1, name(&pq)),
                        coeff: Field::Rational.one(),
                    });
                }
            }
        }
        UpperHomData { homs, ops, max_arity: 2 }
    }

    /// Beilinson-type data: `Hom(E_i, E_j)` for `i < j` is spanned by the
    /// monomials of degree `j - i` in `vars` commuting variables, all in
    /// degree 0, with multiplication of monomials as composition.
    pub fn beilinson(vars: usize, size: usize) -> Self {
        let monomials = |deg: usize| -> Vec<Vec<usize>> {
            // Exponent vectors of total degree `deg`.
            let mut out = Vec::new();
            let mut cur = vec![0; vars];
            fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if i + 1 == cur.len() {
                    cur[i] = left;
                    out.push(cur.clone());
                    return;
                }
                for e in (0..=left).rev() {
                    cur[i] = e;
                    rec(i + 1, left - e, cur, out);
                }
            }
            if vars > 0 {
                rec(0, deg, &mut cur, &mut out);
            }
            out
        };
        let name = |e: &[usize]| {
            e.iter()
                .enumerate()
                .filter(|(_, p)| **p > 0)
                .map(|(i, p)| if *p == 1 { format!("x{i}") } else { format!("x{i}^{p}") })
                .collect::<Vec<_>>()
                .join("")
        };
        let mut homs = Vec::new();
        let mut ops = Vec::new();
        for i in 0..size {
            for j in i + 1..size {
                for e in monomials(j - i) {
                    homs.push(HomEntry { from: i, to: j, name: name(&e), degree: 0 });
                }
                for k in j + 1..size {
                    for e in monomials(j - i) {
                        for f in monomials(k - j) {
                            let ef: Vec<usize> = e.iter().zip(&f).map(|(a, b)| a + b).collect();
                            ops.push(UpperOp {
                                inputs: vec![(i, j, name(&e)), (j, k, name(&f))],
                                output: (i, k, name(&ef)),
                                coeff: Field::Rational.one(),
                            });
                        }
                    }
                }
            }
        }
        UpperHomData { homs, ops, max_arity: 2 }
    }
}

/// Arity bound for the self-check run by generators.
const SELF_CHECK_ARITY: usize = 4;

/// The unital algebra `k`: one object, one degree 0 letter `1`, `1·1 = 1`.
pub fn trivial_k(field: Field) -> AInftyData {
    let mut b = AInftyBuilder::new(field);
    let x = b.object("pt").expect("fresh builder");
    let one = b.letter("1", x, x, 0).expect("fresh builder");
    b.op(&[one, one], one, field.one());
    b.provenance("trivial-k");
    b.build().expect("valid fixture")
}

fn upper_triangular(
    field: Field,
    count: usize,
    prefix: &str,
    data: &UpperHomData,
    kind: &str,
    err: fn(String) -> CoreError,
) -> Result<AInftyData> {
    let mut b = AInftyBuilder::new(field);
    let objs: Vec<ObjectId> = (1..=count).map(|i| b.object(&format!("{prefix}{i}"))).collect::<Result<_>>()?;
    let ids: Vec<Letter> = (0..count)
        .map(|i| b.letter(&format!("id{}", i + 1), objs[i], objs[i], 0))
        .collect::<Result<_>>()?;
    let mut refs: BTreeMap<UpperRef, Letter> = BTreeMap::new();
    for h in &data.homs {
        if h.from >= count || h.to >= count {
            return Err(CoreError::Invalid(format!("hom {} refers to a missing object", h.name)));
        }
        if h.from >= h.to {
            return Err(err(format!(
                "{} in Hom({prefix}{}, {prefix}{})",
                h.name,
                h.from + 1,
                h.to + 1
            )));
        }
        let l = b.letter(&h.name, objs[h.from], objs[h.to], h.degree)?;
        refs.insert((h.from, h.to, h.name.clone()), l);
    }
    let one = field.one();
    for &id in &ids {
        b.op(&[id, id], id, one.clone());
    }
    for (r, &l) in &refs {
        b.op(&[ids[r.0], l], l, one.clone());
        b.op(&[l, ids[r.1]], l, one.clone());
    }
    let lookup = |r: &UpperRef| {
        refs.get(r).copied().ok_or_else(|| CoreError::Invalid(format!("unknown letter {} in Hom({}, {})", r.2, r.0 + 1, r.1 + 1)))
    };
    for op in &data.ops {
        let inputs: Vec<Letter> = op.inputs.iter().map(lookup).collect::<Result<_>>()?;
        let coeff = match op.coeff.as_rational() {
            Some(q) => field.from_rational(q)?,
            None => op.coeff.clone(),
        };
        b.op(&inputs, lookup(&op.output)?, coeff);
    }
    b.max_arity(data.max_arity.max(2));
    b.provenance(kind);
    let built = b.build()?;
    let arity = (2 * built.max_arity() - 1).min(SELF_CHECK_ARITY);
    if !verify_ainfty(&built, arity, Exec::Serial).passed() {
        return Err(CoreError::Invalid("operations violate the A∞ relations".into()));
    }
    Ok(built)
}

/// Directed category on `L1 < ... < Lr`: `k·id` on the diagonal, the given
/// spaces above it, nothing below.
pub fn directed_category(field: Field, r: usize, data: &UpperHomData) -> Result<AInftyData> {
    upper_triangular(field, r, "L", data, &format!("directed {r}"), CoreError::NotUpperTriangular)
}

/// Endomorphism algebra of a strong exceptional collection `E1, ..., E_size`.
pub fn exceptional_endomorphism(field: Field, size: usize, data: &UpperHomData) -> Result<AInftyData> {
    if let Some(h) = data.homs.iter().find(|h| h.degree != 0) {
        return Err(CoreError::ViolatesExceptionality(format!("{} has degree {}", h.name, h.degree)));
    }
    if let Some(h) = data.homs.iter().find(|h| h.from == h.to) {
        return Err(CoreError::ViolatesExceptionality(format!(
            "Hom(E{0}, E{0}) has dimension greater than 1 ({1})",
            h.from + 1,
            h.name
        )));
    }
    upper_triangular(field, size, "E", data, &format!("exceptional {size}"), CoreError::ViolatesExceptionality)
}

/// Poincaré-duality algebras with their CY pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobeniusModel {
    /// `H*(S^d)`.
    Sphere(i64),
    /// `H*(CP^d)`, CY degree `2d`.
    ComplexProjective(i64),
    /// `Λ(x_1, ..., x_g)` with `|x_i| = 1`, CY degree `g`.
    Exterior(usize),
}

pub fn frobenius_cohomology(field: Field, model: FrobeniusModel) -> Result<AInftyData> {
    // Basis as (name, degree), structure constants of the product and the
    // top class.
    let (basis, products, n, label): (Vec<(String, i64)>, Vec<(usize, usize, usize, i64)>, i64, String) = match model {
        FrobeniusModel::Sphere(d) => {
            if d < 1 {
                return Err(CoreError::Invalid("sphere dimension must be at least 1".into()));
            }
            let basis = vec![("1".to_string(), 0), ("v".to_string(), d)];
            (basis, vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], d, format!("sphere {d}"))
        }
        FrobeniusModel::ComplexProjective(d) => {
            if d < 1 {
                return Err(CoreError::Invalid("complex dimension must be at least 1".into()));
            }
            let name = |k: i64| match k {
                0 => "1".to_string(),
                1 => "h".to_string(),
                k => format!("h{k}"),
            };
            let basis = (0..=d).map(|k| (name(k), 2 * k)).collect();
            let mut prods = Vec::new();
            for a in 0..=d {
                for c in 0..=d - a {
                    prods.push((a as usize, c as usize, (a + c) as usize, 1));
                }
            }
            (basis, prods, 2 * d, format!("complex-projective {d}"))
        }
        FrobeniusModel::Exterior(g) => {
            if g < 1 {
                return Err(CoreError::Invalid("exterior algebra needs at least one generator".into()));
            }
            let subsets: Vec<u32> = {
                let mut s: Vec<u32> = (0..1u32 << g).collect();
                s.sort_by_key(|m| (m.count_ones(), *m));
                s
            };
            let name = |m: u32| {
                if m == 0 {
                    "1".to_string()
                } else if g == 1 {
                    "x".to_string()
                } else {
                    (0..g).filter(|i| m >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect()
                }
            };
            let basis = subsets.iter().map(|m| (name(*m), m.count_ones() as i64)).collect();
            let pos: BTreeMap<u32, usize> = subsets.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let mut prods = Vec::new();
            for &s in &subsets {
                for &t in &subsets {
                    if s & t != 0 {
                        continue;
                    }
                    // Sign of sorting the concatenation: pairs (i in s, j in t) with i > j.
                    let inversions: u32 = (0..g).filter(|i| s >> i & 1 == 1).map(|i| (t & ((1u32 << i) - 1)).count_ones()).sum();
                    prods.push((pos[&s], pos[&t], pos[&(s | t)], if inversions % 2 == 1 { -1 } else { 1 }));
                }
            }
            (basis, prods, g as i64, format!("exterior {g}"))
        }
    };
    let top = basis.len() - 1;
    let mut b = AInftyBuilder::new(field);
    let x = b.object("X")?;
    let letters: Vec<Letter> = basis.iter().map(|(nm, d)| b.letter(nm, x, x, *d)).collect::<Result<_>>()?;
    let mut table: BTreeMap<(usize, usize), (usize, i64)> = BTreeMap::new();
    for &(i, j, k, c) in &products {
        b.op(&[letters[i], letters[j]], letters[k], field.from_int(c));
        table.insert((i, j), (k, c));
    }
    b.pairing_degree(n);
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if let Some(&(k, c)) = table.get(&(i, j)) {
                if k == top {
                    b.pair(letters[i], letters[j], field.from_int(c));
                }
            }
        }
    }
    b.provenance(&label);
    let data = b.build()?;
    if !verify_ainfty(&data, 3, Exec::Serial).passed() {
        return Err(CoreError::Invalid(format!("{label} fails the A∞ relations")));
    }
    if !verify_cy(&data, data.pairing().expect("pairing set"), 2, Exec::Serial).passed() {
        return Err(CoreError::Invalid(format!("{label} fails the Calabi-Yau axioms")));
    }
    Ok(data)
}

/// Location of one stored coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientAddress {
    /// Suspended `m̄` coefficient of `output` in `m̄(inputs)`.
    Op { inputs: Vec<Letter>, output: Letter },
    /// Pairing entry `⟨a, b⟩`.
    Pairing(Letter, Letter),
}

/// Multiplies exactly one coefficient by `factor`.
pub fn perturb(data: &AInftyData, target: &CoefficientAddress, factor: &Scalar) -> Result<AInftyData> {
    match target {
        CoefficientAddress::Op { inputs, output } => {
            let c = data
                .apply_op(inputs)
                .map(|m| m.coeff(output))
                .filter(|c| !c.is_zero())
                .ok_or_else(|| CoreError::NoSuchCoefficient(format!("m̄{}", crate::ainfty::fmt_chain(data, inputs))))?;
            Ok(data.with_op_coeff(inputs, *output, &c * factor))
        }
        CoefficientAddress::Pairing(a, b) => {
            let mut p = data.pairing().cloned().ok_or(CoreError::NoPairing)?;
            let c = p.get(*a, *b).cloned().ok_or_else(|| {
                CoreError::NoSuchCoefficient(format!("<{}, {}>", data.letter_label(*a), data.letter_label(*b)))
            })?;
            let v = &c * factor;
            if v.is_zero() {
                p.entries_mut().remove(&(*a, *b));
            } else {
                p.entries_mut().insert((*a, *b), v);
            }
            Ok(data.with_pairing(Some(p)))
        }
    }
}

/// Every stored coefficient address, in canonical order.
pub fn coefficient_addresses(data: &AInftyData) -> Vec<CoefficientAddress> {
    let mut out: Vec<CoefficientAddress> = data
        .suspended_ops()
        .into_iter()
        .map(|op| CoefficientAddress::Op { inputs: op.inputs, output: op.output })
        .collect();
    if let Some(p) = data.pairing() {
        out.extend(p.entries().keys().map(|(a, b)| CoefficientAddress::Pairing(*a, *b)));
    }
    out
}

/// Named fixtures, as accepted on the command line.
pub fn named_fixture(name: &str, field: Field) -> Result<AInftyData> {
    // A_r quiver: consecutive arrows, so every Hom(L_i, L_j), i < j, is one-dimensional.
    let upper = |r: usize| UpperHomData::path_algebra(&(0..r - 1).map(|i| (i, i + 1, 0)).collect::<Vec<_>>());
    let fixture = match name {
        "k" => trivial_k(field),
        "s2" => frobenius_cohomology(field, FrobeniusModel::Sphere(2))?,
        "s3" => frobenius_cohomology(field, FrobeniusModel::Sphere(3))?,
        "cp2" => frobenius_cohomology(field, FrobeniusModel::ComplexProjective(2))?,
        "lambda1" => frobenius_cohomology(field, FrobeniusModel::Exterior(1))?,
        "lambda2" => frobenius_cohomology(field, FrobeniusModel::Exterior(2))?,
        "s2-perturbed" => {
            let s2 = frobenius_cohomology(field, FrobeniusModel::Sphere(2))?;
            let (one, v) = (s2.letter_named("1").expect("unit"), s2.letter_named("v").expect("v"));
            perturb(&s2, &CoefficientAddress::Op { inputs: vec![one, v], output: v }, &field.from_int(2))?
                .with_provenance(Some("perturbed sphere 2".into()))
        }
        "directed2" => directed_category(field, 2, &upper(2))?,
        "directed3" => directed_category(field, 3, &upper(3))?,
        "directed4" => directed_category(field, 4, &upper(4))?,
        "beilinson3" => exceptional_endomorphism(field, 3, &UpperHomData::beilinson(3, 3))?,
        _ => return Err(CoreError::Invalid(format!("unknown fixture {name}"))),
    };
    Ok(fixture)
}

pub const FIXTURE_NAMES: &[&str] =
    &["k", "s2", "s3", "cp2", "lambda1", "lambda2", "s2-perturbed", "directed2", "directed3", "directed4", "beilinson3"];
