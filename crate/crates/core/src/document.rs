//! Line-oriented text format for finite A∞ categories. The grammar is in
//! `docs/category-format.md`.

use std::collections::BTreeMap;

use ainf_exactlin::{Field, Scalar};

use crate::ainfty::{AInftyBuilder, AInftyData, Letter, ObjectId};
use crate::error::{CoreError, Result};
use crate::word::Word;

pub const HEADER: &str = "ainf-category 1";

fn parse_err(line: usize, field: &str, msg: impl Into<String>) -> CoreError {
    CoreError::Parse { line, field: field.to_string(), msg: msg.into() }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_alphanumeric() || "_'.+-^*".contains(c))
        && s != "->"
}

struct Reader {
    builder: AInftyBuilder,
    field: Field,
    objects: BTreeMap<String, ObjectId>,
    letters: Vec<(String, ObjectId, ObjectId, Letter)>,
}

impl Reader {
    fn object(&self, line: usize, name: &str) -> Result<ObjectId> {
        self.objects.get(name).copied().ok_or_else(|| parse_err(line, "object", format!("unknown object {name}")))
    }

    // `name` or `name[S,T]`.
    fn letter(&self, line: usize, r: &str) -> Result<Letter> {
        if let Some((name, rest)) = r.split_once('[') {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| parse_err(line, "letter", format!("unterminated reference {r}")))?;
            let (s, t) = inner
                .split_once(',')
                .ok_or_else(|| parse_err(line, "letter", format!("expected name[source,target], got {r}")))?;
            let (s, t) = (self.object(line, s.trim())?, self.object(line, t.trim())?);
            return self
                .letters
                .iter()
                .find(|(n, ls, lt, _)| n == name && *ls == s && *lt == t)
                .map(|l| l.3)
                .ok_or_else(|| parse_err(line, "letter", format!("unknown basis element {r}")));
        }
        let mut hits = self.letters.iter().filter(|(n, ..)| n == r);
        match (hits.next(), hits.next()) {
            (Some(l), None) => Ok(l.3),
            (None, _) => Err(parse_err(line, "letter", format!("unknown basis element {r}"))),
            (Some(_), Some(_)) => Err(parse_err(line, "letter", format!("ambiguous name {r}; write {r}[source,target]"))),
        }
    }

    fn scalar(&self, line: usize, s: &str) -> Result<Scalar> {
        self.field.parse_scalar(s).map_err(|e| parse_err(line, "coefficient", e.to_string()))
    }
}

/// Parses a document. `field` overrides the document's own field line.
pub fn load(text: &str, field: Option<Field>) -> Result<AInftyData> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_once('#').map_or(l, |(a, _)| a).trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((n, l)) => return Err(parse_err(n, "header", format!("expected `{HEADER}`, got `{l}`"))),
        None => return Err(parse_err(1, "header", "empty document")),
    }
    let (n, l) = lines.next().ok_or_else(|| parse_err(1, "field", "missing field line"))?;
    let declared = match l.split_whitespace().collect::<Vec<_>>()[..] {
        ["field", f] => f.parse::<Field>().map_err(|e| parse_err(n, "field", e.to_string()))?,
        _ => return Err(parse_err(n, "field", format!("expected `field q` or `field fp:P`, got `{l}`"))),
    };
    let field = field.unwrap_or(declared);
    let mut rd = Reader { builder: AInftyBuilder::new(field), field, objects: BTreeMap::new(), letters: Vec::new() };
    let mut last = n;
    let mut ended = false;
    for (n, l) in lines {
        last = n;
        if ended {
            return Err(parse_err(n, "end", "content after `end`"));
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "max-arity" => {
                let [_, k] = toks[..] else { return Err(parse_err(n, "max-arity", "expected one integer")) };
                let k: usize = k.parse().map_err(|_| parse_err(n, "max-arity", format!("bad integer {k}")))?;
                rd.builder.max_arity(k);
            }
            "provenance" => {
                let p = l["provenance".len()..].trim();
                rd.builder.provenance(p);
            }
            "object" => {
                let [_, name] = toks[..] else { return Err(parse_err(n, "object", "expected one name")) };
                if !valid_name(name) {
                    return Err(parse_err(n, "object", format!("invalid name {name}")));
                }
                let id = rd.builder.object(name).map_err(|e| parse_err(n, "object", e.to_string()))?;
                rd.objects.insert(name.to_string(), id);
            }
            "hom" => {
                let [_, s, t, name, deg] = toks[..] else {
                    return Err(parse_err(n, "hom", "expected `hom SOURCE TARGET NAME DEGREE`"));
                };
                if !valid_name(name) {
                    return Err(parse_err(n, "hom", format!("invalid name {name}")));
                }
                let (s, t) = (rd.object(n, s)?, rd.object(n, t)?);
                let deg: i64 = deg.parse().map_err(|_| parse_err(n, "degree", format!("bad integer {deg}")))?;
                let a = rd.builder.letter(name, s, t, deg).map_err(|e| parse_err(n, "hom", e.to_string()))?;
                rd.letters.push((name.to_string(), s, t, a));
            }
            "op" => {
                let arrow = toks.iter().position(|t| *t == "->");
                let (Some(k), true) = (arrow, toks.len() >= 3) else {
                    return Err(parse_err(n, "op", "expected `op m|mbar INPUTS -> OUTPUT COEFF`"));
                };
                if toks.len() != k + 3 || k < 3 {
                    return Err(parse_err(n, "op", "expected `op m|mbar INPUTS -> OUTPUT COEFF`"));
                }
                let suspended = match toks[1] {
                    "m" => false,
                    "mbar" => true,
                    o => return Err(parse_err(n, "op", format!("unknown operation kind {o}"))),
                };
                let inputs = toks[2..k].iter().map(|r| rd.letter(n, r)).collect::<Result<Vec<_>>>()?;
                let output = rd.letter(n, toks[k + 1])?;
                let c = rd.scalar(n, toks[k + 2])?;
                if suspended {
                    rd.builder.op_suspended(&inputs, output, c);
                } else {
                    rd.builder.op(&inputs, output, c);
                }
            }
            "pairing" => {
                let [_, d] = toks[..] else { return Err(parse_err(n, "pairing", "expected one integer")) };
                let d: i64 = d.parse().map_err(|_| parse_err(n, "pairing", format!("bad integer {d}")))?;
                rd.builder.pairing_degree(d);
            }
            "pair" => {
                let [_, a, b, c] = toks[..] else { return Err(parse_err(n, "pair", "expected `pair A B COEFF`")) };
                let (a, b, c) = (rd.letter(n, a)?, rd.letter(n, b)?, rd.scalar(n, c)?);
                rd.builder.pair(a, b, c);
            }
            "end" => {
                if toks.len() != 1 {
                    return Err(parse_err(n, "end", "unexpected tokens after `end`"));
                }
                ended = true;
            }
            k => return Err(parse_err(n, "keyword", format!("unknown keyword {k}"))),
        }
    }
    if !ended {
        return Err(parse_err(last, "end", "missing `end` (truncated document?)"));
    }
    rd.builder.build()
}

/// Parses `[a|b|...]` with letters written as in [`AInftyData::letter_label`].
pub fn parse_word(data: &AInftyData, s: &str) -> Result<Word> {
    let bad = |msg: String| parse_err(1, "word", msg);
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| bad(format!("expected [a|b|...], got {s}")))?;
    if inner.trim().is_empty() {
        return Ok(Word::new(vec![]));
    }
    let labels: BTreeMap<String, Letter> = data.all_letters().map(|a| (data.letter_label(a), a)).collect();
    let letters = inner
        .split('|')
        .map(|t| labels.get(t.trim()).copied().ok_or_else(|| bad(format!("unknown letter {}", t.trim()))))
        .collect::<Result<Vec<_>>>()?;
    if !data.is_cyclic(&letters) {
        return Err(CoreError::NotComposable(format!("{s} is not cyclically composable")));
    }
    Ok(Word::new(letters))
}

/// The canonical document: suspended coefficients, canonical letter order.
pub fn save(data: &AInftyData) -> String {
    let mut out = format!("{HEADER}\nfield {}\nmax-arity {}\n", data.field(), data.max_arity());
    if let Some(p) = data.provenance() {
        out += &format!("provenance {p}\n");
    }
    for o in data.objects() {
        out += &format!("object {o}\n");
    }
    let obj = |o: ObjectId| &data.objects()[o.0 as usize];
    for a in data.all_letters() {
        let i = data.info(a);
        out += &format!("hom {} {} {} {}\n", obj(i.source), obj(i.target), i.name, i.degree);
    }
    for op in data.suspended_ops() {
        let ins: Vec<String> = op.inputs.iter().map(|a| data.letter_label(*a)).collect();
        out += &format!("op mbar {} -> {} {}\n", ins.join(" "), data.letter_label(op.output), op.coeff);
    }
    if let Some(p) = data.pairing() {
        out += &format!("pairing {}\n", p.degree());
        for ((a, b), c) in p.entries() {
            out += &format!("pair {} {} {c}\n", data.letter_label(*a), data.letter_label(*b));
        }
    }
    out += "end\n";
    out
}
