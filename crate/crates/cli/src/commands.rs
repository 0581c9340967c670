use std::path::Path;

use ainf_core::ainfty::{verify_ainfty, AInftyData};
use ainf_core::calabi_yau::{induced_omega, verify_cy};
use ainf_core::cyclic::connes_homology;
use ainf_core::document::{load, parse_word};
use ainf_core::hochschild::{hochschild_homology, HomologyReport};
use ainf_core::liebialg::{axiom_suite, cochain_basis, CyclicLie};
use ainf_core::lincomb::LinComb;
use ainf_core::modelzoo::{named_fixture, FIXTURE_NAMES};
use ainf_core::ncsymp::{induced_constant_form, poisson_axioms, quillen_compare, PoissonDr0};
use ainf_core::report::VerificationReport;
use ainf_core::word::{DegreeWindow, Word};
use ainf_core::{CoreError, Exec, Field};

use crate::table::Table;
use crate::{Command, Common, Convention};

pub const PARSE: u8 = 2;
pub const INVARIANT: u8 = 3;
pub const AXIOM: u8 = 4;
pub const TRUNCATION: u8 = 5;

pub struct Output {
    pub text: String,
    pub status: u8,
}

pub struct Failure {
    pub message: String,
    pub status: u8,
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let status = match &e {
            CoreError::Parse { .. } => PARSE,
            CoreError::ExplosionGuard { .. } | CoreError::OutsideEnumeration(_) => TRUNCATION,
            _ => INVARIANT,
        };
        Failure { message: e.to_string(), status }
    }
}

type Run = Result<Output, Failure>;

fn exec() -> Exec {
    Exec::default()
}

fn input(c: &Common) -> Result<AInftyData, Failure> {
    let path = Path::new(&c.input);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure { message: format!("{}: {e}", c.input), status: PARSE })?;
        return Ok(load(&text, c.field)?);
    }
    if FIXTURE_NAMES.contains(&c.input.as_str()) {
        return Ok(named_fixture(&c.input, c.field.unwrap_or(Field::Rational))?);
    }
    Err(Failure {
        message: format!("{} is neither a file nor a builtin fixture ({})", c.input, FIXTURE_NAMES.join(", ")),
        status: PARSE,
    })
}

pub fn run(cmd: Command) -> Run {
    match cmd {
        Command::Verify(c) => verify(&c),
        Command::Hh(c) => homology(&c, false),
        Command::Ch(c) => homology(&c, true),
        Command::Bracket { common, words } => bracket(&common, &words),
        Command::Cobracket { common, word } => cobracket(&common, word.as_deref()),
        Command::Axioms(c) => axioms(&c),
        Command::NcsympCompare(c) => ncsymp_compare(&c),
    }
}

fn report_table(report: &VerificationReport) -> Table {
    let mut t = Table::new(&["check", "tuples", "failures", "max_residual", "witness"]);
    for c in &report.checks {
        t.push(vec![
            c.name.clone(),
            c.tuples.to_string(),
            c.failures.to_string(),
            c.max_residual.to_string(),
            c.witnesses.first().cloned().unwrap_or_default(),
        ]);
    }
    t
}

fn checks_output(c: &Common, report: &VerificationReport, fail_status: u8) -> Output {
    Output {
        text: report_table(report).render(c.format),
        status: if report.passed() { 0 } else { fail_status },
    }
}

fn verify(c: &Common) -> Run {
    let data = input(c)?;
    let arity = c.max_len.unwrap_or(data.max_arity() + 2);
    let mut report = verify_ainfty(&data, arity, exec());
    if let Some(p) = data.pairing() {
        report.extend(verify_cy(&data, p, data.max_arity(), exec()));
    }
    Ok(checks_output(c, &report, INVARIANT))
}

/// Reported homology degree of a suspended word degree.
fn report_degree(conv: Convention, s: i64) -> i64 {
    match conv {
        Convention::Chain => -s - 1,
        Convention::Cochain => s + 1,
    }
}

fn homology(c: &Common, cyclic: bool) -> Run {
    let data = input(c)?;
    let max_len = c.max_len.unwrap_or(6);
    let requested = c.degree_min.is_some() || c.degree_max.is_some();
    let window = requested.then(|| {
        let full = ainf_core::word::full_window(&data, max_len);
        let (a, b) = (report_degree(c.convention, full.lo), report_degree(c.convention, full.hi));
        let lo = c.degree_min.unwrap_or(a.min(b));
        let hi = c.degree_max.unwrap_or(a.max(b));
        // Both conventions are affine in the suspended degree.
        let (s1, s2) = match c.convention {
            Convention::Chain => (-hi - 1, -lo - 1),
            Convention::Cochain => (lo - 1, hi - 1),
        };
        DegreeWindow::new(s1, s2)
    });
    if let Some(w) = window {
        if w.lo > w.hi {
            return Err(Failure { message: "empty degree window".into(), status: PARSE });
        }
    }
    let rep: HomologyReport = if cyclic {
        connes_homology(&data, max_len, window, exec())?
    } else {
        hochschild_homology(&data, max_len, window, exec())?
    };
    let mut rows: Vec<(i64, usize, bool, usize)> = rep
        .dims
        .iter()
        .map(|(s, n)| (report_degree(c.convention, *s), *n, rep.reliable[s], rep.chain_sizes.get(s).copied().unwrap_or(0)))
        .collect();
    rows.sort();
    let mut t = Table::new(&["degree", "dimension", "reliable", "chains"]);
    for (d, n, r, size) in &rows {
        t.push(vec![d.to_string(), n.to_string(), if *r { "yes" } else { "no" }.to_string(), size.to_string()]);
    }
    let truncated = requested && rows.iter().any(|r| !r.2);
    Ok(Output { text: t.render(c.format), status: if truncated { TRUNCATION } else { 0 } })
}

fn lie_degree(conv: Convention, lie: &CyclicLie, w: &Word) -> String {
    let d = lie.degree(w);
    match conv {
        Convention::Chain => d,
        Convention::Cochain => -d,
    }
    .to_string()
}

fn single(data: &AInftyData, w: Word) -> LinComb<Word> {
    LinComb::single(data.field(), w, data.field().one())
}

fn bracket(c: &Common, words: &[String]) -> Run {
    let data = input(c)?;
    let omega = induced_omega(&data)?;
    let lie = CyclicLie::new(&data, &omega);
    let mut t = Table::new(&["lhs", "lhs_degree", "rhs", "rhs_degree", "bracket"]);
    let mut row = |a: &Word, b: &Word, r: &LinComb<Word>| {
        t.push(vec![
            data.fmt_word(a),
            lie_degree(c.convention, &lie, a),
            data.fmt_word(b),
            lie_degree(c.convention, &lie, b),
            lie.fmt_cochain(r),
        ]);
    };
    match words {
        [a, b] => {
            let (a, b) = (parse_word(&data, a)?, parse_word(&data, b)?);
            let r = lie.bracket(&lie.normalize(&single(&data, a.clone())), &lie.normalize(&single(&data, b.clone())))?;
            row(&a, &b, &r);
        }
        [] => {
            let basis = cochain_basis(&data, c.max_len.unwrap_or(3), exec())?;
            let pairs: Vec<(usize, usize)> =
                (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
            let results = exec().map(&pairs, |&(i, j)| lie.bracket_words(&basis[i], &basis[j]));
            for ((i, j), r) in pairs.iter().zip(&results) {
                if !r.is_zero() {
                    row(&basis[*i], &basis[*j], r);
                }
            }
        }
        _ => return Err(Failure { message: "bracket takes zero or two classes".into(), status: PARSE }),
    }
    Ok(Output { text: t.render(c.format), status: 0 })
}

fn cobracket(c: &Common, word: Option<&str>) -> Run {
    let data = input(c)?;
    let omega = induced_omega(&data)?;
    let lie = CyclicLie::new(&data, &omega);
    let mut t = Table::new(&["class", "degree", "cobracket"]);
    let words = match word {
        Some(w) => {
            let w = parse_word(&data, w)?;
            let normal = lie.normalize(&single(&data, w.clone()));
            let r = lie.cobracket(&normal)?;
            t.push(vec![data.fmt_word(&w), lie_degree(c.convention, &lie, &w), lie.fmt_tensor(&r)]);
            return Ok(Output { text: t.render(c.format), status: 0 });
        }
        None => cochain_basis(&data, c.max_len.unwrap_or(4), exec())?,
    };
    let results = exec().map(&words, |w| lie.cobracket_word(w));
    for (w, r) in words.iter().zip(&results) {
        if !r.is_zero() {
            t.push(vec![data.fmt_word(w), lie_degree(c.convention, &lie, w), lie.fmt_tensor(r)]);
        }
    }
    Ok(Output { text: t.render(c.format), status: 0 })
}

fn axioms(c: &Common) -> Run {
    let data = input(c)?;
    let omega = induced_omega(&data)?;
    let lie = CyclicLie::new(&data, &omega);
    let report = axiom_suite(&lie, c.max_len.unwrap_or(4), exec())?;
    Ok(checks_output(c, &report, AXIOM))
}

fn ncsymp_compare(c: &Common) -> Run {
    let data = input(c)?;
    let omega = induced_omega(&data)?;
    let max_len = c.max_len.unwrap_or(4);
    let mut report = quillen_compare(&data, &omega, max_len, exec())?;
    let (space, form) = induced_constant_form(&data, &omega)?;
    let poisson = PoissonDr0::new(space, form)?;
    let basis = cochain_basis(&data, max_len, exec())?;
    for mut check in poisson_axioms(&poisson, &basis, exec()).checks {
        check.name = format!("poisson {}", check.name);
        report.push(check);
    }
    Ok(checks_output(c, &report, AXIOM))
}
