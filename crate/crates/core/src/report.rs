//! Verification reports: per-check tuple counts, failure witnesses and the
//! largest residual seen.

use ainf_exactlin::Rational;

/// How many failing tuples keep their description.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub tuples: usize,
    pub failures: usize,
    pub max_residual: Rational,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn passing(name: String, tuples: usize) -> Self {
        Check { name, tuples, failures: 0, max_residual: Rational::zero(), witnesses: Vec::new() }
    }

    /// Folds per-tuple outcomes (`Some((locus, residual))` on failure) in
    /// input order.
    pub fn from_results(name: String, tuples: usize, results: Vec<Option<(String, Rational)>>) -> Self {
        let mut c = Check::passing(name, tuples);
        for (locus, residual) in results.into_iter().flatten() {
            c.fail(locus, residual);
        }
        c
    }

    pub fn fail(&mut self, locus: String, residual: Rational) {
        self.failures += 1;
        if residual > self.max_residual {
            self.max_residual = residual;
        }
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(locus);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
