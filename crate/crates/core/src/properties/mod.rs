//! Executable versions of the correctness lemmas: each suite checks one
//! property exhaustively (or on a seeded random sample) and counts
//! violations.

mod enumeration;
pub mod generate;
pub mod naive;
mod roundtrip;

use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use enumeration::{
    ctl_strip_suite, ltl_enumeration_checks, ltl_enumeration_suites, size1_equivalence_suite,
    EnumerationChecks,
};
pub use roundtrip::{round_trip_suites, CnfSuite, InstanceOutcome};

use crate::semantics::satisfaction_vector;

/// Outcome of one property suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub tag: &'static str,
    pub checked: u64,
    pub violations: u64,
    /// The first violation found, if any.
    pub example: Option<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    /// At least one case was checked and none failed.
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.violations == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} checked, {} violations",
            if self.passed() { "PASS" } else { "FAIL" },
            self.tag,
            self.checked,
            self.violations
        )?;
        if let Some(e) = &self.example {
            write!(f, " (first: {e})")?;
        }
        Ok(())
    }
}

/// Accumulates checks for one suite.
#[derive(Debug)]
pub(crate) struct Tally {
    tag: &'static str,
    checked: u64,
    violations: u64,
    example: Option<String>,
    start: Instant,
}

impl Tally {
    pub(crate) fn new(tag: &'static str) -> Self {
        Tally {
            tag,
            checked: 0,
            violations: 0,
            example: None,
            start: Instant::now(),
        }
    }

    pub(crate) fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.example.is_none() {
                self.example = Some(describe());
            }
        }
    }

    pub(crate) fn finish(self) -> SuiteReport {
        let elapsed = self.start.elapsed();
        self.finish_with(elapsed)
    }

    pub(crate) fn finish_with(self, elapsed: Duration) -> SuiteReport {
        SuiteReport {
            tag: self.tag,
            checked: self.checked,
            violations: self.violations,
            example: self.example,
            elapsed,
        }
    }
}

/// How much work the suites do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scale {
    /// Alphabet size for the formula enumerations.
    pub props: usize,
    /// Largest LTL formula in the exhaustive lemma suites.
    pub max_size: usize,
    /// Largest CTL formula in the quantifier-stripping suite.
    pub ctl_max_size: usize,
    /// Largest operand in the size-1 equivalence suite.
    pub operand_size: usize,
    /// Variables and clauses of the exhaustively enumerated CNFs.
    pub exhaustive_vars: usize,
    pub exhaustive_clauses: usize,
    /// Random CNFs, with at most this many variables and clauses.
    pub random_cnfs: usize,
    pub random_max_vars: usize,
    pub random_max_clauses: usize,
    /// Random formula/word pairs for the lasso checker.
    pub lasso_pairs: usize,
    pub seed: u64,
}

impl Default for Scale {
    fn default() -> Self {
        Scale {
            props: 2,
            max_size: 6,
            ctl_max_size: 5,
            operand_size: 3,
            exhaustive_vars: 2,
            exhaustive_clauses: 3,
            random_cnfs: 200,
            random_max_vars: 4,
            random_max_clauses: 6,
            lasso_pairs: 10_000,
            seed: 0,
        }
    }
}

/// Lasso evaluation against the unrolled textbook semantics, at every
/// suffix position, on random formulas and words.
pub fn lasso_oracle_suite(props: usize, max_size: usize, pairs: usize, seed: u64) -> SuiteReport {
    let mut tally = Tally::new("semantics.lasso-vs-naive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = generate::alphabet(props);
    for _ in 0..pairs {
        let f = generate::random_ltl(&mut rng, &alpha, max_size);
        let w = generate::random_word(&mut rng, &alpha, 4);
        let v = satisfaction_vector(&f, &w);
        let ok = (0..w.len()).all(|i| v.get(i) == naive::holds_at(&f, &w, i));
        tally.check(ok, || format!("{f} on {w}"));
    }
    tally.finish()
}

/// Every suite at the given scale, in a fixed order.
pub fn run_all(scale: &Scale) -> Vec<SuiteReport> {
    let mut out = vec![lasso_oracle_suite(
        scale.props,
        scale.max_size.min(5),
        scale.lasso_pairs,
        scale.seed,
    )];
    out.extend(ltl_enumeration_suites(scale.props, scale.max_size));
    out.push(size1_equivalence_suite(scale.props, scale.operand_size));
    out.push(ctl_strip_suite(scale.props, scale.ctl_max_size));
    let suite = CnfSuite::standard(scale);
    out.extend(round_trip_suites(&suite).0);
    out
}
