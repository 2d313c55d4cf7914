//! Exact search for a smallest formula separating a sample.
//!
//! Two engines share the [`Evaluator`] abstraction: [`StructuralEnumerator`]
//! produces every formula exactly once (the reference oracle), and
//! [`SemanticSearch`] explores formulas up to equality of their
//! satisfaction vectors on the sample.

mod semantic;
mod structural;
mod syntax;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use thiserror::Error;

pub use semantic::{SemanticSearch, Survivor};
pub use structural::{union_into, union_len, Candidate, StructuralEnumerator};
pub use syntax::{compact, Connective, Evaluator, Signatures, Syntax};

use crate::formulas::{Ctl, Formula, Logic, Ltl, OperatorSet, Proposition};
use crate::models::Sample;
use crate::semantics::{check_separating, SampleFrame};

/// Largest bound accepted unless configured otherwise.
pub const DEFAULT_MAX_BOUND: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundMode {
    /// Any size up to the bound.
    #[default]
    AtMost,
    /// Exactly the bound.
    Exactly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dedup {
    /// Prune candidates that are observationally redundant on the sample.
    #[default]
    Semantic,
    /// Enumerate every formula.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearnConfig {
    pub bound: usize,
    pub bound_mode: BoundMode,
    pub operators: OperatorSet,
    pub logic: Logic,
    pub dedup: Dedup,
    pub max_bound: usize,
}

impl LearnConfig {
    /// Full operator set, `AtMost` mode, semantic pruning.
    pub fn new(logic: Logic, bound: usize) -> Self {
        LearnConfig {
            bound,
            bound_mode: BoundMode::AtMost,
            operators: OperatorSet::full(),
            logic,
            dedup: Dedup::Semantic,
            max_bound: DEFAULT_MAX_BOUND,
        }
    }

    /// Logic and bound taken from the sample.
    pub fn for_sample(sample: &Sample) -> Self {
        LearnConfig::new(sample.logic(), sample.bound())
    }

    pub fn with_operators(mut self, operators: OperatorSet) -> Self {
        self.operators = operators;
        self
    }

    pub fn with_dedup(mut self, dedup: Dedup) -> Self {
        self.dedup = dedup;
        self
    }

    pub fn with_bound_mode(mut self, mode: BoundMode) -> Self {
        self.bound_mode = mode;
        self
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LearnStatistics {
    pub candidates_generated: u64,
    pub distinct_signatures: usize,
    /// Size of the last layer explored.
    pub layers_explored: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearnOutcome {
    pub decision: bool,
    pub witness: Option<Formula>,
    pub statistics: LearnStatistics,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LearnError {
    #[error("the sample is {sample} but the learner is configured for {config}")]
    LogicMismatch { sample: Logic, config: Logic },
    #[error("the bound must be at least 1")]
    ZeroBound,
    #[error("bound {bound} exceeds the limit of {max}")]
    BoundTooLarge { bound: usize, max: usize },
}

/// Searches for a formula of size at most (or exactly) `config.bound` that
/// conforms to `config.operators` and separates the sample. In `AtMost`
/// mode the witness has minimal size.
pub fn learn(sample: &Sample, config: &LearnConfig) -> Result<LearnOutcome, LearnError> {
    if sample.logic() != config.logic {
        return Err(LearnError::LogicMismatch {
            sample: sample.logic(),
            config: config.logic,
        });
    }
    if config.bound == 0 {
        return Err(LearnError::ZeroBound);
    }
    if config.bound > config.max_bound {
        return Err(LearnError::BoundTooLarge {
            bound: config.bound,
            max: config.max_bound,
        });
    }
    let start = Instant::now();
    let frame = SampleFrame::new(sample);
    let props: Vec<Proposition> = sample.alphabet().iter().cloned().collect();
    let conns = Connective::for_logic(config.logic, &config.operators);
    let (witness, mut statistics) = match (frame.lasso(), frame.kripke()) {
        (Some(e), _) => {
            let (w, s) = run::<_, Ltl>(e, &frame, props, &conns, config);
            (w.map(Syntax::into_formula), s)
        }
        (_, Some(e)) => {
            let (w, s) = run::<_, Ctl>(e, &frame, props, &conns, config);
            (w.map(Syntax::into_formula), s)
        }
        _ => unreachable!("a frame is either lasso or Kripke"),
    };
    statistics.elapsed = start.elapsed();
    Ok(LearnOutcome {
        decision: witness.is_some(),
        witness,
        statistics,
    })
}

fn run<E: Evaluator, F: Syntax>(
    eval: &E,
    frame: &SampleFrame,
    props: Vec<Proposition>,
    conns: &[Connective],
    config: &LearnConfig,
) -> (Option<F>, LearnStatistics) {
    // The exact-size variant needs every formula of the final size, which
    // the pruned search does not retain.
    if config.dedup == Dedup::None || config.bound_mode == BoundMode::Exactly {
        structural_search(eval, frame, props, conns, config)
    } else {
        semantic_search(eval, frame, props, conns, config.bound)
    }
}

fn structural_search<E: Evaluator, F: Syntax>(
    eval: &E,
    frame: &SampleFrame,
    props: Vec<Proposition>,
    conns: &[Connective],
    config: &LearnConfig,
) -> (Option<F>, LearnStatistics) {
    let mut en = StructuralEnumerator::new(eval, props, conns);
    let mut separating: Vec<Option<bool>> = Vec::new();
    let mut witness = None;
    for k in 1..=config.bound {
        let wanted = config.bound_mode == BoundMode::AtMost || k == config.bound;
        let mut hits = Vec::new();
        en.next_layer(k < config.bound, |_, c, v| {
            if !wanted {
                return;
            }
            let i = c.sig as usize;
            if separating.len() <= i {
                separating.resize(i + 1, None);
            }
            if *separating[i].get_or_insert_with(|| frame.separates(v)) {
                hits.push(*c);
            }
        });
        let mut memo = HashMap::new();
        witness = hits
            .iter()
            .map(|c| en.build_candidate::<F>(c, &mut memo))
            .min();
        if witness.is_some() {
            break;
        }
    }
    let stats = LearnStatistics {
        candidates_generated: en.generated(),
        distinct_signatures: en.signatures().len(),
        layers_explored: en.completed_layers(),
        elapsed: Duration::ZERO,
    };
    (witness, stats)
}

fn semantic_search<E: Evaluator, F: Syntax>(
    eval: &E,
    frame: &SampleFrame,
    props: Vec<Proposition>,
    conns: &[Connective],
    bound: usize,
) -> (Option<F>, LearnStatistics) {
    let mut search = SemanticSearch::new(eval, props, conns, bound);
    let mut witness = None;
    for k in 1..=bound {
        let survivors = search.next_layer(k == bound, |v| frame.separates(v));
        let mut memo = HashMap::new();
        witness = survivors
            .iter()
            .map(|s| {
                let f: F = search.build(s, &mut memo);
                // Survivors may repeat a sub-formula signature under
                // different syntax; merging them gives the same cost.
                compact(f, |g| {
                    frame
                        .eval(&g.clone().into_formula())
                        .expect("built formulas match the frame")
                })
            })
            .min_by(|a, b| (a.size(), a).cmp(&(b.size(), b)));
        if witness.is_some() {
            break;
        }
    }
    let stats = LearnStatistics {
        candidates_generated: search.generated(),
        distinct_signatures: search.signatures().len(),
        layers_explored: search.completed_layers(),
        elapsed: Duration::ZERO,
    };
    (witness, stats)
}

/// Checks a proposed witness: logic, size bound, operator conformance and
/// separation.
pub fn verify(witness: &Formula, sample: &Sample, config: &LearnConfig) -> bool {
    let size_ok = match config.bound_mode {
        BoundMode::AtMost => witness.size() <= config.bound,
        BoundMode::Exactly => witness.size() == config.bound,
    };
    witness.logic() == sample.logic()
        && size_ok
        && witness.conforms(&config.operators)
        && check_separating(witness, sample).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::Alphabet;
    use crate::models::UltimatelyPeriodicWord;

    fn word(letters: &[&[&str]], period: &[&[&str]], alpha: &Alphabet) -> UltimatelyPeriodicWord {
        let conv = |ls: &[&[&str]]| {
            ls.iter()
                .map(|l| l.iter().map(|n| alpha.get(n).unwrap().clone()).collect())
                .collect()
        };
        UltimatelyPeriodicWord::new(conv(letters), conv(period)).unwrap()
    }

    #[test]
    fn single_proposition() {
        let alpha = Alphabet::from_names(["p"]).unwrap();
        let pos = word(&[], &[&["p"]], &alpha);
        let neg = word(&[], &[&[]], &alpha);
        let sample = Sample::ltl(alpha, 1, vec![pos], vec![neg]).unwrap();
        for dedup in [Dedup::Semantic, Dedup::None] {
            let out = learn(&sample, &LearnConfig::for_sample(&sample).with_dedup(dedup)).unwrap();
            assert_eq!(out.witness.unwrap().to_string(), "p");
        }
    }

    #[test]
    fn needs_next() {
        let alpha = Alphabet::from_names(["p"]).unwrap();
        let pos = word(&[&[]], &[&["p"]], &alpha);
        let neg = word(&[], &[&[]], &alpha);
        let neg2 = word(&[&[], &[]], &[&["p"]], &alpha);
        let sample = Sample::ltl(alpha, 4, vec![pos], vec![neg, neg2]).unwrap();
        let sem = learn(&sample, &LearnConfig::for_sample(&sample)).unwrap();
        let none = learn(
            &sample,
            &LearnConfig::for_sample(&sample).with_dedup(Dedup::None),
        )
        .unwrap();
        let (a, b) = (sem.witness.unwrap(), none.witness.unwrap());
        assert_eq!(a.size(), b.size());
        assert_eq!(a.size(), 2);
        assert_eq!(b.to_string(), "X p");
    }

    #[test]
    fn configuration_errors() {
        let alpha = Alphabet::from_names(["p"]).unwrap();
        let sample = Sample::ltl(alpha, 1, vec![], vec![]).unwrap();
        let cfg = LearnConfig::for_sample(&sample);
        assert_eq!(learn(&sample, &cfg.clone().with_bound(0)), Err(LearnError::ZeroBound));
        assert!(matches!(
            learn(&sample, &cfg.clone().with_bound(13)),
            Err(LearnError::BoundTooLarge { bound: 13, max: 12 })
        ));
        let mut ctl = cfg;
        ctl.logic = Logic::Ctl;
        assert!(matches!(learn(&sample, &ctl), Err(LearnError::LogicMismatch { .. })));
    }
}
