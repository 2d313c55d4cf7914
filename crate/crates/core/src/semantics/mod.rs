//! Model checking: LTL on lasso words by suffix-class fixpoints, CTL on
//! Kripke structures by labelling with an EX/EU/EG core.

mod ctl;
mod ltl;
mod vector;

use thiserror::Error;

pub use ctl::{check_ctl, KripkeFrame};
pub use ltl::{check_ltl, satisfaction_vector, LassoFrame};
pub use vector::SatisfactionVector;

use crate::formulas::{Formula, Logic};
use crate::models::{Sample, SampleData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("formula is {formula} but the sample is {sample}")]
    LogicMismatch { formula: Logic, sample: Logic },
    #[error("proposition `{0}` is not in the sample alphabet")]
    UnknownProposition(String),
}

#[derive(Debug, Clone)]
enum FrameKind {
    Lasso(LassoFrame),
    Kripke(KripkeFrame),
}

/// All examples of a sample in one evaluation frame: positives first, then
/// negatives. Vectors over this frame are the learner's signatures.
#[derive(Debug, Clone)]
pub struct SampleFrame {
    kind: FrameKind,
    positives: usize,
    negatives: usize,
}

impl SampleFrame {
    pub fn new(sample: &Sample) -> Self {
        match sample.data() {
            SampleData::Ltl(s) => SampleFrame {
                kind: FrameKind::Lasso(LassoFrame::new(s.positives.iter().chain(&s.negatives))),
                positives: s.positives.len(),
                negatives: s.negatives.len(),
            },
            SampleData::Ctl(s) => SampleFrame {
                kind: FrameKind::Kripke(KripkeFrame::new(s.positives.iter().chain(&s.negatives))),
                positives: s.positives.len(),
                negatives: s.negatives.len(),
            },
        }
    }

    pub fn logic(&self) -> Logic {
        match self.kind {
            FrameKind::Lasso(_) => Logic::Ltl,
            FrameKind::Kripke(_) => Logic::Ctl,
        }
    }

    pub fn len(&self) -> usize {
        match &self.kind {
            FrameKind::Lasso(f) => f.len(),
            FrameKind::Kripke(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lasso(&self) -> Option<&LassoFrame> {
        match &self.kind {
            FrameKind::Lasso(f) => Some(f),
            FrameKind::Kripke(_) => None,
        }
    }

    pub fn kripke(&self) -> Option<&KripkeFrame> {
        match &self.kind {
            FrameKind::Lasso(_) => None,
            FrameKind::Kripke(f) => Some(f),
        }
    }

    /// Whether example `k` (positives first) satisfies the formula with
    /// vector `v`.
    pub fn holds(&self, v: &SatisfactionVector, k: usize) -> bool {
        match &self.kind {
            FrameKind::Lasso(f) => f.holds_on_word(v, k),
            FrameKind::Kripke(f) => f.holds_on_structure(v, k),
        }
    }

    pub fn separates(&self, v: &SatisfactionVector) -> bool {
        (0..self.positives).all(|k| self.holds(v, k))
            && (self.positives..self.positives + self.negatives).all(|k| !self.holds(v, k))
    }

    pub fn eval(&self, f: &Formula) -> Result<SatisfactionVector, SemanticsError> {
        match (&self.kind, f) {
            (FrameKind::Lasso(frame), Formula::Ltl(g)) => Ok(frame.eval(g)),
            (FrameKind::Kripke(frame), Formula::Ctl(g)) => Ok(frame.eval(g)),
            _ => Err(SemanticsError::LogicMismatch {
                formula: f.logic(),
                sample: self.logic(),
            }),
        }
    }
}

/// Per-example results of checking one formula against a sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdicts {
    pub positives: Vec<bool>,
    pub negatives: Vec<bool>,
}

impl Verdicts {
    pub fn separating(&self) -> bool {
        self.positives.iter().all(|&b| b) && self.negatives.iter().all(|&b| !b)
    }
}

fn check_vocabulary(f: &Formula, sample: &Sample) -> Result<(), SemanticsError> {
    if f.logic() != sample.logic() {
        return Err(SemanticsError::LogicMismatch {
            formula: f.logic(),
            sample: sample.logic(),
        });
    }
    match f.propositions().iter().find(|p| !sample.alphabet().contains(p)) {
        Some(p) => Err(SemanticsError::UnknownProposition(p.to_string())),
        None => Ok(()),
    }
}

/// Evaluates `f` on every example of the sample.
pub fn verdicts(f: &Formula, sample: &Sample) -> Result<Verdicts, SemanticsError> {
    check_vocabulary(f, sample)?;
    let frame = SampleFrame::new(sample);
    let v = frame.eval(f)?;
    let results: Vec<bool> = (0..frame.positives + frame.negatives)
        .map(|k| frame.holds(&v, k))
        .collect();
    let (pos, neg) = results.split_at(frame.positives);
    Ok(Verdicts {
        positives: pos.to_vec(),
        negatives: neg.to_vec(),
    })
}

/// True iff every positive satisfies `f` and no negative does.
pub fn check_separating(f: &Formula, sample: &Sample) -> Result<bool, SemanticsError> {
    verdicts(f, sample).map(|v| v.separating())
}
