use std::collections::BTreeSet;

use thiserror::Error;

use super::{Letter, UltimatelyPeriodicWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("a Kripke structure needs at least one state")]
    NoStates,
    #[error("a Kripke structure needs at least one initial state")]
    NoInitialState,
    #[error("state index {0} is out of range")]
    StateOutOfRange(usize),
    #[error("state `{0}` has no successor (the transition relation must be total)")]
    NotTotal(String),
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("only words of size 1 can be embedded, got a word of size {0}")]
    NotSizeOne(usize),
}

/// A finite Kripke structure `(S, I, R, L)` with named states.
///
/// States are indexed in declaration order; initial states and successor
/// lists are kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KripkeStructure {
    names: Vec<String>,
    labels: Vec<Letter>,
    initial: Vec<usize>,
    successors: Vec<Vec<usize>>,
}

impl KripkeStructure {
    pub fn new(
        states: Vec<(String, Letter)>,
        initial: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, KripkeError> {
        if states.is_empty() {
            return Err(KripkeError::NoStates);
        }
        let n = states.len();
        let mut seen = BTreeSet::new();
        for (name, _) in &states {
            if !seen.insert(name.as_str()) {
                return Err(KripkeError::DuplicateState(name.clone()));
            }
        }
        let initial: BTreeSet<usize> = initial.into_iter().collect();
        if initial.is_empty() {
            return Err(KripkeError::NoInitialState);
        }
        if let Some(&bad) = initial.iter().find(|&&s| s >= n) {
            return Err(KripkeError::StateOutOfRange(bad));
        }
        let mut successors = vec![BTreeSet::new(); n];
        for (from, to) in edges {
            if from >= n {
                return Err(KripkeError::StateOutOfRange(from));
            }
            if to >= n {
                return Err(KripkeError::StateOutOfRange(to));
            }
            successors[from].insert(to);
        }
        if let Some(s) = successors.iter().position(BTreeSet::is_empty) {
            return Err(KripkeError::NotTotal(states[s].0.clone()));
        }
        let (names, labels) = states.into_iter().unzip();
        Ok(KripkeStructure {
            names,
            labels,
            initial: initial.into_iter().collect(),
            successors: successors
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        })
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn label(&self, s: usize) -> &Letter {
        &self.labels[s]
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    /// `post(s)`, sorted.
    pub fn successors(&self, s: usize) -> &[usize] {
        &self.successors[s]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(s, succ)| succ.iter().map(move |&t| (s, t)))
    }

    pub fn propositions(&self) -> BTreeSet<crate::formulas::Proposition> {
        self.labels.iter().flat_map(|l| l.iter().cloned()).collect()
    }
}

/// The single-state structure `M_w` of a size-1 word `α^ω`: one initial
/// state labelled `α` with a self-loop.
pub fn embed_word(w: &UltimatelyPeriodicWord) -> Result<KripkeStructure, KripkeError> {
    if w.len() != 1 {
        return Err(KripkeError::NotSizeOne(w.len()));
    }
    KripkeStructure::new(vec![("q".to_string(), w.period()[0].clone())], [0], [(0, 0)])
}
