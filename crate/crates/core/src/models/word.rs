use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formulas::Proposition;

/// A letter: the set of propositions true at one position.
pub type Letter = BTreeSet<Proposition>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("the period of an ultimately periodic word must be nonempty")]
    EmptyPeriod,
}

/// The infinite word `prefix · period^ω`, stored exactly as given.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UltimatelyPeriodicWord {
    prefix: Vec<Letter>,
    period: Vec<Letter>,
}

impl UltimatelyPeriodicWord {
    pub fn new(prefix: Vec<Letter>, period: Vec<Letter>) -> Result<Self, WordError> {
        if period.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        Ok(UltimatelyPeriodicWord { prefix, period })
    }

    /// The size-1 word `α^ω`.
    pub fn constant(letter: Letter) -> Self {
        UltimatelyPeriodicWord {
            prefix: Vec::new(),
            period: vec![letter],
        }
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// `|u| + |v|`, which is also the number of suffix classes.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    /// Always false: the period is nonempty.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letter_at(&self, i: usize) -> &Letter {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// Canonical position `j < len()` with `w[i:] = w[j:]`.
    pub fn suffix_class(&self, i: usize) -> usize {
        if i < self.len() {
            i
        } else {
            self.prefix.len() + (i - self.prefix.len()) % self.period.len()
        }
    }

    /// Successor of a suffix class.
    pub fn next(&self, i: usize) -> usize {
        if i + 1 < self.len() {
            i + 1
        } else {
            self.prefix.len()
        }
    }

    /// Every proposition mentioned by some letter.
    pub fn propositions(&self) -> BTreeSet<Proposition> {
        self.prefix
            .iter()
            .chain(&self.period)
            .flat_map(|l| l.iter().cloned())
            .collect()
    }
}

impl fmt::Display for UltimatelyPeriodicWord {
    /// The sample-file syntax, e.g. `{p};{} | {q}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |letters: &[Letter]| {
            letters
                .iter()
                .map(super::format_letter)
                .collect::<Vec<_>>()
                .join(";")
        };
        if self.prefix.is_empty() {
            write!(f, "| {}", join(&self.period))
        } else {
            write!(f, "{} | {}", join(&self.prefix), join(&self.period))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letter(names: &[&str]) -> Letter {
        names.iter().map(|n| Proposition::new(n).unwrap()).collect()
    }

    #[test]
    fn empty_period_rejected() {
        assert_eq!(
            UltimatelyPeriodicWord::new(vec![letter(&["p"])], vec![]),
            Err(WordError::EmptyPeriod)
        );
    }

    #[test]
    fn letter_indexing() {
        let w = UltimatelyPeriodicWord::new(vec![letter(&["p"])], vec![letter(&["q"])]).unwrap();
        assert_eq!(w.letter_at(0), &letter(&["p"]));
        assert_eq!(w.letter_at(9), &letter(&["q"]));
        let w = UltimatelyPeriodicWord::new(vec![], vec![letter(&["p"]), letter(&[])]).unwrap();
        assert_eq!(w.letter_at(5), &letter(&[]));
        assert_eq!(w.letter_at(4), &letter(&["p"]));
    }

    #[test]
    fn suffix_classes() {
        let l = letter(&[]);
        let w = UltimatelyPeriodicWord::new(vec![l.clone(); 2], vec![l.clone(); 3]).unwrap();
        assert_eq!(w.suffix_class(1), 1);
        assert_eq!(w.suffix_class(7), 4);
        assert_eq!(w.next(4), 2);
        let c = UltimatelyPeriodicWord::constant(l);
        for k in 0..10 {
            assert_eq!(c.suffix_class(k), 0);
        }
    }

    #[test]
    fn display() {
        let w = UltimatelyPeriodicWord::new(
            vec![letter(&["p", "q"]), letter(&[])],
            vec![letter(&["q"])],
        )
        .unwrap();
        assert_eq!(w.to_string(), "{p,q};{} | {q}");
        assert_eq!(UltimatelyPeriodicWord::constant(letter(&["a"])).to_string(), "| {a}");
    }
}
