use std::collections::HashMap;

use super::SatisfactionVector;
use crate::formulas::{BinaryOp, Ltl, Proposition, UnaryOp};
use crate::models::UltimatelyPeriodicWord;

/// Several lasso words laid side by side. Position `offsets[k] + i` is the
/// suffix class `i` of word `k`; `next` links each class to its successor.
#[derive(Debug, Clone)]
pub struct LassoFrame {
    words: Vec<UltimatelyPeriodicWord>,
    offsets: Vec<usize>,
    next: Vec<usize>,
}

impl LassoFrame {
    pub fn new<'a>(words: impl IntoIterator<Item = &'a UltimatelyPeriodicWord>) -> Self {
        let words: Vec<UltimatelyPeriodicWord> = words.into_iter().cloned().collect();
        let mut offsets = Vec::with_capacity(words.len());
        let mut next = Vec::new();
        for w in &words {
            let base = next.len();
            offsets.push(base);
            next.extend((0..w.len()).map(|i| base + w.next(i)));
        }
        LassoFrame {
            words,
            offsets,
            next,
        }
    }

    /// Total number of positions.
    pub fn len(&self) -> usize {
        self.next.len()
    }

    pub fn is_empty(&self) -> bool {
        self.next.is_empty()
    }

    /// Start position of each word.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn prop(&self, p: &Proposition) -> SatisfactionVector {
        let mut v = SatisfactionVector::zeros(self.len());
        for (w, &base) in self.words.iter().zip(&self.offsets) {
            for i in 0..w.len() {
                if w.letter_at(i).contains(p) {
                    v.set(base + i, true);
                }
            }
        }
        v
    }

    fn next_of(&self, a: &SatisfactionVector) -> SatisfactionVector {
        SatisfactionVector::from_fn(self.len(), |i| a.get(self.next[i]))
    }

    /// Least solution of `r = b ∨ (a ∧ X r)`.
    fn until(&self, a: &SatisfactionVector, b: &SatisfactionVector) -> SatisfactionVector {
        let mut r = b.clone();
        loop {
            let mut changed = false;
            // Sweeping backwards settles each prefix/period chain in one
            // pass; further sweeps only propagate around the loops.
            for i in (0..self.len()).rev() {
                if !r.get(i) && a.get(i) && r.get(self.next[i]) {
                    r.set(i, true);
                    changed = true;
                }
            }
            if !changed {
                return r;
            }
        }
    }

    pub fn unary(&self, op: UnaryOp, a: &SatisfactionVector) -> SatisfactionVector {
        match op {
            UnaryOp::Not => a.not(),
            UnaryOp::Next => self.next_of(a),
            UnaryOp::Finally => self.until(&SatisfactionVector::ones(self.len()), a),
            UnaryOp::Globally => self.unary(UnaryOp::Finally, &a.not()).not(),
        }
    }

    pub fn binary(
        &self,
        op: BinaryOp,
        a: &SatisfactionVector,
        b: &SatisfactionVector,
    ) -> SatisfactionVector {
        match op {
            BinaryOp::And => a.and(b),
            BinaryOp::Or => a.or(b),
            BinaryOp::Implies => a.implies(b),
            BinaryOp::Iff => a.iff(b),
            BinaryOp::Until => self.until(a, b),
            BinaryOp::Release => self.until(&a.not(), &b.not()).not(),
            BinaryOp::WeakUntil => self.until(a, b).or(&self.unary(UnaryOp::Globally, a)),
            BinaryOp::MightyRelease => self
                .binary(BinaryOp::Release, a, b)
                .and(&self.unary(UnaryOp::Finally, a)),
        }
    }

    /// Satisfaction of `f` at every position, computed once per distinct
    /// sub-formula.
    pub fn eval(&self, f: &Ltl) -> SatisfactionVector {
        let mut memo = HashMap::new();
        self.eval_memo(f, &mut memo)
    }

    fn eval_memo<'f>(
        &self,
        f: &'f Ltl,
        memo: &mut HashMap<&'f Ltl, SatisfactionVector>,
    ) -> SatisfactionVector {
        if let Some(v) = memo.get(f) {
            return v.clone();
        }
        let v = match f {
            Ltl::Prop(p) => self.prop(p),
            Ltl::Unary(op, c) => {
                let c = self.eval_memo(c, memo);
                self.unary(*op, &c)
            }
            Ltl::Binary(op, l, r) => {
                let l = self.eval_memo(l, memo);
                let r = self.eval_memo(r, memo);
                self.binary(*op, &l, &r)
            }
        };
        memo.insert(f, v.clone());
        v
    }

    /// Whether word `k` satisfies the formula whose vector is `v`.
    pub fn holds_on_word(&self, v: &SatisfactionVector, k: usize) -> bool {
        v.get(self.offsets[k])
    }
}

/// Satisfaction vector of `f` over the suffix classes of `w`.
pub fn satisfaction_vector(f: &Ltl, w: &UltimatelyPeriodicWord) -> SatisfactionVector {
    LassoFrame::new([w]).eval(f)
}

/// `w ⊨ f`. Propositions absent from every letter are simply false.
pub fn check_ltl(f: &Ltl, w: &UltimatelyPeriodicWord) -> bool {
    satisfaction_vector(f, w).get(0)
}
