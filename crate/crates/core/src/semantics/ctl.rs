use std::collections::HashMap;

use super::SatisfactionVector;
use crate::formulas::{BinaryOp, Ctl, PathFormula, Proposition, Quantifier, UnaryOp};
use crate::models::KripkeStructure;

/// The disjoint union of several Kripke structures; the labelling
/// algorithm works on the combined state space.
#[derive(Debug, Clone)]
pub struct KripkeFrame {
    structures: Vec<KripkeStructure>,
    offsets: Vec<usize>,
    successors: Vec<Vec<usize>>,
}

impl KripkeFrame {
    pub fn new<'a>(structures: impl IntoIterator<Item = &'a KripkeStructure>) -> Self {
        let structures: Vec<KripkeStructure> = structures.into_iter().cloned().collect();
        let mut offsets = Vec::with_capacity(structures.len());
        let mut successors = Vec::new();
        for m in &structures {
            let base = successors.len();
            offsets.push(base);
            for s in 0..m.state_count() {
                successors.push(m.successors(s).iter().map(|t| base + t).collect());
            }
        }
        KripkeFrame {
            structures,
            offsets,
            successors,
        }
    }

    pub fn len(&self) -> usize {
        self.successors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.successors.is_empty()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn prop(&self, p: &Proposition) -> SatisfactionVector {
        let mut v = SatisfactionVector::zeros(self.len());
        for (m, &base) in self.structures.iter().zip(&self.offsets) {
            for s in 0..m.state_count() {
                if m.label(s).contains(p) {
                    v.set(base + s, true);
                }
            }
        }
        v
    }

    fn ex(&self, a: &SatisfactionVector) -> SatisfactionVector {
        SatisfactionVector::from_fn(self.len(), |s| self.successors[s].iter().any(|&t| a.get(t)))
    }

    /// Least solution of `r = b ∨ (a ∧ EX r)`.
    fn eu(&self, a: &SatisfactionVector, b: &SatisfactionVector) -> SatisfactionVector {
        let mut r = b.clone();
        loop {
            let step = r.or(&a.and(&self.ex(&r)));
            if step == r {
                return r;
            }
            r = step;
        }
    }

    /// Greatest solution of `r = a ∧ EX r`.
    fn eg(&self, a: &SatisfactionVector) -> SatisfactionVector {
        let mut r = a.clone();
        loop {
            let step = r.and(&self.ex(&r));
            if step == r {
                return r;
            }
            r = step;
        }
    }

    fn au(&self, a: &SatisfactionVector, b: &SatisfactionVector) -> SatisfactionVector {
        // A(a U b) = ¬E(¬b U (¬a ∧ ¬b)) ∧ ¬EG ¬b
        let nb = b.not();
        self.eu(&nb, &a.not().and(&nb))
            .not()
            .and(&self.eg(&nb).not())
    }

    fn top(&self) -> SatisfactionVector {
        SatisfactionVector::ones(self.len())
    }

    pub fn quantified_unary(
        &self,
        q: Quantifier,
        op: UnaryOp,
        a: &SatisfactionVector,
    ) -> SatisfactionVector {
        match (q, op) {
            (_, UnaryOp::Not) => panic!("negation cannot be path-quantified"),
            (Quantifier::Exists, UnaryOp::Next) => self.ex(a),
            (Quantifier::Forall, UnaryOp::Next) => self.ex(&a.not()).not(),
            (Quantifier::Exists, UnaryOp::Finally) => self.eu(&self.top(), a),
            (Quantifier::Forall, UnaryOp::Finally) => self.eg(&a.not()).not(),
            (Quantifier::Exists, UnaryOp::Globally) => self.eg(a),
            (Quantifier::Forall, UnaryOp::Globally) => self.eu(&self.top(), &a.not()).not(),
        }
    }

    pub fn quantified_binary(
        &self,
        q: Quantifier,
        op: BinaryOp,
        a: &SatisfactionVector,
        b: &SatisfactionVector,
    ) -> SatisfactionVector {
        match (q, op) {
            (Quantifier::Exists, BinaryOp::Until) => self.eu(a, b),
            (Quantifier::Forall, BinaryOp::Until) => self.au(a, b),
            // E(a R b) = ¬A(¬a U ¬b)
            (Quantifier::Exists, BinaryOp::Release) => self.au(&a.not(), &b.not()).not(),
            // A(a R b) = ¬E(¬a U ¬b)
            (Quantifier::Forall, BinaryOp::Release) => self.eu(&a.not(), &b.not()).not(),
            // E(a W b) = E(a U b) ∨ EG a
            (Quantifier::Exists, BinaryOp::WeakUntil) => self.eu(a, b).or(&self.eg(a)),
            // A(a W b) = ¬E(¬b U (¬a ∧ ¬b))
            (Quantifier::Forall, BinaryOp::WeakUntil) => {
                let nb = b.not();
                self.eu(&nb, &a.not().and(&nb)).not()
            }
            // a M b ≡ b U (a ∧ b)
            (Quantifier::Exists, BinaryOp::MightyRelease) => self.eu(b, &a.and(b)),
            (Quantifier::Forall, BinaryOp::MightyRelease) => self.au(b, &a.and(b)),
            (_, op) => panic!("operator {} cannot be path-quantified", op.symbol()),
        }
    }

    pub fn logical(
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
            op => panic!("operator {} needs a path quantifier", op.symbol()),
        }
    }

    pub fn eval(&self, f: &Ctl) -> SatisfactionVector {
        let mut memo = HashMap::new();
        self.eval_memo(f, &mut memo)
    }

    fn eval_memo<'f>(
        &self,
        f: &'f Ctl,
        memo: &mut HashMap<&'f Ctl, SatisfactionVector>,
    ) -> SatisfactionVector {
        if let Some(v) = memo.get(f) {
            return v.clone();
        }
        let v = match f {
            Ctl::Prop(p) => self.prop(p),
            Ctl::Not(c) => self.eval_memo(c, memo).not(),
            Ctl::Binary(op, l, r) => {
                let l = self.eval_memo(l, memo);
                let r = self.eval_memo(r, memo);
                self.logical(*op, &l, &r)
            }
            Ctl::Quantified(q, PathFormula::Unary(op, c)) => {
                let c = self.eval_memo(c, memo);
                self.quantified_unary(*q, *op, &c)
            }
            Ctl::Quantified(q, PathFormula::Binary(op, l, r)) => {
                let l = self.eval_memo(l, memo);
                let r = self.eval_memo(r, memo);
                self.quantified_binary(*q, *op, &l, &r)
            }
        };
        memo.insert(f, v.clone());
        v
    }

    /// Whether every initial state of structure `k` is in `v`.
    pub fn holds_on_structure(&self, v: &SatisfactionVector, k: usize) -> bool {
        let base = self.offsets[k];
        self.structures[k].initial().iter().all(|&s| v.get(base + s))
    }
}

/// `M ⊨ f`: every initial state satisfies `f`.
pub fn check_ctl(f: &Ctl, m: &KripkeStructure) -> bool {
    let frame = KripkeFrame::new([m]);
    let v = frame.eval(f);
    frame.holds_on_structure(&v, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Letter;

    fn letter(names: &[&str]) -> Letter {
        names.iter().map(|n| Proposition::new(n).unwrap()).collect()
    }

    fn f(s: &str) -> Ctl {
        s.parse().unwrap()
    }

    #[test]
    fn invariant_everywhere() {
        let m = KripkeStructure::new(
            vec![("a".into(), letter(&["p"])), ("b".into(), letter(&["p"]))],
            [0],
            [(0, 0), (0, 1), (1, 0), (1, 1)],
        )
        .unwrap();
        assert!(check_ctl(&f("A G p"), &m));
    }

    #[test]
    fn next_step_branching() {
        let m = KripkeStructure::new(
            vec![("q0".into(), letter(&[])), ("q1".into(), letter(&["q"]))],
            [0],
            [(0, 1), (1, 1), (0, 0)],
        )
        .unwrap();
        assert!(check_ctl(&f("E X q"), &m));
        assert!(!check_ctl(&f("A X q"), &m));
        assert!(check_ctl(&f("E F q"), &m));
        assert!(!check_ctl(&f("A F q"), &m));
        assert!(check_ctl(&f("E G !q"), &m));
        assert!(check_ctl(&f("A(!q W q)"), &m));
        assert!(!check_ctl(&f("A(!q U q)"), &m));
    }

    #[test]
    fn all_initial_states_must_satisfy() {
        let m = KripkeStructure::new(
            vec![("a".into(), letter(&["p"])), ("b".into(), letter(&[]))],
            [0, 1],
            [(0, 0), (1, 1)],
        )
        .unwrap();
        assert!(!check_ctl(&f("p"), &m));
        assert!(check_ctl(&f("p | !p"), &m));
    }
}
