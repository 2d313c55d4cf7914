//! The operator vocabulary seen by the enumerators, and the glue that lets
//! them evaluate and build LTL and CTL formulas alike.

use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::formulas::{
    BinaryOp, Ctl, Formula, Logic, Ltl, OperatorSet, PathFormula, Proposition, Quantifier, UnaryOp,
};
use crate::semantics::{KripkeFrame, LassoFrame, SatisfactionVector};

/// One way of building a formula from one or two smaller ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    Unary(UnaryOp),
    Binary(BinaryOp),
    QuantifiedUnary(Quantifier, UnaryOp),
    QuantifiedBinary(Quantifier, BinaryOp),
}

impl Connective {
    pub fn arity(self) -> usize {
        match self {
            Connective::Unary(_) | Connective::QuantifiedUnary(..) => 1,
            Connective::Binary(_) | Connective::QuantifiedBinary(..) => 2,
        }
    }

    /// Whether swapping the operands yields an equivalent formula.
    pub fn is_commutative(self) -> bool {
        matches!(self, Connective::Binary(op) if op.is_commutative())
    }

    /// The connectives available for `logic` under `ops`. For CTL, temporal
    /// operators only appear directly under an allowed quantifier.
    pub fn for_logic(logic: Logic, ops: &OperatorSet) -> Vec<Connective> {
        let mut out = Vec::new();
        match logic {
            Logic::Ltl => {
                out.extend(ops.unary.iter().map(|&op| Connective::Unary(op)));
                out.extend(ops.binary.iter().map(|&op| Connective::Binary(op)));
            }
            Logic::Ctl => {
                if ops.unary.contains(&UnaryOp::Not) {
                    out.push(Connective::Unary(UnaryOp::Not));
                }
                for &q in &ops.quantifiers {
                    for &op in ops.unary.iter().filter(|op| op.is_temporal()) {
                        out.push(Connective::QuantifiedUnary(q, op));
                    }
                }
                for &op in ops.binary.iter().filter(|op| !op.is_temporal()) {
                    out.push(Connective::Binary(op));
                }
                for &q in &ops.quantifiers {
                    for &op in ops.binary.iter().filter(|op| op.is_temporal()) {
                        out.push(Connective::QuantifiedBinary(q, op));
                    }
                }
            }
        }
        out
    }
}

/// Computes satisfaction vectors bottom-up over a fixed frame.
pub trait Evaluator: Sync {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn prop(&self, p: &Proposition) -> SatisfactionVector;

    /// `args` holds one vector per operand.
    fn apply(&self, c: Connective, args: &[&SatisfactionVector]) -> SatisfactionVector;
}

impl Evaluator for LassoFrame {
    fn len(&self) -> usize {
        LassoFrame::len(self)
    }

    fn prop(&self, p: &Proposition) -> SatisfactionVector {
        LassoFrame::prop(self, p)
    }

    fn apply(&self, c: Connective, args: &[&SatisfactionVector]) -> SatisfactionVector {
        match c {
            Connective::Unary(op) => self.unary(op, args[0]),
            Connective::Binary(op) => self.binary(op, args[0], args[1]),
            _ => panic!("quantified connective {c:?} on a lasso frame"),
        }
    }
}

impl Evaluator for KripkeFrame {
    fn len(&self) -> usize {
        KripkeFrame::len(self)
    }

    fn prop(&self, p: &Proposition) -> SatisfactionVector {
        KripkeFrame::prop(self, p)
    }

    fn apply(&self, c: Connective, args: &[&SatisfactionVector]) -> SatisfactionVector {
        match c {
            Connective::Unary(UnaryOp::Not) => args[0].not(),
            Connective::Binary(op) => self.logical(op, args[0], args[1]),
            Connective::QuantifiedUnary(q, op) => self.quantified_unary(q, op, args[0]),
            Connective::QuantifiedBinary(q, op) => self.quantified_binary(q, op, args[0], args[1]),
            Connective::Unary(op) => panic!("unquantified {} on a Kripke frame", op.symbol()),
        }
    }
}

/// Formula types the enumerators can build.
pub trait Syntax: Clone + Ord + Hash + Eq + Display + Send + Sync {
    fn leaf(p: Proposition) -> Self;

    /// Panics when `c` does not belong to this logic.
    fn build(c: Connective, args: Vec<Self>) -> Self;

    fn size(&self) -> usize;

    /// The distinct sub-formulae, including `self`.
    fn distinct_subterms(&self) -> Vec<Self>;

    /// Replaces every occurrence of `from` by `to`.
    fn replace(&self, from: &Self, to: &Self) -> Self;

    fn into_formula(self) -> Formula;
}

impl Syntax for Ltl {
    fn leaf(p: Proposition) -> Self {
        Ltl::Prop(p)
    }

    fn build(c: Connective, mut args: Vec<Self>) -> Self {
        match c {
            Connective::Unary(op) => Ltl::unary(op, args.pop().unwrap()),
            Connective::Binary(op) => {
                let r = args.pop().unwrap();
                let l = args.pop().unwrap();
                Ltl::binary(op, l, r)
            }
            _ => panic!("quantified connective {c:?} in LTL"),
        }
    }

    fn size(&self) -> usize {
        Ltl::size(self)
    }

    fn distinct_subterms(&self) -> Vec<Self> {
        self.subformulas().into_iter().cloned().collect()
    }

    fn replace(&self, from: &Self, to: &Self) -> Self {
        if self == from {
            return to.clone();
        }
        match self {
            Ltl::Prop(_) => self.clone(),
            Ltl::Unary(op, c) => Ltl::Unary(*op, Arc::new(c.replace(from, to))),
            Ltl::Binary(op, l, r) => Ltl::Binary(
                *op,
                Arc::new(l.replace(from, to)),
                Arc::new(r.replace(from, to)),
            ),
        }
    }

    fn into_formula(self) -> Formula {
        Formula::Ltl(self)
    }
}

impl Syntax for Ctl {
    fn leaf(p: Proposition) -> Self {
        Ctl::Prop(p)
    }

    fn build(c: Connective, mut args: Vec<Self>) -> Self {
        let built = match c {
            Connective::Unary(UnaryOp::Not) => Ok(Ctl::not(args.pop().unwrap())),
            Connective::Unary(op) => panic!("unquantified {} in CTL", op.symbol()),
            Connective::Binary(op) => {
                let r = args.pop().unwrap();
                Ctl::binary(op, args.pop().unwrap(), r)
            }
            Connective::QuantifiedUnary(q, op) => {
                Ctl::quantified_unary(q, op, args.pop().unwrap())
            }
            Connective::QuantifiedBinary(q, op) => {
                let r = args.pop().unwrap();
                Ctl::quantified_binary(q, op, args.pop().unwrap(), r)
            }
        };
        built.expect("connectives for CTL are well-formed")
    }

    fn size(&self) -> usize {
        Ctl::size(self)
    }

    fn distinct_subterms(&self) -> Vec<Self> {
        self.subformulas().into_iter().cloned().collect()
    }

    fn replace(&self, from: &Self, to: &Self) -> Self {
        if self == from {
            return to.clone();
        }
        let rep = |c: &Arc<Ctl>| Arc::new(c.replace(from, to));
        match self {
            Ctl::Prop(_) => self.clone(),
            Ctl::Not(c) => Ctl::Not(rep(c)),
            Ctl::Binary(op, l, r) => Ctl::Binary(*op, rep(l), rep(r)),
            Ctl::Quantified(q, PathFormula::Unary(op, c)) => {
                Ctl::Quantified(*q, PathFormula::Unary(*op, rep(c)))
            }
            Ctl::Quantified(q, PathFormula::Binary(op, l, r)) => {
                Ctl::Quantified(*q, PathFormula::Binary(*op, rep(l), rep(r)))
            }
        }
    }

    fn into_formula(self) -> Formula {
        Formula::Ctl(self)
    }
}

/// Interned satisfaction vectors.
#[derive(Debug, Default)]
pub struct Signatures {
    vectors: Vec<SatisfactionVector>,
    index: FxHashMap<SatisfactionVector, u32>,
}

impl Signatures {
    pub fn intern(&mut self, v: SatisfactionVector) -> u32 {
        if let Some(&id) = self.index.get(&v) {
            return id;
        }
        let id = self.vectors.len() as u32;
        self.vectors.push(v.clone());
        self.index.insert(v, id);
        id
    }

    pub fn get(&self, id: u32) -> &SatisfactionVector {
        &self.vectors[id as usize]
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Rewrites `f` until distinct sub-formulae have distinct signatures, each
/// time replacing the larger (by size, then canonical order) of two
/// equivalent sub-formulae by the smaller one. Signatures are preserved and
/// the size strictly drops with every rewrite.
pub fn compact<F: Syntax>(mut f: F, signature: impl Fn(&F) -> SatisfactionVector) -> F {
    'outer: loop {
        let mut subs = f.distinct_subterms();
        subs.sort_by_cached_key(|g| (g.size(), g.clone()));
        let mut seen: HashMap<SatisfactionVector, F> = HashMap::new();
        for g in subs {
            let s = signature(&g);
            if let Some(h) = seen.get(&s) {
                f = f.replace(&g, h);
                continue 'outer;
            }
            seen.insert(s, g);
        }
        return f;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::UltimatelyPeriodicWord;

    #[test]
    fn ctl_connectives_are_stratified() {
        let ops = OperatorSet::parse_list("NOT,F,AND,U,E").unwrap();
        let conns = Connective::for_logic(Logic::Ctl, &ops);
        assert_eq!(
            conns,
            vec![
                Connective::Unary(UnaryOp::Not),
                Connective::QuantifiedUnary(Quantifier::Exists, UnaryOp::Finally),
                Connective::Binary(BinaryOp::And),
                Connective::QuantifiedBinary(Quantifier::Exists, BinaryOp::Until),
            ]
        );
    }

    #[test]
    fn compaction_merges_equivalent_subterms() {
        let p = Proposition::new("p").unwrap();
        let w = UltimatelyPeriodicWord::constant([p.clone()].into());
        let frame = LassoFrame::new([&w]);
        // on p^ω, X p, p and X p & p all agree
        let f: Ltl = "X p & p".parse().unwrap();
        assert_eq!(compact(f, |h| frame.eval(h)), "p".parse().unwrap());
        let f: Ltl = "!X p & p".parse().unwrap();
        assert_eq!(compact(f, |h| frame.eval(h)), "!p".parse().unwrap());
    }
}
