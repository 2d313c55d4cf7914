//! Formula transformations: temporal elimination `tr`, quantifier stripping
//! and insertion between CTL and LTL, and the conciseness analysis.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::formulas::{BinaryOp, Ctl, Ltl, PathFormula, Proposition, Quantifier, UnaryOp};

/// How `tr` treats one operator, given the already transformed operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrCase {
    /// Rebuild the node with the same operator.
    Keep,
    /// Replace the node by its (only) transformed operand.
    Drop,
    /// Replace the node by its transformed right operand.
    Right,
    /// Rebuild the node with a different binary operator.
    Replace(BinaryOp),
}

pub fn tr_unary_case(op: UnaryOp) -> TrCase {
    if op.is_temporal() {
        TrCase::Drop
    } else {
        TrCase::Keep
    }
}

pub fn tr_binary_case(op: BinaryOp) -> TrCase {
    match op {
        BinaryOp::Until | BinaryOp::Release => TrCase::Right,
        BinaryOp::WeakUntil => TrCase::Replace(BinaryOp::Or),
        BinaryOp::MightyRelease => TrCase::Replace(BinaryOp::And),
        _ => TrCase::Keep,
    }
}

/// Removes every temporal operator while preserving satisfaction on all
/// size-1 words: `X`, `F`, `G` are dropped, `U` and `R` keep their right
/// operand, `W` becomes `∨` and `M` becomes `∧`.
///
/// The result never has more distinct sub-formulae than the input.
pub fn tr(f: &Ltl) -> Ltl {
    match f {
        Ltl::Prop(_) => f.clone(),
        Ltl::Unary(op, c) => match tr_unary_case(*op) {
            TrCase::Keep => Ltl::unary(*op, tr(c)),
            _ => tr(c),
        },
        Ltl::Binary(op, l, r) => match tr_binary_case(*op) {
            TrCase::Keep => Ltl::binary(*op, tr(l), tr(r)),
            TrCase::Replace(new) => Ltl::binary(new, tr(l), tr(r)),
            TrCase::Right | TrCase::Drop => tr(r),
        },
    }
}

/// Drops every path quantifier, turning a CTL formula into an LTL formula
/// with the same shape.
pub fn strip_quantifiers(f: &Ctl) -> Ltl {
    match f {
        Ctl::Prop(p) => Ltl::Prop(p.clone()),
        Ctl::Not(c) => Ltl::not(strip_quantifiers(c)),
        Ctl::Binary(op, l, r) => Ltl::binary(*op, strip_quantifiers(l), strip_quantifiers(r)),
        Ctl::Quantified(_, PathFormula::Unary(op, c)) => Ltl::unary(*op, strip_quantifiers(c)),
        Ctl::Quantified(_, PathFormula::Binary(op, l, r)) => {
            Ltl::binary(*op, strip_quantifiers(l), strip_quantifiers(r))
        }
    }
}

/// Places an `E` in front of every temporal operator.
pub fn insert_quantifiers(f: &Ltl) -> Ctl {
    match f {
        Ltl::Prop(p) => Ctl::Prop(p.clone()),
        Ltl::Unary(UnaryOp::Not, c) => Ctl::not(insert_quantifiers(c)),
        Ltl::Unary(op, c) => Ctl::Quantified(
            Quantifier::Exists,
            PathFormula::Unary(*op, Arc::new(insert_quantifiers(c))),
        ),
        Ltl::Binary(op, l, r) if op.is_temporal() => Ctl::Quantified(
            Quantifier::Exists,
            PathFormula::Binary(
                *op,
                Arc::new(insert_quantifiers(l)),
                Arc::new(insert_quantifiers(r)),
            ),
        ),
        Ltl::Binary(op, l, r) => Ctl::Binary(
            *op,
            Arc::new(insert_quantifiers(l)),
            Arc::new(insert_quantifiers(r)),
        ),
    }
}

/// A partition of propositions into named blocks, e.g. `x1 ↦ {x1, x1_bar}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Blocks(BTreeMap<String, BTreeSet<Proposition>>);

impl Blocks {
    pub fn new(blocks: BTreeMap<String, BTreeSet<Proposition>>) -> Self {
        Blocks(blocks)
    }

    /// Groups `x` and `x_bar` under the block `x`.
    pub fn pairing<'a>(props: impl IntoIterator<Item = &'a Proposition>) -> Self {
        let mut blocks: BTreeMap<String, BTreeSet<Proposition>> = BTreeMap::new();
        for p in props {
            let base = p.name().strip_suffix("_bar").filter(|b| !b.is_empty());
            let key = base.unwrap_or(p.name()).to_string();
            blocks.entry(key).or_default().insert(p.clone());
        }
        Blocks(blocks)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BTreeSet<Proposition>)> {
        self.0.iter()
    }

    pub fn get(&self, name: &str) -> Option<&BTreeSet<Proposition>> {
        self.0.get(name)
    }

    pub fn block_of(&self, p: &Proposition) -> Option<&str> {
        self.0
            .iter()
            .find(|(_, members)| members.contains(p))
            .map(|(k, _)| k.as_str())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcisenessReport {
    pub is_temporal_free: bool,
    pub is_concise: bool,
    pub propositions_used: BTreeSet<Proposition>,
    /// `|Prop(φ) ∩ X_k|` for every block `k` of the partition.
    pub per_block_count: BTreeMap<String, usize>,
}

/// Concise: a proposition, or a binary combination of concise formulas
/// over disjoint sets of propositions.
pub fn is_concise(f: &Ltl) -> bool {
    fn go(f: &Ltl) -> Option<BTreeSet<Proposition>> {
        match f {
            Ltl::Prop(p) => Some(BTreeSet::from([p.clone()])),
            Ltl::Unary(..) => None,
            Ltl::Binary(_, l, r) => {
                let l = go(l)?;
                let r = go(r)?;
                if l.is_disjoint(&r) {
                    Some(l.union(&r).cloned().collect())
                } else {
                    None
                }
            }
        }
    }
    go(f).is_some()
}

/// Conciseness report; without an explicit partition the `x`/`x_bar`
/// pairing of the formula's own propositions is used.
pub fn analyze_conciseness(f: &Ltl, blocks: Option<&Blocks>) -> ConcisenessReport {
    let used = f.propositions();
    let default;
    let blocks = match blocks {
        Some(b) => b,
        None => {
            default = Blocks::pairing(&used);
            &default
        }
    };
    let per_block_count = blocks
        .iter()
        .map(|(k, members)| (k.clone(), members.intersection(&used).count()))
        .collect();
    ConcisenessReport {
        is_temporal_free: f.is_temporal_free(),
        is_concise: is_concise(f),
        propositions_used: used,
        per_block_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ltl(s: &str) -> Ltl {
        s.parse().unwrap()
    }

    fn ctl(s: &str) -> Ctl {
        s.parse().unwrap()
    }

    #[test]
    fn tr_cases() {
        assert_eq!(tr(&ltl("G(x1 W x2)")), ltl("x1 | x2"));
        assert_eq!(tr(&ltl("p")), ltl("p"));
        assert_eq!(tr(&ltl("!(p U q)")), ltl("!q"));
        assert_eq!(tr(&ltl("(a R b) & X F c")), ltl("b & c"));
        assert_eq!(tr(&ltl("a M (b -> c)")), ltl("a & (b -> c)"));
    }

    #[test]
    fn quantifier_translation() {
        assert_eq!(strip_quantifiers(&ctl("E F p")), ltl("F p"));
        assert_eq!(strip_quantifiers(&ctl("A(p U q) & E G r")), ltl("(p U q) & G r"));
        assert_eq!(insert_quantifiers(&ltl("F p")), ctl("E F p"));
        assert_eq!(insert_quantifiers(&ltl("p U (G q)")), ctl("E(p U E G q)"));
        let f = ltl("!(p W X q) <-> F p");
        assert_eq!(strip_quantifiers(&insert_quantifiers(&f)), f);
    }

    #[test]
    fn stripping_can_merge_subformulas() {
        let f = ctl("A F p & E F p");
        assert_eq!(f.size(), 4);
        assert_eq!(strip_quantifiers(&f).size(), 3);
    }

    #[test]
    fn conciseness() {
        let r = analyze_conciseness(&ltl("x1 | x2"), None);
        assert!(r.is_concise && r.is_temporal_free);
        assert_eq!(r.propositions_used.len(), 2);
        assert!(!analyze_conciseness(&ltl("!x1"), None).is_concise);
        assert!(!analyze_conciseness(&ltl("x1 | x1"), None).is_concise);
        let r = analyze_conciseness(&ltl("x1 U x2_bar"), None);
        assert!(r.is_concise && !r.is_temporal_free);
        assert_eq!(r.per_block_count.get("x1"), Some(&1));
        assert_eq!(r.per_block_count.get("x2"), Some(&1));
    }

    #[test]
    fn explicit_blocks() {
        let names = ["x1", "x1_bar", "x2", "x2_bar"];
        let props: Vec<Proposition> = names.iter().map(|n| Proposition::new(n).unwrap()).collect();
        let blocks = Blocks::pairing(&props);
        assert_eq!(blocks.len(), 2);
        let r = analyze_conciseness(&ltl("x1 & x1_bar"), Some(&blocks));
        assert_eq!(r.per_block_count["x1"], 2);
        assert_eq!(r.per_block_count["x2"], 0);
        assert_eq!(blocks.block_of(&props[1]), Some("x1"));
    }
}
