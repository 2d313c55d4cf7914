//! Formula syntax for LTL and CTL: propositions, operators, ASTs, sub-formula
//! closure and DAG size.
//!
//! Size is always the number of *distinct* sub-formulae (structural equality),
//! not the number of tree nodes: `x | x` has size 2.
//!
//! The derived [`Ord`] on [`Ltl`] and [`Ctl`] is the canonical order used for
//! tie-breaking: lexicographic order of the pre-order token sequence, where
//! propositions (by name) precede `! X F G & | -> <-> U R W M E A` in that
//! order.

mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

pub use parse::{parse_ctl, parse_ltl, ParseError, ParseErrorKind};

/// Words that can never be proposition names.
pub const RESERVED: [&str; 9] = ["X", "F", "G", "U", "R", "W", "M", "E", "A"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropositionError {
    #[error("empty proposition name")]
    Empty,
    #[error("invalid proposition name `{0}`: expected [A-Za-z_][A-Za-z0-9_]*")]
    Invalid(String),
    #[error("`{0}` is a reserved keyword and cannot name a proposition")]
    Reserved(String),
}

/// An atomic proposition, compared by name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Proposition(Arc<str>);

impl Proposition {
    pub fn new(name: &str) -> Result<Self, PropositionError> {
        if name.is_empty() {
            return Err(PropositionError::Empty);
        }
        let mut chars = name.chars();
        let first = chars.next().unwrap();
        if !(first.is_ascii_alphabetic() || first == '_')
            || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(PropositionError::Invalid(name.to_string()));
        }
        if RESERVED.contains(&name) {
            return Err(PropositionError::Reserved(name.to_string()));
        }
        Ok(Proposition(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Proposition {
    type Err = PropositionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Proposition::new(s)
    }
}

/// A finite set of propositions, iterated in name order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Alphabet(BTreeSet<Proposition>);

impl Alphabet {
    pub fn new(props: impl IntoIterator<Item = Proposition>) -> Self {
        Alphabet(props.into_iter().collect())
    }

    /// Builds an alphabet from names, failing on the first invalid one.
    pub fn from_names<S: AsRef<str>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self, PropositionError> {
        names
            .into_iter()
            .map(|n| Proposition::new(n.as_ref()))
            .collect::<Result<BTreeSet<_>, _>>()
            .map(Alphabet)
    }

    pub fn contains(&self, p: &Proposition) -> bool {
        self.0.contains(p)
    }

    pub fn get(&self, name: &str) -> Option<&Proposition> {
        self.0.iter().find(|p| p.name() == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Proposition> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_set(&self) -> &BTreeSet<Proposition> {
        &self.0
    }
}

impl FromIterator<Proposition> for Alphabet {
    fn from_iter<T: IntoIterator<Item = Proposition>>(iter: T) -> Self {
        Alphabet(iter.into_iter().collect())
    }
}

/// Unary operators, declared in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnaryOp {
    Not,
    Next,
    Finally,
    Globally,
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 4] = [UnaryOp::Not, UnaryOp::Next, UnaryOp::Finally, UnaryOp::Globally];
    pub const TEMPORAL: [UnaryOp; 3] = [UnaryOp::Next, UnaryOp::Finally, UnaryOp::Globally];

    pub fn is_temporal(self) -> bool {
        self != UnaryOp::Not
    }

    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Not => "!",
            UnaryOp::Next => "X",
            UnaryOp::Finally => "F",
            UnaryOp::Globally => "G",
        }
    }

    /// Name used in operator-set lists (`--ops`).
    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Not => "NOT",
            UnaryOp::Next => "X",
            UnaryOp::Finally => "F",
            UnaryOp::Globally => "G",
        }
    }
}

/// Binary operators, declared in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryOp {
    And,
    Or,
    Implies,
    Iff,
    Until,
    Release,
    WeakUntil,
    MightyRelease,
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 8] = [
        BinaryOp::And,
        BinaryOp::Or,
        BinaryOp::Implies,
        BinaryOp::Iff,
        BinaryOp::Until,
        BinaryOp::Release,
        BinaryOp::WeakUntil,
        BinaryOp::MightyRelease,
    ];
    pub const LOGICAL: [BinaryOp; 4] =
        [BinaryOp::And, BinaryOp::Or, BinaryOp::Implies, BinaryOp::Iff];
    pub const TEMPORAL: [BinaryOp; 4] = [
        BinaryOp::Until,
        BinaryOp::Release,
        BinaryOp::WeakUntil,
        BinaryOp::MightyRelease,
    ];

    pub fn is_temporal(self) -> bool {
        matches!(
            self,
            BinaryOp::Until | BinaryOp::Release | BinaryOp::WeakUntil | BinaryOp::MightyRelease
        )
    }

    /// Whether swapping the operands never changes the meaning.
    pub fn is_commutative(self) -> bool {
        matches!(self, BinaryOp::And | BinaryOp::Or | BinaryOp::Iff)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::And => "&",
            BinaryOp::Or => "|",
            BinaryOp::Implies => "->",
            BinaryOp::Iff => "<->",
            BinaryOp::Until => "U",
            BinaryOp::Release => "R",
            BinaryOp::WeakUntil => "W",
            BinaryOp::MightyRelease => "M",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BinaryOp::And => "AND",
            BinaryOp::Or => "OR",
            BinaryOp::Implies => "IMPLIES",
            BinaryOp::Iff => "IFF",
            BinaryOp::Until => "U",
            BinaryOp::Release => "R",
            BinaryOp::WeakUntil => "W",
            BinaryOp::MightyRelease => "M",
        }
    }
}

/// CTL path quantifiers (`E` sorts before `A`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub const ALL: [Quantifier; 2] = [Quantifier::Exists, Quantifier::Forall];

    pub fn symbol(self) -> &'static str {
        match self {
            Quantifier::Exists => "E",
            Quantifier::Forall => "A",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Logic {
    Ltl,
    Ctl,
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::Ltl => "ltl",
            Logic::Ctl => "ctl",
        })
    }
}

impl FromStr for Logic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ltl" => Ok(Logic::Ltl),
            "ctl" => Ok(Logic::Ctl),
            other => Err(format!("unknown logic `{other}` (expected ltl or ctl)")),
        }
    }
}

/// An LTL formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ltl {
    Prop(Proposition),
    Unary(UnaryOp, Arc<Ltl>),
    Binary(BinaryOp, Arc<Ltl>, Arc<Ltl>),
}

impl Ltl {
    pub fn prop(p: Proposition) -> Self {
        Ltl::Prop(p)
    }

    pub fn unary(op: UnaryOp, child: Ltl) -> Self {
        Ltl::Unary(op, Arc::new(child))
    }

    pub fn binary(op: BinaryOp, left: Ltl, right: Ltl) -> Self {
        Ltl::Binary(op, Arc::new(left), Arc::new(right))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Ltl) -> Self {
        Ltl::unary(UnaryOp::Not, child)
    }

    pub fn or(left: Ltl, right: Ltl) -> Self {
        Ltl::binary(BinaryOp::Or, left, right)
    }

    pub fn and(left: Ltl, right: Ltl) -> Self {
        Ltl::binary(BinaryOp::And, left, right)
    }

    /// Left-associated disjunction of the given formulas.
    ///
    /// Panics on an empty iterator.
    pub fn disjunction(items: impl IntoIterator<Item = Ltl>) -> Self {
        items
            .into_iter()
            .reduce(Ltl::or)
            .expect("disjunction of zero formulas")
    }

    /// The sub-formula closure SubF.
    pub fn subformulas(&self) -> HashSet<&Ltl> {
        let mut out = HashSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas<'a>(&'a self, out: &mut HashSet<&'a Ltl>) {
        if !out.insert(self) {
            return;
        }
        match self {
            Ltl::Prop(_) => {}
            Ltl::Unary(_, c) => c.collect_subformulas(out),
            Ltl::Binary(_, l, r) => {
                l.collect_subformulas(out);
                r.collect_subformulas(out);
            }
        }
    }

    /// DAG size: the number of distinct sub-formulae.
    pub fn size(&self) -> usize {
        self.subformulas().len()
    }

    /// Propositions occurring in the formula.
    pub fn propositions(&self) -> BTreeSet<Proposition> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Ltl::Prop(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Pre-order traversal over every node occurrence.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Ltl)) {
        f(self);
        match self {
            Ltl::Prop(_) => {}
            Ltl::Unary(_, c) => c.visit(f),
            Ltl::Binary(_, l, r) => {
                l.visit(f);
                r.visit(f);
            }
        }
    }

    pub fn is_temporal_free(&self) -> bool {
        let mut free = true;
        self.visit(&mut |f| match f {
            Ltl::Unary(op, _) if op.is_temporal() => free = false,
            Ltl::Binary(op, _, _) if op.is_temporal() => free = false,
            _ => {}
        });
        free
    }

    pub fn conforms(&self, ops: &OperatorSet) -> bool {
        let mut ok = true;
        self.visit(&mut |f| match f {
            Ltl::Prop(_) => {}
            Ltl::Unary(op, _) => ok &= ops.unary.contains(op),
            Ltl::Binary(op, _, _) => ok &= ops.binary.contains(op),
        });
        ok
    }
}

/// The temporal part of a quantified CTL formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathFormula {
    /// `op` is one of X, F, G.
    Unary(UnaryOp, Arc<Ctl>),
    /// `op` is one of U, R, W, M.
    Binary(BinaryOp, Arc<Ctl>, Arc<Ctl>),
}

/// A CTL state formula. Every temporal operator sits directly under exactly
/// one quantifier; the constructors enforce this.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ctl {
    Prop(Proposition),
    Not(Arc<Ctl>),
    /// `op` is one of the logical connectives.
    Binary(BinaryOp, Arc<Ctl>, Arc<Ctl>),
    Quantified(Quantifier, PathFormula),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CtlShapeError {
    #[error("temporal operator `{0}` must appear directly under a path quantifier")]
    UnquantifiedTemporal(&'static str),
    #[error("operator `{0}` is not temporal and cannot be quantified")]
    QuantifiedLogical(&'static str),
}

impl Ctl {
    pub fn prop(p: Proposition) -> Self {
        Ctl::Prop(p)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Ctl) -> Self {
        Ctl::Not(Arc::new(child))
    }

    pub fn binary(op: BinaryOp, left: Ctl, right: Ctl) -> Result<Self, CtlShapeError> {
        if op.is_temporal() {
            return Err(CtlShapeError::UnquantifiedTemporal(op.symbol()));
        }
        Ok(Ctl::Binary(op, Arc::new(left), Arc::new(right)))
    }

    pub fn quantified_unary(q: Quantifier, op: UnaryOp, child: Ctl) -> Result<Self, CtlShapeError> {
        if !op.is_temporal() {
            return Err(CtlShapeError::QuantifiedLogical(op.symbol()));
        }
        Ok(Ctl::Quantified(q, PathFormula::Unary(op, Arc::new(child))))
    }

    pub fn quantified_binary(
        q: Quantifier,
        op: BinaryOp,
        left: Ctl,
        right: Ctl,
    ) -> Result<Self, CtlShapeError> {
        if !op.is_temporal() {
            return Err(CtlShapeError::QuantifiedLogical(op.symbol()));
        }
        Ok(Ctl::Quantified(
            q,
            PathFormula::Binary(op, Arc::new(left), Arc::new(right)),
        ))
    }

    /// Checks the state/path stratification for values built by hand.
    pub fn check_shape(&self) -> Result<(), CtlShapeError> {
        match self {
            Ctl::Prop(_) => Ok(()),
            Ctl::Not(c) => c.check_shape(),
            Ctl::Binary(op, l, r) => {
                if op.is_temporal() {
                    return Err(CtlShapeError::UnquantifiedTemporal(op.symbol()));
                }
                l.check_shape()?;
                r.check_shape()
            }
            Ctl::Quantified(_, PathFormula::Unary(op, c)) => {
                if !op.is_temporal() {
                    return Err(CtlShapeError::QuantifiedLogical(op.symbol()));
                }
                c.check_shape()
            }
            Ctl::Quantified(_, PathFormula::Binary(op, l, r)) => {
                if !op.is_temporal() {
                    return Err(CtlShapeError::QuantifiedLogical(op.symbol()));
                }
                l.check_shape()?;
                r.check_shape()
            }
        }
    }

    /// State-formula children, in order.
    pub fn children(&self) -> Vec<&Ctl> {
        match self {
            Ctl::Prop(_) => vec![],
            Ctl::Not(c) | Ctl::Quantified(_, PathFormula::Unary(_, c)) => vec![c],
            Ctl::Binary(_, l, r) | Ctl::Quantified(_, PathFormula::Binary(_, l, r)) => {
                vec![l, r]
            }
        }
    }

    /// SubF: a quantified node contributes itself and the closure of its
    /// state-formula children; the bare path formula is not a member.
    pub fn subformulas(&self) -> HashSet<&Ctl> {
        let mut out = HashSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas<'a>(&'a self, out: &mut HashSet<&'a Ctl>) {
        if !out.insert(self) {
            return;
        }
        for c in self.children() {
            c.collect_subformulas(out);
        }
    }

    pub fn size(&self) -> usize {
        self.subformulas().len()
    }

    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Ctl)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    pub fn propositions(&self) -> BTreeSet<Proposition> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Ctl::Prop(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    pub fn conforms(&self, ops: &OperatorSet) -> bool {
        let mut ok = true;
        self.visit(&mut |f| match f {
            Ctl::Prop(_) => {}
            Ctl::Not(_) => ok &= ops.unary.contains(&UnaryOp::Not),
            Ctl::Binary(op, _, _) => ok &= ops.binary.contains(op),
            Ctl::Quantified(q, PathFormula::Unary(op, _)) => {
                ok &= ops.quantifiers.contains(q) && ops.unary.contains(op)
            }
            Ctl::Quantified(q, PathFormula::Binary(op, _, _)) => {
                ok &= ops.quantifiers.contains(q) && ops.binary.contains(op)
            }
        });
        ok
    }
}

/// Either kind of formula, for APIs that serve both logics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Ltl(Ltl),
    Ctl(Ctl),
}

impl Formula {
    pub fn logic(&self) -> Logic {
        match self {
            Formula::Ltl(_) => Logic::Ltl,
            Formula::Ctl(_) => Logic::Ctl,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Ltl(f) => f.size(),
            Formula::Ctl(f) => f.size(),
        }
    }

    pub fn conforms(&self, ops: &OperatorSet) -> bool {
        match self {
            Formula::Ltl(f) => f.conforms(ops),
            Formula::Ctl(f) => f.conforms(ops),
        }
    }

    pub fn propositions(&self) -> BTreeSet<Proposition> {
        match self {
            Formula::Ltl(f) => f.propositions(),
            Formula::Ctl(f) => f.propositions(),
        }
    }

    pub fn parse(text: &str, logic: Logic, alphabet: &Alphabet) -> Result<Self, ParseError> {
        match logic {
            Logic::Ltl => parse_ltl(text, alphabet).map(Formula::Ltl),
            Logic::Ctl => parse_ctl(text, alphabet).map(Formula::Ctl),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Ltl(x) => x.fmt(f),
            Formula::Ctl(x) => x.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown operator `{0}` (expected NOT, X, F, G, AND, OR, IMPLIES, IFF, U, R, W, M, E, A)")]
pub struct UnknownOperator(pub String);

/// A restriction of the operator vocabulary. For CTL, a temporal operator is
/// usable only together with an allowed quantifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSet {
    pub unary: BTreeSet<UnaryOp>,
    pub binary: BTreeSet<BinaryOp>,
    pub quantifiers: BTreeSet<Quantifier>,
}

impl OperatorSet {
    pub fn full() -> Self {
        OperatorSet {
            unary: UnaryOp::ALL.into_iter().collect(),
            binary: BinaryOp::ALL.into_iter().collect(),
            quantifiers: Quantifier::ALL.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        OperatorSet {
            unary: BTreeSet::new(),
            binary: BTreeSet::new(),
            quantifiers: BTreeSet::new(),
        }
    }

    /// Parses a comma-separated list such as `"OR,AND,U"`. Symbols (`|`, `&`,
    /// `->`, ...) are accepted as aliases. When no quantifier is listed both
    /// `E` and `A` are allowed.
    pub fn parse_list(text: &str) -> Result<Self, UnknownOperator> {
        let mut ops = OperatorSet::empty();
        for raw in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let upper = raw.to_ascii_uppercase();
            if let Some(op) = UnaryOp::ALL
                .into_iter()
                .find(|op| op.name() == upper || op.symbol() == raw)
            {
                ops.unary.insert(op);
            } else if let Some(op) = BinaryOp::ALL
                .into_iter()
                .find(|op| op.name() == upper || op.symbol() == raw)
            {
                ops.binary.insert(op);
            } else if let Some(q) = Quantifier::ALL.into_iter().find(|q| q.symbol() == upper) {
                ops.quantifiers.insert(q);
            } else {
                return Err(UnknownOperator(raw.to_string()));
            }
        }
        if ops.quantifiers.is_empty() {
            ops.quantifiers = Quantifier::ALL.into_iter().collect();
        }
        Ok(ops)
    }

    /// Canonical comma-separated rendering.
    pub fn to_list(&self) -> String {
        self.unary
            .iter()
            .map(|op| op.name())
            .chain(self.binary.iter().map(|op| op.name()))
            .chain(self.quantifiers.iter().map(|q| q.symbol()))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Default for OperatorSet {
    fn default() -> Self {
        OperatorSet::full()
    }
}

/// Number of occurrences of each operator name; used by reports.
pub fn operator_histogram(f: &Ltl) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    f.visit(&mut |g| match g {
        Ltl::Prop(_) => {}
        Ltl::Unary(op, _) => *out.entry(op.name()).or_insert(0) += 1,
        Ltl::Binary(op, _, _) => *out.entry(op.name()).or_insert(0) += 1,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str) -> Ltl {
        Ltl::prop(Proposition::new(name).unwrap())
    }

    #[test]
    fn proposition_names() {
        assert!(Proposition::new("x1_bar").is_ok());
        assert!(Proposition::new("_a").is_ok());
        assert_eq!(Proposition::new(""), Err(PropositionError::Empty));
        assert!(matches!(Proposition::new("1x"), Err(PropositionError::Invalid(_))));
        assert!(matches!(Proposition::new("a-b"), Err(PropositionError::Invalid(_))));
        assert!(matches!(Proposition::new("U"), Err(PropositionError::Reserved(_))));
    }

    #[test]
    fn size_of_proposition_is_one() {
        assert_eq!(p("x").size(), 1);
        assert_eq!(p("x").subformulas().len(), 1);
    }

    #[test]
    fn repeated_leaf_collapses() {
        let f = Ltl::or(p("x"), p("x"));
        let sub = f.subformulas();
        assert_eq!(sub.len(), 2);
        assert!(sub.contains(&p("x")));
        assert!(sub.contains(&f));
    }

    #[test]
    fn iff_implies_example_has_five_subformulas() {
        let inner = Ltl::binary(BinaryOp::Iff, p("x1"), p("x2"));
        let f = Ltl::binary(BinaryOp::Implies, inner.clone(), p("x3"));
        let sub = f.subformulas();
        let expected: HashSet<Ltl> =
            [p("x1"), p("x2"), p("x3"), inner, f.clone()].into_iter().collect();
        assert_eq!(sub.into_iter().cloned().collect::<HashSet<_>>(), expected);
    }

    #[test]
    fn sizes() {
        let chain = Ltl::disjunction([p("x1"), p("x2"), p("x3")]);
        assert_eq!(chain.size(), 5);
        let f = Ltl::unary(UnaryOp::Finally, Ltl::binary(BinaryOp::Until, p("p"), p("q")));
        assert_eq!(f.size(), 4);
        // (p U q) & X(p U q): the shared until counts once
        let u = Ltl::binary(BinaryOp::Until, p("p"), p("q"));
        let g = Ltl::and(u.clone(), Ltl::unary(UnaryOp::Next, u));
        assert_eq!(g.size(), 5);
    }

    #[test]
    fn conformance() {
        let or = Ltl::or(p("x1"), p("x2"));
        let only = |list: &str| OperatorSet::parse_list(list).unwrap();
        assert!(or.conforms(&only("OR")));
        assert!(!or.conforms(&only("AND")));
        let g = Ltl::unary(UnaryOp::Globally, Ltl::binary(BinaryOp::Until, p("p"), p("q")));
        assert!(g.conforms(&only("G,U")));
        assert!(!g.conforms(&only("U")));
    }

    #[test]
    fn ctl_subformulas_skip_path_formula() {
        let pp = Ctl::prop(Proposition::new("p").unwrap());
        let ef = Ctl::quantified_unary(Quantifier::Exists, UnaryOp::Finally, pp.clone()).unwrap();
        let af = Ctl::quantified_unary(Quantifier::Forall, UnaryOp::Finally, pp).unwrap();
        assert_eq!(ef.size(), 2);
        let both = Ctl::binary(BinaryOp::And, af, ef).unwrap();
        assert_eq!(both.size(), 4);
    }

    #[test]
    fn ctl_shape_errors() {
        let pp = Ctl::prop(Proposition::new("p").unwrap());
        assert!(Ctl::binary(BinaryOp::Until, pp.clone(), pp.clone()).is_err());
        assert!(Ctl::quantified_unary(Quantifier::Exists, UnaryOp::Not, pp.clone()).is_err());
        assert!(Ctl::quantified_binary(Quantifier::Forall, BinaryOp::Or, pp.clone(), pp).is_err());
    }

    #[test]
    fn canonical_order_follows_token_ranks() {
        let a = p("a");
        let b = p("b");
        assert!(a < b);
        assert!(b < Ltl::not(a.clone()));
        assert!(Ltl::not(b.clone()) < Ltl::unary(UnaryOp::Next, a.clone()));
        assert!(Ltl::unary(UnaryOp::Globally, b.clone()) < Ltl::and(a.clone(), a.clone()));
        assert!(
            Ltl::binary(BinaryOp::Until, b.clone(), b.clone())
                < Ltl::binary(BinaryOp::MightyRelease, a.clone(), a.clone())
        );
        assert!(Ltl::or(a.clone(), b.clone()) < Ltl::or(b, a));
    }

    #[test]
    fn operator_list_parsing() {
        let ops = OperatorSet::parse_list("OR, and ,U,NOT").unwrap();
        assert_eq!(ops.binary.len(), 3);
        assert_eq!(ops.unary.len(), 1);
        assert_eq!(ops.quantifiers.len(), 2);
        assert_eq!(ops.to_list(), "NOT,AND,OR,U,E,A");
        assert!(OperatorSet::parse_list("XOR").is_err());
        let ctl = OperatorSet::parse_list("F,E").unwrap();
        assert_eq!(ctl.quantifiers.len(), 1);
    }
}
