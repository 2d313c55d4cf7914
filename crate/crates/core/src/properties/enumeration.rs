//! Suites that run over every formula up to a given size.
//!
//! Formulas of the largest size are never materialized: their properties
//! are derived from per-node facts about their operands (proposition mask,
//! closure, `tr` image), which keeps the size-6 enumeration over two
//! propositions (about 2·10⁸ formulas) within reach. Smaller formulas are
//! additionally built and checked through the public functions.

use std::collections::HashMap;
use std::time::Instant;

use rustc_hash::FxHashMap;

use super::{generate, SuiteReport, Tally};
use crate::formulas::{BinaryOp, Ctl, Logic, Ltl, OperatorSet, Proposition, UnaryOp};
use crate::learner::{union_into, union_len, Candidate, Connective, Evaluator, StructuralEnumerator};
use crate::models::{embed_word, UltimatelyPeriodicWord};
use crate::semantics::{check_ctl, check_ltl, KripkeFrame, LassoFrame, SatisfactionVector};
use crate::transforms::{
    analyze_conciseness, insert_quantifiers, is_concise, strip_quantifiers, tr, tr_binary_case,
    tr_unary_case, TrCase,
};

const NONE: u32 = u32::MAX;

fn bits(v: &SatisfactionVector) -> u64 {
    (0..v.len()).filter(|&i| v.get(i)).fold(0, |acc, i| acc | 1 << i)
}

fn vector(bits: u64, len: usize) -> SatisfactionVector {
    SatisfactionVector::from_fn(len, |i| bits >> i & 1 == 1)
}

fn is_temporal(c: Connective) -> bool {
    match c {
        Connective::Unary(op) => op.is_temporal(),
        Connective::Binary(op) => op.is_temporal(),
        _ => true,
    }
}

/// One constant word `α^ω` per letter, letter `i` at position `i`.
fn constant_words(props: usize) -> (Vec<Proposition>, Vec<UltimatelyPeriodicWord>) {
    let alpha = generate::alphabet(props);
    let words = generate::letters(&alpha)
        .into_iter()
        .map(UltimatelyPeriodicWord::constant)
        .collect();
    (alpha.iter().cloned().collect(), words)
}

#[derive(Debug, Clone, Copy)]
struct TrValue {
    id: u32,
    size: usize,
    sig: u64,
    temporal: bool,
}

/// Hash-consed images under `tr`, each with its closure and its truth
/// values on the constant words.
struct TrArena<'a> {
    frame: &'a LassoFrame,
    full: u64,
    map: FxHashMap<(Connective, u32, u32), u32>,
    leaves: Vec<u32>,
    closures: Vec<Vec<u32>>,
    sigs: Vec<u64>,
    temporal: Vec<bool>,
}

impl<'a> TrArena<'a> {
    fn new(frame: &'a LassoFrame, props: &[Proposition]) -> Self {
        let mut arena = TrArena {
            frame,
            full: if frame.len() == 64 { u64::MAX } else { (1 << frame.len()) - 1 },
            map: FxHashMap::default(),
            leaves: Vec::new(),
            closures: Vec::new(),
            sigs: Vec::new(),
            temporal: Vec::new(),
        };
        for (i, p) in props.iter().enumerate() {
            arena.leaves.push(i as u32);
            arena.closures.push(vec![i as u32]);
            arena.sigs.push(bits(&frame.prop(p)));
            arena.temporal.push(false);
        }
        arena
    }

    fn value(&self, id: u32) -> TrValue {
        let i = id as usize;
        TrValue {
            id,
            size: self.closures[i].len(),
            sig: self.sigs[i],
            temporal: self.temporal[i],
        }
    }

    fn apply(&self, c: Connective, a: u32, b: u32) -> u64 {
        let sa = self.sigs[a as usize];
        let sb = if b == NONE { 0 } else { self.sigs[b as usize] };
        match c {
            Connective::Unary(UnaryOp::Not) => !sa & self.full,
            Connective::Binary(BinaryOp::And) => sa & sb,
            Connective::Binary(BinaryOp::Or) => sa | sb,
            Connective::Binary(BinaryOp::Implies) => (!sa | sb) & self.full,
            Connective::Binary(BinaryOp::Iff) => !(sa ^ sb) & self.full,
            // Temporal images are themselves a violation; evaluate them
            // faithfully anyway.
            _ => {
                let n = self.frame.len();
                let (va, vb) = (vector(sa, n), vector(sb, n));
                let args: Vec<&SatisfactionVector> = if b == NONE { vec![&va] } else { vec![&va, &vb] };
                bits(&self.frame.apply(c, &args))
            }
        }
    }

    fn node(&mut self, c: Connective, a: u32, b: u32, store: bool) -> TrValue {
        if let Some(&id) = self.map.get(&(c, a, b)) {
            return self.value(id);
        }
        let (ca, cb) = (&self.closures[a as usize], (b != NONE).then(|| &self.closures[b as usize]));
        let size = 1 + cb.map_or(ca.len(), |cb| union_len(ca, cb));
        let temporal = is_temporal(c)
            || self.temporal[a as usize]
            || (b != NONE && self.temporal[b as usize]);
        let sig = self.apply(c, a, b);
        if !store {
            return TrValue {
                id: NONE,
                size,
                sig,
                temporal,
            };
        }
        let id = self.closures.len() as u32;
        let mut closure = Vec::with_capacity(size);
        match cb {
            Some(cb) => union_into(ca, cb, &mut closure),
            None => closure.extend_from_slice(ca),
        }
        closure.push(id);
        self.closures.push(closure);
        self.sigs.push(sig);
        self.temporal.push(temporal);
        self.map.insert((c, a, b), id);
        self.value(id)
    }
}

#[derive(Debug, Clone, Copy)]
struct NodeFacts {
    tr: u32,
    mask: u32,
    temporal_free: bool,
    concise: bool,
}

/// The `tr` image of a candidate, from the images of its operands.
fn tr_image(arena: &mut TrArena, c: &Candidate, facts: &[NodeFacts], store: bool) -> TrValue {
    let fact = |i: u32| facts[i as usize].tr;
    match c.conn {
        None => arena.value(arena.leaves[c.args[0] as usize]),
        Some(Connective::Unary(op)) => {
            let t = fact(c.args[0]);
            match tr_unary_case(op) {
                TrCase::Keep => arena.node(Connective::Unary(op), t, NONE, store),
                _ => arena.value(t),
            }
        }
        Some(Connective::Binary(op)) => {
            let (t1, t2) = (fact(c.args[0]), fact(c.args[1]));
            match tr_binary_case(op) {
                TrCase::Keep => arena.node(Connective::Binary(op), t1, t2, store),
                TrCase::Replace(new) => arena.node(Connective::Binary(new), t1, t2, store),
                TrCase::Right | TrCase::Drop => arena.value(t2),
            }
        }
        Some(other) => unreachable!("{other:?} in LTL"),
    }
}

/// Which checks an enumeration pass performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationChecks {
    pub tr: bool,
    pub counting: bool,
    pub conciseness: bool,
    pub distinguishability: bool,
    pub round_trip: bool,
}

impl EnumerationChecks {
    pub const ALL: Self = EnumerationChecks {
        tr: true,
        counting: true,
        conciseness: true,
        distinguishability: true,
        round_trip: true,
    };

    pub const TR_ONLY: Self = EnumerationChecks {
        tr: true,
        counting: false,
        conciseness: false,
        distinguishability: false,
        round_trip: false,
    };

    /// Everything except the `tr` lemma.
    pub const WITHOUT_TR: Self = EnumerationChecks {
        tr: false,
        ..Self::ALL
    };
}

/// The `tr` lemma, the counting lemma, the conciseness lemma, the
/// distinguishability lemma, and the quantifier round trip, over every LTL
/// formula of size at most `max_size` on `props` propositions.
pub fn ltl_enumeration_suites(props: usize, max_size: usize) -> Vec<SuiteReport> {
    ltl_enumeration_checks(props, max_size, EnumerationChecks::ALL)
}

/// Like [`ltl_enumeration_suites`], restricted to the selected checks; one
/// report per selected check, in the same order.
pub fn ltl_enumeration_checks(
    props: usize,
    max_size: usize,
    checks: EnumerationChecks,
) -> Vec<SuiteReport> {
    let start = Instant::now();
    let (prop_list, words) = constant_words(props);
    let frame = LassoFrame::new(&words);
    let conns = Connective::for_logic(Logic::Ltl, &OperatorSet::full());
    let mut en = StructuralEnumerator::new(&frame, prop_list.clone(), &conns);
    let mut arena = TrArena::new(&frame, &prop_list);
    let mut facts: Vec<NodeFacts> = Vec::new();
    let mut memo: HashMap<u32, Ltl> = HashMap::new();
    let mut small_memo: HashMap<u32, Ltl> = HashMap::new();
    let mut closure = Vec::new();
    let mut t_tr = Tally::new("transforms.tr");
    let mut t_count = Tally::new("transforms.counting");
    let mut t_concise = Tally::new("transforms.conciseness");
    let mut t_dist = Tally::new("transforms.distinguishability");
    let mut t_round = Tally::new("transforms.quantifier-round-trip");
    let letters = words.len();

    for k in 1..=max_size {
        let store = k < max_size;
        en.next_layer(store, |en, c, v| {
            let s = bits(v);
            let (mask, temporal_free, concise) = match c.conn {
                None => (1u32 << c.args[0], true, true),
                Some(conn) if conn.arity() == 1 => {
                    let a = facts[c.args[0] as usize];
                    (a.mask, a.temporal_free && !is_temporal(conn), false)
                }
                Some(conn) => {
                    let (a, b) = (facts[c.args[0] as usize], facts[c.args[1] as usize]);
                    (
                        a.mask | b.mask,
                        a.temporal_free && b.temporal_free && !is_temporal(conn),
                        a.concise && b.concise && a.mask & b.mask == 0,
                    )
                }
            };
            let describe = |en: &StructuralEnumerator<LassoFrame>| {
                let f: Ltl = en.build_candidate(c, &mut HashMap::new());
                f.to_string()
            };

            // tr: temporal-free, no larger, same truth value on every α^ω.
            let t = if checks.tr {
                let t = tr_image(&mut arena, c, &facts, store);
                t_tr.check(!t.temporal && t.size <= c.size && t.sig == s, || describe(en));
                t.id
            } else {
                NONE
            };

            // Counting: every Y ⊆ Prop(f) occurs in at least 2|Y|-1
            // distinct sub-formulae, 2|Y| when Y is a proper subset.
            closure.clear();
            match c.conn {
                _ if !checks.counting => {}
                None => {}
                Some(conn) if conn.arity() == 1 => closure.extend_from_slice(en.set(c.args[0])),
                Some(_) => union_into(en.set(c.args[0]), en.set(c.args[1]), &mut closure),
            }
            let mut y = if checks.counting { mask } else { 0 };
            while y != 0 {
                // f itself mentions every proposition of Y.
                let count = 1 + closure
                    .iter()
                    .filter(|&&g| facts[g as usize].mask & y != 0)
                    .count();
                let need = 2 * y.count_ones() as usize - 1 + usize::from(y != mask);
                t_count.check(count >= need, || format!("{} with Y mask {y:b}", describe(en)));
                y = (y - 1) & mask;
            }

            // Conciseness: representing Y concisely forces conciseness and
            // Prop(f) = Y.
            for y in 1u32..1 << props {
                if checks.conciseness && y & !mask == 0 && c.size < 2 * y.count_ones() as usize {
                    let f: Ltl = en.build_candidate(c, &mut small_memo);
                    let report = analyze_conciseness(&f, None);
                    let expected: std::collections::BTreeSet<Proposition> = prop_list
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| y >> j & 1 == 1)
                        .map(|(_, p)| p.clone())
                        .collect();
                    t_concise.check(
                        report.is_concise && report.propositions_used == expected && concise,
                        || format!("{f} with Y mask {y:b}"),
                    );
                }
            }

            // Distinguishability: a temporal-free formula separating α₁^ω
            // from α₂^ω mentions a proposition on which they differ.
            if checks.distinguishability && temporal_free {
                for a in 0..letters {
                    for b in a + 1..letters {
                        if (s >> a ^ s >> b) & 1 == 1 {
                            t_dist.check((a ^ b) as u32 & mask != 0, || {
                                format!("{} on letters {a} and {b}", describe(en))
                            });
                        }
                    }
                }
            }

            if let Some(id) = c.id {
                facts.push(NodeFacts {
                    tr: t,
                    mask,
                    temporal_free,
                    concise,
                });
                // The public functions on the materialized formula.
                let f: Ltl = en.build(id, &mut memo);
                if checks.tr {
                    let image = tr(&f);
                    t_tr.check(
                        f.size() == c.size
                            && image.is_temporal_free()
                            && image.size() == arena.value(t).size
                            && bits(&frame.eval(&image)) == s
                            && bits(&frame.eval(&f)) == s,
                        || f.to_string(),
                    );
                }
                if checks.conciseness {
                    t_concise.check(is_concise(&f) == concise, || f.to_string());
                }
                if checks.round_trip {
                    let ctl = insert_quantifiers(&f);
                    t_round.check(
                        strip_quantifiers(&ctl) == f && ctl.size() == f.size(),
                        || f.to_string(),
                    );
                }
            }
        });
    }
    let elapsed = start.elapsed();
    let selected = [
        checks.tr,
        checks.counting,
        checks.conciseness,
        checks.distinguishability,
        checks.round_trip,
    ];
    [t_tr, t_count, t_concise, t_dist, t_round]
        .into_iter()
        .zip(selected)
        .filter(|(_, on)| *on)
        .map(|(t, _)| t.finish_with(elapsed))
        .collect()
}

/// `φ ⇔₁ •φ` for X, F, G; `φ₂ ⇔₁ φ₁ • φ₂` for U, R; `φ₁ ∨ φ₂ ⇔₁ φ₁ W φ₂`;
/// `φ₁ ∧ φ₂ ⇔₁ φ₁ M φ₂` — for all operands of size at most `operand_size`.
pub fn size1_equivalence_suite(props: usize, operand_size: usize) -> SuiteReport {
    let mut tally = Tally::new("transforms.size1-equivalences");
    let (prop_list, words) = constant_words(props);
    let frame = LassoFrame::new(&words);
    let conns = Connective::for_logic(Logic::Ltl, &OperatorSet::full());
    let mut en = StructuralEnumerator::new(&frame, prop_list, &conns);
    let mut ids = Vec::new();
    for _ in 0..operand_size {
        en.next_layer(true, |_, c, _| ids.push(c.id.expect("stored")));
    }
    let mut memo = HashMap::new();
    let operands: Vec<(Ltl, SatisfactionVector)> = ids
        .iter()
        .map(|&id| {
            let f: Ltl = en.build(id, &mut memo);
            let v = frame.eval(&f);
            (f, v)
        })
        .collect();
    let agree_on_words = |f: &Ltl, g: &Ltl| words.iter().all(|w| check_ltl(f, w) == check_ltl(g, w));

    for (f, v) in &operands {
        for op in [UnaryOp::Next, UnaryOp::Finally, UnaryOp::Globally] {
            let g = Ltl::unary(op, f.clone());
            tally.check(frame.eval(&g) == *v && agree_on_words(f, &g), || g.to_string());
        }
    }
    for (f1, v1) in &operands {
        for (f2, v2) in &operands {
            let expected = [
                (BinaryOp::Until, v2.clone()),
                (BinaryOp::Release, v2.clone()),
                (BinaryOp::WeakUntil, v1.or(v2)),
                (BinaryOp::MightyRelease, v1.and(v2)),
            ];
            for (op, want) in expected {
                let ok = frame.binary(op, v1, v2) == want;
                tally.check(ok, || Ltl::binary(op, f1.clone(), f2.clone()).to_string());
            }
            // Spot-check the composed formulas through the model checker.
            if f1.size() + f2.size() <= 3 {
                let pairs = [
                    (BinaryOp::Until, f2.clone()),
                    (BinaryOp::Release, f2.clone()),
                    (BinaryOp::WeakUntil, Ltl::or(f1.clone(), f2.clone())),
                    (BinaryOp::MightyRelease, Ltl::and(f1.clone(), f2.clone())),
                ];
                for (op, rhs) in pairs {
                    let lhs = Ltl::binary(op, f1.clone(), f2.clone());
                    tally.check(agree_on_words(&lhs, &rhs), || lhs.to_string());
                }
            }
        }
    }
    tally.finish()
}

fn strip_connective(c: Connective) -> Connective {
    match c {
        Connective::QuantifiedUnary(_, op) => Connective::Unary(op),
        Connective::QuantifiedBinary(_, op) => Connective::Binary(op),
        other => other,
    }
}

/// `M_{α^ω} ⊨ f ⟺ α^ω ⊨ strip(f)` for every CTL formula of size at most
/// `max_size` and every letter α; small formulas are also checked through
/// the public functions, including `size(strip(f)) ≤ size(f)`.
pub fn ctl_strip_suite(props: usize, max_size: usize) -> SuiteReport {
    let mut tally = Tally::new("transforms.strip-semantics");
    let (prop_list, words) = constant_words(props);
    let lasso = LassoFrame::new(&words);
    let structures: Vec<_> = words
        .iter()
        .map(|w| embed_word(w).expect("constant words embed"))
        .collect();
    let kripke = KripkeFrame::new(&structures);
    let conns = Connective::for_logic(Logic::Ctl, &OperatorSet::full());
    let mut en = StructuralEnumerator::new(&kripke, prop_list.clone(), &conns);
    let mut stripped: Vec<SatisfactionVector> = Vec::new();
    let mut memo: HashMap<u32, Ctl> = HashMap::new();
    for k in 1..=max_size {
        en.next_layer(k < max_size, |en, c, v| {
            let sv = match c.conn {
                None => lasso.prop(&prop_list[c.args[0] as usize]),
                Some(conn) => {
                    let args: Vec<&SatisfactionVector> = c.args[..conn.arity()]
                        .iter()
                        .map(|&a| &stripped[a as usize])
                        .collect();
                    lasso.apply(strip_connective(conn), &args)
                }
            };
            let ok = (0..words.len())
                .all(|i| kripke.holds_on_structure(v, i) == lasso.holds_on_word(&sv, i));
            tally.check(ok, || {
                let f: Ctl = en.build_candidate(c, &mut HashMap::new());
                f.to_string()
            });
            if k <= 3 {
                let f: Ctl = en.build_candidate(c, &mut memo);
                let g = strip_quantifiers(&f);
                let ok = g.size() <= f.size()
                    && words
                        .iter()
                        .zip(&structures)
                        .all(|(w, m)| check_ctl(&f, m) == check_ltl(&g, w));
                tally.check(ok, || f.to_string());
            }
            if c.id.is_some() {
                stripped.push(sv);
            }
        });
    }
    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations_pass() {
        for report in ltl_enumeration_suites(2, 4) {
            assert!(report.passed(), "{report}");
        }
        assert_eq!(ltl_enumeration_checks(2, 3, EnumerationChecks::TR_ONLY).len(), 1);
        let rest = ltl_enumeration_checks(2, 3, EnumerationChecks::WITHOUT_TR);
        assert_eq!(rest.len(), 4);
        assert!(rest.iter().all(|r| r.passed() && r.tag != "transforms.tr"));
        let r = size1_equivalence_suite(2, 2);
        assert!(r.passed(), "{r}");
        let r = ctl_strip_suite(2, 3);
        assert!(r.passed(), "{r}");
    }
}
