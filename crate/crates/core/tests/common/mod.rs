//! Reference implementations used as oracles by the integration tests. They
//! deliberately avoid the library's evaluation code.

#![allow(dead_code)]

use std::collections::HashSet;

use templearn::formulas::{BinaryOp, Ctl, Ltl, PathFormula, Quantifier, UnaryOp};
use templearn::models::{KripkeStructure, Letter, UltimatelyPeriodicWord};
use templearn::reductions::{CnfInstance, Literal};

/// `w, i ⊨ f` for a position `i < |u| + |v|`, straight from the semantics
/// over infinite words. Positions are walked one successor at a time; `n`
/// steps from any position visit every position that is ever reached.
pub fn naive_holds(f: &Ltl, w: &UltimatelyPeriodicWord, i: usize) -> bool {
    let u = w.prefix().len();
    let letters: Vec<&Letter> = w.prefix().iter().chain(w.period()).collect();
    let n = letters.len();
    let succ = |j: usize| if j + 1 < n { j + 1 } else { u };
    // i, succ(i), succ(succ(i)), ... (n positions)
    let future = |i: usize| {
        std::iter::successors(Some(i), move |&j| Some(succ(j))).take(n)
    };
    let at = |g: &Ltl, j: usize| naive_holds(g, w, j);
    match f {
        Ltl::Prop(p) => letters[i].contains(p),
        Ltl::Unary(UnaryOp::Not, g) => !at(g, i),
        Ltl::Unary(UnaryOp::Next, g) => at(g, succ(i)),
        Ltl::Unary(UnaryOp::Finally, g) => future(i).any(|j| at(g, j)),
        Ltl::Unary(UnaryOp::Globally, g) => future(i).all(|j| at(g, j)),
        Ltl::Binary(op, a, b) => {
            // Some position satisfies `stop` and every earlier one `keep`
            // (the stop position itself must satisfy `keep` when `inclusive`).
            let first = |stop: &Ltl, keep: &Ltl, inclusive: bool| -> Option<bool> {
                for j in future(i) {
                    if at(stop, j) {
                        return Some(!inclusive || at(keep, j));
                    }
                    if !at(keep, j) {
                        return Some(false);
                    }
                }
                None
            };
            match op {
                BinaryOp::And => at(a, i) && at(b, i),
                BinaryOp::Or => at(a, i) || at(b, i),
                BinaryOp::Implies => !at(a, i) || at(b, i),
                BinaryOp::Iff => at(a, i) == at(b, i),
                BinaryOp::Until => first(b, a, false).unwrap_or(false),
                BinaryOp::WeakUntil => first(b, a, false).unwrap_or(true),
                BinaryOp::Release => first(a, b, true).unwrap_or(true),
                BinaryOp::MightyRelease => first(a, b, true).unwrap_or(false),
            }
        }
    }
}

pub fn naive_check(f: &Ltl, w: &UltimatelyPeriodicWord) -> bool {
    naive_holds(f, w, 0)
}

/// CTL by explicit path reasoning on small structures: `E`/`A` over all
/// lassos of the structure's unrolling, as an independent oracle for the
/// labelling algorithm.
pub fn brute_ctl(f: &Ctl, m: &KripkeStructure) -> bool {
    m.initial().iter().all(|&s| brute_ctl_at(f, m, s))
}

pub fn brute_ctl_at(f: &Ctl, m: &KripkeStructure, s: usize) -> bool {
    match f {
        Ctl::Prop(p) => m.label(s).contains(p),
        Ctl::Not(g) => !brute_ctl_at(g, m, s),
        Ctl::Binary(op, a, b) => {
            let (x, y) = (brute_ctl_at(a, m, s), brute_ctl_at(b, m, s));
            match op {
                BinaryOp::And => x && y,
                BinaryOp::Or => x || y,
                BinaryOp::Implies => !x || y,
                BinaryOp::Iff => x == y,
                _ => unreachable!("temporal operators are quantified"),
            }
        }
        Ctl::Quantified(q, path) => {
            // Every path from s is determined, up to the satisfaction of a
            // path formula over state formulas, by a lasso of length at
            // most 2·|S|: enumerate all such lassos.
            let paths = lassos(m, s);
            let holds = |l: &(Vec<usize>, usize)| path_holds(path, m, l);
            match q {
                Quantifier::Exists => paths.iter().any(holds),
                Quantifier::Forall => paths.iter().all(holds),
            }
        }
    }
}

/// All simple lassos from `s`: a path of distinct states followed by an
/// edge back to one of them (`loop_start`).
fn lassos(m: &KripkeStructure, s: usize) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    let mut path = vec![s];
    fn rec(m: &KripkeStructure, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, usize)>) {
        let last = *path.last().unwrap();
        for &t in m.successors(last) {
            if let Some(pos) = path.iter().position(|&x| x == t) {
                out.push((path.clone(), pos));
            } else {
                path.push(t);
                rec(m, path, out);
                path.pop();
            }
        }
    }
    rec(m, &mut path, &mut out);
    out
}

/// Path formulas whose operands are state formulas: evaluate the operands
/// per state and reuse the LTL oracle on the lasso's letter encoding.
fn path_holds(path: &PathFormula, m: &KripkeStructure, lasso: &(Vec<usize>, usize)) -> bool {
    let (states, loop_start) = lasso;
    let a = templearn::formulas::Proposition::new("a").unwrap();
    let b = templearn::formulas::Proposition::new("b").unwrap();
    let letter = |st: usize, l: &Ctl, r: Option<&Ctl>| -> Letter {
        let mut out = Letter::new();
        if brute_ctl_at(l, m, st) {
            out.insert(a.clone());
        }
        if let Some(r) = r {
            if brute_ctl_at(r, m, st) {
                out.insert(b.clone());
            }
        }
        out
    };
    let (formula, left, right) = match path {
        PathFormula::Unary(op, g) => (Ltl::unary(*op, Ltl::Prop(a.clone())), &**g, None),
        PathFormula::Binary(op, l, r) => (
            Ltl::binary(*op, Ltl::Prop(a.clone()), Ltl::Prop(b.clone())),
            &**l,
            Some(&**r),
        ),
    };
    let encode = |sts: &[usize]| sts.iter().map(|&st| letter(st, left, right)).collect();
    let w = UltimatelyPeriodicWord::new(
        encode(&states[..*loop_start]),
        encode(&states[*loop_start..]),
    )
    .unwrap();
    naive_check(&formula, &w)
}

/// Number of distinct sub-formulae, by collecting printed forms.
pub fn dag_size(f: &Ltl) -> usize {
    fn collect(f: &Ltl, seen: &mut HashSet<String>) {
        seen.insert(format!("{f:?}"));
        match f {
            Ltl::Prop(_) => {}
            Ltl::Unary(_, g) => collect(g, seen),
            Ltl::Binary(_, l, r) => {
                collect(l, seen);
                collect(r, seen);
            }
        }
    }
    let mut seen = HashSet::new();
    collect(f, &mut seen);
    seen.len()
}

pub fn satisfies(cnf: &CnfInstance, values: &[bool]) -> bool {
    cnf.clauses()
        .iter()
        .all(|c| c.iter().any(|l: &Literal| values[l.var - 1] == l.positive))
}

/// Exhaustive satisfiability check.
pub fn brute_sat(cnf: &CnfInstance) -> bool {
    let m = cnf.variable_count();
    (0..1u32 << m).any(|mask| {
        let values: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
        satisfies(cnf, &values)
    })
}

/// All CNFs over `m` variables built from at most `max_clauses` clauses
/// (with repetition, order irrelevant), each clause a non-empty set of at
/// most three literals.
pub fn all_small_cnfs(m: usize, max_clauses: usize) -> Vec<CnfInstance> {
    let literals: Vec<i64> = (1..=m as i64).flat_map(|v| [v, -v]).collect();
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    for mask in 1u32..1 << literals.len() {
        if mask.count_ones() <= 3 {
            clauses.push(
                (0..literals.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| literals[i])
                    .collect(),
            );
        }
    }
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(
        m: usize,
        clauses: &[Vec<i64>],
        start: usize,
        left: usize,
        pick: &mut Vec<usize>,
        out: &mut Vec<CnfInstance>,
    ) {
        let chosen: Vec<&[i64]> = pick.iter().map(|&i| clauses[i].as_slice()).collect();
        out.push(CnfInstance::from_ints(m, &chosen).unwrap());
        if left > 0 {
            for i in start..clauses.len() {
                pick.push(i);
                rec(m, clauses, i, left - 1, pick, out);
                pick.pop();
            }
        }
    }
    rec(m, &clauses, 0, max_clauses, &mut pick, &mut out);
    out
}
