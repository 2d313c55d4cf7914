//! Instance generators for the property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::formulas::{Alphabet, BinaryOp, Ltl, Proposition, UnaryOp};
use crate::models::{Letter, UltimatelyPeriodicWord};
use crate::reductions::{CnfInstance, Literal};

/// The alphabet `{p, q, r, s, t, u}` cut to `n` propositions.
pub fn alphabet(n: usize) -> Alphabet {
    const NAMES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
    assert!((1..=NAMES.len()).contains(&n), "1 to 6 propositions are supported");
    Alphabet::from_names(&NAMES[..n]).expect("fixed names are valid")
}

/// All letters over `alpha`; letter `i` contains the `j`-th proposition
/// iff bit `j` of `i` is set.
pub fn letters(alpha: &Alphabet) -> Vec<Letter> {
    let props: Vec<&Proposition> = alpha.iter().collect();
    (0..1usize << props.len())
        .map(|mask| {
            props
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, p)| (*p).clone())
                .collect()
        })
        .collect()
}

/// Every non-empty set of at most `max_arity` literals over `1..=m`, in a
/// fixed order.
pub fn clause_pool(m: usize, max_arity: usize) -> Vec<Vec<Literal>> {
    let literals: Vec<Literal> = (1..=m)
        .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << literals.len()) {
        if mask.count_ones() as usize <= max_arity {
            out.push(
                (0..literals.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| literals[i])
                    .collect(),
            );
        }
    }
    out.sort_by_key(|c: &Vec<Literal>| (c.len(), c.clone()));
    out
}

/// Every CNF over `m` variables made of a multiset of at most `max_clauses`
/// clauses from [`clause_pool`] (including the empty CNF).
pub fn exhaustive_cnfs(m: usize, max_clauses: usize, max_arity: usize) -> Vec<CnfInstance> {
    let pool = clause_pool(m, max_arity);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        pool: &[Vec<Literal>],
        m: usize,
        start: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<CnfInstance>,
    ) {
        let clauses = chosen.iter().map(|&i| pool[i].clone()).collect();
        out.push(CnfInstance::new(m, clauses).expect("pool clauses are valid"));
        if left == 0 {
            return;
        }
        for i in start..pool.len() {
            chosen.push(i);
            rec(pool, m, i, left - 1, chosen, out);
            chosen.pop();
        }
    }
    rec(&pool, m, 0, max_clauses, &mut chosen, &mut out);
    out
}

/// A random CNF with `m` variables and `n` clauses of 1 to 3 distinct
/// literals.
pub fn random_cnf(rng: &mut impl Rng, m: usize, n: usize) -> CnfInstance {
    let literals: Vec<Literal> = (1..=m)
        .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
        .collect();
    let clauses = (0..n)
        .map(|_| {
            let arity = rng.gen_range(1..=3.min(literals.len()));
            let mut c: Vec<Literal> = literals.choose_multiple(rng, arity).copied().collect();
            c.sort();
            c
        })
        .collect();
    CnfInstance::new(m, clauses).expect("generated clauses are valid")
}

pub fn random_letter(rng: &mut impl Rng, alpha: &Alphabet) -> Letter {
    alpha.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

/// A random lasso word with `|u| + |v| ≤ max_len`.
pub fn random_word(rng: &mut impl Rng, alpha: &Alphabet, max_len: usize) -> UltimatelyPeriodicWord {
    let total = rng.gen_range(1..=max_len);
    let period = rng.gen_range(1..=total);
    let prefix = (0..total - period).map(|_| random_letter(rng, alpha)).collect();
    let period = (0..period).map(|_| random_letter(rng, alpha)).collect();
    UltimatelyPeriodicWord::new(prefix, period).expect("period is non-empty")
}

/// A random formula with at most `max_size` distinct sub-formulae, using
/// every operator.
pub fn random_ltl(rng: &mut impl Rng, alpha: &Alphabet, max_size: usize) -> Ltl {
    let props: Vec<&Proposition> = alpha.iter().collect();
    fn tree(rng: &mut impl Rng, props: &[&Proposition], budget: usize) -> Ltl {
        if budget <= 1 || rng.gen_bool(0.25) {
            return Ltl::Prop((*props.choose(rng).unwrap()).clone());
        }
        if budget == 2 || rng.gen_bool(0.4) {
            let op = *UnaryOp::ALL.choose(rng).unwrap();
            Ltl::unary(op, tree(rng, props, budget - 1))
        } else {
            let op = *BinaryOp::ALL.choose(rng).unwrap();
            let left = rng.gen_range(1..budget - 1);
            Ltl::binary(
                op,
                tree(rng, props, left),
                tree(rng, props, budget - 1 - left),
            )
        }
    }
    loop {
        let budget = rng.gen_range(1..=max_size + 2);
        let f = tree(rng, &props, budget);
        if f.size() <= max_size {
            return f;
        }
    }
}
