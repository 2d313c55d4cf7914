//! Property tests against the reference implementations in `common`.

mod common;

use proptest::prelude::*;

use templearn::formulas::{BinaryOp, Ctl, Ltl, Proposition, Quantifier, UnaryOp};
use templearn::models::{KripkeStructure, Letter, UltimatelyPeriodicWord};
use templearn::semantics::{check_ctl, satisfaction_vector, KripkeFrame};

const PROPS: [&str; 2] = ["p", "q"];

fn prop() -> impl Strategy<Value = Proposition> {
    prop::sample::select(&PROPS[..]).prop_map(|n| Proposition::new(n).unwrap())
}

fn letter() -> impl Strategy<Value = Letter> {
    prop::collection::btree_set(prop(), 0..=2)
}

fn word() -> impl Strategy<Value = UltimatelyPeriodicWord> {
    (prop::collection::vec(letter(), 0..=3), prop::collection::vec(letter(), 1..=3))
        .prop_map(|(u, v)| UltimatelyPeriodicWord::new(u, v).unwrap())
}

fn ltl() -> impl Strategy<Value = Ltl> {
    prop().prop_map(Ltl::Prop).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (prop::sample::select(&UnaryOp::ALL[..]), inner.clone())
                .prop_map(|(op, f)| Ltl::unary(op, f)),
            (prop::sample::select(&BinaryOp::ALL[..]), inner.clone(), inner)
                .prop_map(|(op, a, b)| Ltl::binary(op, a, b)),
        ]
    })
}

fn ctl() -> impl Strategy<Value = Ctl> {
    const LOGICAL: [BinaryOp; 4] = [BinaryOp::And, BinaryOp::Or, BinaryOp::Implies, BinaryOp::Iff];
    const TEMPORAL_UNARY: [UnaryOp; 3] = [UnaryOp::Next, UnaryOp::Finally, UnaryOp::Globally];
    const TEMPORAL_BINARY: [BinaryOp; 4] = [
        BinaryOp::Until,
        BinaryOp::Release,
        BinaryOp::WeakUntil,
        BinaryOp::MightyRelease,
    ];
    prop().prop_map(Ctl::Prop).prop_recursive(4, 24, 2, |inner| {
        let q = prop::sample::select(&Quantifier::ALL[..]);
        prop_oneof![
            inner.clone().prop_map(Ctl::not),
            (prop::sample::select(&LOGICAL[..]), inner.clone(), inner.clone())
                .prop_map(|(op, a, b)| Ctl::binary(op, a, b).unwrap()),
            (q.clone(), prop::sample::select(&TEMPORAL_UNARY[..]), inner.clone())
                .prop_map(|(q, op, f)| Ctl::quantified_unary(q, op, f).unwrap()),
            (q, prop::sample::select(&TEMPORAL_BINARY[..]), inner.clone(), inner)
                .prop_map(|(q, op, a, b)| Ctl::quantified_binary(q, op, a, b).unwrap()),
        ]
    })
}

/// Total structures on 1 to 3 states.
fn kripke() -> impl Strategy<Value = KripkeStructure> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(letter(), n),
                prop::collection::vec(prop::collection::btree_set(0..n, 1..=n), n),
                prop::collection::btree_set(0..n, 1..=n),
            )
        })
        .prop_map(|(labels, succ, init)| {
            let states = labels
                .into_iter()
                .enumerate()
                .map(|(i, l)| (format!("s{i}"), l))
                .collect();
            let edges: Vec<(usize, usize)> = succ
                .iter()
                .enumerate()
                .flat_map(|(s, ts)| ts.iter().map(move |&t| (s, t)))
                .collect();
            KripkeStructure::new(states, init, edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn ltl_print_parse_round_trip(f in ltl()) {
        let text = f.to_string();
        let back: Ltl = text.parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn ctl_print_parse_round_trip(f in ctl()) {
        let text = f.to_string();
        let back: Ctl = text.parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn lasso_evaluation_matches_reference(f in ltl(), w in word()) {
        let v = satisfaction_vector(&f, &w);
        for i in 0..w.len() {
            prop_assert_eq!(v.get(i), common::naive_holds(&f, &w, i), "position {}", i);
        }
    }

    #[test]
    fn labelling_matches_path_enumeration(f in ctl(), m in kripke()) {
        let frame = KripkeFrame::new([&m]);
        let v = frame.eval(&f);
        for s in 0..m.state_count() {
            prop_assert_eq!(v.get(s), common::brute_ctl_at(&f, &m, s), "state {}", s);
        }
        prop_assert_eq!(check_ctl(&f, &m), common::brute_ctl(&f, &m));
    }

    #[test]
    fn size_is_distinct_subformula_count(f in ltl()) {
        prop_assert_eq!(f.size(), common::dag_size(&f));
    }
}
