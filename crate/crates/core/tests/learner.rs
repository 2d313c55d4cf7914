//! Learner cross-checks: pruned against exhaustive search, against an
//! independent brute force, and basic monotonicity/determinism.

mod common;

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use templearn::formulas::{BinaryOp, Formula, Ltl, OperatorSet, Proposition, UnaryOp};
use templearn::learner::{learn, verify, BoundMode, Dedup, LearnConfig, LearnError};
use templearn::models::{embed_word, Sample, UltimatelyPeriodicWord};
use templearn::properties::generate;
use templearn::semantics::check_separating;

/// A random consistent LTL sample over {p, q}: up to three words per side,
/// each with `|u| + |v| ≤ 3`.
fn random_sample(rng: &mut ChaCha8Rng, bound: usize) -> Sample {
    let alpha = generate::alphabet(2);
    loop {
        let side = |rng: &mut ChaCha8Rng| -> Vec<UltimatelyPeriodicWord> {
            let n = rng.gen_range(0..=3);
            (0..n).map(|_| generate::random_word(rng, &alpha, 3)).collect()
        };
        let (pos, neg) = (side(rng), side(rng));
        if let Ok(s) = Sample::ltl(alpha.clone(), bound, pos, neg) {
            return s;
        }
    }
}

fn random_ops(rng: &mut impl Rng) -> OperatorSet {
    let names = ["NOT", "X", "F", "G", "AND", "OR", "IMPLIES", "IFF", "U", "R", "W", "M"];
    let k = rng.gen_range(1..=names.len());
    OperatorSet::parse_list(&names.choose_multiple(rng, k).copied().collect::<Vec<_>>().join(","))
        .unwrap()
}

fn witness_size(sample: &Sample, config: &LearnConfig) -> Option<usize> {
    let out = learn(sample, config).unwrap();
    assert_eq!(out.decision, out.witness.is_some());
    out.witness.map(|w| {
        assert!(verify(&w, sample, config), "{w} does not verify");
        w.size()
    })
}

#[test]
fn pruned_search_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let bound = rng.gen_range(1..=4);
        let sample = random_sample(&mut rng, bound);
        let ops = random_ops(&mut rng);
        let config = LearnConfig::for_sample(&sample).with_operators(ops);
        let semantic = witness_size(&sample, &config);
        let exhaustive = witness_size(&sample, &config.clone().with_dedup(Dedup::None));
        assert_eq!(semantic, exhaustive, "{}", sample.to_text());
    }
}

#[test]
fn pruned_search_matches_exhaustive_search_on_structures() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let alpha = generate::alphabet(2);
    for _ in 0..150 {
        let bound = rng.gen_range(1..=3);
        let words = random_sample(&mut rng, bound);
        let split = words.words().unwrap();
        // Size-1 words embed as single-state structures; take the periods'
        // first letters to stay within that fragment.
        let embed = |ws: &[UltimatelyPeriodicWord]| {
            let mut seen = HashSet::new();
            ws.iter()
                .map(|w| UltimatelyPeriodicWord::constant(w.period()[0].clone()))
                .filter(|w| seen.insert(w.clone()))
                .map(|w| embed_word(&w).unwrap())
                .collect::<Vec<_>>()
        };
        let Ok(sample) =
            Sample::ctl(alpha.clone(), bound, embed(&split.positives), embed(&split.negatives))
        else {
            continue;
        };
        let config = LearnConfig::for_sample(&sample).with_operators(random_ops(&mut rng));
        let semantic = witness_size(&sample, &config);
        let exhaustive = witness_size(&sample, &config.clone().with_dedup(Dedup::None));
        assert_eq!(semantic, exhaustive, "{}", sample.to_text());
    }
}

/// Every formula over {p, q} with at most three distinct sub-formulae,
/// built without the library's enumerators.
fn formulas_up_to_three() -> Vec<Ltl> {
    let leaves: Vec<Ltl> = ["p", "q"]
        .iter()
        .map(|n| Ltl::prop(Proposition::new(n).unwrap()))
        .collect();
    let grow = |pool: &[Ltl]| -> Vec<Ltl> {
        let mut out: Vec<Ltl> = pool.to_vec();
        for a in pool {
            out.extend(UnaryOp::ALL.iter().map(|&op| Ltl::unary(op, a.clone())));
            for b in pool {
                out.extend(BinaryOp::ALL.iter().map(|&op| Ltl::binary(op, a.clone(), b.clone())));
            }
        }
        let mut seen = HashSet::new();
        out.into_iter().filter(|f| seen.insert(f.clone())).collect()
    };
    let up_to_two: Vec<Ltl> = grow(&leaves)
        .into_iter()
        .filter(|f| common::dag_size(f) <= 2)
        .collect();
    grow(&up_to_two)
        .into_iter()
        .filter(|f| common::dag_size(f) <= 3)
        .collect()
}

#[test]
fn decisions_match_brute_force_for_small_bounds() {
    let all = formulas_up_to_three();
    // 2 leaves, 8 + 16 of size 2, and 688 of size 3.
    assert_eq!(all.len(), 2 + 24 + 688);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let sample = random_sample(&mut rng, 3);
        let split = sample.words().unwrap();
        let separates = |f: &Ltl| {
            split.positives.iter().all(|w| common::naive_check(f, w))
                && split.negatives.iter().all(|w| !common::naive_check(f, w))
        };
        let minimum = all
            .iter()
            .filter(|f| separates(f))
            .map(common::dag_size)
            .min();
        for bound in 1..=3 {
            let expected = minimum.filter(|&m| m <= bound);
            for dedup in [Dedup::Semantic, Dedup::None] {
                let config = LearnConfig::for_sample(&sample)
                    .with_bound(bound)
                    .with_dedup(dedup);
                assert_eq!(
                    witness_size(&sample, &config),
                    expected,
                    "bound {bound}, {dedup:?}\n{}",
                    sample.to_text()
                );
            }
        }
    }
}

#[test]
fn decision_is_monotone_in_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let sample = random_sample(&mut rng, 1);
        let mut previous = false;
        for bound in 1..=4 {
            let config = LearnConfig::for_sample(&sample).with_bound(bound);
            let decision = learn(&sample, &config).unwrap().decision;
            assert!(decision || !previous, "lost at bound {bound}\n{}", sample.to_text());
            previous = decision;
        }
    }
}

#[test]
fn at_most_is_the_union_of_exact_sizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..100 {
        let sample = random_sample(&mut rng, 4);
        let ops = random_ops(&mut rng);
        let base = LearnConfig::for_sample(&sample).with_operators(ops);
        let mut any = false;
        for k in 1..=4 {
            let exact = base.clone().with_bound(k).with_bound_mode(BoundMode::Exactly);
            let out = learn(&sample, &exact).unwrap();
            if let Some(w) = &out.witness {
                assert_eq!(w.size(), k);
                assert!(verify(w, &sample, &exact));
            }
            any |= out.decision;
        }
        assert_eq!(learn(&sample, &base).unwrap().decision, any);
    }
}

#[test]
fn results_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..50 {
        let sample = random_sample(&mut rng, 4);
        for dedup in [Dedup::Semantic, Dedup::None] {
            let config = LearnConfig::for_sample(&sample).with_dedup(dedup);
            let a = learn(&sample, &config).unwrap();
            let b = learn(&sample, &config).unwrap();
            assert_eq!(a.witness, b.witness);
            assert_eq!(a.statistics.candidates_generated, b.statistics.candidates_generated);
        }
    }
}

#[test]
fn witnesses_separate_and_respect_operators() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let sample = random_sample(&mut rng, 4);
        let ops = random_ops(&mut rng);
        let config = LearnConfig::for_sample(&sample).with_operators(ops.clone());
        if let Some(w) = learn(&sample, &config).unwrap().witness {
            assert!(w.conforms(&ops));
            assert!(check_separating(&w, &sample).unwrap());
            let Formula::Ltl(f) = &w else { panic!("LTL sample") };
            assert!(common::dag_size(f) <= 4);
        }
    }
}

#[test]
fn configuration_is_validated() {
    let sample = random_sample(&mut ChaCha8Rng::seed_from_u64(18), 1);
    let config = LearnConfig::for_sample(&sample);
    assert!(matches!(
        learn(&sample, &config.clone().with_bound(0)),
        Err(LearnError::ZeroBound)
    ));
    assert!(matches!(
        learn(&sample, &config.clone().with_bound(config.max_bound + 1)),
        Err(LearnError::BoundTooLarge { .. })
    ));
    let ctl = templearn::reductions::reduce_ltl_to_ctl(&Sample::ltl(
        generate::alphabet(1),
        1,
        vec![UltimatelyPeriodicWord::constant(Default::default())],
        vec![],
    )
    .unwrap())
    .unwrap();
    assert!(matches!(learn(&ctl, &config), Err(LearnError::LogicMismatch { .. })));
}
