//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use templearn::formulas::{Alphabet, Formula, Logic, Ltl, Proposition};
use templearn::learner::{learn, verify, LearnConfig};
use templearn::models::{Letter, Sample, UltimatelyPeriodicWord};
use templearn::properties::{
    self, ctl_strip_suite, generate, ltl_enumeration_checks, round_trip_suites,
    size1_equivalence_suite, CnfSuite, EnumerationChecks, InstanceOutcome, Scale, SuiteReport,
};
use templearn::reductions::{reduce_sat, CnfInstance};
use templearn::semantics::satisfaction_vector;
use templearn::transforms::tr;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Verdict {
            passed,
            detail: detail.into(),
        }
    }
}

fn suites_verdict(reports: &[&SuiteReport], extra: bool, extra_detail: &str) -> Verdict {
    let passed = extra && reports.iter().all(|r| r.passed());
    let mut detail: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
    if !extra_detail.is_empty() {
        detail.push(extra_detail.to_string());
    }
    Verdict::new(passed, detail.join("; "))
}

fn prop(name: &str) -> Proposition {
    Proposition::new(name).unwrap()
}

fn letter(names: &[&str]) -> Letter {
    names.iter().map(|n| prop(n)).collect()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let dimacs = "c x1 & (x2 | !x3 | !x1) & (!x2 | x3)\np cnf 3 3\n1 0\n2 -3 -1 0\n-2 3 0\n";
    let cnf: CnfInstance = dimacs.parse().unwrap();
    let sample = reduce_sat(&cnf).unwrap();

    let names = ["x1", "x1_bar", "x2", "x2_bar", "x3", "x3_bar"];
    let constant = |names: &[&str]| UltimatelyPeriodicWord::constant(letter(names));
    let expected = Sample::ltl(
        Alphabet::from_names(names).unwrap(),
        5,
        vec![
            constant(&["x1"]),
            constant(&["x1_bar", "x2", "x3_bar"]),
            constant(&["x2_bar", "x3"]),
            constant(&["x1", "x1_bar"]),
            constant(&["x2", "x2_bar"]),
            constant(&["x3", "x3_bar"]),
        ],
        vec![constant(&[])],
    )
    .unwrap();
    if sample != expected {
        return Verdict::new(false, format!("unexpected sample:\n{}", sample.to_text()));
    }

    let config = LearnConfig::for_sample(&sample);
    let outcome = learn(&sample, &config).unwrap();
    let words = sample.words().unwrap();
    let witness_ok = match &outcome.witness {
        Some(Formula::Ltl(f)) => {
            common::dag_size(f) <= 5
                && words.positives.iter().all(|w| common::naive_check(f, w))
                && words.negatives.iter().all(|w| !common::naive_check(f, w))
        }
        _ => false,
    };
    let parse = |s: &str| Formula::parse(s, Logic::Ltl, sample.alphabet()).unwrap();
    let accepts = ["x1 | x2 | x3", "(x1 <-> x2) -> x3"]
        .iter()
        .all(|s| verify(&parse(s), &sample, &config));
    let elapsed = start.elapsed();
    let witness = outcome.witness.as_ref().map_or("none".into(), |w| w.to_string());
    Verdict::new(
        outcome.decision && witness_ok && accepts && elapsed < Duration::from_secs(10),
        format!(
            "decision={}, witness {witness}, both reference formulas verified={accepts}, {elapsed:.2?}",
            outcome.decision
        ),
    )
}

/// Criteria 2 and 6 share one run of the round-trip suites.
struct RoundTrip {
    reports: Vec<SuiteReport>,
    outcomes: Vec<InstanceOutcome>,
    coverage_ok: bool,
}

fn run_round_trip() -> RoundTrip {
    let scale = Scale::default();
    let suite = CnfSuite::standard(&scale);
    // The exhaustive part must be exactly the set of all small CNFs.
    let canon = |c: &CnfInstance| {
        let mut clauses: Vec<BTreeSet<i64>> = c
            .clauses()
            .iter()
            .map(|cl| cl.iter().map(|l| l.to_dimacs()).collect())
            .collect();
        clauses.sort();
        clauses
    };
    let mut ours: Vec<_> = common::all_small_cnfs(2, 3).iter().map(canon).collect();
    let exhaustive = ours.len();
    let mut theirs: Vec<_> = suite.instances[..exhaustive.min(suite.instances.len())]
        .iter()
        .map(canon)
        .collect();
    ours.sort();
    theirs.sort();
    let random = &suite.instances[exhaustive.min(suite.instances.len())..];
    let coverage_ok = ours == theirs
        && random.len() >= 200
        && random
            .iter()
            .all(|c| c.variable_count() <= 4 && c.clauses().len() <= 6);
    let (reports, outcomes) = round_trip_suites(&suite);
    RoundTrip {
        reports,
        outcomes,
        coverage_ok,
    }
}

fn criterion_2(rt: &RoundTrip) -> Verdict {
    let ltl_time: Duration = rt.outcomes.iter().map(|o| o.ltl_time).sum();
    let mut mismatches = 0;
    let mut bad_extractions = 0;
    for o in &rt.outcomes {
        let sat = common::brute_sat(&o.cnf);
        if sat != o.ltl_decision || sat != o.satisfiable {
            mismatches += 1;
        }
        if o.ltl_decision {
            match &o.extracted {
                Some(v) if common::satisfies(&o.cnf, v.values()) => {}
                _ => bad_extractions += 1,
            }
        }
    }
    let tagged = |tag: &str| rt.reports.iter().find(|r| r.tag == tag).unwrap();
    let ok = rt.coverage_ok
        && mismatches == 0
        && bad_extractions == 0
        && ltl_time < Duration::from_secs(300);
    suites_verdict(
        &[
            tagged("reductions.sat-agreement"),
            tagged("reductions.extraction"),
        ],
        ok,
        &format!(
            "{} instances, {mismatches} mismatches and {bad_extractions} bad extractions against brute-force SAT, learner time {ltl_time:.2?}",
            rt.outcomes.len()
        ),
    )
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let reports = ltl_enumeration_checks(2, 6, EnumerationChecks::TR_ONLY);
    let elapsed = start.elapsed();

    // Independent spot check of tr on random formulas, using the reference
    // evaluator on the four constant words.
    let alpha = generate::alphabet(2);
    let words: Vec<UltimatelyPeriodicWord> = generate::letters(&alpha)
        .into_iter()
        .map(UltimatelyPeriodicWord::constant)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut spot_failures = 0;
    for _ in 0..2000 {
        let f = generate::random_ltl(&mut rng, &alpha, 6);
        let g = tr(&f);
        let ok = g.is_temporal_free()
            && common::dag_size(&g) <= common::dag_size(&f)
            && words
                .iter()
                .all(|w| common::naive_check(&f, w) == common::naive_check(&g, w));
        if !ok {
            spot_failures += 1;
        }
    }
    suites_verdict(
        &[&reports[0]],
        spot_failures == 0 && elapsed < Duration::from_secs(120),
        &format!("{spot_failures} random spot-check failures, enumeration pass {elapsed:.2?}"),
    )
}

fn criterion_5() -> Verdict {
    let reports = ltl_enumeration_checks(2, 6, EnumerationChecks::WITHOUT_TR);
    let tagged = |tag: &str| reports.iter().find(|r| r.tag == tag).unwrap();
    suites_verdict(
        &[
            tagged("transforms.counting"),
            tagged("transforms.conciseness"),
        ],
        true,
        "",
    )
}

fn criterion_4() -> Verdict {
    let report = size1_equivalence_suite(2, 3);
    suites_verdict(&[&report], true, "")
}

fn criterion_6(rt: &RoundTrip) -> Verdict {
    let mismatches = rt
        .outcomes
        .iter()
        .filter(|o| o.ltl_decision != o.ctl_decision)
        .count();
    let transfer = rt
        .reports
        .iter()
        .find(|r| r.tag == "reductions.ctl-transfer")
        .unwrap();
    let strip = ctl_strip_suite(2, 5);
    suites_verdict(
        &[transfer, &strip],
        mismatches == 0,
        &format!("{mismatches} LTL/CTL decision mismatches"),
    )
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let alpha = generate::alphabet(2);
    let pairs = 10_000;
    let mut mismatches = 0;
    let mut first = None;
    for _ in 0..pairs {
        let f: Ltl = generate::random_ltl(&mut rng, &alpha, 5);
        let w = generate::random_word(&mut rng, &alpha, 4);
        let v = satisfaction_vector(&f, &w);
        if (0..w.len()).any(|i| v.get(i) != common::naive_holds(&f, &w, i)) {
            mismatches += 1;
            first.get_or_insert_with(|| format!("{f} on {w}"));
        }
    }
    // The library's own suite must agree too.
    let report = properties::lasso_oracle_suite(2, 5, pairs, 0);
    suites_verdict(
        &[&report],
        mismatches == 0,
        &format!(
            "{pairs} pairs against the reference evaluator, {mismatches} mismatches{}",
            first.map_or(String::new(), |e| format!(" (first: {e})"))
        ),
    )
}

#[test]
fn acceptance() {
    let mut verdicts: Vec<(usize, Verdict)> = Vec::new();
    let mut record = |n: usize, v: Verdict, t: Instant| {
        println!(
            "criterion {n}: {} ({:.2?}) {}",
            if v.passed { "PASS" } else { "FAIL" },
            t.elapsed(),
            v.detail
        );
        verdicts.push((n, v));
    };

    let t = Instant::now();
    record(1, criterion_1(), t);

    let t = Instant::now();
    let rt = run_round_trip();
    record(2, criterion_2(&rt), t);

    let t = Instant::now();
    record(3, criterion_3(), t);

    let t = Instant::now();
    record(4, criterion_4(), t);

    let t = Instant::now();
    record(5, criterion_5(), t);

    let t = Instant::now();
    record(6, criterion_6(&rt), t);

    let t = Instant::now();
    record(7, criterion_7(), t);

    let failed: Vec<usize> = verdicts
        .iter()
        .filter(|(_, v)| !v.passed)
        .map(|(n, _)| *n)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
