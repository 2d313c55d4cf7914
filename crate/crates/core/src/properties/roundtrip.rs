//! SAT ⇄ learning round trips on a suite of CNF instances.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{generate, Scale, SuiteReport, Tally};
use crate::formulas::Formula;
use crate::learner::{learn, verify, LearnConfig};
use crate::reductions::{
    extract_valuation, formula_from_valuation, reduce_ltl_to_ctl, reduce_sat, sat_oracle,
    variable_blocks, CnfInstance, Valuation,
};
use crate::transforms::tr;

/// A fixed list of CNF instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfSuite {
    pub instances: Vec<CnfInstance>,
}

impl CnfSuite {
    /// All CNFs over `exhaustive_vars` variables with at most
    /// `exhaustive_clauses` clauses of arity ≤ 3, followed by
    /// `random_cnfs` seeded random ones.
    pub fn standard(scale: &Scale) -> Self {
        let mut instances =
            generate::exhaustive_cnfs(scale.exhaustive_vars, scale.exhaustive_clauses, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(scale.seed);
        for _ in 0..scale.random_cnfs {
            let m = rng.gen_range(1..=scale.random_max_vars);
            let n = rng.gen_range(1..=scale.random_max_clauses);
            instances.push(generate::random_cnf(&mut rng, m, n));
        }
        CnfSuite { instances }
    }
}

/// What happened on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceOutcome {
    pub cnf: CnfInstance,
    pub satisfiable: bool,
    pub ltl_decision: bool,
    pub ctl_decision: bool,
    pub witness: Option<Formula>,
    pub extracted: Option<Valuation>,
    pub ltl_time: Duration,
    pub ctl_time: Duration,
}

/// Runs, for every instance: the SAT oracle, the LTL learner on the reduced
/// sample (bound 2m−1), valuation extraction from its witness, the
/// valuation-derived formula through the verifier, and the CTL learner on
/// the embedded sample.
pub fn round_trip_suites(suite: &CnfSuite) -> (Vec<SuiteReport>, Vec<InstanceOutcome>) {
    let mut agree = Tally::new("reductions.sat-agreement");
    let mut extraction = Tally::new("reductions.extraction");
    let mut easy = Tally::new("reductions.easy-direction");
    let mut coverage = Tally::new("reductions.block-coverage");
    let mut transfer = Tally::new("reductions.ctl-transfer");
    let (mut ltl_total, mut ctl_total) = (Duration::ZERO, Duration::ZERO);
    let mut outcomes = Vec::new();

    for cnf in &suite.instances {
        let sample = reduce_sat(cnf).expect("suite CNFs have variables");
        let config = LearnConfig::for_sample(&sample);
        let model = sat_oracle(cnf).expect("suite CNFs are small");

        let start = Instant::now();
        let out = learn(&sample, &config).expect("reduced samples are learnable");
        let ltl_time = start.elapsed();
        ltl_total += ltl_time;
        agree.check(model.is_some() == out.decision, || {
            format!("{cnf}: satisfiable={} learner={}", model.is_some(), out.decision)
        });

        let mut extracted = None;
        if let Some(Formula::Ltl(f)) = &out.witness {
            match extract_valuation(f, cnf) {
                Ok(v) => {
                    let ok = v.satisfies(cnf);
                    extraction.check(ok, || format!("{cnf}: {f} gave {v}"));
                    extracted = Some(v);
                }
                Err(e) => extraction.check(false, || format!("{cnf}: {f}: {e}")),
            }
            let used = tr(f).propositions();
            let blocks = variable_blocks(cnf.variable_count());
            let ok = blocks.iter().all(|(_, members)| !members.is_disjoint(&used));
            coverage.check(ok, || format!("{cnf}: {f}"));
        }
        if let Some(v) = &model {
            let f = Formula::Ltl(formula_from_valuation(v));
            easy.check(verify(&f, &sample, &config), || format!("{cnf}: {f}"));
        }

        let ctl_sample = reduce_ltl_to_ctl(&sample).expect("reduced words have size one");
        let ctl_config = LearnConfig::for_sample(&ctl_sample);
        let start = Instant::now();
        let ctl_out = learn(&ctl_sample, &ctl_config).expect("embedded samples are learnable");
        let ctl_time = start.elapsed();
        ctl_total += ctl_time;
        let ctl_ok = ctl_out.decision == out.decision
            && ctl_out
                .witness
                .as_ref()
                .is_none_or(|w| verify(w, &ctl_sample, &ctl_config));
        transfer.check(ctl_ok, || {
            format!("{cnf}: LTL={} CTL={}", out.decision, ctl_out.decision)
        });

        outcomes.push(InstanceOutcome {
            cnf: cnf.clone(),
            satisfiable: model.is_some(),
            ltl_decision: out.decision,
            ctl_decision: ctl_out.decision,
            witness: out.witness,
            extracted,
            ltl_time,
            ctl_time,
        });
    }
    let reports = vec![
        agree.finish_with(ltl_total),
        extraction.finish_with(ltl_total),
        easy.finish_with(ltl_total),
        coverage.finish_with(ltl_total),
        transfer.finish_with(ctl_total),
    ];
    (reports, outcomes)
}
