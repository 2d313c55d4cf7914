mod report;

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use templearn::formulas::{Ctl, Formula, Ltl, OperatorSet};
use templearn::learner::{learn, BoundMode, Dedup, LearnConfig};
use templearn::models::Sample;
use templearn::properties::{self, Scale};
use templearn::reductions::{extract_valuation, reduce_ltl_to_ctl, reduce_sat, CnfInstance};
use templearn::semantics::verdicts;
use templearn::transforms::{insert_quantifiers, strip_quantifiers, tr};

use report::{Finished, Input, RunReport};

/// Environment variable capping the number of worker threads.
const THREADS_VAR: &str = "TEMPLEARN_THREADS";

#[derive(Debug, Parser)]
#[command(name = "templearn", version, about = "Learn, check and reduce LTL/CTL formulas")]
struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a formula against every example of a sample.
    Check {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        sample: String,
    },
    /// Search for a minimal separating formula.
    Learn(LearnArgs),
    /// Build learning instances from other problems.
    #[command(subcommand)]
    Reduce(Reduce),
    /// Replace temporal operators by their size-1 equivalents.
    Normalize {
        #[arg(long)]
        formula: String,
    },
    /// Insert (to CTL) or strip (to LTL) path quantifiers.
    Translate {
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long)]
        formula: String,
    },
    /// Read a satisfying valuation off a separating formula.
    Extract {
        #[arg(long)]
        sample: String,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        cnf: String,
    },
    /// Run the property suites and report pass/fail per tag.
    VerifyProperties(ScaleArgs),
}

#[derive(Debug, Args)]
struct LearnArgs {
    #[arg(long)]
    sample: String,
    /// Size bound; defaults to the sample's.
    #[arg(long)]
    bound: Option<usize>,
    /// Require size exactly the bound instead of at most.
    #[arg(long)]
    exactly: bool,
    /// Allowed operators, e.g. "OR,AND,U".
    #[arg(long)]
    ops: Option<String>,
    /// Enumerate every formula instead of one per behaviour.
    #[arg(long)]
    no_dedup: bool,
    /// Refuse bounds above this.
    #[arg(long)]
    max_bound: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Reduce {
    /// CNF (DIMACS) to an LTL learning sample.
    Sat2ltl {
        #[arg(long)]
        cnf: String,
        /// Output sample file; printed to stdout when absent.
        #[arg(long)]
        out: Option<String>,
    },
    /// LTL sample of size-1 words to a CTL sample.
    Ltl2ctl {
        #[arg(long)]
        sample: String,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Ctl,
    Ltl,
}

#[derive(Debug, Args)]
struct ScaleArgs {
    /// Number of propositions for the formula enumerations.
    #[arg(long, default_value_t = Scale::default().props)]
    props: usize,
    /// Largest LTL formula size enumerated.
    #[arg(long, default_value_t = Scale::default().max_size)]
    max_size: usize,
    /// Largest CTL formula size enumerated.
    #[arg(long, default_value_t = Scale::default().ctl_max_size)]
    ctl_max_size: usize,
    /// Largest operand size in the size-1 equivalence suite.
    #[arg(long, default_value_t = Scale::default().operand_size)]
    operand_size: usize,
    /// Variables of the exhaustively enumerated CNFs.
    #[arg(long, default_value_t = Scale::default().exhaustive_vars)]
    cnf_vars: usize,
    /// Maximum clauses of the exhaustively enumerated CNFs.
    #[arg(long, default_value_t = Scale::default().exhaustive_clauses)]
    cnf_clauses: usize,
    /// Number of random CNFs.
    #[arg(long, default_value_t = Scale::default().random_cnfs)]
    random_cnfs: usize,
    #[arg(long, default_value_t = Scale::default().random_max_vars)]
    random_max_vars: usize,
    #[arg(long, default_value_t = Scale::default().random_max_clauses)]
    random_max_clauses: usize,
    /// Random formula/word pairs for the lasso checker suite.
    #[arg(long, default_value_t = Scale::default().lasso_pairs)]
    lasso_pairs: usize,
    /// Seed for every randomized suite.
    #[arg(long, default_value_t = Scale::default().seed)]
    seed: u64,
}

impl ScaleArgs {
    fn scale(&self) -> Result<Scale> {
        if !(1..=6).contains(&self.props) {
            bail!("--props must be between 1 and 6");
        }
        if self.cnf_vars == 0 || self.random_max_vars == 0 || self.random_max_clauses == 0 {
            bail!("CNF limits must be positive");
        }
        Ok(Scale {
            props: self.props,
            max_size: self.max_size,
            ctl_max_size: self.ctl_max_size,
            operand_size: self.operand_size,
            exhaustive_vars: self.cnf_vars,
            exhaustive_clauses: self.cnf_clauses,
            random_cnfs: self.random_cnfs,
            random_max_vars: self.random_max_vars,
            random_max_clauses: self.random_max_clauses,
            lasso_pairs: self.lasso_pairs,
            seed: self.seed,
        })
    }
}

fn read(path: &str) -> Result<(String, Vec<u8>)> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {path}"))?;
    let text = String::from_utf8(bytes.clone()).with_context(|| format!("{path} is not UTF-8"))?;
    Ok((text, bytes))
}

fn load_sample(path: &str, report: &mut RunReport) -> Result<Sample> {
    let (text, bytes) = read(path)?;
    report.inputs.push(Input::file("sample", path, &bytes));
    text.parse().with_context(|| format!("invalid sample {path}"))
}

fn load_cnf(path: &str, report: &mut RunReport) -> Result<CnfInstance> {
    let (text, bytes) = read(path)?;
    report.inputs.push(Input::file("cnf", path, &bytes));
    text.parse().with_context(|| format!("invalid CNF {path}"))
}

fn parse_formula(text: &str, sample: &Sample, report: &mut RunReport) -> Result<Formula> {
    report.inputs.push(Input::inline("formula", text));
    Formula::parse(text, sample.logic(), sample.alphabet())
        .with_context(|| format!("invalid formula {text:?}"))
}

fn check(formula: &str, sample_path: &str) -> Result<Finished> {
    let mut report = RunReport::new("check");
    let sample = load_sample(sample_path, &mut report)?;
    let f = parse_formula(formula, &sample, &mut report)?;
    let start = Instant::now();
    let v = verdicts(&f, &sample)?;
    report.time("check", start.elapsed());

    let names: Vec<String> = match (sample.words(), sample.structures()) {
        (Some(w), _) => w
            .positives
            .iter()
            .chain(&w.negatives)
            .map(|w| w.to_string())
            .collect(),
        (_, Some(m)) => (0..m.positives.len() + m.negatives.len())
            .map(|k| format!("structure {k}"))
            .collect(),
        _ => unreachable!("a sample holds words or structures"),
    };
    let mut text = String::new();
    let rows = v
        .positives
        .iter()
        .map(|&b| ("pos", b, b))
        .chain(v.negatives.iter().map(|&b| ("neg", b, !b)));
    for ((kind, holds, ok), name) in rows.zip(&names) {
        let mark = if ok { "ok" } else { "WRONG" };
        text.push_str(&format!("{kind} {name}: {holds} ({mark})\n"));
    }
    let separating = v.separating();
    text.push_str(&format!("separating: {separating}\n"));
    report.outcome = json!({
        "formula": f.to_string(),
        "positives": v.positives,
        "negatives": v.negatives,
        "separating": separating,
    });
    Ok(Finished {
        report,
        text,
        exit: 0,
    })
}

fn learn_command(args: &LearnArgs) -> Result<Finished> {
    let mut report = RunReport::new("learn");
    let sample = load_sample(&args.sample, &mut report)?;
    let mut config = LearnConfig::for_sample(&sample);
    if let Some(b) = args.bound {
        config = config.with_bound(b);
    }
    if let Some(m) = args.max_bound {
        config.max_bound = m;
    }
    if args.exactly {
        config = config.with_bound_mode(BoundMode::Exactly);
    }
    if args.no_dedup {
        config = config.with_dedup(Dedup::None);
    }
    if let Some(ops) = &args.ops {
        config = config.with_operators(OperatorSet::parse_list(ops)?);
    }
    let out = learn(&sample, &config)?;
    report.time("search", out.statistics.elapsed);

    let witness = out.witness.as_ref().map(|w| w.to_string());
    let size = out.witness.as_ref().map(|w| w.size());
    let s = &out.statistics;
    let mode = if args.exactly { "exactly" } else { "at-most" };
    let mut text = format!("decision: {}\n", out.decision);
    text.push_str(&format!("witness: {}\n", witness.as_deref().unwrap_or("none")));
    text.push_str(&format!("size: {}\n", size.map_or("-".into(), |s| s.to_string())));
    text.push_str(&format!(
        "bound: {} ({mode})\noperators: {}\ncandidates generated: {}\ndistinct signatures: {}\nlayers explored: {}\nelapsed: {:.3?}\n",
        config.bound,
        config.operators.to_list(),
        s.candidates_generated,
        s.distinct_signatures,
        s.layers_explored,
        s.elapsed
    ));
    report.outcome = json!({
        "decision": out.decision,
        "witness": witness,
        "size": size,
    });
    report.statistics = json!({
        "bound": config.bound,
        "bound_mode": mode,
        "operators": config.operators.to_list(),
        "dedup": !args.no_dedup,
        "candidates_generated": s.candidates_generated,
        "distinct_signatures": s.distinct_signatures,
        "layers_explored": s.layers_explored,
    });
    Ok(Finished {
        report,
        text,
        exit: if out.decision { 0 } else { 3 },
    })
}

fn write_sample(sample: &Sample, out: Option<&str>, mut report: RunReport) -> Result<Finished> {
    let body = sample.to_text();
    let text = match out {
        Some(path) => {
            fs::write(path, &body).with_context(|| format!("cannot write {path}"))?;
            format!(
                "wrote {path}: {} positives, {} negatives, bound {}\n",
                sample.positive_count(),
                sample.negative_count(),
                sample.bound()
            )
        }
        None => body.clone(),
    };
    report.outcome = json!({
        "output": out,
        "sha256": report::sha256(body.as_bytes()),
        "logic": sample.logic().to_string(),
        "positives": sample.positive_count(),
        "negatives": sample.negative_count(),
        "bound": sample.bound(),
    });
    Ok(Finished {
        report,
        text,
        exit: 0,
    })
}

fn reduce(r: &Reduce) -> Result<Finished> {
    match r {
        Reduce::Sat2ltl { cnf, out } => {
            let mut report = RunReport::new("reduce sat2ltl");
            let cnf = load_cnf(cnf, &mut report)?;
            let sample = reduce_sat(&cnf)?;
            write_sample(&sample, out.as_deref(), report)
        }
        Reduce::Ltl2ctl { sample, out } => {
            let mut report = RunReport::new("reduce ltl2ctl");
            let input = load_sample(sample, &mut report)?;
            let sample = reduce_ltl_to_ctl(&input)?;
            write_sample(&sample, out.as_deref(), report)
        }
    }
}

fn normalize(formula: &str) -> Result<Finished> {
    let mut report = RunReport::new("normalize");
    report.inputs.push(Input::inline("formula", formula));
    let f: Ltl = formula.parse()?;
    let g = tr(&f);
    report.outcome = json!({
        "input": f.to_string(),
        "input_size": f.size(),
        "output": g.to_string(),
        "output_size": g.size(),
    });
    Ok(Finished {
        report,
        text: format!("{g}\n"),
        exit: 0,
    })
}

fn translate(to: Target, formula: &str) -> Result<Finished> {
    let mut report = RunReport::new("translate");
    report.inputs.push(Input::inline("formula", formula));
    let (input, output, size) = match to {
        Target::Ctl => {
            let f: Ltl = formula.parse()?;
            let g = insert_quantifiers(&f);
            (f.to_string(), g.to_string(), g.size())
        }
        Target::Ltl => {
            let f: Ctl = formula.parse()?;
            let g = strip_quantifiers(&f);
            (f.to_string(), g.to_string(), g.size())
        }
    };
    report.outcome = json!({
        "input": input,
        "output": output,
        "output_size": size,
        "to": format!("{to:?}").to_lowercase(),
    });
    Ok(Finished {
        report,
        text: format!("{output}\n"),
        exit: 0,
    })
}

fn extract(sample_path: &str, formula: &str, cnf_path: &str) -> Result<Finished> {
    let mut report = RunReport::new("extract");
    let sample = load_sample(sample_path, &mut report)?;
    let cnf = load_cnf(cnf_path, &mut report)?;
    let Formula::Ltl(f) = parse_formula(formula, &sample, &mut report)? else {
        bail!("extraction needs an LTL sample");
    };
    let v = extract_valuation(&f, &cnf)?;
    let satisfies = v.satisfies(&cnf);
    report.outcome = json!({
        "valuation": v.to_string(),
        "satisfies": satisfies,
    });
    Ok(Finished {
        report,
        text: format!("{v}\n"),
        exit: 0,
    })
}

fn verify_properties(args: &ScaleArgs) -> Result<Finished> {
    let scale = args.scale()?;
    let mut report = RunReport::new("verify-properties");
    let start = Instant::now();
    let results = properties::run_all(&scale);
    report.time("total", start.elapsed());

    let mut text = String::new();
    let mut suites = Vec::new();
    for r in &results {
        text.push_str(&format!("{r}\n"));
        report.time(r.tag, r.elapsed);
        suites.push(json!({
            "tag": r.tag,
            "checked": r.checked,
            "violations": r.violations,
            "passed": r.passed(),
            "first_violation": r.example,
        }));
    }
    let passed = results.iter().all(|r| r.passed());
    text.push_str(&format!("all passed: {passed}\n"));
    report.outcome = json!({ "passed": passed, "suites": suites });
    report.statistics = json!({
        "props": scale.props,
        "max_size": scale.max_size,
        "ctl_max_size": scale.ctl_max_size,
        "operand_size": scale.operand_size,
        "cnf_vars": scale.exhaustive_vars,
        "cnf_clauses": scale.exhaustive_clauses,
        "random_cnfs": scale.random_cnfs,
        "random_max_vars": scale.random_max_vars,
        "random_max_clauses": scale.random_max_clauses,
        "lasso_pairs": scale.lasso_pairs,
        "seed": scale.seed,
    });
    Ok(Finished {
        report,
        text,
        exit: if passed { 0 } else { 4 },
    })
}

fn run(cli: &Cli) -> Result<Finished> {
    match &cli.command {
        Command::Check { formula, sample } => check(formula, sample),
        Command::Learn(args) => learn_command(args),
        Command::Reduce(r) => reduce(r),
        Command::Normalize { formula } => normalize(formula),
        Command::Translate { to, formula } => translate(*to, formula),
        Command::Extract {
            sample,
            formula,
            cnf,
        } => extract(sample, formula, cnf),
        Command::VerifyProperties(args) => verify_properties(args),
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("{THREADS_VAR} must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(done) => {
            if cli.json {
                println!("{}", done.report.to_json());
            } else {
                print!("{}", done.text);
            }
            ExitCode::from(done.exit)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
