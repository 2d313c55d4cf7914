//! From SAT to learning and back: the CNF → LTL sample construction, the
//! size-1 LTL → CTL embedding, the valuation-to-formula direction, and the
//! extraction of a satisfying valuation from any small separating formula.

mod cnf;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use cnf::{CnfError, CnfInstance, Literal, Valuation};

use crate::formulas::{Alphabet, BinaryOp, Formula, Ltl, Proposition};
use crate::models::{embed_word, KripkeError, Letter, Sample, SampleError, UltimatelyPeriodicWord};
use crate::semantics::{check_ltl, check_separating};
use crate::transforms::{analyze_conciseness, tr, Blocks};

/// Largest variable count accepted by [`sat_oracle`].
pub const SAT_ORACLE_MAX_VARS: usize = 24;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("the instance has no variables; the construction needs m >= 1")]
    NoVariables,
    #[error("the exhaustive SAT oracle supports at most {max} variables, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("only LTL samples can be embedded into CTL")]
    NotLtl,
    #[error("every word must have size 1, but `{word}` has size {size}")]
    WordNotSizeOne { word: String, size: usize },
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

fn prop(name: &str) -> Proposition {
    Proposition::new(name).expect("generated proposition names are valid")
}

/// Proposition `x<k>`.
pub fn positive_prop(var: usize) -> Proposition {
    prop(&format!("x{var}"))
}

/// Proposition `x<k>_bar`, the stand-in for `¬x<k>`.
pub fn negative_prop(var: usize) -> Proposition {
    prop(&format!("x{var}_bar"))
}

/// The proposition encoding a literal.
pub fn literal_prop(l: Literal) -> Proposition {
    if l.positive {
        positive_prop(l.var)
    } else {
        negative_prop(l.var)
    }
}

/// Blocks `x<k> ↦ {x<k>, x<k>_bar}` for `k = 1..=m`.
pub fn variable_blocks(m: usize) -> Blocks {
    Blocks::new(
        (1..=m)
            .map(|k| {
                (
                    format!("x{k}"),
                    BTreeSet::from([positive_prop(k), negative_prop(k)]),
                )
            })
            .collect(),
    )
}

/// The LTL learning instance of a CNF: positives are one size-1 word per
/// clause (its literals as propositions) followed by `{x_k, x_k_bar}^ω` for
/// every variable; the single negative is `∅^ω`; the bound is `2m − 1`.
pub fn reduce_sat(cnf: &CnfInstance) -> Result<Sample, ReductionError> {
    let m = cnf.variable_count();
    if m == 0 {
        return Err(ReductionError::NoVariables);
    }
    let alphabet: Alphabet = (1..=m)
        .flat_map(|k| [positive_prop(k), negative_prop(k)])
        .collect();
    let mut positives: Vec<UltimatelyPeriodicWord> = cnf
        .clauses()
        .iter()
        .map(|c| UltimatelyPeriodicWord::constant(c.iter().map(|&l| literal_prop(l)).collect()))
        .collect();
    positives.extend((1..=m).map(|k| {
        UltimatelyPeriodicWord::constant(Letter::from([positive_prop(k), negative_prop(k)]))
    }));
    let negatives = vec![UltimatelyPeriodicWord::constant(Letter::new())];
    Ok(Sample::ltl(alphabet, 2 * m - 1, positives, negatives)?)
}

/// `x_1^v ∨ … ∨ x_m^v` (left-associated), where `x_k^v` is `x_k` when
/// `v(x_k)` holds and `x_k_bar` otherwise.
///
/// Panics on an empty valuation.
pub fn formula_from_valuation(v: &Valuation) -> Ltl {
    Ltl::disjunction(
        (1..=v.variable_count())
            .map(|k| Ltl::Prop(if v.get(k) { positive_prop(k) } else { negative_prop(k) })),
    )
}

/// Replaces every word by its single-state Kripke structure; the bound is
/// kept.
pub fn reduce_ltl_to_ctl(sample: &Sample) -> Result<Sample, ReductionError> {
    let words = sample.words().ok_or(ReductionError::NotLtl)?;
    let embed = |ws: &[UltimatelyPeriodicWord]| {
        ws.iter()
            .map(|w| {
                if w.len() != 1 {
                    return Err(ReductionError::WordNotSizeOne {
                        word: w.to_string(),
                        size: w.len(),
                    });
                }
                Ok(embed_word(w)?)
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let positives = embed(&words.positives)?;
    let negatives = embed(&words.negatives)?;
    Ok(Sample::ctl(
        sample.alphabet().clone(),
        sample.bound(),
        positives,
        negatives,
    )?)
}

/// The first satisfying valuation in lexicographic order (`false < true`,
/// `x1` most significant), found by exhaustive search.
pub fn sat_oracle(cnf: &CnfInstance) -> Result<Option<Valuation>, ReductionError> {
    let m = cnf.variable_count();
    if m > SAT_ORACLE_MAX_VARS {
        return Err(ReductionError::TooManyVariables {
            got: m,
            max: SAT_ORACLE_MAX_VARS,
        });
    }
    // Clauses as (positive mask, negative mask) with x1 at bit m-1.
    let bit = |var: usize| 1u32 << (m - var);
    let clauses: Vec<(u32, u32)> = cnf
        .clauses()
        .iter()
        .map(|c| {
            c.iter().fold((0, 0), |(p, n), l| {
                if l.positive {
                    (p | bit(l.var), n)
                } else {
                    (p, n | bit(l.var))
                }
            })
        })
        .collect();
    for bits in 0u32..(1u32 << m) {
        if clauses.iter().all(|&(p, n)| bits & p != 0 || !bits & n != 0) {
            return Ok(Some(Valuation::new((1..=m).map(|k| bits & bit(k) != 0).collect())));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// Accepts every `ρ_k` of its blocks and rejects `η`.
    Positive,
    /// Accepts `η` and rejects every `ρ_k` of its blocks.
    Negative,
}

impl Polarity {
    fn name(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractionError {
    #[error("the formula does not separate the reduced sample")]
    NotSeparating,
    #[error("the formula has size {size}, above the bound {bound}")]
    ExceedsBound { size: usize, bound: usize },
    #[error("the formula is not temporal-free")]
    NotTemporalFree,
    #[error("the formula is not concise")]
    NotConcise,
    #[error("block {block} contains {count} propositions of the formula (expected exactly 1)")]
    BlockCount { block: String, count: usize },
    #[error("proposition {0} belongs to no block")]
    Unblocked(String),
    #[error("sub-formula `{formula}` is not {expected}")]
    WrongPolarity {
        formula: String,
        expected: &'static str,
    },
    #[error("sub-formula `{formula}` reached the impossible {polarity} case of `{operator}`")]
    Contradiction {
        formula: String,
        polarity: &'static str,
        operator: &'static str,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

struct Extractor<'a> {
    blocks: &'a Blocks,
}

impl Extractor<'_> {
    fn eta(&self) -> UltimatelyPeriodicWord {
        UltimatelyPeriodicWord::constant(Letter::new())
    }

    /// `ρ_k` for every block the formula touches.
    fn rhos(&self, f: &Ltl) -> Result<Vec<UltimatelyPeriodicWord>, ExtractionError> {
        let mut touched = BTreeSet::new();
        for p in f.propositions() {
            let block = self
                .blocks
                .block_of(&p)
                .ok_or_else(|| ExtractionError::Unblocked(p.to_string()))?;
            touched.insert(block.to_string());
        }
        Ok(touched
            .iter()
            .map(|b| UltimatelyPeriodicWord::constant(self.blocks.get(b).unwrap().clone()))
            .collect())
    }

    fn accepts_eta(&self, f: &Ltl) -> bool {
        check_ltl(f, &self.eta())
    }

    fn accepts_all_rhos(&self, f: &Ltl) -> Result<bool, ExtractionError> {
        Ok(self.rhos(f)?.iter().all(|w| check_ltl(f, w)))
    }

    fn has_polarity(&self, f: &Ltl, polarity: Polarity) -> Result<bool, ExtractionError> {
        let rhos = self.rhos(f)?;
        Ok(match polarity {
            Polarity::Positive => !self.accepts_eta(f) && rhos.iter().all(|w| check_ltl(f, w)),
            Polarity::Negative => self.accepts_eta(f) && rhos.iter().all(|w| !check_ltl(f, w)),
        })
    }

    fn extract(&self, f: &Ltl, polarity: Polarity) -> Result<Ltl, ExtractionError> {
        if !self.has_polarity(f, polarity)? {
            return Err(ExtractionError::WrongPolarity {
                formula: f.to_string(),
                expected: polarity.name(),
            });
        }
        let contradiction = |operator: &'static str| ExtractionError::Contradiction {
            formula: f.to_string(),
            polarity: polarity.name(),
            operator,
        };
        use Polarity::{Negative, Positive};
        match f {
            Ltl::Prop(_) => match polarity {
                Positive => Ok(f.clone()),
                Negative => Err(contradiction("proposition")),
            },
            Ltl::Unary(..) => Err(ExtractionError::NotConcise),
            Ltl::Binary(op, l, r) => {
                let (pl, pr) = match (op, polarity) {
                    (BinaryOp::Or, Positive) => (Positive, Positive),
                    (BinaryOp::And, Negative) => (Negative, Negative),
                    (BinaryOp::Implies, Positive) => (Negative, Positive),
                    (BinaryOp::Iff, Positive) => {
                        if self.accepts_eta(l) {
                            (Negative, Positive)
                        } else {
                            (Positive, Negative)
                        }
                    }
                    (BinaryOp::Iff, Negative) => {
                        if self.accepts_all_rhos(l)? {
                            (Positive, Positive)
                        } else {
                            (Negative, Negative)
                        }
                    }
                    (BinaryOp::Or | BinaryOp::Implies, Negative) | (BinaryOp::And, Positive) => {
                        return Err(contradiction(op.symbol()))
                    }
                    _ => return Err(ExtractionError::NotTemporalFree),
                };
                Ok(Ltl::or(self.extract(l, pl)?, self.extract(r, pr)?))
            }
        }
    }
}

/// Turns a concise temporal-free formula with exactly one proposition per
/// block (and nothing outside the blocks) that accepts every `ρ_k` and
/// rejects `η` into a disjunction `z_1 ∨ … ∨ z_m` of its propositions, such
/// that every letter over the blocks accepted by the formula is accepted by
/// the disjunction.
pub fn extract_disjunction(f: &Ltl, blocks: &Blocks) -> Result<Ltl, ExtractionError> {
    if !f.is_temporal_free() {
        return Err(ExtractionError::NotTemporalFree);
    }
    let report = analyze_conciseness(f, Some(blocks));
    if !report.is_concise {
        return Err(ExtractionError::NotConcise);
    }
    if let Some(p) = report
        .propositions_used
        .iter()
        .find(|p| blocks.block_of(p).is_none())
    {
        return Err(ExtractionError::Unblocked(p.to_string()));
    }
    if let Some((block, &count)) = report.per_block_count.iter().find(|(_, &c)| c != 1) {
        return Err(ExtractionError::BlockCount {
            block: block.clone(),
            count,
        });
    }
    Extractor { blocks }.extract(f, Polarity::Positive)
}

/// Reads a satisfying valuation off any formula of size at most `2m − 1`
/// that separates `reduce_sat(cnf)`: eliminate temporal operators, check
/// the resulting shape, extract the disjunction, and set `x_k` true exactly
/// when the disjunction uses `x_k` (rather than `x_k_bar`).
pub fn extract_valuation(f: &Ltl, cnf: &CnfInstance) -> Result<Valuation, ExtractionError> {
    let sample = reduce_sat(cnf).map_err(|e| ExtractionError::Invariant(e.to_string()))?;
    let separating = check_separating(&Formula::Ltl(f.clone()), &sample)
        .map_err(|_| ExtractionError::NotSeparating)?;
    if !separating {
        return Err(ExtractionError::NotSeparating);
    }
    let m = cnf.variable_count();
    let bound = 2 * m - 1;
    let size = f.size();
    if size > bound {
        return Err(ExtractionError::ExceedsBound { size, bound });
    }
    let g = tr(f);
    let blocks = variable_blocks(m);
    let report = analyze_conciseness(&g, Some(&blocks));
    if !report.is_concise {
        return Err(ExtractionError::Invariant(format!(
            "tr({f}) = {g} is not concise"
        )));
    }
    if let Some((block, count)) = report.per_block_count.iter().find(|(_, &c)| c != 1) {
        return Err(ExtractionError::Invariant(format!(
            "tr({f}) = {g} has {count} propositions from block {block}"
        )));
    }
    if g.size() != bound {
        return Err(ExtractionError::Invariant(format!(
            "tr({f}) = {g} has size {} instead of {bound}",
            g.size()
        )));
    }
    let d = extract_disjunction(&g, &blocks)?;
    let chosen: BTreeMap<String, Proposition> = d
        .propositions()
        .into_iter()
        .map(|p| (blocks.block_of(&p).unwrap().to_string(), p))
        .collect();
    let v = Valuation::new(
        (1..=m)
            .map(|k| chosen.get(&format!("x{k}")) == Some(&positive_prop(k)))
            .collect(),
    );
    if !v.satisfies(cnf) {
        return Err(ExtractionError::Invariant(format!(
            "extracted valuation {v} does not satisfy {cnf}"
        )));
    }
    Ok(v)
}
