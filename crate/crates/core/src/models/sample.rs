//! Samples of positive and negative examples and their line-oriented file
//! format:
//!
//! ```text
//! alphabet: p, q
//! logic: ltl
//! bound: 3
//! pos: {p} | {q}
//! neg: | {}
//! ```
//!
//! CTL samples use `pos-kripke:` / `neg-kripke:` blocks containing
//! `state <name> {labels}`, `init <name>` and `edge <from> <to>` lines,
//! closed by `end`. `#` starts a comment.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::hash::Hash;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use super::{format_letter, KripkeError, KripkeStructure, Letter, UltimatelyPeriodicWord};
use crate::formulas::{Alphabet, Logic, Proposition};

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("the alphabet must contain at least one proposition")]
    EmptyAlphabet,
    #[error("missing `{0}:` header")]
    MissingHeader(&'static str),
    #[error("proposition `{0}` is not in the alphabet")]
    UnknownProposition(String),
    #[error("an example occurs both as positive and as negative: {0}")]
    Contradictory(String),
    #[error("invalid Kripke structure ending at line {line}: {source}")]
    Kripke { line: usize, source: KripkeError },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> SampleError {
    SampleError::Syntax {
        line,
        message: message.into(),
    }
}

/// Positive and negative examples of one kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split<T> {
    pub positives: Vec<T>,
    pub negatives: Vec<T>,
}

impl<T: Eq + Hash + Clone> Split<T> {
    /// Collapses duplicates within each side (keeping first occurrences) and
    /// returns the index of a positive that is also negative, if any.
    fn normalize(positives: Vec<T>, negatives: Vec<T>) -> (Self, Option<usize>) {
        fn dedup<T: Eq + Hash + Clone>(items: Vec<T>) -> Vec<T> {
            let mut seen = HashSet::new();
            items.into_iter().filter(|x| seen.insert(x.clone())).collect()
        }
        let positives = dedup(positives);
        let negatives = dedup(negatives);
        let neg: HashSet<&T> = negatives.iter().collect();
        let clash = positives.iter().position(|p| neg.contains(p));
        (
            Split {
                positives,
                negatives,
            },
            clash,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleData {
    Ltl(Split<UltimatelyPeriodicWord>),
    Ctl(Split<KripkeStructure>),
}

/// A learning instance: alphabet, examples and the size bound `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    alphabet: Alphabet,
    bound: usize,
    data: SampleData,
}

impl Sample {
    pub fn ltl(
        alphabet: Alphabet,
        bound: usize,
        positives: Vec<UltimatelyPeriodicWord>,
        negatives: Vec<UltimatelyPeriodicWord>,
    ) -> Result<Self, SampleError> {
        check_alphabet(&alphabet, positives.iter().chain(&negatives).map(|w| w.propositions()))?;
        let (split, clash) = Split::normalize(positives, negatives);
        if let Some(i) = clash {
            return Err(SampleError::Contradictory(split.positives[i].to_string()));
        }
        Ok(Sample {
            alphabet,
            bound,
            data: SampleData::Ltl(split),
        })
    }

    pub fn ctl(
        alphabet: Alphabet,
        bound: usize,
        positives: Vec<KripkeStructure>,
        negatives: Vec<KripkeStructure>,
    ) -> Result<Self, SampleError> {
        check_alphabet(&alphabet, positives.iter().chain(&negatives).map(|m| m.propositions()))?;
        let (split, clash) = Split::normalize(positives, negatives);
        if let Some(i) = clash {
            let mut text = String::new();
            write_kripke(&mut text, "", &split.positives[i]);
            return Err(SampleError::Contradictory(text.trim_end().replace('\n', "; ")));
        }
        Ok(Sample {
            alphabet,
            bound,
            data: SampleData::Ctl(split),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn logic(&self) -> Logic {
        match self.data {
            SampleData::Ltl(_) => Logic::Ltl,
            SampleData::Ctl(_) => Logic::Ctl,
        }
    }

    pub fn data(&self) -> &SampleData {
        &self.data
    }

    pub fn words(&self) -> Option<&Split<UltimatelyPeriodicWord>> {
        match &self.data {
            SampleData::Ltl(s) => Some(s),
            SampleData::Ctl(_) => None,
        }
    }

    pub fn structures(&self) -> Option<&Split<KripkeStructure>> {
        match &self.data {
            SampleData::Ltl(_) => None,
            SampleData::Ctl(s) => Some(s),
        }
    }

    pub fn positive_count(&self) -> usize {
        match &self.data {
            SampleData::Ltl(s) => s.positives.len(),
            SampleData::Ctl(s) => s.positives.len(),
        }
    }

    pub fn negative_count(&self) -> usize {
        match &self.data {
            SampleData::Ltl(s) => s.negatives.len(),
            SampleData::Ctl(s) => s.negatives.len(),
        }
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SampleError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| SampleError::Io {
            path: path.display().to_string(),
            source,
        })?;
        text.parse()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), SampleError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|source| SampleError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Renders the sample in the file format; parsing the result yields an
    /// equal sample.
    pub fn to_text(&self) -> String {
        let names: Vec<&str> = self.alphabet.iter().map(|p| p.name()).collect();
        let mut out = String::new();
        writeln!(out, "alphabet: {}", names.join(", ")).unwrap();
        writeln!(out, "logic: {}", self.logic()).unwrap();
        writeln!(out, "bound: {}", self.bound).unwrap();
        match &self.data {
            SampleData::Ltl(s) => {
                for w in &s.positives {
                    writeln!(out, "pos: {w}").unwrap();
                }
                for w in &s.negatives {
                    writeln!(out, "neg: {w}").unwrap();
                }
            }
            SampleData::Ctl(s) => {
                for m in &s.positives {
                    write_kripke(&mut out, "pos-kripke:\n", m);
                }
                for m in &s.negatives {
                    write_kripke(&mut out, "neg-kripke:\n", m);
                }
            }
        }
        out
    }
}

fn check_alphabet(
    alphabet: &Alphabet,
    used: impl Iterator<Item = std::collections::BTreeSet<Proposition>>,
) -> Result<(), SampleError> {
    if alphabet.is_empty() {
        return Err(SampleError::EmptyAlphabet);
    }
    for props in used {
        if let Some(p) = props.iter().find(|p| !alphabet.contains(p)) {
            return Err(SampleError::UnknownProposition(p.to_string()));
        }
    }
    Ok(())
}

fn write_kripke(out: &mut String, header: &str, m: &KripkeStructure) {
    out.push_str(header);
    for s in 0..m.state_count() {
        writeln!(out, "  state {} {}", m.name(s), format_letter(m.label(s))).unwrap();
    }
    for &s in m.initial() {
        writeln!(out, "  init {}", m.name(s)).unwrap();
    }
    for (s, t) in m.edges() {
        writeln!(out, "  edge {} {}", m.name(s), m.name(t)).unwrap();
    }
    out.push_str("end\n");
}

fn parse_letter(text: &str, alphabet: &Alphabet, line: usize) -> Result<Letter, SampleError> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| syntax(line, format!("expected a letter like {{a,b}}, found `{}`", text.trim())))?;
    let mut letter = Letter::new();
    for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let p = alphabet
            .get(name)
            .ok_or_else(|| syntax(line, format!("proposition `{name}` is not in the alphabet")))?;
        letter.insert(p.clone());
    }
    Ok(letter)
}

fn parse_letters(text: &str, alphabet: &Alphabet, line: usize) -> Result<Vec<Letter>, SampleError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|l| parse_letter(l, alphabet, line))
        .collect()
}

fn parse_word(
    text: &str,
    alphabet: &Alphabet,
    line: usize,
) -> Result<UltimatelyPeriodicWord, SampleError> {
    let (prefix, period) = text
        .split_once('|')
        .ok_or_else(|| syntax(line, "expected `<prefix> | <period>`"))?;
    let prefix = parse_letters(prefix, alphabet, line)?;
    let period = parse_letters(period, alphabet, line)?;
    UltimatelyPeriodicWord::new(prefix, period).map_err(|e| syntax(line, e.to_string()))
}

#[derive(Default)]
struct KripkeBuilder {
    positive: bool,
    start: usize,
    states: Vec<(String, Letter)>,
    index: BTreeMap<String, usize>,
    initial: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl KripkeBuilder {
    fn state(&self, name: &str, line: usize) -> Result<usize, SampleError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| syntax(line, format!("unknown state `{name}`")))
    }

    fn line(&mut self, text: &str, alphabet: &Alphabet, line: usize) -> Result<(), SampleError> {
        let (keyword, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        match keyword {
            "state" => {
                let (name, label) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax(line, "expected `state <name> {labels}`"))?;
                if self.index.contains_key(name) {
                    return Err(syntax(line, format!("duplicate state `{name}`")));
                }
                let label = parse_letter(label, alphabet, line)?;
                self.index.insert(name.to_string(), self.states.len());
                self.states.push((name.to_string(), label));
            }
            "init" => {
                for name in rest.split_whitespace() {
                    let s = self.state(name, line)?;
                    self.initial.push(s);
                }
                if rest.is_empty() {
                    return Err(syntax(line, "expected `init <name>`"));
                }
            }
            "edge" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(syntax(line, "expected `edge <from> <to>`"));
                }
                let from = self.state(parts[0], line)?;
                let to = self.state(parts[1], line)?;
                self.edges.push((from, to));
            }
            other => {
                return Err(syntax(
                    line,
                    format!("unexpected `{other}` inside a Kripke block (expected state, init, edge or end)"),
                ))
            }
        }
        Ok(())
    }

    fn finish(self, line: usize) -> Result<KripkeStructure, SampleError> {
        KripkeStructure::new(self.states, self.initial, self.edges)
            .map_err(|source| SampleError::Kripke { line, source })
    }
}

impl FromStr for Sample {
    type Err = SampleError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut alphabet: Option<Alphabet> = None;
        let mut logic: Option<Logic> = None;
        let mut bound: Option<usize> = None;
        let mut words = (Vec::new(), Vec::new());
        let mut structures = (Vec::new(), Vec::new());
        let mut block: Option<KripkeBuilder> = None;
        let mut seen_example = false;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            if let Some(builder) = block.as_mut() {
                if content == "end" {
                    let builder = block.take().unwrap();
                    let positive = builder.positive;
                    let m = builder.finish(line)?;
                    if positive {
                        structures.0.push(m);
                    } else {
                        structures.1.push(m);
                    }
                } else {
                    builder.line(content, alphabet.as_ref().unwrap(), line)?;
                }
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| syntax(line, format!("expected `key: value`, found `{content}`")))?;
            let key = key.trim();
            let value = value.trim();
            let header_ok = |seen: bool| {
                if seen_example {
                    Err(syntax(line, format!("`{key}:` must precede all examples")))
                } else if seen {
                    Err(syntax(line, format!("duplicate `{key}:` header")))
                } else {
                    Ok(())
                }
            };
            match key {
                "alphabet" => {
                    header_ok(alphabet.is_some())?;
                    let names: Vec<&str> = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .collect();
                    if names.is_empty() {
                        return Err(SampleError::EmptyAlphabet);
                    }
                    let a = Alphabet::from_names(&names).map_err(|e| syntax(line, e.to_string()))?;
                    alphabet = Some(a);
                }
                "logic" => {
                    header_ok(logic.is_some())?;
                    logic = Some(value.parse().map_err(|e: String| syntax(line, e))?);
                }
                "bound" => {
                    header_ok(bound.is_some())?;
                    bound = Some(
                        value
                            .parse()
                            .map_err(|_| syntax(line, format!("invalid bound `{value}`")))?,
                    );
                }
                "pos" | "neg" | "pos-kripke" | "neg-kripke" => {
                    seen_example = true;
                    let alpha = alphabet.as_ref().ok_or(SampleError::MissingHeader("alphabet"))?;
                    let lg = logic.ok_or(SampleError::MissingHeader("logic"))?;
                    let kripke = key.ends_with("kripke");
                    match (lg, kripke) {
                        (Logic::Ltl, false) => {
                            let w = parse_word(value, alpha, line)?;
                            if key == "pos" {
                                words.0.push(w);
                            } else {
                                words.1.push(w);
                            }
                        }
                        (Logic::Ctl, true) => {
                            if !value.is_empty() {
                                return Err(syntax(line, format!("unexpected text after `{key}:`")));
                            }
                            block = Some(KripkeBuilder {
                                positive: key == "pos-kripke",
                                start: line,
                                ..KripkeBuilder::default()
                            });
                        }
                        (Logic::Ltl, true) => {
                            return Err(syntax(line, "Kripke examples require `logic: ctl`"))
                        }
                        (Logic::Ctl, false) => {
                            return Err(syntax(line, "word examples require `logic: ltl`"))
                        }
                    }
                }
                other => return Err(syntax(line, format!("unknown key `{other}`"))),
            }
        }
        if let Some(b) = block {
            return Err(syntax(b.start, "Kripke block is not closed by `end`"));
        }
        let alphabet = alphabet.ok_or(SampleError::MissingHeader("alphabet"))?;
        let logic = logic.ok_or(SampleError::MissingHeader("logic"))?;
        let bound = bound.ok_or(SampleError::MissingHeader("bound"))?;
        match logic {
            Logic::Ltl => Sample::ltl(alphabet, bound, words.0, words.1),
            Logic::Ctl => Sample::ctl(alphabet, bound, structures.0, structures.1),
        }
    }
}
