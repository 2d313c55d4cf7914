//! Semantic objects: ultimately periodic words, Kripke structures, samples of
//! labelled examples and the on-disk sample format.

mod kripke;
mod sample;
mod word;

pub use kripke::{embed_word, KripkeError, KripkeStructure};
pub use sample::{Sample, SampleData, SampleError, Split};
pub use word::{Letter, UltimatelyPeriodicWord, WordError};

/// Prints a letter as `{a,b}` with propositions in name order.
pub fn format_letter(letter: &Letter) -> String {
    let names: Vec<&str> = letter.iter().map(|p| p.name()).collect();
    format!("{{{}}}", names.join(","))
}
