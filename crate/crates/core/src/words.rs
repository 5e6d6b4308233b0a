//! Words over a positively indexed family of generators.
//!
//! A [`Word`] carries bare indices; whether a letter stands for `τ_i` or `θ_i`
//! is decided by the [`MonoidId`] passed to the operation consuming it.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The two monoids handled by the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonoidId {
    /// Thompson's monoid, relations `τ_j τ_i = τ_i τ_{j+1}` for `j >= i + 1`.
    F,
    /// The hybrid monoid, Thompson relations for `j >= i + 2` plus the shifted
    /// braid relations `θ_{i+1} θ_i θ_{i+1} = θ_i θ_{i+1} θ_{i+3}`.
    H,
}

impl MonoidId {
    pub fn letter_name(self) -> &'static str {
        match self {
            MonoidId::F => "τ",
            MonoidId::H => "θ",
        }
    }
}

impl fmt::Display for MonoidId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidId::F => f.write_str("F"),
            MonoidId::H => f.write_str("H"),
        }
    }
}

impl FromStr for MonoidId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "F" | "f" => Ok(MonoidId::F),
            "H" | "h" => Ok(MonoidId::H),
            other => Err(format!("unknown monoid {other:?}, expected F or H")),
        }
    }
}

/// A generator index, always `>= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u32);

impl Generator {
    pub fn new(index: u32) -> Result<Self> {
        if index == 0 {
            Err(Error::ZeroIndex)
        } else {
            Ok(Generator(index))
        }
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

/// A finite (possibly empty) word. Ordering is lexicographic on the index sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from raw indices, rejecting index 0.
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::ZeroIndex);
        }
        Ok(Word(letters))
    }

    /// Builds a word from a literal slice.
    ///
    /// Panics if a letter is 0; meant for constants and tests.
    pub fn of(letters: &[u32]) -> Self {
        assert!(
            letters.iter().all(|&g| g >= 1),
            "generator indices must be >= 1"
        );
        Word(letters.to_vec())
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(letters.iter().all(|&g| g >= 1));
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.0.iter().map(|&g| Generator(g))
    }

    /// `max_p (i_p + ℓ - p)` over 1-based positions `p`; 0 for the empty word.
    pub fn ceiling(&self) -> u32 {
        let len = self.0.len() as u32;
        self.0
            .iter()
            .enumerate()
            .map(|(p, &g)| g + len - (p as u32 + 1))
            .max()
            .unwrap_or(0)
    }

    /// Largest index occurring in the word; 0 for the empty word.
    pub fn height(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Sum of the letter indices.
    pub fn index_sum(&self) -> u64 {
        self.0.iter().map(|&g| g as u64).sum()
    }

    pub fn shift(&self, d: u32) -> Word {
        Word(self.0.iter().map(|&g| g + d).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, g: u32) {
        assert!(g >= 1, "generator indices must be >= 1");
        self.0.push(g);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    pub fn starts_with(&self, prefix: &[u32]) -> bool {
        self.0.starts_with(prefix)
    }

    /// Renders with Greek letters, e.g. `θ₂θ₁θ₂`; the empty word is `ε`.
    pub fn pretty(&self, monoid: MonoidId) -> String {
        if self.is_empty() {
            return "ε".to_string();
        }
        let mut out = String::new();
        for &g in &self.0 {
            out.push_str(monoid.letter_name());
            out.push_str(&subscript(g));
        }
        out
    }
}

fn subscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// Parses `"e"` or whitespace-separated `g<k>` tokens.
pub fn parse_word(text: &str) -> Result<Word> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::EmptyInput);
    }
    if trimmed == "e" {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    for token in trimmed.split_whitespace() {
        let digits = token
            .strip_prefix('g')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| Error::MalformedToken(token.to_string()))?;
        let k: u32 = digits
            .parse()
            .map_err(|_| Error::MalformedToken(token.to_string()))?;
        letters.push(Generator::new(k)?.index());
    }
    Ok(Word(letters))
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl From<Generator> for Word {
    fn from(g: Generator) -> Self {
        Word(vec![g.0])
    }
}
