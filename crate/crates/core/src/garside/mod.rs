//! Garside elements `Δ_n` (and `Δ_{n+0.5}` in `H⁺`), simple elements, their
//! index and types, the counting triangle, and the permutation description of
//! the expressions of `Δ_n` in `F⁺`.

mod enumerate;
mod permutation;
mod triangle;
mod types;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::reversing::divides_left;
use crate::rewrite::{contains_factor, is_reduced, ObstructionSet, RewriteSystem};
use crate::words::{MonoidId, Word};

pub use enumerate::{
    divisors_of, enumerate_divisors, obstruction_free_words, Method, SimpleRecord,
};
pub use permutation::{perm_to_word, Permutation};
pub use triangle::{count_triangle, generating_polynomial, CountTriangle};
pub use types::{
    bijection_maps, classify_type, definitional_types, BijectionReport, MapReport, SimpleType,
};

/// An integer rank `n`, or `n + 0.5` when `half` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank {
    pub n: u32,
    pub half: bool,
}

impl Rank {
    pub fn full(n: u32) -> Self {
        Rank { n, half: false }
    }

    pub fn half(n: u32) -> Self {
        Rank { n, half: true }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half {
            write!(f, "{}.5", self.n)
        } else {
            write!(f, "{}", self.n)
        }
    }
}

impl FromStr for Rank {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || format!("invalid rank {s:?}, expected n or n.5");
        let (whole, half) = match s.strip_suffix(".5") {
            Some(whole) => (whole, true),
            None => (s, false),
        };
        let n: u32 = whole.parse().map_err(|_| bad())?;
        Ok(Rank { n, half })
    }
}

impl Serialize for Rank {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

fn check_rank(monoid: MonoidId, rank: Rank) -> Result<()> {
    if rank.n == 0 {
        return Err(Error::RankTooSmall);
    }
    if rank.half && monoid == MonoidId::F {
        return Err(Error::HalfRankForF);
    }
    Ok(())
}

/// The defining word of `Δ_rank`.
///
/// In `F⁺` this is `τ₁τ₃⋯τ_{2n-3}`; in `H⁺` the increasing list of indices
/// not divisible by 3, up to `3n - 5` (or `3n - 4` for the half rank).
pub fn delta_word(monoid: MonoidId, rank: Rank) -> Result<Word> {
    check_rank(monoid, rank)?;
    let n = rank.n as i64;
    let letters: Vec<u32> = match monoid {
        MonoidId::F => (1..n).map(|k| (2 * k - 1) as u32).collect(),
        MonoidId::H => {
            let top = if rank.half { 3 * n - 4 } else { 3 * n - 5 };
            (1..=top).filter(|k| k % 3 != 0).map(|k| k as u32).collect()
        }
    };
    Ok(Word::from_vec_unchecked(letters))
}

/// The normal form of `Δ_rank`, built directly.
pub fn delta_nf(monoid: MonoidId, rank: Rank) -> Result<Word> {
    check_rank(monoid, rank)?;
    let n = rank.n;
    let mut letters = Vec::new();
    match monoid {
        MonoidId::F => letters.extend((1..n).rev()),
        MonoidId::H if n >= 2 => {
            letters.push(n - 1);
            if rank.half {
                letters.push(n);
            }
            for k in (1..n - 1).rev() {
                letters.extend([k, k + 1]);
            }
        }
        MonoidId::H => {}
    }
    Ok(Word::from_vec_unchecked(letters))
}

/// Whether `w` is the normal form of a simple element.
pub fn is_simple_nf(monoid: MonoidId, w: &Word) -> bool {
    match monoid {
        MonoidId::F => w.letters().windows(2).all(|p| p[0] > p[1]),
        MonoidId::H => {
            !contains_factor(w, ObstructionSet::ReducibleH)
                && !contains_factor(w, ObstructionSet::NonSimpleH)
        }
    }
}

/// The least `n` with `a ≼ Δ_n`, read off the normal form.
pub fn index_of(monoid: MonoidId, a: &Word) -> Result<u32> {
    if !is_simple_nf(monoid, a) {
        return Err(Error::NotSimple { word: a.clone() });
    }
    Ok(match monoid {
        MonoidId::F => a.first().map_or(1, |g| g + 1),
        MonoidId::H => a.height() + 1,
    })
}

/// The least `n` with `a ≼ Δ_n`, found by reversing against `Δ_1, Δ_2, …`.
///
/// Gives up with [`Error::NotSimple`] past `n = height + length + 1`.
pub fn least_index_by_reversing(monoid: MonoidId, a: &Word, budget: usize) -> Result<u32> {
    let p = Presentation::standard(monoid);
    for n in 1..=a.height() + a.len() as u32 + 1 {
        if divides_left(&p, a, &delta_word(monoid, Rank::full(n))?, budget)? {
            return Ok(n);
        }
    }
    Err(Error::NotSimple { word: a.clone() })
}

/// Splits an `E_F`-reduced word into its maximal strictly decreasing factors,
/// the normal forms of the greedy decomposition into simples.
pub fn greedy_decompose_f(a: &Word) -> Result<Vec<Word>> {
    if !is_reduced(&RewriteSystem::e_f(), a) {
        return Err(Error::Precondition(format!("{a} is not E_F-reduced")));
    }
    let mut out: Vec<Vec<u32>> = Vec::new();
    for &g in a.letters() {
        match out.last_mut() {
            Some(run) if *run.last().unwrap() > g => run.push(g),
            _ => out.push(vec![g]),
        }
    }
    Ok(out.into_iter().map(Word::from_vec_unchecked).collect())
}
