use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{delta_word, enumerate_divisors, index_of, is_simple_nf, Method, Rank};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::reversing::{divides_left, left_quotient};
use crate::rewrite::{reduce, RewriteSystem};
use crate::words::{MonoidId, Word};

/// The four families partitioning the left divisors of `Δ_n` in `H⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    /// Divides `Δ_{n-1}`.
    Zero,
    /// `θ_{n-1}·b` with `b ≼ Δ_{n-1}`.
    I,
    /// `θ_{n-2}θ_{n-1}·b` with `b ≼ Δ_{n-1.5}`.
    II1,
    /// `θ_{n-1}θ_{n-2}θ_{n-1}·b` with `θ_{n-2}b ≼ Δ_{n-1}`.
    II2,
}

impl SimpleType {
    pub const ALL: [SimpleType; 4] = [
        SimpleType::Zero,
        SimpleType::I,
        SimpleType::II1,
        SimpleType::II2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SimpleType::Zero => "0",
            SimpleType::I => "I",
            SimpleType::II1 => "II1",
            SimpleType::II2 => "II2",
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Type of the simple element with normal form `nf` relative to rank `n`,
/// decided by the shape of the normal form.
pub fn classify_type(nf: &Word, n: u32) -> Result<SimpleType> {
    let not_divisor = || Error::NotADivisor {
        word: nf.clone(),
        rank: n,
    };
    if n < 2 {
        return Err(Error::Precondition("types are defined for n >= 2".into()));
    }
    if !is_simple_nf(MonoidId::H, nf) {
        return Err(not_divisor());
    }
    let index = index_of(MonoidId::H, nf)?;
    if index > n {
        return Err(not_divisor());
    }
    if index < n {
        return Ok(SimpleType::Zero);
    }
    Ok(if n >= 3 && nf.starts_with(&[n - 1, n - 2, n - 1]) {
        SimpleType::II2
    } else if n >= 3 && nf.starts_with(&[n - 2, n - 1]) {
        SimpleType::II1
    } else {
        debug_assert_eq!(nf.first(), Some(n - 1));
        SimpleType::I
    })
}

/// Every family of rank `n` containing `a`, decided by divisibility of the
/// stripped quotients, independently of normal forms.
pub fn definitional_types(a: &Word, n: u32, budget: usize) -> Result<Vec<SimpleType>> {
    let p = Presentation::standard(MonoidId::H);
    let delta = |rank: Rank| delta_word(MonoidId::H, rank);
    let quotient = |prefix: &[u32]| left_quotient(&p, &Word::of(prefix), a, budget);
    let mut out = Vec::new();
    if n < 2 {
        return Ok(out);
    }
    if divides_left(&p, a, &delta(Rank::full(n - 1))?, budget)? {
        out.push(SimpleType::Zero);
    }
    if let Some(b) = quotient(&[n - 1])? {
        if divides_left(&p, &b, &delta(Rank::full(n - 1))?, budget)? {
            out.push(SimpleType::I);
        }
    }
    if n >= 3 {
        if let Some(b) = quotient(&[n - 2, n - 1])? {
            if divides_left(&p, &b, &delta(Rank::half(n - 2))?, budget)? {
                out.push(SimpleType::II1);
            }
        }
        if let Some(b) = quotient(&[n - 1, n - 2, n - 1])? {
            let shifted = Word::of(&[n - 2]).concat(&b);
            if divides_left(&p, &shifted, &delta(Rank::full(n - 1))?, budget)? {
                out.push(SimpleType::II2);
            }
        }
    }
    Ok(out)
}

/// One of the three maps from divisors of `Δ_{n-1}` onto families of rank `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapReport {
    pub name: &'static str,
    pub domain_size: usize,
    pub image: BTreeSet<Word>,
    pub target: BTreeSet<Word>,
}

impl MapReport {
    pub fn injective(&self) -> bool {
        self.image.len() == self.domain_size
    }

    pub fn onto(&self) -> bool {
        self.image == self.target
    }

    pub fn bijective(&self) -> bool {
        self.injective() && self.onto()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub n: u32,
    pub length: usize,
    pub maps: Vec<MapReport>,
}

impl BijectionReport {
    pub fn all_bijective(&self) -> bool {
        self.maps.iter().all(MapReport::bijective)
    }
}

/// Builds the maps `Σ_{n-1,ℓ} → Σ⁰_{n,ℓ}`, `Σ_{n-1,ℓ-1} → Σᴵ_{n,ℓ}` and
/// `Σ_{n-1,ℓ-2} → Σᴵᴵ¹_{n,ℓ} ∪ Σᴵᴵ²_{n,ℓ}` on normal forms.
pub fn bijection_maps(n: u32, length: usize, budget: usize) -> Result<BijectionReport> {
    if n < 3 {
        return Err(Error::Precondition("bijection maps need n >= 3".into()));
    }
    let p = Presentation::standard(MonoidId::H);
    let sys = RewriteSystem::e_h();
    let lower = enumerate_divisors(
        MonoidId::H,
        Rank::full(n - 1),
        Method::ForbiddenFactors,
        budget,
    )?;
    let upper = enumerate_divisors(MonoidId::H, Rank::full(n), Method::ForbiddenFactors, budget)?;
    let domain = |len: Option<usize>| -> Vec<Word> {
        lower
            .iter()
            .filter(|r| Some(r.length) == len)
            .map(|r| r.nf.clone())
            .collect()
    };
    let target = |kinds: &[SimpleType]| -> BTreeSet<Word> {
        upper
            .iter()
            .filter(|r| r.length == length && kinds.contains(&r.kind.unwrap()))
            .map(|r| r.nf.clone())
            .collect()
    };
    let nf = |prefix: &[u32], a: &Word| reduce(&sys, &Word::of(prefix).concat(a));
    let half = delta_word(MonoidId::H, Rank::half(n - 2))?;

    let d0 = domain(Some(length));
    let d1 = domain(length.checked_sub(1));
    let d2 = domain(length.checked_sub(2));
    let mut image2 = BTreeSet::new();
    for a in &d2 {
        if divides_left(&p, a, &half, budget)? {
            image2.insert(nf(&[n - 2, n - 1], a));
        } else {
            let b = left_quotient(&p, &Word::of(&[n - 2]), a, budget)?
                .ok_or_else(|| Error::Precondition(format!("θ_{} does not divide {a}", n - 2)))?;
            image2.insert(nf(&[n - 1, n - 2, n - 1], &b));
        }
    }
    let maps = vec![
        MapReport {
            name: "F0",
            domain_size: d0.len(),
            image: d0.iter().cloned().collect(),
            target: target(&[SimpleType::Zero]),
        },
        MapReport {
            name: "FI",
            domain_size: d1.len(),
            image: d1.iter().map(|a| nf(&[n - 1], a)).collect(),
            target: target(&[SimpleType::I]),
        },
        MapReport {
            name: "FII",
            domain_size: d2.len(),
            image: image2,
            target: target(&[SimpleType::II1, SimpleType::II2]),
        },
    ];
    Ok(BijectionReport { n, length, maps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[u32]) -> Word {
        Word::of(letters)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_type(&w(&[1]), 3).unwrap(), SimpleType::Zero);
        assert_eq!(classify_type(&w(&[1, 2]), 3).unwrap(), SimpleType::II1);
        assert_eq!(classify_type(&w(&[2, 1, 2]), 3).unwrap(), SimpleType::II2);
        assert_eq!(classify_type(&w(&[2]), 3).unwrap(), SimpleType::I);
        assert!(matches!(
            classify_type(&w(&[3]), 3),
            Err(Error::NotADivisor { .. })
        ));
        assert!(matches!(
            classify_type(&w(&[2, 4]), 5),
            Err(Error::NotADivisor { .. })
        ));
    }

    #[test]
    fn definitional_examples() {
        assert_eq!(
            definitional_types(&w(&[1]), 3, 10_000).unwrap(),
            vec![SimpleType::Zero]
        );
        assert_eq!(
            definitional_types(&w(&[1, 2]), 3, 10_000).unwrap(),
            vec![SimpleType::II1]
        );
        assert_eq!(
            definitional_types(&w(&[2, 1, 2]), 3, 10_000).unwrap(),
            vec![SimpleType::II2]
        );
        assert_eq!(
            definitional_types(&w(&[2]), 3, 10_000).unwrap(),
            vec![SimpleType::I]
        );
    }

    #[test]
    fn dispatch_matches_definition() {
        for n in 2..=5 {
            let all = enumerate_divisors(
                MonoidId::H,
                Rank::full(n),
                Method::ForbiddenFactors,
                1_000_000,
            )
            .unwrap();
            for r in all {
                let types = definitional_types(&r.nf, n, 100_000).unwrap();
                assert_eq!(types, vec![r.kind.unwrap()], "n={n} a={}", r.nf);
            }
        }
    }

    #[test]
    fn maps_are_bijections() {
        for n in 3..=5 {
            for length in 0..=(2 * n as usize - 3) {
                let report = bijection_maps(n, length, 1_000_000).unwrap();
                assert!(report.all_bijective(), "n={n} len={length}: {report:?}");
            }
        }
        let tiny = bijection_maps(3, 1, 1_000_000).unwrap();
        assert_eq!(tiny.maps[1].domain_size, 1);
        assert_eq!(tiny.maps[1].target.len(), 1);
    }
}
