use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{check_rank, classify_type, delta_word, index_of, Rank, SimpleType};
use crate::error::{Error, Result};
use crate::presentation::{class_saturate, Presentation};
use crate::reversing::divides_left;
use crate::rewrite::{is_reduced, reduce, ObstructionSet, RewriteSystem};
use crate::words::{MonoidId, Word};

/// How the left divisors of `Δ_n` are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Words avoiding the forbidden factors of simple normal forms.
    ForbiddenFactors,
    /// Closure of `{ε}` under right multiplication by atoms, filtered by reversing.
    BfsReversing,
    /// Prefixes of the saturated expression class of `Δ_n`.
    Oracle,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "forbidden_factors" | "forbidden-factors" => Ok(Method::ForbiddenFactors),
            "bfs_reversing" | "bfs-reversing" => Ok(Method::BfsReversing),
            "oracle" => Ok(Method::Oracle),
            other => Err(format!(
                "unknown method {other:?}, expected forbidden_factors, bfs_reversing or oracle"
            )),
        }
    }
}

/// A simple element, given by its normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleRecord {
    #[serde(skip)]
    pub monoid: MonoidId,
    pub nf: Word,
    pub length: usize,
    pub index: u32,
    /// Type relative to the enumerated rank; only for `H⁺` at integer ranks `n >= 2`.
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub kind: Option<SimpleType>,
}

/// The left divisors of `Δ_rank`, as normal forms sorted by length, then letters.
pub fn enumerate_divisors(
    monoid: MonoidId,
    rank: Rank,
    method: Method,
    budget: usize,
) -> Result<Vec<SimpleRecord>> {
    check_rank(monoid, rank)?;
    let nfs: BTreeSet<Word> = match method {
        Method::ForbiddenFactors => {
            if rank.half {
                return Err(Error::Precondition(
                    "forbidden-factor enumeration needs an integer rank".into(),
                ));
            }
            forbidden_factor_words(monoid, rank.n)
        }
        Method::BfsReversing => divisors_of(monoid, &delta_word(monoid, rank)?, budget)?,
        Method::Oracle => oracle_divisors(monoid, &delta_word(monoid, rank)?, budget)?,
    };
    let mut out = Vec::with_capacity(nfs.len());
    for nf in nfs {
        let index = index_of(monoid, &nf)?;
        let kind = match (monoid, rank.half) {
            (MonoidId::H, false) if rank.n >= 2 => Some(classify_type(&nf, rank.n)?),
            _ => None,
        };
        out.push(SimpleRecord {
            monoid,
            length: nf.len(),
            nf,
            index,
            kind,
        });
    }
    out.sort_by(|a, b| (a.length, &a.nf).cmp(&(b.length, &b.nf)));
    Ok(out)
}

fn forbidden_factor_words(monoid: MonoidId, n: u32) -> BTreeSet<Word> {
    match monoid {
        MonoidId::F => {
            let mut out = BTreeSet::new();
            decreasing_words(n.saturating_sub(1), &mut Vec::new(), &mut out);
            out
        }
        MonoidId::H => {
            let max_len = (2 * n as usize).saturating_sub(3);
            obstruction_free_words(n, max_len).into_iter().collect()
        }
    }
}

/// Strictly decreasing words with letters `<= top`.
fn decreasing_words(top: u32, prefix: &mut Vec<u32>, out: &mut BTreeSet<Word>) {
    out.insert(Word::from_vec_unchecked(prefix.clone()));
    let bound = prefix.last().map_or(top, |&g| g - 1);
    for g in 1..=bound {
        prefix.push(g);
        decreasing_words(top, prefix, out);
        prefix.pop();
    }
}

/// Words with letters `<= n - 1` and length `<= max_len` avoiding both the
/// reducible patterns and the non-simple patterns of `H⁺`.
pub fn obstruction_free_words(n: u32, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::<u32>::new()];
    while let Some(w) = stack.pop() {
        if w.len() < max_len {
            for g in 1..n {
                let mut next = w.clone();
                next.push(g);
                if !ObstructionSet::ReducibleH.matches_suffix(&next)
                    && !ObstructionSet::NonSimpleH.matches_suffix(&next)
                {
                    stack.push(next);
                }
            }
        }
        out.push(Word::from_vec_unchecked(w));
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Normal forms of all left divisors of `target`, by breadth-first search.
///
/// Every prefix of a divisor is a divisor, so the closure of `{ε}` under
/// `a ↦ NF(a·g)` restricted to divisors reaches all of them. Letters of
/// every expression of `target` are bounded by its ceiling.
pub fn divisors_of(monoid: MonoidId, target: &Word, budget: usize) -> Result<BTreeSet<Word>> {
    let p = Presentation::standard(monoid);
    let sys = RewriteSystem::for_monoid(monoid);
    let mut seen = BTreeSet::from([Word::empty()]);
    let mut frontier = vec![Word::empty()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in 1..=target.ceiling() {
                let mut candidate = a.clone();
                candidate.push(g);
                let candidate = reduce(&sys, &candidate);
                if seen.contains(&candidate) || candidate.len() > target.len() {
                    continue;
                }
                if divides_left(&p, &candidate, target, budget)? {
                    seen.insert(candidate.clone());
                    next.push(candidate);
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}

/// Left divisors of `target` from the prefixes of its saturated class, each
/// named by the reduced member of its own saturated class.
fn oracle_divisors(monoid: MonoidId, target: &Word, budget: usize) -> Result<BTreeSet<Word>> {
    let p = Presentation::standard(monoid);
    let sys = RewriteSystem::for_monoid(monoid);
    let class = class_saturate(&p, target, budget);
    if class.truncated {
        return Err(Error::BudgetExceeded {
            what: "class saturation",
            budget,
        });
    }
    let mut canonical: BTreeMap<Word, Word> = BTreeMap::new();
    for member in &class.members {
        for len in 0..=member.len() {
            let prefix = member.prefix(len);
            if canonical.contains_key(&prefix) {
                continue;
            }
            let prefix_class = class_saturate(&p, &prefix, budget);
            if prefix_class.truncated {
                return Err(Error::BudgetExceeded {
                    what: "class saturation",
                    budget,
                });
            }
            let name = prefix_class
                .members
                .iter()
                .find(|x| is_reduced(&sys, x))
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("no reduced expression of {prefix}")))?;
            for x in prefix_class.members {
                canonical.insert(x, name.clone());
            }
        }
    }
    Ok(canonical.into_values().collect())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::{is_simple_nf, least_index_by_reversing};

    fn nfs(records: &[SimpleRecord]) -> Vec<Word> {
        records.iter().map(|r| r.nf.clone()).collect()
    }

    fn w(letters: &[u32]) -> Word {
        Word::of(letters)
    }

    const BUDGET: usize = 1_000_000;

    #[test]
    fn sigma_three_in_h() {
        let expected = vec![
            Word::empty(),
            w(&[1]),
            w(&[2]),
            w(&[1, 2]),
            w(&[2, 1]),
            w(&[2, 1, 2]),
        ];
        for method in [
            Method::ForbiddenFactors,
            Method::BfsReversing,
            Method::Oracle,
        ] {
            let got = enumerate_divisors(MonoidId::H, Rank::full(3), method, BUDGET).unwrap();
            assert_eq!(nfs(&got), expected, "{method:?}");
        }
    }

    #[test]
    fn sigma_three_in_f() {
        let got = enumerate_divisors(MonoidId::F, Rank::full(3), Method::ForbiddenFactors, BUDGET)
            .unwrap();
        assert_eq!(nfs(&got), vec![Word::empty(), w(&[1]), w(&[2]), w(&[2, 1])]);
    }

    #[test]
    fn methods_agree() {
        for n in 1..=6 {
            let m = MonoidId::F;
            let a = enumerate_divisors(m, Rank::full(n), Method::ForbiddenFactors, BUDGET).unwrap();
            let b = enumerate_divisors(m, Rank::full(n), Method::BfsReversing, BUDGET).unwrap();
            let c = enumerate_divisors(m, Rank::full(n), Method::Oracle, BUDGET).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, c);
            assert_eq!(a.len(), 1 << (n - 1));
        }
        for n in 1..=4 {
            let m = MonoidId::H;
            let a = enumerate_divisors(m, Rank::full(n), Method::ForbiddenFactors, BUDGET).unwrap();
            let b = enumerate_divisors(m, Rank::full(n), Method::BfsReversing, BUDGET).unwrap();
            let c = enumerate_divisors(m, Rank::full(n), Method::Oracle, BUDGET).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, c);
        }
        let four = enumerate_divisors(MonoidId::H, Rank::full(4), Method::ForbiddenFactors, BUDGET)
            .unwrap();
        assert_eq!(four.len(), 18);
    }

    #[test]
    fn half_rank_divisors() {
        let got =
            enumerate_divisors(MonoidId::H, Rank::half(2), Method::BfsReversing, BUDGET).unwrap();
        assert_eq!(nfs(&got), vec![Word::empty(), w(&[1]), w(&[1, 2])]);
        assert!(got.iter().all(|r| r.kind.is_none()));
        assert!(matches!(
            enumerate_divisors(MonoidId::H, Rank::half(2), Method::ForbiddenFactors, BUDGET),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn index_agrees_with_least_rank() {
        for m in [MonoidId::F, MonoidId::H] {
            let all =
                enumerate_divisors(m, Rank::full(5), Method::ForbiddenFactors, BUDGET).unwrap();
            for r in all {
                assert!(is_simple_nf(m, &r.nf));
                assert_eq!(
                    r.index,
                    least_index_by_reversing(m, &r.nf, 100_000).unwrap(),
                    "{}",
                    r.nf
                );
            }
        }
    }

    #[test]
    fn record_fields() {
        let got = enumerate_divisors(MonoidId::H, Rank::full(3), Method::ForbiddenFactors, BUDGET)
            .unwrap();
        let top = &got[5];
        assert_eq!(
            (top.nf.clone(), top.length, top.index),
            (w(&[2, 1, 2]), 3, 3)
        );
        assert_eq!(top.kind, Some(SimpleType::II2));
    }
}
