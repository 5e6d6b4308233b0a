//! Relation schemas, their application at a position, and congruence-class saturation.
//!
//! Every relation of `P_F` and `P_H` preserves length, and for `P_H` also the
//! ceiling, so an equivalence class is finite and can be listed exhaustively
//! by breadth-first application of relations in both directions.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::words::{MonoidId, Word};

pub const DEFAULT_SATURATION_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationSchema {
    /// `τ_j τ_i = τ_i τ_{j+1}` for `j >= i + 1`.
    FSwap,
    /// `θ_j θ_i = θ_i θ_{j+1}` for `j >= i + 2`.
    HSwap,
    /// `θ_{i+1} θ_i θ_{i+1} = θ_i θ_{i+1} θ_{i+3}`.
    HBraid,
}

impl RelationSchema {
    pub fn arity(self) -> usize {
        match self {
            RelationSchema::FSwap | RelationSchema::HSwap => 2,
            RelationSchema::HBraid => 3,
        }
    }

    /// If `factor` (of length `arity`) is one side of an instance, returns the other side.
    fn other_side(self, factor: &[u32]) -> Option<Vec<u32>> {
        match (self, factor) {
            (RelationSchema::FSwap, &[a, b]) => swap_other_side(a, b, 1),
            (RelationSchema::HSwap, &[a, b]) => swap_other_side(a, b, 2),
            (RelationSchema::HBraid, &[a, b, c]) => {
                if a == b + 1 && c == a {
                    Some(vec![b, a, b + 3])
                } else if b == a + 1 && c == a + 3 {
                    Some(vec![a + 1, a, a + 1])
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Instances `(lhs, rhs)` with all free parameters in `1..=window`.
    fn instances(self, window: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
        let mut out = Vec::new();
        match self {
            RelationSchema::FSwap | RelationSchema::HSwap => {
                let gap = if self == RelationSchema::FSwap { 1 } else { 2 };
                for i in 1..=window {
                    for j in (i + gap)..=window {
                        out.push((vec![j, i], vec![i, j + 1]));
                    }
                }
            }
            RelationSchema::HBraid => {
                for i in 1..=window {
                    out.push((vec![i + 1, i, i + 1], vec![i, i + 1, i + 3]));
                }
            }
        }
        out
    }
}

// `x_j x_i = x_i x_{j+1}` for `j >= i + gap`.
fn swap_other_side(a: u32, b: u32, gap: u32) -> Option<Vec<u32>> {
    if a >= b + gap {
        Some(vec![b, a + 1])
    } else if b > a + gap {
        Some(vec![b - 1, a])
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Standard,
    /// Both sides of every relation reversed; presents the opposite monoid.
    Mirrored,
}

/// A concrete relation `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationInstance {
    pub schema: RelationSchema,
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    monoid: MonoidId,
    orientation: Orientation,
    schemas: Vec<RelationSchema>,
}

impl Presentation {
    pub fn standard(monoid: MonoidId) -> Self {
        let schemas = match monoid {
            MonoidId::F => vec![RelationSchema::FSwap],
            MonoidId::H => vec![RelationSchema::HSwap, RelationSchema::HBraid],
        };
        Presentation {
            monoid,
            orientation: Orientation::Standard,
            schemas,
        }
    }

    pub fn mirrored(monoid: MonoidId) -> Self {
        Presentation {
            orientation: Orientation::Mirrored,
            ..Presentation::standard(monoid)
        }
    }

    pub fn monoid(&self) -> MonoidId {
        self.monoid
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn schemas(&self) -> &[RelationSchema] {
        &self.schemas
    }

    /// The presentation with every relation reversed.
    pub fn opposite(&self) -> Self {
        let orientation = match self.orientation {
            Orientation::Standard => Orientation::Mirrored,
            Orientation::Mirrored => Orientation::Standard,
        };
        Presentation {
            orientation,
            ..self.clone()
        }
    }

    fn other_side(&self, schema: RelationSchema, factor: &[u32]) -> Option<Vec<u32>> {
        match self.orientation {
            Orientation::Standard => schema.other_side(factor),
            Orientation::Mirrored => {
                let rev: Vec<u32> = factor.iter().rev().copied().collect();
                schema.other_side(&rev).map(|mut side| {
                    side.reverse();
                    side
                })
            }
        }
    }

    /// All relation instances with free parameters in `1..=window`.
    pub fn relation_instances(&self, window: u32) -> Vec<RelationInstance> {
        let mut out = Vec::new();
        for &schema in &self.schemas {
            for (lhs, rhs) in schema.instances(window) {
                let (lhs, rhs) = match self.orientation {
                    Orientation::Standard => (lhs, rhs),
                    Orientation::Mirrored => (
                        lhs.into_iter().rev().collect(),
                        rhs.into_iter().rev().collect(),
                    ),
                };
                out.push(RelationInstance {
                    schema,
                    lhs: Word::from_vec_unchecked(lhs),
                    rhs: Word::from_vec_unchecked(rhs),
                });
            }
        }
        out
    }

    /// Whether `u = v` is literally one relation instance, in either direction.
    pub fn is_relation(&self, u: &Word, v: &Word) -> bool {
        u.len() == v.len()
            && self.schemas.iter().any(|&s| {
                s.arity() == u.len()
                    && self.other_side(s, u.letters()).as_deref() == Some(v.letters())
            })
    }

    /// Words obtained by replacing a factor starting at `pos` by the other
    /// side of a relation instance. Sorted, without duplicates.
    pub fn match_relations(&self, w: &Word, pos: usize) -> Vec<Word> {
        let letters = w.letters();
        let mut out = BTreeSet::new();
        for &schema in &self.schemas {
            let end = pos + schema.arity();
            if end > letters.len() {
                continue;
            }
            if let Some(side) = self.other_side(schema, &letters[pos..end]) {
                let mut next = Vec::with_capacity(letters.len());
                next.extend_from_slice(&letters[..pos]);
                next.extend_from_slice(&side);
                next.extend_from_slice(&letters[end..]);
                out.insert(Word::from_vec_unchecked(next));
            }
        }
        out.into_iter().collect()
    }

    /// Words at distance one from `w` under the congruence.
    pub fn neighbours(&self, w: &Word) -> Vec<Word> {
        (0..w.len())
            .flat_map(|pos| self.match_relations(w, pos))
            .collect()
    }

    /// Pairs `(s, t)` of first letters (indices `<= window`) that start the
    /// two sides of more than one relation, or of a relation `s... = s...`.
    pub fn complementation_violations(&self, window: u32) -> Vec<(u32, u32)> {
        let mut seen = HashSet::new();
        let mut bad = Vec::new();
        for inst in self.relation_instances(window + 3) {
            let (s, t) = (inst.lhs.first().unwrap(), inst.rhs.first().unwrap());
            if s > window || t > window {
                continue;
            }
            if s == t || !seen.insert((s.min(t), s.max(t))) {
                bad.push((s, t));
            }
        }
        bad
    }
}

/// A finite equivalence class, possibly truncated by the budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceClass {
    pub representative: Word,
    pub members: BTreeSet<Word>,
    pub truncated: bool,
}

impl CongruenceClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }

    fn complete(self, what: &'static str, budget: usize) -> Result<Self> {
        if self.truncated {
            Err(Error::BudgetExceeded { what, budget })
        } else {
            Ok(self)
        }
    }
}

/// Breadth-first closure of `{w}` under relation application at every position.
/// `budget` bounds the number of distinct words enqueued.
pub fn class_saturate(p: &Presentation, w: &Word, budget: usize) -> CongruenceClass {
    let budget = budget.max(1);
    let mut visited: HashSet<Word> = HashSet::new();
    let mut queue = VecDeque::new();
    visited.insert(w.clone());
    queue.push_back(w.clone());
    let mut truncated = false;
    'bfs: while let Some(current) = queue.pop_front() {
        for next in p.neighbours(&current) {
            if visited.contains(&next) {
                continue;
            }
            if visited.len() >= budget {
                truncated = true;
                break 'bfs;
            }
            visited.insert(next.clone());
            queue.push_back(next);
        }
    }
    CongruenceClass {
        representative: w.clone(),
        members: visited.into_iter().collect(),
        truncated,
    }
}

/// Decides `u ≡ v` by listing the class of `u`.
pub fn oracle_equal(p: &Presentation, u: &Word, v: &Word, budget: usize) -> Result<bool> {
    if u.len() != v.len() {
        return Ok(false);
    }
    let class = class_saturate(p, u, budget);
    if class.contains(v) {
        return Ok(true);
    }
    class.complete("class saturation", budget).map(|_| false)
}

/// Decides `a ≼ b` by searching the class of `b` for a member whose prefix lies in the class of `a`.
pub fn oracle_divides_left(p: &Presentation, a: &Word, b: &Word, budget: usize) -> Result<bool> {
    if a.is_empty() {
        return Ok(true);
    }
    if a.len() > b.len() {
        return Ok(false);
    }
    let class_b = class_saturate(p, b, budget).complete("class saturation", budget)?;
    let class_a = class_saturate(p, a, budget).complete("class saturation", budget)?;
    Ok(class_b
        .members
        .iter()
        .any(|m| class_a.contains(&m.prefix(a.len()))))
}

/// Right quotients `x` with `a·x ≡ b`, as the set of all their expressions.
pub fn oracle_left_quotients(
    p: &Presentation,
    a: &Word,
    b: &Word,
    budget: usize,
) -> Result<BTreeSet<Word>> {
    if a.len() > b.len() {
        return Ok(BTreeSet::new());
    }
    let class_b = class_saturate(p, b, budget).complete("class saturation", budget)?;
    let class_a = class_saturate(p, a, budget).complete("class saturation", budget)?;
    Ok(class_b
        .members
        .iter()
        .filter(|m| class_a.contains(&m.prefix(a.len())))
        .map(|m| m.suffix_from(a.len()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[u32]) -> Word {
        Word::of(letters)
    }

    #[test]
    fn match_relations_examples() {
        let ph = Presentation::standard(MonoidId::H);
        let pf = Presentation::standard(MonoidId::F);
        assert_eq!(ph.match_relations(&w(&[1, 2, 4]), 0), vec![w(&[2, 1, 2])]);
        assert_eq!(pf.match_relations(&w(&[1, 3]), 0), vec![w(&[2, 1])]);
        assert!(ph.match_relations(&w(&[1, 2]), 0).is_empty());
        assert!(ph.match_relations(&w(&[1, 2, 4]), 3).is_empty());
    }

    #[test]
    fn match_relations_at_inner_positions() {
        let ph = Presentation::standard(MonoidId::H);
        assert_eq!(ph.match_relations(&w(&[5, 3, 1]), 1), vec![w(&[5, 1, 4])]);
        // θ₃θ₁ is a swap side; θ₃θ₁θ₃ is not a braid side.
        assert_eq!(ph.match_relations(&w(&[3, 1, 3]), 0), vec![w(&[1, 4, 3])]);
    }

    #[test]
    fn mirrored_presentation_reverses_sides() {
        let mf = Presentation::mirrored(MonoidId::F);
        // τ₂τ₁ = τ₁τ₃ reversed reads τ₁τ₂ = τ₃τ₁.
        assert_eq!(mf.match_relations(&w(&[1, 2]), 0), vec![w(&[3, 1])]);
        assert!(mf.match_relations(&w(&[2, 1]), 0).is_empty());
        let mh = Presentation::mirrored(MonoidId::H);
        assert_eq!(mh.match_relations(&w(&[4, 2, 1]), 0), vec![w(&[2, 1, 2])]);
    }

    #[test]
    fn every_instance_is_homogeneous_and_ceiling_preserving() {
        for p in [
            Presentation::standard(MonoidId::F),
            Presentation::standard(MonoidId::H),
            Presentation::mirrored(MonoidId::F),
        ] {
            for inst in p.relation_instances(15) {
                assert_eq!(inst.lhs.len(), inst.rhs.len());
                assert!(p.is_relation(&inst.lhs, &inst.rhs));
                assert!(p.is_relation(&inst.rhs, &inst.lhs));
                if p.orientation() == Orientation::Standard {
                    assert_eq!(inst.lhs.ceiling(), inst.rhs.ceiling(), "{inst:?}");
                }
            }
        }
    }

    #[test]
    fn standard_presentations_are_right_complemented() {
        for m in [MonoidId::F, MonoidId::H] {
            let p = Presentation::standard(m);
            assert!(p.complementation_violations(20).is_empty());
            assert!(p.opposite().complementation_violations(20).is_empty());
        }
    }

    #[test]
    fn saturate_examples() {
        let ph = Presentation::standard(MonoidId::H);
        let pf = Presentation::standard(MonoidId::F);
        let c = class_saturate(&ph, &w(&[1, 2, 4]), 100);
        assert!(!c.truncated);
        assert_eq!(
            c.members.into_iter().collect::<Vec<_>>(),
            vec![w(&[1, 2, 4]), w(&[2, 1, 2])]
        );
        let c = class_saturate(&pf, &w(&[1, 3]), 100);
        assert_eq!(
            c.members.into_iter().collect::<Vec<_>>(),
            vec![w(&[1, 3]), w(&[2, 1])]
        );
        let c = class_saturate(&ph, &w(&[1]), 100);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn saturate_reports_truncation() {
        let pf = Presentation::standard(MonoidId::F);
        // The class of τ₁τ₃τ₅τ₇ has 4! members.
        let c = class_saturate(&pf, &w(&[1, 3, 5, 7]), 5);
        assert!(c.truncated);
        assert_eq!(c.len(), 5);
        let c = class_saturate(&pf, &w(&[1, 3, 5, 7]), 1000);
        assert!(!c.truncated);
        assert_eq!(c.len(), 24);
    }

    #[test]
    fn class_size_bound_holds() {
        let ph = Presentation::standard(MonoidId::H);
        for word in [w(&[1, 2, 4, 5, 7]), w(&[3, 1, 4, 2]), w(&[2, 5, 1, 1, 6])] {
            let c = class_saturate(&ph, &word, 100_000);
            let bound = (word.ceiling() as u64).pow(word.len() as u32);
            assert!((c.len() as u64) <= bound);
        }
    }

    #[test]
    fn oracle_equal_examples() {
        let ph = Presentation::standard(MonoidId::H);
        let pf = Presentation::standard(MonoidId::F);
        assert!(oracle_equal(&pf, &w(&[2, 1]), &w(&[1, 3]), 100).unwrap());
        assert!(!oracle_equal(&ph, &w(&[2, 1]), &w(&[1, 3]), 100).unwrap());
        assert!(oracle_equal(&ph, &w(&[3, 1, 4]), &w(&[3, 1, 4]), 100).unwrap());
        assert!(!oracle_equal(&ph, &w(&[1]), &w(&[1, 1]), 100).unwrap());
    }

    #[test]
    fn oracle_equal_budget_error() {
        let pf = Presentation::standard(MonoidId::F);
        let err = oracle_equal(&pf, &w(&[1, 3, 5, 7]), &w(&[1, 1, 1, 1]), 3).unwrap_err();
        assert!(err.is_inconclusive());
    }

    #[test]
    fn oracle_divides_examples() {
        let ph = Presentation::standard(MonoidId::H);
        let delta3 = w(&[1, 2, 4]);
        assert!(oracle_divides_left(&ph, &w(&[2]), &delta3, 100).unwrap());
        assert!(!oracle_divides_left(&ph, &w(&[2, 4]), &delta3, 100).unwrap());
        assert!(oracle_divides_left(&ph, &Word::empty(), &delta3, 100).unwrap());
        let q = oracle_left_quotients(&ph, &w(&[2]), &delta3, 100).unwrap();
        assert_eq!(q.into_iter().collect::<Vec<_>>(), vec![w(&[1, 2])]);
    }
}
