//! The convergent rewrite systems `E_F` and `E_H`.
//!
//! `E_F` orients the Thompson relations as `τ_i τ_{j+1} → τ_j τ_i` (`j >= i + 1`).
//! `E_H` uses the same orientation for `j >= i + 2` together with
//! `θ_i θ_{i+1} θ_{i+3} → θ_{i+1} θ_i θ_{i+1}`. Reduced words are exactly the
//! words avoiding the left-hand sides, so reducedness is a forbidden-factor test.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::words::{MonoidId, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BraidTarget {
    /// `θ_{i+1} θ_i θ_{i+1}`.
    Standard,
    /// `θ_{i+1} θ_i θ_{i+2}`: a deliberately wrong target used as a negative control.
    Mutated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleSchema {
    /// `x_i x_{j+1} → x_j x_i` for `j >= i + 1`.
    FSwap,
    /// `θ_i θ_{j+1} → θ_j θ_i` for `j >= i + 2`.
    HSwap,
    /// `θ_i θ_{i+1} θ_{i+3} → target`.
    HBraid(BraidTarget),
}

impl RuleSchema {
    pub fn arity(self) -> usize {
        match self {
            RuleSchema::FSwap | RuleSchema::HSwap => 2,
            RuleSchema::HBraid(_) => 3,
        }
    }

    fn swap_gap(self) -> u32 {
        match self {
            RuleSchema::FSwap => 2,
            _ => 3,
        }
    }

    /// The right-hand side if `factor` is an instance of the left-hand side.
    pub fn apply(self, factor: &[u32]) -> Option<[u32; 3]> {
        match (self, factor) {
            (RuleSchema::FSwap | RuleSchema::HSwap, &[a, b]) if b >= a + self.swap_gap() => {
                Some([b - 1, a, 0])
            }
            (RuleSchema::HBraid(target), &[a, b, c]) if b == a + 1 && c == a + 3 => {
                Some(match target {
                    BraidTarget::Standard => [a + 1, a, a + 1],
                    BraidTarget::Mutated => [a + 1, a, a + 2],
                })
            }
            _ => None,
        }
    }

    fn matches(self, factor: &[u32]) -> bool {
        self.apply(factor).is_some()
    }

    /// Left-hand-side instances beginning with `first`, all letters `<= bound`.
    fn lhs_starting_with(self, first: u32, bound: u32) -> Vec<Vec<u32>> {
        match self {
            RuleSchema::FSwap | RuleSchema::HSwap => ((first + self.swap_gap())..=bound)
                .map(|b| vec![first, b])
                .collect(),
            RuleSchema::HBraid(_) if first + 3 <= bound => vec![vec![first, first + 1, first + 3]],
            RuleSchema::HBraid(_) => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedexOrder {
    Leftmost,
    Rightmost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    monoid: MonoidId,
    /// At equal positions, earlier rules take precedence.
    rules: Vec<RuleSchema>,
}

impl RewriteSystem {
    pub fn for_monoid(monoid: MonoidId) -> Self {
        match monoid {
            MonoidId::F => Self::e_f(),
            MonoidId::H => Self::e_h(),
        }
    }

    pub fn e_f() -> Self {
        RewriteSystem {
            monoid: MonoidId::F,
            rules: vec![RuleSchema::FSwap],
        }
    }

    pub fn e_h() -> Self {
        RewriteSystem {
            monoid: MonoidId::H,
            rules: vec![RuleSchema::HSwap, RuleSchema::HBraid(BraidTarget::Standard)],
        }
    }

    /// `E_H` with the braid rule's target replaced by `θ_{i+1} θ_i θ_{i+2}`.
    pub fn e_h_mutated() -> Self {
        RewriteSystem {
            monoid: MonoidId::H,
            rules: vec![RuleSchema::HSwap, RuleSchema::HBraid(BraidTarget::Mutated)],
        }
    }

    pub fn monoid(&self) -> MonoidId {
        self.monoid
    }

    pub fn rules(&self) -> &[RuleSchema] {
        &self.rules
    }

    pub fn is_mutated(&self) -> bool {
        self.rules
            .contains(&RuleSchema::HBraid(BraidTarget::Mutated))
    }

    pub fn obstructions(&self) -> ObstructionSet {
        match self.monoid {
            MonoidId::F => ObstructionSet::ReducibleF,
            MonoidId::H => ObstructionSet::ReducibleH,
        }
    }

    /// The first rule (in precedence order) applying at `pos`, with its result.
    fn redex_at(&self, letters: &[u32], pos: usize) -> Option<(RuleSchema, [u32; 3])> {
        self.rules.iter().find_map(|&rule| {
            let end = pos + rule.arity();
            if end > letters.len() {
                return None;
            }
            rule.apply(&letters[pos..end]).map(|rhs| (rule, rhs))
        })
    }

    fn rewrite_at(&self, letters: &mut [u32], pos: usize, rule: RuleSchema, rhs: [u32; 3]) {
        let n = rule.arity();
        letters[pos..pos + n].copy_from_slice(&rhs[..n]);
    }
}

/// One applied rewrite step, as recorded by [`reduce_with_trace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub pos: usize,
    pub rule: RuleSchema,
    pub before: Word,
    pub after: Word,
}

/// All results of one rule application at one position.
pub fn rewrite_once(sys: &RewriteSystem, w: &Word) -> BTreeSet<Word> {
    let letters = w.letters();
    let mut out = BTreeSet::new();
    for pos in 0..letters.len() {
        for &rule in &sys.rules {
            let end = pos + rule.arity();
            if end > letters.len() {
                continue;
            }
            if let Some(rhs) = rule.apply(&letters[pos..end]) {
                let mut next = letters.to_vec();
                sys.rewrite_at(&mut next, pos, rule, rhs);
                out.insert(Word::from_vec_unchecked(next));
            }
        }
    }
    out
}

/// The normal form `red(w)`, rewriting the leftmost redex first.
pub fn reduce(sys: &RewriteSystem, w: &Word) -> Word {
    let mut letters = w.letters().to_vec();
    let mut pos = 0;
    while pos < letters.len() {
        match sys.redex_at(&letters, pos) {
            Some((rule, rhs)) => {
                debug_assert!(
                    sys.monoid != MonoidId::F || rhs[0] + rhs[1] < letters[pos] + letters[pos + 1]
                );
                sys.rewrite_at(&mut letters, pos, rule, rhs);
                // Redexes left of pos - 2 cannot overlap the rewritten factor.
                pos = pos.saturating_sub(2);
            }
            None => pos += 1,
        }
    }
    Word::from_vec_unchecked(letters)
}

pub fn reduce_with(sys: &RewriteSystem, w: &Word, order: RedexOrder) -> Word {
    match order {
        RedexOrder::Leftmost => reduce(sys, w),
        RedexOrder::Rightmost => {
            let mut letters = w.letters().to_vec();
            while let Some((pos, rule, rhs)) = (0..letters.len())
                .rev()
                .find_map(|pos| sys.redex_at(&letters, pos).map(|(r, rhs)| (pos, r, rhs)))
            {
                sys.rewrite_at(&mut letters, pos, rule, rhs);
            }
            Word::from_vec_unchecked(letters)
        }
    }
}

/// Leftmost reduction, returning every intermediate step.
pub fn reduce_with_trace(sys: &RewriteSystem, w: &Word) -> (Word, Vec<RewriteStep>) {
    let mut letters = w.letters().to_vec();
    let mut steps = Vec::new();
    let mut pos = 0;
    while pos < letters.len() {
        match sys.redex_at(&letters, pos) {
            Some((rule, rhs)) => {
                let before = Word::from_vec_unchecked(letters.clone());
                sys.rewrite_at(&mut letters, pos, rule, rhs);
                steps.push(RewriteStep {
                    pos,
                    rule,
                    before,
                    after: Word::from_vec_unchecked(letters.clone()),
                });
                pos = pos.saturating_sub(2);
            }
            None => pos += 1,
        }
    }
    (Word::from_vec_unchecked(letters), steps)
}

pub fn is_reduced(sys: &RewriteSystem, w: &Word) -> bool {
    !contains_factor(w, sys.obstructions())
}

/// Families of forbidden factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionSet {
    /// `τ_i τ_{j+1}` with `j >= i + 1`: the left sides of `E_F`.
    ReducibleF,
    /// `θ_i θ_j` with `j >= i + 3`, and `θ_i θ_{i+1} θ_{i+3}`.
    ReducibleH,
    /// `θ_i²`, `θ_i θ_{i+2}`, `θ_i θ_{i+1} θ_i`, `θ_i θ_{i+1} θ_{i+2}`.
    NonSimpleH,
}

impl ObstructionSet {
    /// Length of the pattern of this set matching `w` at `pos`, if any.
    pub fn match_at(self, w: &[u32], pos: usize) -> Option<usize> {
        let two = w.get(pos..pos + 2);
        let three = w.get(pos..pos + 3);
        match self {
            ObstructionSet::ReducibleF => match two {
                Some(&[a, b]) if b >= a + 2 => Some(2),
                _ => None,
            },
            ObstructionSet::ReducibleH => {
                if let Some(&[a, b]) = two {
                    if b >= a + 3 {
                        return Some(2);
                    }
                }
                match three {
                    Some(&[a, b, c]) if b == a + 1 && c == a + 3 => Some(3),
                    _ => None,
                }
            }
            ObstructionSet::NonSimpleH => {
                if let Some(&[a, b]) = two {
                    if b == a || b == a + 2 {
                        return Some(2);
                    }
                }
                match three {
                    Some(&[a, b, c]) if b == a + 1 && (c == a || c == a + 2) => Some(3),
                    _ => None,
                }
            }
        }
    }

    /// Whether the last one, two or three letters of `w` form a pattern.
    pub fn matches_suffix(self, w: &[u32]) -> bool {
        let n = w.len();
        (n >= 2 && self.match_at(w, n - 2) == Some(2))
            || (n >= 3 && self.match_at(w, n - 3) == Some(3))
    }
}

pub fn contains_factor(w: &Word, obs: ObstructionSet) -> bool {
    let letters = w.letters();
    (0..letters.len()).any(|pos| obs.match_at(letters, pos).is_some())
}

/// Which rules overlap in a critical pair, and where the second one starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OverlapKind {
    pub first: RuleSchema,
    pub second: RuleSchema,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CriticalPair {
    pub kind: OverlapKind,
    pub source: Word,
    pub left_result: Word,
    pub right_result: Word,
}

/// Overlapping redexes `(r1 at 0, r2 at offset)` covering the whole source word.
///
/// The first letter ranges over `1..=index_window`, and every other letter is
/// at most `first + index_window + 6`, so each overlap schema is instantiated
/// with all relative gaps up to the window.
pub fn critical_pairs(sys: &RewriteSystem, index_window: u32) -> Vec<CriticalPair> {
    let mut out = BTreeSet::new();
    for &r1 in &sys.rules {
        for &r2 in &sys.rules {
            for first in 1..=index_window {
                let bound = first + index_window + 6;
                for lhs1 in r1.lhs_starting_with(first, bound) {
                    for offset in 1..lhs1.len() {
                        for lhs2 in r2.lhs_starting_with(lhs1[offset], bound) {
                            let overlap = lhs1.len() - offset;
                            let shared = overlap.min(lhs2.len());
                            if lhs1[offset..offset + shared] != lhs2[..shared] {
                                continue;
                            }
                            let mut source = lhs1.clone();
                            if lhs2.len() > overlap {
                                source.extend_from_slice(&lhs2[overlap..]);
                            }
                            debug_assert!(r1.matches(&source[..r1.arity()]));
                            let source = Word::from_vec_unchecked(source);
                            let left = apply_at(&source, 0, r1);
                            let right = apply_at(&source, offset, r2);
                            out.insert(CriticalPair {
                                kind: OverlapKind {
                                    first: r1,
                                    second: r2,
                                    offset,
                                },
                                source,
                                left_result: left,
                                right_result: right,
                            });
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn apply_at(w: &Word, pos: usize, rule: RuleSchema) -> Word {
    let mut letters = w.letters().to_vec();
    let n = rule.arity();
    let rhs = rule
        .apply(&letters[pos..pos + n])
        .expect("critical pair rule must apply");
    letters[pos..pos + n].copy_from_slice(&rhs[..n]);
    Word::from_vec_unchecked(letters)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceViolation {
    pub pair: CriticalPair,
    pub left_reduct: Word,
    pub right_reduct: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub pairs_checked: usize,
    pub kinds: BTreeSet<(RuleSchema, RuleSchema)>,
    pub violations: Vec<ConfluenceViolation>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_local_confluence(sys: &RewriteSystem, index_window: u32) -> ConfluenceReport {
    let pairs = critical_pairs(sys, index_window);
    let mut kinds = BTreeSet::new();
    let mut violations = Vec::new();
    for pair in &pairs {
        kinds.insert((pair.kind.first, pair.kind.second));
        let left_reduct = reduce(sys, &pair.left_result);
        let right_reduct = reduce(sys, &pair.right_result);
        if left_reduct != right_reduct {
            violations.push(ConfluenceViolation {
                pair: pair.clone(),
                left_reduct,
                right_reduct,
            });
        }
    }
    ConfluenceReport {
        pairs_checked: pairs.len(),
        kinds,
        violations,
    }
}

/// For reduced `w`, returns `(w1, w2)` with `w = w1·w2` and
/// `red(w·θ_i) = w1·θ_{i-|w2|}·w2`.
///
/// Built by peeling the last one or two letters of `w`, without calling [`reduce`].
pub fn append_reduce(w: &Word, i: u32) -> Result<(Word, Word)> {
    if i == 0 {
        return Err(Error::ZeroIndex);
    }
    if !is_reduced(&RewriteSystem::e_h(), w) {
        return Err(Error::Precondition(format!("{w} is not E_H-reduced")));
    }
    let split = append_split(w.letters(), i);
    Ok((w.prefix(split), w.suffix_from(split)))
}

/// Length of `w1` in the decomposition returned by [`append_reduce`].
fn append_split(w: &[u32], i: u32) -> usize {
    let Some((&k, rest)) = w.split_last() else {
        return 0;
    };
    if i <= k + 1 {
        return w.len();
    }
    if i >= k + 3 {
        // w'θ_kθ_i → w'θ_{i-1}θ_k, then push θ_{i-1} through w'.
        return append_split(rest, i - 1);
    }
    // i = k + 2
    match rest.split_last() {
        Some((&l, rest2)) if l + 3 == i => {
            // w''θ_{i-3}θ_{i-2}θ_i → w''θ_{i-2}θ_{i-3}θ_{i-2}.
            append_split(rest2, i - 2)
        }
        _ => w.len(),
    }
}

/// The word `w1·θ_{i-|w2|}·w2` assembled from an [`append_reduce`] split.
pub fn append_reduce_word(w: &Word, i: u32) -> Result<Word> {
    let (w1, w2) = append_reduce(w, i)?;
    let shifted = i
        .checked_sub(w2.len() as u32)
        .filter(|&g| g >= 1)
        .ok_or_else(|| Error::Precondition("inserted index would drop below 1".into()))?;
    let mut out = w1;
    out.push(shifted);
    Ok(out.concat(&w2))
}
