use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::words::Word;

/// A permutation of `{1, …, m}`, stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in &images {
            let k = x as usize;
            if k == 0 || k > m || seen[k] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={m}"
                )));
            }
            seen[k] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (1..=m as u32).collect(),
        }
    }

    /// The transposition exchanging `p` and `p + 1`.
    pub fn transposition(m: usize, p: u32) -> Result<Self> {
        if p == 0 || p as usize >= m {
            return Err(Error::InvalidPermutation(format!(
                "s_{p} is not defined on 1..={m}"
            )));
        }
        let mut images: Vec<u32> = (1..=m as u32).collect();
        images.swap(p as usize - 1, p as usize);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, k: u32) -> u32 {
        self.images[k as usize - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = k as u32 + 1;
        }
        Permutation { images }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            images: other.images.iter().map(|&k| self.apply(k)).collect(),
        }
    }

    /// All permutations of `{1, …, m}` in lexicographic order of images.
    pub fn all(m: usize) -> Vec<Permutation> {
        fn go(rest: &mut Vec<u32>, prefix: &mut Vec<u32>, out: &mut Vec<Permutation>) {
            if rest.is_empty() {
                out.push(Permutation {
                    images: prefix.clone(),
                });
                return;
            }
            for k in 0..rest.len() {
                let x = rest.remove(k);
                prefix.push(x);
                go(rest, prefix, out);
                prefix.pop();
                rest.insert(k, x);
            }
        }
        let mut out = Vec::new();
        go(&mut (1..=m as u32).collect(), &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses a comma-separated image list such as `3,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad image {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

/// The expression `w_f = τ_{f̃(1)} ⋯ τ_{f̃(m)}` of `Δ_{m+1}` attached to `f`, where
/// `f̂(p) = #{i < f⁻¹(p) : f(i) > p}` and `f̃(p) = 2f⁻¹(p) − 1 − f̂(p)`.
pub fn perm_to_word(f: &Permutation) -> Word {
    let inv = f.inverse();
    let letters = (1..=f.degree() as u32)
        .map(|p| {
            let pos = inv.apply(p);
            let hat = (1..pos).filter(|&i| f.apply(i) > p).count() as u32;
            2 * pos - 1 - hat
        })
        .collect();
    Word::from_vec_unchecked(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::{delta_word, Rank};
    use crate::presentation::{class_saturate, Presentation};
    use crate::words::MonoidId;

    fn w(letters: &[u32]) -> Word {
        Word::of(letters)
    }

    #[test]
    fn examples() {
        assert_eq!(perm_to_word(&Permutation::identity(2)), w(&[1, 3]));
        assert_eq!(
            perm_to_word(&Permutation::transposition(2, 1).unwrap()),
            w(&[2, 1])
        );
        assert_eq!("3,1,2".parse::<Permutation>().unwrap().images(), &[3, 1, 2]);
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("0".parse::<Permutation>().is_err());
        assert!("x".parse::<Permutation>().is_err());
    }

    #[test]
    fn group_operations() {
        let f: Permutation = "2,3,1".parse().unwrap();
        assert_eq!(f.compose(&f.inverse()), Permutation::identity(3));
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn words_are_exactly_the_expressions_of_delta() {
        let pf = Presentation::standard(MonoidId::F);
        for n in 2..=6u32 {
            let class = class_saturate(
                &pf,
                &delta_word(MonoidId::F, Rank::full(n)).unwrap(),
                1_000_000,
            );
            let words: std::collections::BTreeSet<Word> = Permutation::all(n as usize - 1)
                .iter()
                .map(perm_to_word)
                .collect();
            assert_eq!(words.len(), (1..n as usize).product::<usize>());
            assert_eq!(words, class.members);
        }
    }

    #[test]
    fn relations_act_by_transpositions() {
        let pf = Presentation::standard(MonoidId::F);
        for m in 1..=4usize {
            for f in Permutation::all(m) {
                let wf = perm_to_word(&f);
                for p in 1..m as u32 {
                    let moved = pf.match_relations(&wf, p as usize - 1);
                    let sp = Permutation::transposition(m, p).unwrap();
                    assert_eq!(moved, vec![perm_to_word(&sp.compose(&f))], "f={f} p={p}");
                }
            }
        }
    }
}
