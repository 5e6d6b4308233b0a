//! Maps out of `H⁺`: the projection `π` onto `F⁺`, the representation `ρ` by
//! surjections of the positive integers, and its polynomial deformation `ρ̃`.
//!
//! Composition convention: `ρ(uv) = ρ(u) ∘ ρ(v)`, so letters act right to left.
//! With it `ρ(θ₃θ₁) = ρ(θ₁θ₄)`; the opposite order already fails at `k = 5`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::{MonoidId, Word};

/// `π(θ_i) = τ_i`; on words the letters are unchanged.
pub fn project_pi(w: &Word) -> Word {
    w.clone()
}

/// A map of the positive integers that is `k ↦ k - tail` beyond a finite window.
#[derive(Debug, Clone)]
pub struct EventuallyShiftMap {
    /// `window[k - 1]` is the image of `k`, for `1 <= k <= window.len()`.
    window: Vec<u32>,
    tail: u32,
}

impl EventuallyShiftMap {
    pub fn identity() -> Self {
        EventuallyShiftMap {
            window: Vec::new(),
            tail: 0,
        }
    }

    /// `F_i`: `k ↦ k` for `k <= i + 1`, `i + 2 ↦ i`, `k ↦ k - 1` for `k >= i + 3`.
    pub fn generator(i: u32) -> Self {
        let mut window: Vec<u32> = (1..=i + 1).collect();
        window.push(i);
        EventuallyShiftMap { window, tail: 1 }
    }

    pub fn window_width(&self) -> usize {
        self.window.len()
    }

    pub fn tail(&self) -> u32 {
        self.tail
    }

    pub fn eval(&self, k: u32) -> u32 {
        match self.window.get(k as usize - 1) {
            Some(&v) => v,
            None => k - self.tail,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &EventuallyShiftMap) -> Self {
        let width = other
            .window
            .len()
            .max(self.window.len() + other.tail as usize);
        EventuallyShiftMap {
            window: (1..=width as u32)
                .map(|k| self.eval(other.eval(k)))
                .collect(),
            tail: self.tail + other.tail,
        }
    }

    /// Values on `1..=width`, for `width` at least the window width.
    pub fn table(&self, width: usize) -> Vec<u32> {
        (1..=width.max(self.window.len()) as u32)
            .map(|k| self.eval(k))
            .collect()
    }
}

impl PartialEq for EventuallyShiftMap {
    fn eq(&self, other: &Self) -> bool {
        let width = self.window.len().max(other.window.len());
        self.tail == other.tail && self.table(width) == other.table(width)
    }
}

impl Eq for EventuallyShiftMap {}

pub fn rho_of_word(w: &Word) -> EventuallyShiftMap {
    w.letters()
        .iter()
        .fold(EventuallyShiftMap::identity(), |acc, &g| {
            acc.compose(&EventuallyShiftMap::generator(g))
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<(Word, Word)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether both sides of every `P_H` relation with parameters `<= window` have the same image under `ρ`.
pub fn rho_check_relations(window: u32) -> RelationReport {
    let instances = Presentation::standard(MonoidId::H).relation_instances(window);
    let failures = instances
        .iter()
        .filter(|r| rho_of_word(&r.lhs) != rho_of_word(&r.rhs))
        .map(|r| (r.lhs.clone(), r.rhs.clone()))
        .collect();
    RelationReport {
        checked: instances.len(),
        failures,
    }
}

/// A polynomial in `t` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly(Vec<i64>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: i64) -> Self {
        Poly(vec![c]).normalized()
    }

    /// `a + b·t`.
    pub fn linear(a: i64, b: i64) -> Self {
        Poly(vec![a, b]).normalized()
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn normalized(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let coeff = |p: &Poly, k: usize| p.0.get(k).copied().unwrap_or(0);
        Poly((0..n).map(|k| coeff(self, k) + coeff(rhs, k)).collect()).normalized()
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0i64; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).normalized()
    }
}

impl fmt::Display for Poly {
    /// Terms by increasing degree, e.g. `1-t`, `2*t^2`, `-3+t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let magnitude = c.unsigned_abs();
            let monomial = match deg {
                0 => String::new(),
                1 => "t".to_string(),
                d => format!("t^{d}"),
            };
            let body = match (deg, magnitude) {
                (0, m) => m.to_string(),
                (_, 1) => monomial,
                (_, m) => format!("{m}*{monomial}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// The `N × N` upper-left block of the image of a word under `ρ̃`.
///
/// Every generator matrix is lower triangular (row `k` only involves
/// coordinates `<= k`), so the block of a product is the product of blocks
/// and no row is affected by the truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedLinearMap {
    dim: usize,
    /// `entries[k - 1][j - 1]` is the coefficient of `x_j` in output coordinate `k`.
    entries: Vec<Vec<Poly>>,
    /// Rows `1..=boundary_valid_rows` agree with the infinite matrix.
    pub boundary_valid_rows: usize,
}

impl TruncatedLinearMap {
    pub fn identity(dim: usize) -> Self {
        let entries = (0..dim)
            .map(|k| (0..dim).map(|j| Poly::constant((k == j) as i64)).collect())
            .collect();
        TruncatedLinearMap {
            dim,
            entries,
            boundary_valid_rows: dim,
        }
    }

    /// The matrix of `F̃_i`.
    pub fn generator(i: u32, dim: usize) -> Self {
        let i = i as usize;
        let mut m = TruncatedLinearMap {
            dim,
            entries: vec![vec![Poly::zero(); dim]; dim],
            boundary_valid_rows: dim,
        };
        for k in 1..=dim {
            let row = &mut m.entries[k - 1];
            if k <= i {
                row[k - 1] = Poly::constant(1);
            } else if k == i + 1 {
                row[i - 1] = Poly::linear(0, 1);
                row[i] = Poly::linear(1, -1);
            } else if k == i + 2 {
                row[i - 1] = Poly::linear(1, 1);
                row[i] = Poly::linear(0, -1);
            } else {
                row[k - 2] = Poly::constant(1);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row - 1][col - 1]
    }

    /// The matrix product `self · other`.
    pub fn mul(&self, other: &TruncatedLinearMap) -> Self {
        let n = self.dim;
        let mut entries = vec![vec![Poly::zero(); n]; n];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                let mut acc = Poly::zero();
                for k in 0..n {
                    let a = &self.entries[r][k];
                    let b = &other.entries[k][c];
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                *cell = acc;
            }
        }
        TruncatedLinearMap {
            dim: n,
            entries,
            boundary_valid_rows: self.boundary_valid_rows.min(other.boundary_valid_rows),
        }
    }

    /// Substitutes an integer for `t`.
    pub fn at(&self, t: i64) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| Poly::constant(p.eval(t))).collect())
            .collect();
        TruncatedLinearMap {
            entries,
            ..self.clone()
        }
    }

    /// Equality on the rows valid for both maps.
    pub fn agrees_with(&self, other: &TruncatedLinearMap) -> bool {
        let rows = self.boundary_valid_rows.min(other.boundary_valid_rows);
        self.dim == other.dim && self.entries[..rows] == other.entries[..rows]
    }

    /// Whether row `k` is the coordinate `x_{f(k)}` for every valid `k`.
    pub fn is_coordinate_action_of(&self, f: &EventuallyShiftMap) -> bool {
        (1..=self.boundary_valid_rows).all(|k| {
            let target = f.eval(k as u32) as usize;
            (1..=self.dim).all(|j| *self.entry(k, j) == Poly::constant((j == target) as i64))
        })
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.entries
    }
}

/// `ρ̃(w)` as the product `M(w_ℓ) ⋯ M(w_1)`, so that at `t = 0` row `k` reads
/// coordinate `ρ(w)(k)`.
pub fn rho_tilde_of_word(w: &Word, dim: usize) -> Result<TruncatedLinearMap> {
    let needed = w.height() as usize + 4;
    if dim < needed {
        return Err(Error::DimensionTooSmall { dim, needed });
    }
    Ok(w.letters()
        .iter()
        .fold(TruncatedLinearMap::identity(dim), |acc, &g| {
            TruncatedLinearMap::generator(g, dim).mul(&acc)
        }))
}

/// Relation instances of `P_H` whose sides differ under `ρ̃`, symbolically in `t`.
pub fn rho_tilde_check_relations(window: u32, dim: usize) -> Result<RelationReport> {
    let mut report = RelationReport {
        checked: 0,
        failures: Vec::new(),
    };
    for r in Presentation::standard(MonoidId::H).relation_instances(window) {
        if (r.lhs.height().max(r.rhs.height()) as usize) + 4 > dim {
            continue;
        }
        report.checked += 1;
        if !rho_tilde_of_word(&r.lhs, dim)?.agrees_with(&rho_tilde_of_word(&r.rhs, dim)?) {
            report.failures.push((r.lhs, r.rhs));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::oracle_equal;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(letters: &[u32]) -> Word {
        Word::of(letters)
    }

    #[test]
    fn pi_examples() {
        let pf = Presentation::standard(MonoidId::F);
        let ph = Presentation::standard(MonoidId::H);
        let b = 100_000;
        assert!(oracle_equal(
            &pf,
            &project_pi(&w(&[1, 2, 4])),
            &project_pi(&w(&[2, 1, 2])),
            b
        )
        .unwrap());
        assert!(oracle_equal(&pf, &project_pi(&w(&[2, 1])), &project_pi(&w(&[1, 3])), b).unwrap());
        assert!(!oracle_equal(&ph, &w(&[2, 1]), &w(&[1, 3]), b).unwrap());
        assert_eq!(project_pi(&Word::empty()), Word::empty());
    }

    #[test]
    fn pi_respects_relations() {
        let ph = Presentation::standard(MonoidId::H);
        let ef = crate::rewrite::RewriteSystem::e_f();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 500 {
            let len = rng.gen_range(2..=8);
            let u = Word::of(&(0..len).map(|_| rng.gen_range(1..=6)).collect::<Vec<_>>());
            let neighbours = ph.neighbours(&u);
            if neighbours.is_empty() {
                continue;
            }
            let v = &neighbours[rng.gen_range(0..neighbours.len())];
            assert_eq!(
                crate::rewrite::reduce(&ef, &project_pi(&u)),
                crate::rewrite::reduce(&ef, &project_pi(v))
            );
            checked += 1;
        }
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_of_word(&w(&[1])).eval(3), 1);
        assert_eq!(rho_of_word(&w(&[2])).eval(5), 4);
        assert_eq!(rho_of_word(&w(&[1, 1, 2])), rho_of_word(&w(&[1, 2, 3])));
        assert_eq!(rho_of_word(&w(&[3, 1])), rho_of_word(&w(&[1, 4])));
        assert_eq!(rho_of_word(&w(&[2, 1, 2])), rho_of_word(&w(&[1, 2, 4])));
        assert_ne!(rho_of_word(&w(&[2, 1])), rho_of_word(&w(&[1, 3])));
        assert!(rho_check_relations(20).passed());
    }

    #[test]
    fn opposite_convention_breaks_a_relation() {
        let f = |i| EventuallyShiftMap::generator(i);
        assert_eq!(f(3).eval(f(1).eval(5)), 4);
        assert_eq!(f(1).eval(f(4).eval(5)), 4);
        assert_ne!(f(1).eval(f(3).eval(5)), f(4).eval(f(1).eval(5)));
    }

    #[test]
    fn generators_are_surjective_not_injective() {
        for i in 1..=8 {
            let g = EventuallyShiftMap::generator(i);
            let table = g.table(i as usize + 6);
            assert_eq!(g.eval(i), i);
            assert_eq!(g.eval(i + 2), i);
            for k in 1..=i + 4 {
                assert!(table.contains(&k));
            }
        }
    }

    #[test]
    fn poly_display() {
        assert_eq!(Poly::linear(1, -1).to_string(), "1-t");
        assert_eq!(Poly(vec![0, 0, 2]).to_string(), "2*t^2");
        assert_eq!(Poly::linear(-3, 1).to_string(), "-3+t");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::linear(0, -1).to_string(), "-t");
        let p = &Poly::linear(1, 1) * &Poly::linear(1, -1);
        assert_eq!(p.to_string(), "1-t^2");
        assert_eq!(p.eval(3), -8);
    }

    #[test]
    fn rho_tilde_at_zero_is_rho() {
        for word in [w(&[1]), w(&[2, 1, 2]), w(&[1, 1, 2]), w(&[3, 1, 4, 2])] {
            let m = rho_tilde_of_word(&word, 10).unwrap().at(0);
            assert!(m.is_coordinate_action_of(&rho_of_word(&word)), "{word}");
        }
    }

    #[test]
    fn rho_tilde_examples() {
        let a = rho_tilde_of_word(&w(&[3, 1]), 10).unwrap();
        let b = rho_tilde_of_word(&w(&[1, 4]), 10).unwrap();
        assert!(a.agrees_with(&b));
        let c = rho_tilde_of_word(&w(&[1, 1, 2]), 8).unwrap();
        let d = rho_tilde_of_word(&w(&[1, 2, 3]), 8).unwrap();
        assert!(!c.agrees_with(&d));
        assert!(!c.at(2).agrees_with(&d.at(2)));
        // Row 2 differs by t(1-t)·(x_1 - x_2), which vanishes at t = 0 and t = 1.
        assert!(c.at(1).agrees_with(&d.at(1)));
        assert_eq!(c.entry(2, 1).to_string(), "2*t-t^2");
        assert_eq!(d.entry(2, 1).to_string(), "t");
        assert_eq!(
            rho_tilde_of_word(&w(&[7]), 10),
            Err(Error::DimensionTooSmall {
                dim: 10,
                needed: 11
            })
        );
    }

    #[test]
    fn rho_tilde_relation_experiment() {
        let report = rho_tilde_check_relations(6, 14).unwrap();
        assert_eq!(report.checked, 16);
        assert!(report.passed());
    }

    #[test]
    fn truncation_is_exact() {
        let word = w(&[2, 1, 4, 3]);
        let small = rho_tilde_of_word(&word, 8).unwrap();
        let big = rho_tilde_of_word(&word, 14).unwrap();
        for r in 1..=8 {
            for c in 1..=8 {
                assert_eq!(small.entry(r, c), big.entry(r, c));
            }
        }
    }
}
