use std::collections::BTreeSet;

use garside_core::garside::{
    delta_word, enumerate_divisors, index_of, is_simple_nf, least_index_by_reversing, Method, Rank,
};
use garside_core::morphisms::{rho_tilde_of_word, Poly};
use garside_core::presentation::{class_saturate, oracle_equal, Presentation};
use garside_core::reversing::{divides_left, equal_by_reversing, right_lcm};
use garside_core::rewrite::{reduce, RewriteSystem};
use garside_core::{MonoidId, Word};

const B: usize = 1_000_000;

fn w(letters: &[u32]) -> Word {
    Word::of(letters)
}

fn nfs(monoid: MonoidId, n: u32, method: Method) -> BTreeSet<Word> {
    enumerate_divisors(monoid, Rank::full(n), method, B)
        .unwrap()
        .into_iter()
        .map(|r| r.nf)
        .collect()
}

#[test]
fn delta_chain() {
    let p = Presentation::standard(MonoidId::H);
    for n in 1..=8 {
        let full = delta_word(MonoidId::H, Rank::full(n)).unwrap();
        let half = delta_word(MonoidId::H, Rank::half(n)).unwrap();
        let next = delta_word(MonoidId::H, Rank::full(n + 1)).unwrap();
        assert!(divides_left(&p, &full, &half, B).unwrap(), "n = {n}");
        assert!(divides_left(&p, &half, &next, B).unwrap(), "n = {n}");
        let shifted = w(&[n]).concat(&half);
        assert!(
            equal_by_reversing(&p, &next, &shifted, B).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn enumeration_methods_agree_up_to_eight() {
    for monoid in [MonoidId::F, MonoidId::H] {
        for n in 1..=8 {
            assert_eq!(
                nfs(monoid, n, Method::ForbiddenFactors),
                nfs(monoid, n, Method::BfsReversing),
                "{monoid} n = {n}"
            );
        }
    }
}

#[test]
fn index_is_least_rank() {
    for n in 1..=6 {
        for a in nfs(MonoidId::H, n, Method::ForbiddenFactors) {
            let by_reversing = least_index_by_reversing(MonoidId::H, &a, B).unwrap();
            assert_eq!(index_of(MonoidId::H, &a).unwrap(), by_reversing, "{a}");
            assert_eq!(by_reversing, a.height() + 1, "{a}");
        }
    }
}

#[test]
fn simples_of_h_are_not_closed_under_right_divisors() {
    let p = Presentation::standard(MonoidId::H);
    let delta3 = delta_word(MonoidId::H, Rank::full(3)).unwrap();
    let class = class_saturate(&p, &delta3, B);
    let witness = w(&[2, 4]);
    let prefix = class
        .members
        .iter()
        .find(|m| m.letters().ends_with(witness.letters()))
        .map(|m| m.prefix(m.len() - witness.len()));
    assert_eq!(prefix, Some(w(&[1])));
    assert!(!is_simple_nf(MonoidId::H, &witness));
    for n in 2..=7 {
        let delta = delta_word(MonoidId::H, Rank::full(n)).unwrap();
        assert!(!divides_left(&p, &witness, &delta, B).unwrap());
    }
}

#[test]
fn simples_of_f_form_a_garside_family() {
    let p = Presentation::standard(MonoidId::F);
    let ef = RewriteSystem::e_f();
    for n in 2..=6 {
        let simples = nfs(MonoidId::F, n, Method::ForbiddenFactors);
        let delta = delta_word(MonoidId::F, Rank::full(n)).unwrap();
        for a in &simples {
            for expr in class_saturate(&p, a, B).members {
                for start in 0..=expr.len() {
                    let right = reduce(&ef, &expr.suffix_from(start));
                    assert!(
                        is_simple_nf(MonoidId::F, &right),
                        "{right} right divides {a}"
                    );
                }
            }
            for b in &simples {
                let lcm = right_lcm(&p, a, b, B).unwrap();
                assert!(divides_left(&p, &lcm, &delta, B).unwrap(), "lcm({a}, {b})");
            }
        }
    }
}

#[test]
fn expressions_of_delta_split_around_one_letter() {
    let p = Presentation::standard(MonoidId::H);
    for n in 2..=4u32 {
        let delta = delta_word(MonoidId::H, Rank::full(n)).unwrap();
        let half = delta_word(MonoidId::H, Rank::half(n - 1)).unwrap();
        for expr in class_saturate(&p, &delta, B).members {
            let split = (0..expr.len()).find(|&j| {
                let (w1, rest) = (expr.prefix(j), expr.suffix_from(j));
                rest.letters()[0] == n + j as u32 - 1
                    && oracle_equal(&p, &w1.concat(&rest.suffix_from(1)), &half, B).unwrap()
                    && oracle_equal(
                        &p,
                        &w1.concat(&w(&[n + j as u32 - 1])),
                        &w(&[n - 1]).concat(&w1),
                        B,
                    )
                    .unwrap()
            });
            assert!(split.is_some(), "n = {n}: {expr}");
        }
    }
}

/// Integer matrix of the deformed generator at a fixed `t`, written out row by row.
fn generator_at(i: usize, dim: usize, t: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; dim]; dim];
    for k in 1..=dim {
        if k <= i {
            m[k - 1][k - 1] = 1;
        } else if k == i + 1 {
            m[k - 1][i - 1] = t;
            m[k - 1][i] = 1 - t;
        } else if k == i + 2 {
            m[k - 1][i - 1] = 1 + t;
            m[k - 1][i] = -t;
        } else {
            m[k - 1][k - 2] = 1;
        }
    }
    m
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}

fn word_matrix(letters: &[usize], dim: usize, t: i64) -> Vec<Vec<i64>> {
    let identity: Vec<Vec<i64>> = (0..dim)
        .map(|r| (0..dim).map(|c| (r == c) as i64).collect())
        .collect();
    letters
        .iter()
        .fold(identity, |acc, &i| matmul(&generator_at(i, dim, t), &acc))
}

#[test]
fn deformation_matches_integer_matrices() {
    for word in [
        &[1usize, 1, 2][..],
        &[1, 2, 3],
        &[3, 1],
        &[1, 4],
        &[2, 1, 2],
        &[1, 2, 4],
    ] {
        let letters: Vec<u32> = word.iter().map(|&g| g as u32).collect();
        let symbolic = rho_tilde_of_word(&Word::of(&letters), 8).unwrap();
        for t in -3..=3 {
            let expected = word_matrix(word, 8, t);
            let got: Vec<Vec<i64>> = symbolic
                .rows()
                .iter()
                .map(|r| r.iter().map(|p| p.eval(t)).collect())
                .collect();
            assert_eq!(got, expected, "{word:?} at t = {t}");
        }
    }
}

#[test]
fn deformation_separates_the_collision_away_from_zero_and_one() {
    let a = word_matrix(&[1, 1, 2], 8, 0);
    assert_eq!(a, word_matrix(&[1, 2, 3], 8, 0));
    assert_eq!(word_matrix(&[1, 1, 2], 8, 1), word_matrix(&[1, 2, 3], 8, 1));
    for t in [-2, -1, 2, 3] {
        assert_ne!(
            word_matrix(&[1, 1, 2], 8, t),
            word_matrix(&[1, 2, 3], 8, t),
            "t = {t}"
        );
    }
    let lhs = rho_tilde_of_word(&w(&[1, 1, 2]), 8).unwrap();
    let rhs = rho_tilde_of_word(&w(&[1, 2, 3]), 8).unwrap();
    let diff = lhs.entry(2, 1) - rhs.entry(2, 1);
    assert_eq!(diff, &Poly::linear(0, 1) * &Poly::linear(1, -1));
}
