//! Replayable checks of the main combinatorial claims, grouped by criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::garside::{
    bijection_maps, count_triangle, definitional_types, delta_nf, delta_word, divisors_of,
    enumerate_divisors, generating_polynomial, greedy_decompose_f, is_simple_nf, Method, Rank,
};
use crate::morphisms::{
    project_pi, rho_check_relations, rho_of_word, rho_tilde_check_relations, rho_tilde_of_word,
};
use crate::presentation::{
    oracle_divides_left, oracle_equal, Presentation, DEFAULT_SATURATION_BUDGET,
};
use crate::reversing::{
    chain_in_one_class, check_diamond, divides_left, equal_by_reversing, right_lcm,
    DEFAULT_REVERSING_BUDGET,
};
use crate::rewrite::{
    append_reduce_word, check_local_confluence, contains_factor, is_reduced, reduce,
    ObstructionSet, RewriteSystem,
};
use crate::words::{MonoidId, Word};

const BUDGET: usize = DEFAULT_SATURATION_BUDGET;

/// The library area a check exercises, used to select subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Module {
    Presentation,
    Rewrite,
    Reversing,
    Garside,
    Morphisms,
}

impl Module {
    pub const ALL: [Module; 5] = [
        Module::Presentation,
        Module::Rewrite,
        Module::Reversing,
        Module::Garside,
        Module::Morphisms,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Module::Presentation => "presentation",
            Module::Rewrite => "rewrite",
            Module::Reversing => "reversing",
            Module::Garside => "garside",
            Module::Morphisms => "morphisms",
        }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Module {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Module::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown module {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    Module(Module),
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "all" => Ok(Scope::All),
            other => other.parse().map(Scope::Module),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(String),
    /// A budget ran out; neither a pass nor a failure.
    Inconclusive(String),
    /// An experiment whose result is shown but not judged.
    Reported(String),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Outcome::Inconclusive(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub module: Module,
    pub label: String,
    pub outcome: Outcome,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "{} : PASS", self.label),
            Outcome::Fail(why) => write!(f, "{} : FAIL ({why})", self.label),
            Outcome::Inconclusive(why) => write!(f, "{} : INCONCLUSIVE ({why})", self.label),
            Outcome::Reported(what) => write!(f, "{} : REPORTED ({what})", self.label),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Replace the braid rule of `E_H` by a wrong one, as a negative control.
    pub mutate_braid_rule: bool,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            mutate_braid_rule: false,
            seed: 20_240_101,
        }
    }
}

impl VerifyConfig {
    fn system(&self, monoid: MonoidId) -> RewriteSystem {
        match monoid {
            MonoidId::H if self.mutate_braid_rule => RewriteSystem::e_h_mutated(),
            m => RewriteSystem::for_monoid(m),
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// Criteria numbers in order.
pub const CRITERIA: std::ops::RangeInclusive<u8> = 1..=12;

/// Wall-clock limit for a criterion, when it has one.
pub fn time_limit(criterion: u8) -> Option<Duration> {
    match criterion {
        1 => Some(Duration::from_secs(10)),
        2 | 4 => Some(Duration::from_secs(60)),
        5 => Some(Duration::from_secs(5)),
        6 => Some(Duration::from_secs(120)),
        _ => None,
    }
}

type Body = fn(&VerifyConfig) -> Vec<Check>;

struct Unit {
    criterion: u8,
    module: Module,
    body: Body,
}

const UNITS: &[Unit] = &[
    Unit {
        criterion: 1,
        module: Module::Garside,
        body: c1_f_divisors,
    },
    Unit {
        criterion: 2,
        module: Module::Garside,
        body: c2_h_divisors,
    },
    Unit {
        criterion: 3,
        module: Module::Garside,
        body: c3_sigma_three,
    },
    Unit {
        criterion: 4,
        module: Module::Garside,
        body: c4_triangle,
    },
    Unit {
        criterion: 5,
        module: Module::Rewrite,
        body: c5_confluence,
    },
    Unit {
        criterion: 6,
        module: Module::Presentation,
        body: c6_equality,
    },
    Unit {
        criterion: 6,
        module: Module::Reversing,
        body: c6_divisibility,
    },
    Unit {
        criterion: 7,
        module: Module::Garside,
        body: c7_delta,
    },
    Unit {
        criterion: 8,
        module: Module::Reversing,
        body: c8_diamond,
    },
    Unit {
        criterion: 9,
        module: Module::Garside,
        body: c9_types,
    },
    Unit {
        criterion: 10,
        module: Module::Garside,
        body: c10_characterization,
    },
    Unit {
        criterion: 11,
        module: Module::Rewrite,
        body: c11_rewrite_properties,
    },
    Unit {
        criterion: 11,
        module: Module::Garside,
        body: c11_simple_properties,
    },
    Unit {
        criterion: 12,
        module: Module::Morphisms,
        body: c12_morphisms,
    },
];

pub fn run(scope: Scope, cfg: &VerifyConfig) -> Vec<Check> {
    UNITS
        .iter()
        .filter(|u| scope == Scope::All || scope == Scope::Module(u.module))
        .flat_map(|u| (u.body)(cfg))
        .collect()
}

pub fn run_criterion(criterion: u8, cfg: &VerifyConfig) -> Vec<Check> {
    UNITS
        .iter()
        .filter(|u| u.criterion == criterion)
        .flat_map(|u| (u.body)(cfg))
        .collect()
}

/// Outcome of a fallible test body: `Ok(Err(why))` is a failure.
type Verdict = Result<std::result::Result<(), String>>;

fn check(
    criterion: u8,
    module: Module,
    label: impl Into<String>,
    body: impl FnOnce() -> Verdict,
) -> Check {
    let outcome = match body() {
        Ok(Ok(())) => Outcome::Pass,
        Ok(Err(why)) => Outcome::Fail(why),
        Err(e) if e.is_inconclusive() => Outcome::Inconclusive(e.to_string()),
        Err(e) => Outcome::Fail(e.to_string()),
    };
    Check {
        criterion,
        module,
        label: label.into(),
        outcome,
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn nf_set(monoid: MonoidId, rank: Rank, method: Method) -> Result<BTreeSet<Word>> {
    Ok(enumerate_divisors(monoid, rank, method, BUDGET)?
        .into_iter()
        .map(|r| r.nf)
        .collect())
}

fn c1_f_divisors(_: &VerifyConfig) -> Vec<Check> {
    let m = Module::Garside;
    let mut out: Vec<Check> = (2..=12u32)
        .map(|n| {
            let expected = 1usize << (n - 1);
            check(1, m, format!("divisors(F,{n}) = {expected}"), || {
                let got = nf_set(MonoidId::F, Rank::full(n), Method::ForbiddenFactors)?.len();
                Ok(ensure(got == expected, || format!("found {got}")))
            })
        })
        .collect();
    out.push(check(
        1,
        m,
        "F divisors by reversing BFS agree, n <= 8",
        || {
            for n in 2..=8 {
                let a = nf_set(MonoidId::F, Rank::full(n), Method::ForbiddenFactors)?;
                let b = nf_set(MonoidId::F, Rank::full(n), Method::BfsReversing)?;
                if a != b {
                    return Ok(Err(format!("n = {n}")));
                }
            }
            Ok(Ok(()))
        },
    ));
    out.push(check(
        1,
        m,
        "F divisors by saturation oracle agree, n <= 6",
        || {
            for n in 2..=6 {
                let a = nf_set(MonoidId::F, Rank::full(n), Method::ForbiddenFactors)?;
                let b = nf_set(MonoidId::F, Rank::full(n), Method::Oracle)?;
                if a != b {
                    return Ok(Err(format!("n = {n}")));
                }
            }
            Ok(Ok(()))
        },
    ));
    out
}

fn c2_h_divisors(_: &VerifyConfig) -> Vec<Check> {
    let m = Module::Garside;
    let p = Presentation::standard(MonoidId::H);
    let mut out: Vec<Check> = (2..=8u32)
        .map(|n| {
            let expected = 2 * 3usize.pow(n - 2);
            check(2, m, format!("divisors(H,{n}) = {expected}"), || {
                let nfs = nf_set(MonoidId::H, Rank::full(n), Method::ForbiddenFactors)?;
                if nfs.len() != expected {
                    return Ok(Err(format!("found {}", nfs.len())));
                }
                let delta = delta_word(MonoidId::H, Rank::full(n))?;
                for a in &nfs {
                    if !divides_left(&p, a, &delta, DEFAULT_REVERSING_BUDGET)? {
                        return Ok(Err(format!("{a} does not divide by reversing")));
                    }
                }
                Ok(Ok(()))
            })
        })
        .collect();
    out.push(check(
        2,
        m,
        "H divisors by reversing BFS agree, n <= 6",
        || {
            for n in 2..=6 {
                let a = nf_set(MonoidId::H, Rank::full(n), Method::ForbiddenFactors)?;
                let b = nf_set(MonoidId::H, Rank::full(n), Method::BfsReversing)?;
                if a != b {
                    return Ok(Err(format!("n = {n}")));
                }
            }
            Ok(Ok(()))
        },
    ));
    out.push(check(
        2,
        m,
        "H divisors by saturation oracle agree, n <= 4",
        || {
            for n in 2..=4 {
                let a = nf_set(MonoidId::H, Rank::full(n), Method::ForbiddenFactors)?;
                let b = nf_set(MonoidId::H, Rank::full(n), Method::Oracle)?;
                if a != b {
                    return Ok(Err(format!("n = {n}")));
                }
            }
            Ok(Ok(()))
        },
    ));
    out
}

fn c3_sigma_three(cfg: &VerifyConfig) -> Vec<Check> {
    let m = Module::Garside;
    let expected: BTreeSet<Word> = [&[][..], &[1], &[2], &[1, 2], &[2, 1], &[2, 1, 2]]
        .iter()
        .map(|l| Word::of(l))
        .collect();
    vec![
        check(
            3,
            m,
            "Sigma_3(H) = {e, g1, g2, g1 g2, g2 g1, g2 g1 g2}",
            || {
                let got = nf_set(MonoidId::H, Rank::full(3), Method::BfsReversing)?;
                Ok(ensure(got == expected, || format!("found {got:?}")))
            },
        ),
        check(3, m, "NF(Delta_3) = g2 g1 g2", || {
            let nf = reduce(
                &cfg.system(MonoidId::H),
                &delta_word(MonoidId::H, Rank::full(3))?,
            );
            Ok(ensure(nf == Word::of(&[2, 1, 2]), || format!("found {nf}")))
        }),
    ]
}

fn c4_triangle(_: &VerifyConfig) -> Vec<Check> {
    let m = Module::Garside;
    let triangle = count_triangle(8);
    let t = match &triangle {
        Ok(t) => t,
        Err(e) => return vec![check(4, m, "triangle rows n <= 8", || Err(e.clone()))],
    };
    let mut out = vec![
        check(4, m, "N_2 = (1, 1)", || {
            Ok(ensure(t.row(2) == Some(&[1, 1][..]), || {
                format!("{:?}", t.row(2))
            }))
        }),
        check(
            4,
            m,
            "recurrence N_{n,l} = N_{n-1,l} + N_{n-1,l-1} + N_{n-1,l-2}, n <= 8",
            || {
                for n in 3..=8u32 {
                    for l in 0..=(2 * n as usize - 3) {
                        let above: u64 = (0..3)
                            .filter_map(|b| l.checked_sub(b))
                            .map(|k| t.get(n - 1, k))
                            .sum();
                        if t.get(n, l) != above {
                            return Ok(Err(format!("n = {n}, l = {l}")));
                        }
                    }
                }
                Ok(Ok(()))
            },
        ),
        check(4, m, "N_{5,2} = 9", || {
            Ok(ensure(t.get(5, 2) == 9, || t.get(5, 2).to_string()))
        }),
        check(4, m, "N_{n,n-2} = 1, 2, 5, 13, 35", || {
            let central: Vec<u64> = (2..=6).map(|n| t.get(n, n as usize - 2)).collect();
            Ok(ensure(central == [1, 2, 5, 13, 35], || {
                format!("{central:?}")
            }))
        }),
        check(4, m, "rows are palindromic with sums 2*3^(n-2)", || {
            for (n, row) in t.rows() {
                let rev: Vec<u64> = row.iter().rev().copied().collect();
                if rev != row || row.iter().sum::<u64>() != 2 * 3u64.pow(n - 2) {
                    return Ok(Err(format!("n = {n}")));
                }
            }
            Ok(Ok(()))
        }),
        check(
            4,
            m,
            "rows are the coefficients of (1+x)(1+x+x^2)^(n-2)",
            || {
                for (n, row) in t.rows() {
                    if generating_polynomial(n)? != row {
                        return Ok(Err(format!("n = {n}")));
                    }
                }
                Ok(Ok(()))
            },
        ),
    ];
    out.push(check(
        4,
        m,
        "enumerated counts by length match the triangle, n <= 8",
        || {
            for n in 2..=8u32 {
                let mut by_len: BTreeMap<usize, u64> = BTreeMap::new();
                for r in enumerate_divisors(
                    MonoidId::H,
                    Rank::full(n),
                    Method::ForbiddenFactors,
                    BUDGET,
                )? {
                    *by_len.entry(r.length).or_default() += 1;
                }
                let row = t.row(n).unwrap_or(&[]);
                let got: Vec<u64> = (0..row.len())
                    .map(|l| by_len.get(&l).copied().unwrap_or(0))
                    .collect();
                if got != row || by_len.keys().any(|&l| l >= row.len()) {
                    return Ok(Err(format!("n = {n}: {got:?}")));
                }
            }
            Ok(Ok(()))
        },
    ));
    out
}

fn c5_confluence(cfg: &VerifyConfig) -> Vec<Check> {
    let m = Module::Rewrite;
    [(MonoidId::F, "E_F"), (MonoidId::H, "E_H")]
        .into_iter()
        .map(|(monoid, name)| {
            check(5, m, format!("{name} local confluence window 30"), || {
                let report = check_local_confluence(&cfg.system(monoid), 30);
                Ok(ensure(report.passed(), || {
                    let v = &report.violations[0];
                    format!(
                        "{} of {} pairs not joinable, first from {}",
                        report.violations.len(),
                        report.pairs_checked,
                        v.pair.source
                    )
                }))
            })
        })
        .collect()
}

fn random_word(rng: &mut ChaCha8Rng, min_len: usize, max_len: usize, max_index: u32) -> Word {
    let len = rng.gen_range(min_len..=max_len);
    Word::of(
        &(0..len)
            .map(|_| rng.gen_range(1..=max_index))
            .collect::<Vec<_>>(),
    )
}

/// A random sequence of relation moves from `w` that keeps letters `<= max_index`.
fn random_walk(
    p: &Presentation,
    rng: &mut ChaCha8Rng,
    w: &Word,
    steps: usize,
    max_index: u32,
) -> Word {
    let mut cur = w.clone();
    for _ in 0..steps {
        let moves: Vec<Word> = p
            .neighbours(&cur)
            .into_iter()
            .filter(|x| x.height() <= max_index)
            .collect();
        if moves.is_empty() {
            break;
        }
        cur = moves[rng.gen_range(0..moves.len())].clone();
    }
    cur
}

fn c6_equality(cfg: &VerifyConfig) -> Vec<Check> {
    [MonoidId::F, MonoidId::H]
        .into_iter()
        .enumerate()
        .map(|(k, monoid)| {
            let label =
                format!("equality by NF, reversing and saturation agree on 1000 pairs ({monoid})");
            check(6, Module::Presentation, label, || {
                let p = Presentation::standard(monoid);
                let sys = cfg.system(monoid);
                let mut rng = cfg.rng(60 + k as u64);
                for _ in 0..1000 {
                    let u = random_word(&mut rng, 1, 8, 5);
                    let v = if rng.gen_bool(0.5) {
                        let steps = rng.gen_range(1..=6);
                        random_walk(&p, &mut rng, &u, steps, 5)
                    } else {
                        random_word(&mut rng, u.len(), u.len(), 5)
                    };
                    let by_nf = reduce(&sys, &u) == reduce(&sys, &v);
                    let by_rev = equal_by_reversing(&p, &u, &v, DEFAULT_REVERSING_BUDGET)?;
                    let by_sat = oracle_equal(&p, &u, &v, BUDGET)?;
                    if by_nf != by_sat || by_rev != by_sat {
                        return Ok(Err(format!(
                            "{u} vs {v}: nf {by_nf}, reversing {by_rev}, saturation {by_sat}"
                        )));
                    }
                }
                Ok(Ok(()))
            })
        })
        .collect()
}

fn c6_divisibility(cfg: &VerifyConfig) -> Vec<Check> {
    [MonoidId::F, MonoidId::H]
        .into_iter()
        .enumerate()
        .map(|(k, monoid)| {
            let label =
                format!("divisibility by reversing and saturation agree on 300 pairs ({monoid})");
            check(6, Module::Reversing, label, || {
                let p = Presentation::standard(monoid);
                let mut rng = cfg.rng(62 + k as u64);
                for _ in 0..300 {
                    let b = random_word(&mut rng, 1, 8, 5);
                    let a = if rng.gen_bool(0.5) {
                        let steps = rng.gen_range(0..=6);
                        let len = rng.gen_range(0..=b.len());
                        random_walk(&p, &mut rng, &b, steps, 5).prefix(len)
                    } else {
                        random_word(&mut rng, 0, b.len(), 5)
                    };
                    let by_rev = divides_left(&p, &a, &b, DEFAULT_REVERSING_BUDGET)?;
                    let by_sat = oracle_divides_left(&p, &a, &b, BUDGET)?;
                    if by_rev != by_sat {
                        return Ok(Err(format!(
                            "{a} | {b}: reversing {by_rev}, saturation {by_sat}"
                        )));
                    }
                }
                Ok(Ok(()))
            })
        })
        .collect()
}

fn c7_delta(cfg: &VerifyConfig) -> Vec<Check> {
    let m = Module::Garside;
    let mut out = vec![check(
        7,
        m,
        "NF(Delta) has the closed form, ranks <= 10",
        || {
            let mut ranks: Vec<(MonoidId, Rank)> = Vec::new();
            for n in 1..=10 {
                ranks.push((MonoidId::F, Rank::full(n)));
                ranks.push((MonoidId::H, Rank::full(n)));
            }
            for n in 1..=9 {
                ranks.push((MonoidId::H, Rank::half(n)));
            }
            for (monoid, rank) in ranks {
                let nf = reduce(&cfg.system(monoid), &delta_word(monoid, rank)?);
                let closed = delta_nf(monoid, rank)?;
                if nf != closed {
                    return Ok(Err(format!("{monoid} rank {rank}: {nf} vs {closed}")));
                }
            }
            Ok(Ok(()))
        },
    )];
    out.push(check(
        7,
        m,
        "Delta_n = g_{n-1} Delta_{n-0.5} in H, n <= 8",
        || {
            let p = Presentation::standard(MonoidId::H);
            let sys = cfg.system(MonoidId::H);
            for n in 2..=8u32 {
                let lhs = delta_word(MonoidId::H, Rank::full(n))?;
                let rhs = Word::of(&[n - 1]).concat(&delta_word(MonoidId::H, Rank::half(n - 1))?);
                if reduce(&sys, &lhs) != reduce(&sys, &rhs)
                    || !equal_by_reversing(&p, &lhs, &rhs, DEFAULT_REVERSING_BUDGET)?
                {
                    return Ok(Err(format!("n = {n}")));
                }
            }
            Ok(Ok(()))
        },
    ));
    for monoid in [MonoidId::F, MonoidId::H] {
        out.push(check(
            7,
            m,
            format!("right lcm of g1..g_(n-1) is Delta_n ({monoid}), n <= 7"),
            || {
                let p = Presentation::standard(monoid);
                let sys = cfg.system(monoid);
                for n in 1..=7u32 {
                    let mut lcm = Word::empty();
                    for i in 1..n {
                        lcm = right_lcm(&p, &lcm, &Word::of(&[i]), DEFAULT_REVERSING_BUDGET)?;
                    }
                    let delta = delta_word(monoid, Rank::full(n))?;
                    if reduce(&sys, &lcm) != reduce(&sys, &delta) {
                        return Ok(Err(format!("n = {n}: {lcm}")));
                    }
                }
                Ok(Ok(()))
            },
        ));
        out.push(check(
            7,
            m,
            format!("g_i divides Delta_n iff i < n ({monoid}), n <= 7"),
            || {
                let p = Presentation::standard(monoid);
                for n in 1..=7u32 {
                    let delta = delta_word(monoid, Rank::full(n))?;
                    for i in 1..=n + 3 {
                        if divides_left(&p, &Word::of(&[i]), &delta, DEFAULT_REVERSING_BUDGET)?
                            != (i < n)
                        {
                            return Ok(Err(format!("n = {n}, i = {i}")));
                        }
                    }
                }
                Ok(Ok(()))
            },
        ));
    }
    out
}

fn c8_diamond(_: &VerifyConfig) -> Vec<Check> {
    let m = Module::Reversing;
    let mut out: Vec<Check> = [MonoidId::F, MonoidId::H]
        .into_iter()
        .map(|monoid| {
            check(
                8,
                m,
                format!("right diamond condition for P_{monoid}, window 20"),
                || {
                    let report = check_diamond(&Presentation::standard(monoid), 20);
                    if report.inconclusive > 0 {
                        return Err(Error::BudgetExceeded {
                            what: "diamond check",
                            budget: BUDGET,
                        });
                    }
                    Ok(ensure(report.passed(), || {
                        format!("{} violations", report.violations.len())
                    }))
                },
            )
        })
        .collect();
    out.push(check(
        8,
        m,
        "left diamond condition for P_H fails at (g6, g1 g2 g4 = g2 g1 g2)",
        || {
            let report = check_diamond(&Presentation::mirrored(MonoidId::H), 8);
            let witness = Word::of(&[1, 2, 4]).reversed();
            let twin = Word::of(&[2, 1, 2]).reversed();
            let found = report.violations.iter().any(|v| {
                let sides = [v.lhs.clone(), v.rhs.clone()];
                v.generator == 6 && sides.contains(&witness) && sides.contains(&twin)
            });
            Ok(ensure(found, || "no violation at g6".into()))
        },
    ));
    let chains: [&[&[u32]]; 3] = [
        &[&[2, 4, 5, 7], &[4, 2, 4, 5]],
        &[&[1, 2, 4, 5], &[2, 3, 1, 2]],
        &[&[1, 2, 5, 7], &[3, 5, 1, 2]],
    ];
    let p = Presentation::standard(MonoidId::H);
    for chain in chains {
        let words: Vec<Word> = chain.iter().map(|l| Word::of(l)).collect();
        out.push(check(
            8,
            m,
            format!("{} = {} in H", words[0], words[1]),
            || {
                Ok(ensure(chain_in_one_class(&p, &words), || {
                    "different classes".into()
                }))
            },
        ));
    }
    out
}

fn c9_types(_: &VerifyConfig) -> Vec<Check> {
    let m = Module::Garside;
    let mut out: Vec<Check> = (2..=6u32)
        .map(|n| {
            check(
                9,
                m,
                format!("types partition Sigma_{n} and match the prefix dispatch"),
                || {
                    for r in enumerate_divisors(
                        MonoidId::H,
                        Rank::full(n),
                        Method::ForbiddenFactors,
                        BUDGET,
                    )? {
                        let types = definitional_types(&r.nf, n, DEFAULT_REVERSING_BUDGET)?;
                        if types.len() != 1 || r.kind != Some(types[0]) {
                            return Ok(Err(format!("{}: {types:?} vs {:?}", r.nf, r.kind)));
                        }
                    }
                    Ok(Ok(()))
                },
            )
        })
        .collect();
    out.push(check(9, m, "type maps are bijections, 3 <= n <= 6", || {
        for n in 3..=6u32 {
            for length in 0..=(2 * n as usize - 3) {
                let report = bijection_maps(n, length, BUDGET)?;
                if !report.all_bijective() {
                    return Ok(Err(format!("n = {n}, l = {length}")));
                }
            }
        }
        Ok(Ok(()))
    }));
    out
}

/// Words of length `<= max_len` over `1..=top` whose every prefix satisfies `keep`.
fn prefix_closed_words(top: u32, max_len: usize, keep: impl Fn(&Word) -> bool) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut stack = vec![Word::empty()];
    while let Some(w) = stack.pop() {
        if w.len() < max_len {
            for g in 1..=top {
                let mut next = w.clone();
                next.push(g);
                if keep(&next) {
                    stack.push(next);
                }
            }
        }
        out.insert(w);
    }
    out
}

fn c10_characterization(_: &VerifyConfig) -> Vec<Check> {
    let m = Module::Garside;
    let eh = RewriteSystem::e_h();
    let ef = RewriteSystem::e_f();
    vec![
        check(
            10,
            m,
            "simple NFs of H are the reduced words avoiding O_Sigma, n <= 6",
            || {
                for n in 2..=6u32 {
                    let words = prefix_closed_words(n - 1, 2 * n as usize, |w| {
                        is_reduced(&eh, w) && !contains_factor(w, ObstructionSet::NonSimpleH)
                    });
                    let divisors = nf_set(MonoidId::H, Rank::full(n), Method::BfsReversing)?;
                    if words != divisors {
                        return Ok(Err(format!("n = {n}")));
                    }
                }
                Ok(Ok(()))
            },
        ),
        check(
            10,
            m,
            "simple NFs of F are the strictly decreasing words, n <= 6",
            || {
                for n in 2..=6u32 {
                    let words = prefix_closed_words(n - 1, n as usize, |w| {
                        w.letters().windows(2).all(|p| p[0] > p[1])
                    });
                    let divisors = nf_set(MonoidId::F, Rank::full(n), Method::BfsReversing)?;
                    if words != divisors || !words.iter().all(|w| is_reduced(&ef, w)) {
                        return Ok(Err(format!("n = {n}")));
                    }
                }
                Ok(Ok(()))
            },
        ),
    ]
}

fn all_words(max_len: usize, top: u32) -> BTreeSet<Word> {
    prefix_closed_words(top, max_len, |_| true)
}

fn c11_rewrite_properties(cfg: &VerifyConfig) -> Vec<Check> {
    let m = Module::Rewrite;
    let mut out = vec![check(
        11,
        m,
        "red(w g_i) = w1 g_(i-|w2|) w2, reduced w of length <= 6",
        || {
            let eh = RewriteSystem::e_h();
            for w in all_words(6, 6).into_iter().filter(|w| is_reduced(&eh, w)) {
                for i in 1..=9u32 {
                    let mut appended = w.clone();
                    appended.push(i);
                    let red = reduce(&eh, &appended);
                    let shaped = (0..=w.len()).any(|k| {
                        let tail = (w.len() - k) as u32;
                        i > tail && {
                            let mut x = w.prefix(k);
                            x.push(i - tail);
                            x.concat(&w.suffix_from(k)) == red
                        }
                    });
                    if !shaped || append_reduce_word(&w, i)? != red {
                        return Ok(Err(format!("w = {w}, i = {i}")));
                    }
                }
            }
            Ok(Ok(()))
        },
    )];
    for (k, monoid) in [MonoidId::F, MonoidId::H].into_iter().enumerate() {
        out.push(check(
            11,
            m,
            format!("left and right cancellation on 500 triples ({monoid})"),
            || {
                let p = Presentation::standard(monoid);
                let sys = cfg.system(monoid);
                let nf = |w: &Word| reduce(&sys, w);
                let mut rng = cfg.rng(110 + k as u64);
                for _ in 0..500 {
                    let a = random_word(&mut rng, 1, 3, 5);
                    let x = random_word(&mut rng, 1, 5, 5);
                    let y = if rng.gen_bool(0.5) {
                        let steps = rng.gen_range(1..=4);
                        random_walk(&p, &mut rng, &x, steps, 6)
                    } else {
                        random_word(&mut rng, x.len(), x.len(), 5)
                    };
                    let same = nf(&x) == nf(&y);
                    let left = nf(&a.concat(&x)) == nf(&a.concat(&y));
                    let right = nf(&x.concat(&a)) == nf(&y.concat(&a));
                    if left != same || right != same {
                        return Ok(Err(format!("a = {a}, x = {x}, y = {y}")));
                    }
                }
                Ok(Ok(()))
            },
        ));
    }
    out
}

fn c11_simple_properties(_: &VerifyConfig) -> Vec<Check> {
    let m = Module::Garside;
    let p = Presentation::standard(MonoidId::H);
    let b = DEFAULT_REVERSING_BUDGET;
    let divides = |x: &Word, y: &Word| divides_left(&p, x, y, b);
    vec![
        check(
            11,
            m,
            "ceil(a) <= n + |a| - 2 for a dividing Delta_{n+0.5}, n <= 6",
            || {
                for n in 2..=6u32 {
                    for a in divisors_of(
                        MonoidId::H,
                        &delta_word(MonoidId::H, Rank::half(n))?,
                        BUDGET,
                    )? {
                        if !a.is_empty() && a.ceiling() as usize > n as usize + a.len() - 2 {
                            return Ok(Err(format!("n = {n}, a = {a}")));
                        }
                    }
                }
                Ok(Ok(()))
            },
        ),
        check(
            11,
            m,
            "for a dividing Delta_n: a divides Delta_{n-0.5} iff g_(n-1) does not divide a, n <= 6",
            || {
                for n in 2..=6u32 {
                    let half = delta_word(MonoidId::H, Rank::half(n - 1))?;
                    for a in nf_set(MonoidId::H, Rank::full(n), Method::BfsReversing)? {
                        if divides(&a, &half)? == divides(&Word::of(&[n - 1]), &a)? {
                            return Ok(Err(format!("n = {n}, a = {a}")));
                        }
                    }
                }
                Ok(Ok(()))
            },
        ),
        check(
            11,
            m,
            "NF starts with g_(n-1) when g_(n-1) divides a simple a, n <= 6",
            || {
                for n in 2..=6u32 {
                    for a in nf_set(MonoidId::H, Rank::full(n), Method::BfsReversing)? {
                        if divides(&Word::of(&[n - 1]), &a)? && a.first() != Some(n - 1) {
                            return Ok(Err(format!("n = {n}, a = {a}")));
                        }
                    }
                }
                Ok(Ok(()))
            },
        ),
        check(
            11,
            m,
            "simple NFs of index n extend a lower NF in exactly one way, 4 <= n <= 6",
            || {
                for n in 4..=6u32 {
                    let lower = delta_word(MonoidId::H, Rank::full(n - 1))?;
                    let lower_half = delta_word(MonoidId::H, Rank::half(n - 2))?;
                    for a in nf_set(MonoidId::H, Rank::full(n), Method::BfsReversing)? {
                        if a.first().is_none_or(|g| g < n - 1) && !a.starts_with(&[n - 2, n - 1]) {
                            continue;
                        }
                        let mut ways = 0;
                        if a.starts_with(&[n - 1, n - 2, n - 1]) {
                            let rest = Word::of(&[n - 2]).concat(&a.suffix_from(3));
                            ways += divides(&rest, &lower)? as usize;
                        }
                        if a.starts_with(&[n - 2, n - 1]) {
                            ways += divides(&a.suffix_from(2), &lower_half)? as usize;
                        }
                        if a.starts_with(&[n - 1]) {
                            ways += divides(&a.suffix_from(1), &lower)? as usize;
                        }
                        if ways != 1 {
                            return Ok(Err(format!("n = {n}, a = {a}: {ways} ways")));
                        }
                    }
                }
                Ok(Ok(()))
            },
        ),
        check(
            11,
            m,
            "greedy decomposition of g4 g3 g2 g3 g1 g1 g2 is g4 g3 g2 | g3 g1 | g1 | g2",
            || {
                let parts = greedy_decompose_f(&Word::of(&[4, 3, 2, 3, 1, 1, 2]))?;
                let expected = [&[4, 3, 2][..], &[3, 1], &[1], &[2]].map(Word::of);
                Ok(ensure(
                    parts == expected && parts.iter().all(|w| is_simple_nf(MonoidId::F, w)),
                    || format!("{parts:?}"),
                ))
            },
        ),
    ]
}

fn c12_morphisms(cfg: &VerifyConfig) -> Vec<Check> {
    let m = Module::Morphisms;
    let w = Word::of;
    vec![
        check(12, m, "pi respects 500 random relation moves", || {
            let ph = Presentation::standard(MonoidId::H);
            let ef = RewriteSystem::e_f();
            let mut rng = cfg.rng(120);
            let mut done = 0;
            while done < 500 {
                let u = random_word(&mut rng, 2, 8, 6);
                let moves = ph.neighbours(&u);
                if moves.is_empty() {
                    continue;
                }
                let v = &moves[rng.gen_range(0..moves.len())];
                if reduce(&ef, &project_pi(&u)) != reduce(&ef, &project_pi(v)) {
                    return Ok(Err(format!("{u} -> {v}")));
                }
                done += 1;
            }
            Ok(Ok(()))
        }),
        check(
            12,
            m,
            "pi is not injective: g2 g1 != g1 g3 in H, equal in F",
            || {
                let (u, v) = (w(&[2, 1]), w(&[1, 3]));
                let in_h = oracle_equal(&Presentation::standard(MonoidId::H), &u, &v, BUDGET)?;
                let in_f = oracle_equal(
                    &Presentation::standard(MonoidId::F),
                    &project_pi(&u),
                    &project_pi(&v),
                    BUDGET,
                )?;
                Ok(ensure(!in_h && in_f, || format!("H {in_h}, F {in_f}")))
            },
        ),
        check(12, m, "rho respects relations, window 20", || {
            let report = rho_check_relations(20);
            Ok(ensure(report.passed(), || {
                format!("{} failures", report.failures.len())
            }))
        }),
        check(12, m, "rho(g1 g1 g2) = rho(g1 g2 g3)", || {
            Ok(ensure(
                rho_of_word(&w(&[1, 1, 2])) == rho_of_word(&w(&[1, 2, 3])),
                || "maps differ".into(),
            ))
        }),
        check(
            12,
            m,
            "rho-tilde at t = 0 is the coordinate action of rho",
            || {
                for word in all_words(4, 4) {
                    if !rho_tilde_of_word(&word, 10)?
                        .at(0)
                        .is_coordinate_action_of(&rho_of_word(&word))
                    {
                        return Ok(Err(word.to_string()));
                    }
                }
                Ok(Ok(()))
            },
        ),
        check(
            12,
            m,
            "rho-tilde separates g1 g1 g2 and g1 g2 g3 (symbolic and t = 2, N = 8)",
            || {
                let a = rho_tilde_of_word(&w(&[1, 1, 2]), 8)?;
                let b = rho_tilde_of_word(&w(&[1, 2, 3]), 8)?;
                Ok(ensure(
                    !a.agrees_with(&b) && !a.at(2).agrees_with(&b.at(2)),
                    || "images agree".into(),
                ))
            },
        ),
        match rho_tilde_check_relations(6, 14) {
            Ok(report) => Check {
                criterion: 12,
                module: m,
                label: "rho-tilde relation experiment, window 6, N = 14".into(),
                outcome: Outcome::Reported(format!(
                    "{} of {} relations hold symbolically",
                    report.checked - report.failures.len(),
                    report.checked
                )),
            },
            Err(e) => check(
                12,
                m,
                "rho-tilde relation experiment, window 6, N = 14",
                || Err(e),
            ),
        },
    ]
}
