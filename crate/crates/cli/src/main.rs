use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use garside_core::garside::{
    count_triangle, enumerate_divisors, greedy_decompose_f, perm_to_word, Method, Permutation, Rank,
};
use garside_core::morphisms::{rho_of_word, rho_tilde_of_word};
use garside_core::presentation::{
    class_saturate, oracle_equal, Presentation, DEFAULT_SATURATION_BUDGET,
};
use garside_core::reversing::{
    equal_by_reversing, left_lcm_f, left_quotient, reverse_left, reverse_right, right_lcm,
    DEFAULT_REVERSING_BUDGET,
};
use garside_core::rewrite::{reduce, reduce_with_trace, RewriteSystem};
use garside_core::verify::{self, Outcome, Scope, VerifyConfig};
use garside_core::words::parse_word;
use garside_core::{Error, MonoidId, Word};

#[derive(Parser)]
#[command(
    name = "garside",
    version,
    about = "Normal forms, reversing and simple elements in F+ and H+"
)]
struct Cli {
    /// Print a JSON envelope instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MonoidArg {
    /// F (Thompson) or H (hybrid).
    #[arg(long, short)]
    monoid: MonoidId,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Reduce {
        #[command(flatten)]
        m: MonoidArg,
        #[arg(value_parser = word)]
        word: Word,
        /// Print every rewrite step.
        #[arg(long)]
        trace: bool,
    },
    /// Whether two words represent the same element.
    Equal {
        #[command(flatten)]
        m: MonoidArg,
        #[arg(value_parser = word)]
        u: Word,
        #[arg(value_parser = word)]
        v: Word,
        #[arg(long, value_enum, default_value_t = EqualMethod::Nf)]
        method: EqualMethod,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Whether `a` left divides `b`, by reversing.
    Divides {
        #[command(flatten)]
        m: MonoidArg,
        #[arg(value_parser = word)]
        a: Word,
        #[arg(value_parser = word)]
        b: Word,
        #[arg(long, default_value_t = DEFAULT_REVERSING_BUDGET)]
        budget: usize,
    },
    /// Right lcm by reversing, or left lcm in F with `--left`.
    Lcm {
        #[command(flatten)]
        m: MonoidArg,
        #[arg(value_parser = word)]
        a: Word,
        #[arg(value_parser = word)]
        b: Word,
        #[arg(long)]
        left: bool,
        #[arg(long, default_value_t = DEFAULT_REVERSING_BUDGET)]
        budget: usize,
    },
    /// Reversing grid of the signed word u^-1 v (or u v^-1 with `--left`).
    Reverse {
        #[command(flatten)]
        m: MonoidArg,
        #[arg(value_parser = word)]
        u: Word,
        #[arg(value_parser = word)]
        v: Word,
        #[arg(long, conflicts_with = "right")]
        left: bool,
        #[arg(long)]
        right: bool,
        #[arg(long, value_enum)]
        render: Option<Render>,
        #[arg(long, default_value_t = DEFAULT_REVERSING_BUDGET)]
        budget: usize,
    },
    /// All expressions of the element represented by a word.
    Class {
        #[command(flatten)]
        m: MonoidArg,
        #[arg(value_parser = word)]
        word: Word,
        #[arg(long, default_value_t = DEFAULT_SATURATION_BUDGET)]
        budget: usize,
    },
    /// Left divisors of Delta_n with length, index and type.
    Simples {
        #[command(flatten)]
        m: MonoidArg,
        /// Rank, e.g. 5 or 3.5.
        #[arg(long)]
        n: Rank,
        /// Defaults to forbidden_factors, or bfs_reversing at half ranks.
        #[arg(long)]
        method: Option<Method>,
        #[arg(long, default_value_t = DEFAULT_SATURATION_BUDGET)]
        budget: usize,
    },
    /// Number of simple elements by rank and length.
    Triangle {
        #[arg(long)]
        nmax: u32,
        #[arg(long)]
        csv: bool,
    },
    /// Greedy decomposition into simple elements (F only).
    Greedy {
        #[command(flatten)]
        m: MonoidArg,
        #[arg(value_parser = word)]
        word: Word,
    },
    /// Expression of Delta attached to a permutation, given as images "3,1,2".
    PermWord { perm: Permutation },
    /// The surjection rho(w) of the positive integers.
    Rho {
        #[arg(long, value_parser = word)]
        word: Word,
        /// Print only the image of this integer.
        #[arg(long)]
        eval: Option<u32>,
    },
    /// The matrix of the deformed representation, truncated to `--dim` rows.
    RhoTilde {
        #[arg(long, value_parser = word)]
        word: Word,
        #[arg(long)]
        dim: usize,
        /// An integer value for t, or "sym" to keep polynomials.
        #[arg(long, default_value = "sym", value_parser = t_value)]
        t: TValue,
    },
    /// Replay the acceptance checks.
    Verify {
        /// all, or one of presentation, rewrite, reversing, garside, morphisms.
        #[arg(default_value = "all")]
        scope: Scope,
        /// Swap in a wrong braid rule; the run must then fail.
        #[arg(long)]
        mutate_braid_rule: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EqualMethod {
    Nf,
    Reversing,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Render {
    Ascii,
    Tikz,
}

#[derive(Clone, Copy)]
enum TValue {
    Symbolic,
    Int(i64),
}

fn word(s: &str) -> Result<Word, String> {
    parse_word(s).map_err(|e| e.to_string())
}

fn t_value(s: &str) -> Result<TValue, String> {
    match s {
        "sym" | "symbolic" => Ok(TValue::Symbolic),
        other => other
            .parse()
            .map(TValue::Int)
            .map_err(|_| format!("expected an integer or \"sym\", got {other:?}")),
    }
}

/// Result status, mapped to the exit code.
#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Negative,
    Inconclusive,
}

impl Status {
    fn of(b: bool) -> Self {
        if b {
            Status::Ok
        } else {
            Status::Negative
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::Inconclusive => 3,
        }
    }
}

struct Report {
    text: String,
    result: Value,
    status: Status,
}

impl Report {
    fn new(text: impl Into<String>, result: Value, status: Status) -> Self {
        Report {
            text: text.into(),
            result,
            status,
        }
    }

    fn boolean(b: bool, result: Value) -> Self {
        Report::new(b.to_string(), result, Status::of(b))
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    result: &'a Value,
    status: Status,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Reduce { .. } => "reduce",
        Command::Equal { .. } => "equal",
        Command::Divides { .. } => "divides",
        Command::Lcm { .. } => "lcm",
        Command::Reverse { .. } => "reverse",
        Command::Class { .. } => "class",
        Command::Simples { .. } => "simples",
        Command::Triangle { .. } => "triangle",
        Command::Greedy { .. } => "greedy",
        Command::PermWord { .. } => "perm-word",
        Command::Rho { .. } => "rho",
        Command::RhoTilde { .. } => "rho-tilde",
        Command::Verify { .. } => "verify",
    }
}

/// Prints a line, ignoring a closed pipe so `| head` exits quietly.
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match execute(cli.command) {
        Ok(report) => {
            if cli.json {
                let envelope = Envelope {
                    command: name,
                    result: &report.result,
                    status: report.status,
                };
                emit(&serde_json::to_string(&envelope).expect("JSON values serialize"));
            } else if !report.text.is_empty() {
                emit(report.text.trim_end_matches('\n'));
            }
            ExitCode::from(report.status.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_inconclusive() {
                if cli.json {
                    let envelope = Envelope {
                        command: name,
                        result: &json!({ "error": e.to_string() }),
                        status: Status::Inconclusive,
                    };
                    emit(&serde_json::to_string(&envelope).expect("JSON values serialize"));
                }
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn execute(command: Command) -> Result<Report, Error> {
    match command {
        Command::Reduce { m, word, trace } => {
            let sys = RewriteSystem::for_monoid(m.monoid);
            let (nf, steps) = if trace {
                reduce_with_trace(&sys, &word)
            } else {
                (reduce(&sys, &word), Vec::new())
            };
            let mut text: String = steps
                .iter()
                .map(|s| format!("pos {}: {} -> {}\n", s.pos, s.before, s.after))
                .collect();
            text.push_str(&nf.to_string());
            let steps: Vec<Value> = steps
                .iter()
                .map(|s| json!({ "pos": s.pos, "before": s.before, "after": s.after }))
                .collect();
            Ok(Report::new(
                text,
                json!({ "input": word, "nf": nf, "steps": steps }),
                Status::Ok,
            ))
        }
        Command::Equal {
            m,
            u,
            v,
            method,
            budget,
        } => {
            let p = Presentation::standard(m.monoid);
            let equal = match method {
                EqualMethod::Nf => {
                    let sys = RewriteSystem::for_monoid(m.monoid);
                    reduce(&sys, &u) == reduce(&sys, &v)
                }
                EqualMethod::Reversing => {
                    equal_by_reversing(&p, &u, &v, budget.unwrap_or(DEFAULT_REVERSING_BUDGET))?
                }
                EqualMethod::Oracle => {
                    oracle_equal(&p, &u, &v, budget.unwrap_or(DEFAULT_SATURATION_BUDGET))?
                }
            };
            Ok(Report::boolean(
                equal,
                json!({ "u": u, "v": v, "equal": equal }),
            ))
        }
        Command::Divides { m, a, b, budget } => {
            let p = Presentation::standard(m.monoid);
            let quotient = left_quotient(&p, &a, &b, budget)?;
            let divides = quotient.is_some();
            let mut report = Report::boolean(
                divides,
                json!({ "a": a, "b": b, "divides": divides, "quotient": quotient }),
            );
            if let Some(q) = quotient {
                report.text = format!("true\nquotient: {q}");
            }
            Ok(report)
        }
        Command::Lcm {
            m,
            a,
            b,
            left,
            budget,
        } => {
            let sys = RewriteSystem::for_monoid(m.monoid);
            let lcm = if left {
                if m.monoid != MonoidId::F {
                    return Err(Error::Precondition(
                        "left lcm is only available for F".into(),
                    ));
                }
                left_lcm_f(&a, &b, budget)?
            } else {
                match right_lcm(&Presentation::standard(m.monoid), &a, &b, budget) {
                    Ok(l) => Some(l),
                    Err(Error::NoCommonMultiple) => None,
                    Err(e) => return Err(e),
                }
            };
            let side = if left { "left" } else { "right" };
            Ok(match lcm {
                Some(l) => {
                    let nf = reduce(&sys, &l);
                    Report::new(
                        nf.to_string(),
                        json!({ "side": side, "lcm": l, "nf": nf }),
                        Status::Ok,
                    )
                }
                None => Report::new(
                    "none",
                    json!({ "side": side, "lcm": null }),
                    Status::Negative,
                ),
            })
        }
        Command::Reverse {
            m,
            u,
            v,
            left,
            right: _,
            render,
            budget,
        } => {
            let p = Presentation::standard(m.monoid);
            let grid = if left {
                reverse_left(&p, &u, &v, budget)
            } else {
                reverse_right(&p, &u, &v, budget)
            };
            let text = match render {
                Some(Render::Ascii) => grid.render_ascii(),
                Some(Render::Tikz) => grid.render_tikz(),
                None => format!(
                    "status: {}\nright: {}\nbottom: {}",
                    grid.status.as_str(),
                    grid.right_output,
                    grid.bottom_output
                ),
            };
            let status = match grid.status.as_str() {
                "complete" => Status::Ok,
                "stuck" => Status::Negative,
                _ => Status::Inconclusive,
            };
            let result = json!({
                "side": if left { "left" } else { "right" },
                "status": grid.status.as_str(),
                "right": grid.right_output,
                "bottom": grid.bottom_output,
                "cells": grid.cells.len(),
            });
            Ok(Report::new(text, result, status))
        }
        Command::Class { m, word, budget } => {
            let class = class_saturate(&Presentation::standard(m.monoid), &word, budget);
            let text: Vec<String> = class.members.iter().map(Word::to_string).collect();
            let status = if class.truncated {
                Status::Inconclusive
            } else {
                Status::Ok
            };
            let result = json!({ "size": class.len(), "truncated": class.truncated, "members": class.members });
            Ok(Report::new(text.join("\n"), result, status))
        }
        Command::Simples {
            m,
            n,
            method,
            budget,
        } => {
            let method = method.unwrap_or(if n.half {
                Method::BfsReversing
            } else {
                Method::ForbiddenFactors
            });
            let records = enumerate_divisors(m.monoid, n, method, budget)?;
            let text: Vec<String> = records
                .iter()
                .map(|r| {
                    let kind = r.kind.map_or(String::new(), |k| format!("\t{k}"));
                    format!("{}\t{}\t{}{kind}", r.nf, r.length, r.index)
                })
                .collect();
            let result = json!({ "monoid": m.monoid.to_string(), "rank": n, "count": records.len(), "simples": records });
            Ok(Report::new(text.join("\n"), result, Status::Ok))
        }
        Command::Triangle { nmax, csv } => {
            let t = count_triangle(nmax)?;
            let text = if csv {
                t.to_csv()
            } else {
                t.rows()
                    .map(|(n, row)| {
                        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                        format!("n={n}: {}\n", cells.join(" "))
                    })
                    .collect()
            };
            let rows: Vec<Value> = t
                .rows()
                .map(|(n, row)| json!({ "n": n, "counts": row }))
                .collect();
            Ok(Report::new(
                text,
                json!({ "nmax": nmax, "rows": rows }),
                Status::Ok,
            ))
        }
        Command::Greedy { m, word } => {
            if m.monoid != MonoidId::F {
                return Err(Error::Precondition(
                    "greedy decomposition is only available for F".into(),
                ));
            }
            let nf = reduce(&RewriteSystem::e_f(), &word);
            let parts = greedy_decompose_f(&nf)?;
            let text: Vec<String> = parts.iter().map(Word::to_string).collect();
            Ok(Report::new(
                text.join(" | "),
                json!({ "nf": nf, "parts": parts }),
                Status::Ok,
            ))
        }
        Command::PermWord { perm } => {
            let w = perm_to_word(&perm);
            Ok(Report::new(
                w.to_string(),
                json!({ "perm": perm.images(), "word": w }),
                Status::Ok,
            ))
        }
        Command::Rho { word, eval } => {
            let map = rho_of_word(&word);
            if let Some(k) = eval {
                if k == 0 {
                    return Err(Error::ZeroIndex);
                }
                let value = map.eval(k);
                return Ok(Report::new(
                    value.to_string(),
                    json!({ "k": k, "value": value }),
                    Status::Ok,
                ));
            }
            let table = map.table(map.window_width());
            let mut text: String = table
                .iter()
                .enumerate()
                .map(|(k, v)| format!("{} -> {v}\n", k + 1))
                .collect();
            text.push_str(&format!("k -> k-{} for k > {}", map.tail(), table.len()));
            Ok(Report::new(
                text,
                json!({ "window": table, "tail": map.tail() }),
                Status::Ok,
            ))
        }
        Command::RhoTilde { word, dim, t } => {
            let symbolic = rho_tilde_of_word(&word, dim)?;
            let map = match t {
                TValue::Symbolic => symbolic,
                TValue::Int(t) => symbolic.at(t),
            };
            let rows: Vec<Vec<String>> = map
                .rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect();
            let text: Vec<String> = rows.iter().map(|r| r.join("\t")).collect();
            let result = json!({ "dim": dim, "valid_rows": map.boundary_valid_rows, "rows": rows });
            Ok(Report::new(text.join("\n"), result, Status::Ok))
        }
        Command::Verify {
            scope,
            mutate_braid_rule,
        } => {
            let cfg = VerifyConfig {
                mutate_braid_rule,
                ..VerifyConfig::default()
            };
            let checks = verify::run(scope, &cfg);
            let failed = checks.iter().filter(|c| c.outcome.is_fail()).count();
            let inconclusive = checks
                .iter()
                .filter(|c| c.outcome.is_inconclusive())
                .count();
            let status = if failed > 0 {
                Status::Negative
            } else if inconclusive > 0 {
                Status::Inconclusive
            } else {
                Status::Ok
            };
            let mut text: String = checks.iter().map(|c| format!("{c}\n")).collect();
            let verdict = match status {
                Status::Ok => "PASS",
                Status::Negative => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            let scope_name = match scope {
                Scope::All => "all".to_string(),
                Scope::Module(m) => m.to_string(),
            };
            text.push_str(&format!(
                "verify {scope_name} : {verdict} ({} checks, {failed} failed)",
                checks.len()
            ));
            let passed = checks.iter().filter(|c| c.outcome == Outcome::Pass).count();
            let result = json!({ "scope": scope_name, "passed": passed, "failed": failed, "checks": checks });
            Ok(Report::new(text, result, status))
        }
    }
}
