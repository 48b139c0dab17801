//! Regression corpus: named games (and Newcomb problems) with expected
//! results per concept.
//!
//! A corpus directory holds `<entry>.game` files, `<entry>.json` Newcomb
//! problems and one or more `*.jsonl` expectation files. Each expectation
//! line is
//!
//! ```text
//! {"entry": "chicken", "concept": "hofstadter", "expected": "Swerve,Swerve", "source": "figure"}
//! ```
//!
//! `source` says where the value comes from (`figure` for values read off a
//! published figure or caption, `oracle` for values computed by the
//! brute-force script shipped with the corpus). Concepts and their value
//! shapes are listed on [`GAME_CONCEPTS`] and [`NEWCOMB_CONCEPTS`].

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::analysis::is_social_dilemma;
use crate::equilibria::{
    hofstadter_equilibrium, individually_rational_set, nash_pure_set, translucent_set,
};
use crate::game::Game;
use crate::io::format::{parse_game, ParseError};
use crate::io::report::{
    hofstadter_value, payoffs_text, profile_names, pte_outcome_value, set_names, solve_error_code,
};
use crate::minimax::minimax_rationalizable;
use crate::newcomb::{expected_utilities, NewcombPayoffs, NewcombProblem, Recommendation, Theory};
use crate::number::{format_rational, parse_rational};
use crate::pte::{pte_solve, Mode};
use crate::Rational;

/// Concepts evaluated on game entries.
pub const GAME_CONCEPTS: &[&str] = &[
    "general_position",
    "symmetric",
    "pte",
    "pte_lenient",
    "maximins",
    "rounds",
    "nash",
    "ir",
    "translucent",
    "pareto",
    "minimax",
    "hofstadter",
    "social_dilemma",
];

/// Concepts evaluated on Newcomb entries.
pub const NEWCOMB_CONCEPTS: &[&str] = &["cdt", "edt", "nndt"];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("missing corpus file {0}")]
    Missing(PathBuf),
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Game { path: PathBuf, source: ParseError },
    #[error("{path}, line {line}: {message}")]
    Record {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Problem { path: PathBuf, message: String },
    #[error("no expectation files in {0}")]
    Empty(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub entry: String,
    pub concept: String,
    pub expected: Value,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub concept: String,
    pub source: String,
    pub expected: Value,
    /// `None` when the concept is unknown for this kind of entry.
    pub actual: Option<Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntryResult {
    pub entry: String,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl EntryResult {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// A loaded corpus entry.
pub enum Subject {
    Game(Game<Rational>),
    Newcomb(Box<NewcombProblem<Rational>>),
}

/// Value of `concept` on `game`, in the expectation format; `None` for an
/// unknown concept.
pub fn evaluate_game(game: &Game<Rational>, concept: &str) -> Option<Value> {
    let lenient = || pte_solve(game, Mode::Lenient).expect("lenient mode accepts every game");
    let value = match concept {
        "general_position" => json!(game.is_general_position()),
        "symmetric" => json!(game.is_symmetric().ok()),
        "pte" | "pte_lenient" => {
            let mode = if concept == "pte" {
                Mode::Strict
            } else {
                Mode::Lenient
            };
            match pte_solve(game, mode) {
                Ok(result) => pte_outcome_value(game, &result.outcome),
                Err(e) => json!({ "error": solve_error_code(&e) }),
            }
        }
        "maximins" => json!(lenient()
            .trace
            .maximins()
            .map(|m| payoffs_text(m))
            .collect::<Vec<_>>()),
        "rounds" => json!(lenient()
            .trace
            .rounds
            .iter()
            .map(|r| json!({
                "survivors": set_names(game, &r.survivors),
                "eliminated": profile_names(game, &r.eliminated),
            }))
            .collect::<Vec<_>>()),
        "nash" => json!(profile_names(game, &nash_pure_set(game))),
        "ir" => json!(set_names(game, &individually_rational_set(game))),
        "translucent" => json!(set_names(game, &translucent_set(game))),
        "pareto" => json!(profile_names(game, &game.pareto_optimal_set())),
        "minimax" => {
            let result = minimax_rationalizable(game);
            json!((0..game.player_count())
                .map(|p| result
                    .active
                    .strategies(p)
                    .into_iter()
                    .map(|s| game.strategy_name(p, s))
                    .collect::<Vec<_>>())
                .collect::<Vec<_>>())
        }
        "hofstadter" => match hofstadter_value(game, &hofstadter_equilibrium(game)) {
            Value::Object(map) if map["profile"].is_string() => map["profile"].clone(),
            Value::Object(map) => json!({ "error": map["error"] }),
            other => other,
        },
        "social_dilemma" => json!(is_social_dilemma(game)),
        _ => return None,
    };
    Some(value)
}

/// Verdict of one decision theory on `problem`.
pub fn evaluate_newcomb(problem: &NewcombProblem<Rational>, concept: &str) -> Option<Value> {
    let theory = match concept {
        "cdt" => Theory::Cdt,
        "edt" => Theory::Edt,
        "nndt" => Theory::Nndt,
        _ => return None,
    };
    let value = match expected_utilities(problem, theory) {
        Ok(v) => json!({
            "one": format_rational(&v.expected_one),
            "two": format_rational(&v.expected_two),
            "recommend": match v.recommendation {
                Recommendation::Take(action) => action.to_string(),
                Recommendation::Indifferent => "indifferent".to_string(),
            },
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    Some(value)
}

/// Reads a Newcomb problem: `{"payoffs": {"one_full": ..., ...},
/// "prior_full": ..., "accuracy": ...}` with numbers as strings.
pub fn parse_newcomb(text: &str) -> Result<NewcombProblem<Rational>, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let number = |v: &Value, key: &str| -> Result<Rational, String> {
        let field = v.get(key).ok_or_else(|| format!("missing `{key}`"))?;
        let text = match field {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(format!("`{key}` is not a number")),
        };
        parse_rational(&text).ok_or_else(|| format!("`{key}`: invalid number {text:?}"))
    };
    let payoffs = value.get("payoffs").ok_or("missing `payoffs`")?;
    Ok(NewcombProblem {
        payoffs: NewcombPayoffs {
            one_full: number(payoffs, "one_full")?,
            one_empty: number(payoffs, "one_empty")?,
            two_full: number(payoffs, "two_full")?,
            two_empty: number(payoffs, "two_empty")?,
        },
        prior_full: number(&value, "prior_full")?,
        accuracy: number(&value, "accuracy")?,
    })
}

/// Parses expectation lines; blank lines are skipped.
pub fn parse_expectations(path: &Path, text: &str) -> Result<Vec<Expectation>, CorpusError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| CorpusError::Record {
                path: path.to_path_buf(),
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

fn read(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| match source.kind() {
        std::io::ErrorKind::NotFound => CorpusError::Missing(path.to_path_buf()),
        _ => CorpusError::Io {
            path: path.to_path_buf(),
            source,
        },
    })
}

/// Loads the subject of `entry`: `<entry>.game`, else `<entry>.json`.
pub fn load_subject(dir: &Path, entry: &str) -> Result<Subject, CorpusError> {
    let game_path = dir.join(format!("{entry}.game"));
    let problem_path = dir.join(format!("{entry}.json"));
    if !game_path.exists() && problem_path.exists() {
        let problem =
            parse_newcomb(&read(&problem_path)?).map_err(|message| CorpusError::Problem {
                path: problem_path,
                message,
            })?;
        return Ok(Subject::Newcomb(Box::new(problem)));
    }
    let text = read(&game_path)?;
    parse_game(&text)
        .map(Subject::Game)
        .map_err(|source| CorpusError::Game {
            path: game_path,
            source,
        })
}

/// Checks every expectation against freshly computed values, one result per
/// entry in name order.
pub fn check(dir: &Path, expectations: &[Expectation]) -> Result<Vec<EntryResult>, CorpusError> {
    let mut by_entry: BTreeMap<&str, Vec<&Expectation>> = BTreeMap::new();
    for e in expectations {
        by_entry.entry(e.entry.as_str()).or_default().push(e);
    }
    let mut results = Vec::new();
    for (entry, expected) in by_entry {
        let subject = load_subject(dir, entry)?;
        let mut mismatches = Vec::new();
        for e in &expected {
            let actual = match &subject {
                Subject::Game(g) => evaluate_game(g, &e.concept),
                Subject::Newcomb(p) => evaluate_newcomb(p, &e.concept),
            };
            if actual.as_ref() != Some(&e.expected) {
                mismatches.push(Mismatch {
                    concept: e.concept.clone(),
                    source: e.source.clone(),
                    expected: e.expected.clone(),
                    actual,
                });
            }
        }
        results.push(EntryResult {
            entry: entry.to_string(),
            checked: expected.len(),
            mismatches,
        });
    }
    Ok(results)
}

/// Runs every `*.jsonl` expectation file in `dir`.
pub fn run_corpus(dir: &Path) -> Result<Vec<EntryResult>, CorpusError> {
    let listing = fs::read_dir(dir).map_err(|source| match source.kind() {
        std::io::ErrorKind::NotFound => CorpusError::Missing(dir.to_path_buf()),
        _ => CorpusError::Io {
            path: dir.to_path_buf(),
            source,
        },
    })?;
    let mut files: Vec<PathBuf> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CorpusError::Empty(dir.to_path_buf()));
    }
    let mut expectations = Vec::new();
    for file in &files {
        expectations.extend(parse_expectations(file, &read(file)?)?);
    }
    check(dir, &expectations)
}

/// Directory of the corpus shipped with this crate.
pub fn bundled_corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}
