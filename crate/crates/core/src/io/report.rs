//! Report output: line-delimited JSON records and a plain-text summary.
//!
//! Every record is a JSON object with a `record` field naming its kind.
//! Profiles are written as comma-joined strategy names (`Cooperate,Cooperate`,
//! or indices such as `1,1` for unlabeled games); payoffs as canonical
//! number strings.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::analysis::{GameReport, ScanOutput, Symmetry};
use crate::error::SolveError;
use crate::game::{Game, StrategyProfile};
use crate::minimax::MinimaxResult;
use crate::number::format_rational;
use crate::pte::{Mode, PteOutcome, PteResult};
use crate::survivors::SurvivorSet;
use crate::Rational;

/// Payoff types with an exact textual form.
pub trait PayoffText {
    fn payoff_text(&self) -> String;
}

impl PayoffText for Rational {
    fn payoff_text(&self) -> String {
        format_rational(self)
    }
}

impl PayoffText for i64 {
    fn payoff_text(&self) -> String {
        self.to_string()
    }
}

impl PayoffText for f64 {
    fn payoff_text(&self) -> String {
        self.to_string()
    }
}

pub fn payoffs_text<T: PayoffText>(values: &[T]) -> Vec<String> {
    values.iter().map(PayoffText::payoff_text).collect()
}

pub fn profile_names<T>(game: &Game<T>, profiles: &[StrategyProfile]) -> Vec<String> {
    profiles.iter().map(|p| game.profile_name(p)).collect()
}

pub fn set_names<T>(game: &Game<T>, set: &SurvivorSet) -> Vec<String> {
    profile_names(game, &set.profiles(game))
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Strict => "strict",
        Mode::Lenient => "lenient",
    }
}

pub fn solve_error_code(error: &SolveError) -> &'static str {
    match error {
        SolveError::EmptySurvivors => "empty-survivors",
        SolveError::SurvivorMismatch { .. } => "survivor-mismatch",
        SolveError::NotSymmetric => "not-symmetric",
        SolveError::DiagonalTies { .. } => "diagonal-ties",
        SolveError::GeneralPositionViolation { .. } => "general-position",
        SolveError::InactiveStrategy { .. } => "inactive-strategy",
        SolveError::Game(_) => "unsupported",
    }
}

/// `{"outcome": ..., "profiles": [...]}` for a PTE outcome.
pub fn pte_outcome_value<T: PayoffText>(game: &Game<T>, outcome: &PteOutcome) -> Value {
    match outcome {
        PteOutcome::Unique(p) => json!({
            "outcome": "unique",
            "profiles": [game.profile_name(p)],
            "payoffs": [payoffs_text(game.payoff_vector(p).expect("profile belongs to the game"))],
        }),
        PteOutcome::NoEquilibrium => json!({ "outcome": "none", "profiles": [], "payoffs": [] }),
        PteOutcome::AmbiguousSet(ps) => json!({
            "outcome": "ambiguous",
            "profiles": profile_names(game, ps),
            "payoffs": ps
                .iter()
                .map(|p| payoffs_text(game.payoff_vector(p).expect("profile belongs to the game")))
                .collect::<Vec<_>>(),
        }),
    }
}

/// One record per elimination round.
pub fn trace_records<T: PayoffText>(game: &Game<T>, result: &PteResult<T>) -> Vec<Value> {
    result
        .trace
        .rounds
        .iter()
        .enumerate()
        .map(|(i, round)| {
            json!({
                "record": "pte-round",
                "round": i + 1,
                "maximin": payoffs_text(&round.maximin),
                "survivors": set_names(game, &round.survivors),
                "eliminated": profile_names(game, &round.eliminated),
            })
        })
        .collect()
}

pub fn pte_record<T: PayoffText>(game: &Game<T>, result: &PteResult<T>, mode: Mode) -> Value {
    let mut value = pte_outcome_value(game, &result.outcome);
    value["record"] = json!("pte");
    value["mode"] = json!(mode_name(mode));
    value["rounds"] = json!(result.trace.rounds.len());
    value
}

pub fn minimax_value<T>(game: &Game<T>, result: &MinimaxResult) -> Value {
    json!({
        "strategies": (0..game.player_count())
            .map(|p| result.active.strategies(p).into_iter().map(|s| game.strategy_name(p, s)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "deletions": result
            .deletions
            .iter()
            .map(|batch| batch.iter().map(|&(p, s)| json!([p, game.strategy_name(p, s)])).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn hofstadter_value<T>(game: &Game<T>, result: &Result<StrategyProfile, SolveError>) -> Value {
    match result {
        Ok(p) => json!({ "profile": game.profile_name(p) }),
        Err(e) => json!({ "profile": null, "error": solve_error_code(e) }),
    }
}

/// All records for a classification, in a fixed order.
pub fn report_records<T: PayoffText + PartialOrd + Clone>(
    game: &Game<T>,
    report: &GameReport<T>,
) -> Vec<Value> {
    let symmetry = match report.symmetry {
        Symmetry::Symmetric => "symmetric",
        Symmetry::Asymmetric => "asymmetric",
        Symmetry::Unsupported => "unsupported",
    };
    let tie = report.tie.as_ref().map(|t| {
        json!({
            "player": t.player,
            "first": game.profile_name(&t.first),
            "second": game.profile_name(&t.second),
        })
    });
    let mut records = vec![
        json!({
            "record": "game",
            "players": game.player_count(),
            "strategies": game.strategy_counts(),
            "general_position": report.general_position(),
            "tie": tie,
            "symmetry": symmetry,
        }),
        json!({ "record": "nash", "profiles": profile_names(game, &report.nash) }),
        json!({
            "record": "individually-rational",
            "maximin": payoffs_text(&crate::equilibria::maximin(game)),
            "profiles": set_names(game, &report.individually_rational),
        }),
        json!({
            "record": "translucent",
            "thresholds": payoffs_text(&crate::equilibria::translucent_thresholds(game)),
            "profiles": set_names(game, &report.translucent),
        }),
    ];
    let mut minimax = minimax_value(game, &report.minimax);
    minimax["record"] = json!("minimax");
    records.push(minimax);
    records.push(
        json!({ "record": "pareto", "profiles": profile_names(game, &report.pareto_optimal) }),
    );
    records.push(pte_record(game, &report.pte, report.pte_mode));
    records.extend(trace_records(game, &report.pte));
    let mut hofstadter = hofstadter_value(game, &report.hofstadter);
    hofstadter["record"] = json!("hofstadter");
    records.push(hofstadter);
    records.push(json!({ "record": "social-dilemma", "value": report.social_dilemma }));
    records.push(json!({
        "record": "violations",
        "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    }));
    records
}

/// Serializes records one per line.
pub fn to_json_lines(records: &[Value]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}

/// Human-readable summary of a classification.
pub fn report_text<T: PayoffText + PartialOrd + Clone>(
    game: &Game<T>,
    report: &GameReport<T>,
) -> String {
    let mut out = String::new();
    let list = |ps: Vec<String>| {
        if ps.is_empty() {
            "(none)".to_string()
        } else {
            ps.iter().map(|p| format!("({p})")).join(" ")
        }
    };
    let shape = game.strategy_counts().iter().join("x");
    writeln!(out, "game: {} players, {shape}", game.player_count()).unwrap();
    match &report.tie {
        None => writeln!(out, "general position: yes").unwrap(),
        Some(t) => writeln!(
            out,
            "general position: no (player {} ties on ({}) and ({}))",
            t.player,
            game.profile_name(&t.first),
            game.profile_name(&t.second)
        )
        .unwrap(),
    }
    writeln!(
        out,
        "symmetric: {}",
        matches!(report.symmetry, Symmetry::Symmetric)
    )
    .unwrap();
    writeln!(out, "nash: {}", list(profile_names(game, &report.nash))).unwrap();
    writeln!(
        out,
        "individually rational (maximin {}): {}",
        payoffs_text(&crate::equilibria::maximin(game)).join(", "),
        list(set_names(game, &report.individually_rational))
    )
    .unwrap();
    writeln!(
        out,
        "translucent: {}",
        list(set_names(game, &report.translucent))
    )
    .unwrap();
    let mm: Vec<String> = (0..game.player_count())
        .map(|p| {
            report
                .minimax
                .active
                .strategies(p)
                .into_iter()
                .map(|s| game.strategy_name(p, s))
                .join(" ")
        })
        .collect();
    writeln!(
        out,
        "minimax-rationalizable: {}",
        mm.iter().map(|s| format!("{{{s}}}")).join(" x ")
    )
    .unwrap();
    writeln!(
        out,
        "pareto-optimal: {}",
        list(profile_names(game, &report.pareto_optimal))
    )
    .unwrap();
    out.push_str(&pte_text(game, &report.pte, report.pte_mode, true));
    match &report.hofstadter {
        Ok(p) => writeln!(out, "hofstadter: ({})", game.profile_name(p)).unwrap(),
        Err(e) => writeln!(out, "hofstadter: {}", solve_error_code(e)).unwrap(),
    }
    writeln!(out, "social dilemma: {}", report.social_dilemma).unwrap();
    if report.violations.is_empty() {
        writeln!(out, "violations: none").unwrap();
    } else {
        for v in &report.violations {
            writeln!(out, "violation: {v}").unwrap();
        }
    }
    out
}

/// PTE outcome line, optionally followed by one line per round.
pub fn pte_text<T: PayoffText>(
    game: &Game<T>,
    result: &PteResult<T>,
    mode: Mode,
    trace: bool,
) -> String {
    let mut out = String::new();
    let outcome = match &result.outcome {
        PteOutcome::Unique(p) => format!(
            "({}) = ({})",
            game.profile_name(p),
            payoffs_text(game.payoff_vector(p).expect("profile belongs to the game")).join(", ")
        ),
        PteOutcome::NoEquilibrium => "none".to_string(),
        PteOutcome::AmbiguousSet(ps) => format!(
            "ambiguous {}",
            ps.iter()
                .map(|p| format!("({})", game.profile_name(p)))
                .join(" ")
        ),
    };
    writeln!(out, "pte [{}]: {outcome}", mode_name(mode)).unwrap();
    if trace {
        for (i, round) in result.trace.rounds.iter().enumerate() {
            let eliminated = if round.eliminated.is_empty() {
                "nothing".to_string()
            } else {
                profile_names(game, &round.eliminated)
                    .iter()
                    .map(|p| format!("({p})"))
                    .join(" ")
            };
            writeln!(
                out,
                "  round {}: maximin ({}), eliminates {eliminated}",
                i + 1,
                payoffs_text(&round.maximin).join(", ")
            )
            .unwrap();
        }
    }
    out
}

/// Scan summary as pretty JSON (byte-stable for a given scan).
pub fn scan_report_json(output: &ScanOutput) -> String {
    let stats = &output.stats;
    let value = json!({
        "shape": output.config.shape,
        "count": output.config.count,
        "seed": output.config.seed,
        "symmetric": output.config.symmetric,
        "stats": stats,
        "pte_fraction": stats.pte_fraction(),
        "pte_not_minimax_fraction": stats.pte_not_minimax_fraction(),
        "counterexamples": output.counterexamples.len(),
    });
    let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
    text.push('\n');
    text
}

/// Counterexample records, one JSON object per line, in game-index order.
pub fn counterexamples_json_lines(output: &ScanOutput) -> String {
    output
        .counterexamples
        .iter()
        .map(|r| format!("{}\n", serde_json::to_string(r).expect("record serializes")))
        .collect()
}

/// Writes the scan summary and the counterexample stream.
pub fn write_scan(
    output: &ScanOutput,
    report: &Path,
    counterexamples: &Path,
) -> std::io::Result<()> {
    fs::write(report, scan_report_json(output))?;
    fs::write(counterexamples, counterexamples_json_lines(output))
}
