//! Plain-text game format.
//!
//! ```text
//! # prisoner's dilemma
//! players: 2
//! strategies: 2 2
//! labels: Defect Cooperate
//! labels: Defect Cooperate
//! 1 1
//! 3 0
//! 0 3
//! 2 2
//! ```
//!
//! `#` starts a comment. The header gives the player count and each
//! player's strategy count, optionally followed by one `labels:` line per
//! player. Then comes one line per profile in lexicographic order (player 0
//! slowest), each holding one number per player. Numbers are integers,
//! decimals or `p/q` fractions and are read exactly.

use std::fmt::Write as _;

use itertools::Itertools;
use thiserror::Error;

use crate::error::GameError;
use crate::game::Game;
use crate::number::{format_rational, parse_rational};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected `{0}` header")]
    MissingHeader(&'static str),
    #[error("invalid number {0:?}")]
    InvalidNumber(String),
    #[error("invalid count {0:?}")]
    InvalidCount(String),
    #[error("expected {expected} values on this line, found {found}")]
    WrongValueCount { expected: usize, found: usize },
    #[error("expected {expected} payoff lines, found {found}")]
    WrongPayoffCount { expected: usize, found: usize },
    #[error("expected {expected} `labels:` lines, found {found}")]
    WrongLabelCount { expected: usize, found: usize },
    #[error("invalid game: {0}")]
    InvalidGame(#[from] GameError),
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

struct Line<'a> {
    number: usize,
    /// Whitespace-separated tokens with their 1-based columns.
    tokens: Vec<(usize, &'a str)>,
}

fn tokenize(number: usize, raw: &str) -> Line<'_> {
    let content = raw.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                tokens.push((s, &content[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        tokens.push((s, &content[s..]));
    }
    let tokens = tokens
        .into_iter()
        .map(|(byte, tok)| (content[..byte].chars().count() + 1, tok))
        .collect();
    Line { number, tokens }
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

/// Splits `key: rest` off the front of a header line.
fn header<'a>(line: &Line<'a>, key: &'static str) -> Option<Vec<(usize, &'a str)>> {
    let (col, first) = *line.tokens.first()?;
    let rest = first.strip_prefix(key)?.strip_prefix(':')?;
    let mut tokens = Vec::new();
    if !rest.is_empty() {
        tokens.push((col + key.len() + 1, rest));
    }
    tokens.extend(line.tokens[1..].iter().copied());
    Some(tokens)
}

fn parse_count(line: usize, (col, tok): (usize, &str)) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .ok()
        .filter(|&c| c > 0)
        .ok_or_else(|| err(line, col, ParseErrorKind::InvalidCount(tok.to_string())))
}

/// Reads a game; decimal payoffs become exact rationals.
pub fn parse_game(text: &str) -> Result<Game<Rational>, ParseError> {
    let all: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, l)| tokenize(i + 1, l))
        .collect();
    let last_line = all.len();
    let mut lines = all.into_iter().filter(|l| !l.tokens.is_empty()).peekable();

    let players_line = lines
        .next()
        .ok_or_else(|| err(last_line + 1, 1, ParseErrorKind::MissingHeader("players:")))?;
    let players_tokens = header(&players_line, "players").ok_or_else(|| {
        err(
            players_line.number,
            1,
            ParseErrorKind::MissingHeader("players:"),
        )
    })?;
    if players_tokens.len() != 1 {
        return Err(err(
            players_line.number,
            players_tokens.get(1).map_or(1, |t| t.0),
            ParseErrorKind::WrongValueCount {
                expected: 1,
                found: players_tokens.len(),
            },
        ));
    }
    let n = parse_count(players_line.number, players_tokens[0])?;

    let strategies_line = lines.next().ok_or_else(|| {
        err(
            last_line + 1,
            1,
            ParseErrorKind::MissingHeader("strategies:"),
        )
    })?;
    let strategy_tokens = header(&strategies_line, "strategies").ok_or_else(|| {
        err(
            strategies_line.number,
            1,
            ParseErrorKind::MissingHeader("strategies:"),
        )
    })?;
    if strategy_tokens.len() != n {
        return Err(err(
            strategies_line.number,
            1,
            ParseErrorKind::WrongValueCount {
                expected: n,
                found: strategy_tokens.len(),
            },
        ));
    }
    let counts = strategy_tokens
        .iter()
        .map(|&t| parse_count(strategies_line.number, t))
        .collect::<Result<Vec<_>, _>>()?;

    let mut labels: Vec<Vec<String>> = Vec::new();
    let mut first_label_line = None;
    while let Some(tokens) = lines.peek().and_then(|l| header(l, "labels")) {
        let line = lines.next().expect("peeked");
        first_label_line.get_or_insert(line.number);
        labels.push(tokens.iter().map(|(_, t)| t.to_string()).collect());
    }
    if !labels.is_empty() && labels.len() != n {
        return Err(err(
            first_label_line.unwrap_or(1),
            1,
            ParseErrorKind::WrongLabelCount {
                expected: n,
                found: labels.len(),
            },
        ));
    }

    let expected_profiles = counts
        .iter()
        .try_fold(1usize, |acc, &c| acc.checked_mul(c))
        .ok_or_else(|| {
            err(
                strategies_line.number,
                1,
                ParseErrorKind::InvalidGame(GameError::TooManyProfiles),
            )
        })?;
    let mut flat = Vec::new();
    let mut found = 0;
    let mut last_payoff_line = strategies_line.number;
    for line in lines {
        found += 1;
        last_payoff_line = line.number;
        if found > expected_profiles {
            continue;
        }
        if line.tokens.len() != n {
            return Err(err(
                line.number,
                line.tokens.get(n).map_or(1, |t| t.0),
                ParseErrorKind::WrongValueCount {
                    expected: n,
                    found: line.tokens.len(),
                },
            ));
        }
        for &(col, tok) in &line.tokens {
            let value = parse_rational(tok).ok_or_else(|| {
                err(
                    line.number,
                    col,
                    ParseErrorKind::InvalidNumber(tok.to_string()),
                )
            })?;
            flat.push(value);
        }
    }
    if found != expected_profiles {
        return Err(err(
            last_payoff_line,
            1,
            ParseErrorKind::WrongPayoffCount {
                expected: expected_profiles,
                found,
            },
        ));
    }
    let mut game =
        Game::from_flat(counts, flat).map_err(|e| err(strategies_line.number, 1, e.into()))?;
    if !labels.is_empty() {
        game = game
            .with_labels(labels)
            .map_err(|e| err(first_label_line.unwrap_or(1), 1, e.into()))?;
    }
    Ok(game)
}

/// Canonical text of a game.
pub fn serialize_game(game: &Game<Rational>) -> String {
    let mut out = String::new();
    writeln!(out, "players: {}", game.player_count()).unwrap();
    writeln!(
        out,
        "strategies: {}",
        game.strategy_counts().iter().join(" ")
    )
    .unwrap();
    if let Some(labels) = game.labels() {
        for names in labels {
            writeln!(out, "labels: {}", names.join(" ")).unwrap();
        }
    }
    for k in 0..game.profile_count() {
        writeln!(
            out,
            "{}",
            game.payoffs_at(k).iter().map(format_rational).join(" ")
        )
        .unwrap();
    }
    out
}
