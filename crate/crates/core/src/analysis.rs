//! Per-game classification, inclusion checks and mass scanning.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equilibria::{
    hofstadter_equilibrium, individually_rational_set, nash_pure_set, translucent_set,
};
use crate::error::{GameError, SolveError};
use crate::game::{dominates_unchecked, Dominance, Game, StrategyProfile, Tie};
use crate::io::format::serialize_game;
use crate::minimax::{minimax_rationalizable, MinimaxResult};
use crate::pte::{pte_solve, Mode, PteResult};
use crate::sampler::{sample_game, SampleConfig, SampleError};
use crate::survivors::SurvivorSet;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    Symmetric,
    Asymmetric,
    /// Too many players for the permutation check.
    Unsupported,
}

/// A broken inclusion claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "kebab-case")]
pub enum Violation {
    /// More than one profile survives elimination on a game in general position.
    PteNotUnique {
        survivors: usize,
    },
    PteNotParetoOptimal {
        pte: StrategyProfile,
    },
    PteNotIndividuallyRational {
        pte: StrategyProfile,
    },
    NashNotIndividuallyRational {
        nash: StrategyProfile,
    },
    IndividuallyRationalNotTranslucent {
        profile: StrategyProfile,
    },
    PteNotHofstadter {
        pte: StrategyProfile,
        hofstadter: StrategyProfile,
    },
    HofstadterNotIndividuallyRational {
        hofstadter: StrategyProfile,
    },
    HofstadterNotMinimaxRationalizable {
        hofstadter: StrategyProfile,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PteNotUnique { survivors } => {
                write!(
                    f,
                    "{survivors} profiles survive elimination in a game without ties"
                )
            }
            Violation::PteNotParetoOptimal { pte } => write!(f, "PTE {pte} is not Pareto-optimal"),
            Violation::PteNotIndividuallyRational { pte } => {
                write!(f, "PTE {pte} is not individually rational")
            }
            Violation::NashNotIndividuallyRational { nash } => {
                write!(f, "Nash equilibrium {nash} is not individually rational")
            }
            Violation::IndividuallyRationalNotTranslucent { profile } => {
                write!(
                    f,
                    "individually rational profile {profile} is not translucent"
                )
            }
            Violation::PteNotHofstadter { pte, hofstadter } => {
                write!(
                    f,
                    "PTE {pte} differs from the Hofstadter equilibrium {hofstadter}"
                )
            }
            Violation::HofstadterNotIndividuallyRational { hofstadter } => {
                write!(
                    f,
                    "Hofstadter equilibrium {hofstadter} is not individually rational"
                )
            }
            Violation::HofstadterNotMinimaxRationalizable { hofstadter } => {
                write!(
                    f,
                    "Hofstadter equilibrium {hofstadter} is not minimax-rationalizable"
                )
            }
        }
    }
}

/// Every solver's answer on one game.
#[derive(Debug, Clone, PartialEq)]
pub struct GameReport<T> {
    /// `None` when the game is in general position.
    pub tie: Option<Tie>,
    pub symmetry: Symmetry,
    pub nash: Vec<StrategyProfile>,
    pub individually_rational: SurvivorSet,
    pub translucent: SurvivorSet,
    pub minimax: MinimaxResult,
    /// Strict mode on games in general position, lenient otherwise.
    pub pte: PteResult<T>,
    pub pte_mode: Mode,
    pub hofstadter: Result<StrategyProfile, SolveError>,
    pub pareto_optimal: Vec<StrategyProfile>,
    pub social_dilemma: bool,
    pub violations: Vec<Violation>,
}

impl<T> GameReport<T> {
    pub fn general_position(&self) -> bool {
        self.tie.is_none()
    }

    pub fn pte_profile(&self) -> Option<&StrategyProfile> {
        self.pte.outcome.unique()
    }
}

/// Exactly one pure Nash equilibrium, and exactly one profile strictly
/// Pareto-dominating it.
pub fn is_social_dilemma<T: PartialOrd>(game: &Game<T>) -> bool {
    let nash = nash_pure_set(game);
    social_dilemma_from(game, &nash)
}

fn social_dilemma_from<T: PartialOrd>(game: &Game<T>, nash: &[StrategyProfile]) -> bool {
    let [equilibrium] = nash else {
        return false;
    };
    let target = game
        .payoff_vector(equilibrium)
        .expect("Nash profile belongs to the game");
    (0..game.profile_count())
        .filter(|&k| dominates_unchecked(game.payoffs_at(k), target, Dominance::Strict))
        .count()
        == 1
}

/// Runs every solver on `game`. Solver preconditions that fail end up as
/// report fields rather than errors.
pub fn classify<T: PartialOrd + Clone>(game: &Game<T>) -> GameReport<T> {
    let tie = game.general_position_tie();
    let symmetry = match game.is_symmetric() {
        Ok(true) => Symmetry::Symmetric,
        Ok(false) => Symmetry::Asymmetric,
        Err(_) => Symmetry::Unsupported,
    };
    let pte_mode = if tie.is_none() {
        Mode::Strict
    } else {
        Mode::Lenient
    };
    let pte = pte_solve(game, pte_mode).expect("mode matches general position");
    let hofstadter = match symmetry {
        Symmetry::Symmetric => hofstadter_equilibrium(game),
        Symmetry::Asymmetric => Err(SolveError::NotSymmetric),
        Symmetry::Unsupported => Err(SolveError::Game(GameError::TooManyPlayers {
            players: game.player_count(),
            max: crate::game::MAX_SYMMETRY_PLAYERS,
        })),
    };
    let nash = nash_pure_set(game);
    let social_dilemma = social_dilemma_from(game, &nash);
    let mut report = GameReport {
        tie,
        symmetry,
        individually_rational: individually_rational_set(game),
        translucent: translucent_set(game),
        minimax: minimax_rationalizable(game),
        pte,
        pte_mode,
        hofstadter,
        pareto_optimal: game.pareto_optimal_set(),
        social_dilemma,
        nash,
        violations: Vec::new(),
    };
    report.violations = check_inclusions(game, &report);
    report
}

fn check_inclusions<T: PartialOrd>(game: &Game<T>, report: &GameReport<T>) -> Vec<Violation> {
    let mut out = Vec::new();
    let index = |p: &StrategyProfile| game.profile_index(p).expect("profile belongs to the game");
    let general = report.general_position();

    if general && report.pte.fixpoint.len() > 1 {
        out.push(Violation::PteNotUnique {
            survivors: report.pte.fixpoint.len(),
        });
    }
    let pte = report.pte_profile();
    if let Some(pte) = pte {
        if general && !report.pareto_optimal.contains(pte) {
            out.push(Violation::PteNotParetoOptimal { pte: pte.clone() });
        }
        if !report.individually_rational.contains(index(pte)) {
            out.push(Violation::PteNotIndividuallyRational { pte: pte.clone() });
        }
    }
    for nash in &report.nash {
        if !report.individually_rational.contains(index(nash)) {
            out.push(Violation::NashNotIndividuallyRational { nash: nash.clone() });
        }
    }
    for k in report
        .individually_rational
        .difference(&report.translucent)
        .iter()
    {
        out.push(Violation::IndividuallyRationalNotTranslucent {
            profile: game.profile_at(k),
        });
    }
    if let Ok(hofstadter) = &report.hofstadter {
        if let Some(pte) = pte {
            if general && pte != hofstadter {
                out.push(Violation::PteNotHofstadter {
                    pte: pte.clone(),
                    hofstadter: hofstadter.clone(),
                });
            }
        }
        if !report.individually_rational.contains(index(hofstadter)) {
            out.push(Violation::HofstadterNotIndividuallyRational {
                hofstadter: hofstadter.clone(),
            });
        }
        if !report.minimax.is_rationalizable(hofstadter) {
            out.push(Violation::HofstadterNotMinimaxRationalizable {
                hofstadter: hofstadter.clone(),
            });
        }
    }
    out
}

/// Checks the inclusion theorems on one game; empty means all hold.
pub fn verify_inclusions<T: PartialOrd + Clone>(game: &Game<T>) -> Vec<Violation> {
    classify(game).violations
}

/// Aggregate counts over a scan. All counts are at most `games`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanStats {
    pub games: u64,
    pub pte_exists: u64,
    pub pte_not_minimax_rationalizable: u64,
    pub pte_is_nash: u64,
    /// The PTE strictly Pareto-dominates at least one pure Nash equilibrium.
    pub pte_dominates_nash: u64,
    pub social_dilemmas: u64,
    /// Games with at least one violated inclusion claim.
    pub violations: u64,
}

impl ScanStats {
    fn merge(mut self, other: &Self) -> Self {
        self.games += other.games;
        self.pte_exists += other.pte_exists;
        self.pte_not_minimax_rationalizable += other.pte_not_minimax_rationalizable;
        self.pte_is_nash += other.pte_is_nash;
        self.pte_dominates_nash += other.pte_dominates_nash;
        self.social_dilemmas += other.social_dilemmas;
        self.violations += other.violations;
        self
    }

    pub fn pte_fraction(&self) -> f64 {
        ratio(self.pte_exists, self.games)
    }

    /// Share of PTE games whose PTE is not minimax-rationalizable.
    pub fn pte_not_minimax_fraction(&self) -> f64 {
        ratio(self.pte_not_minimax_rationalizable, self.pte_exists)
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CounterexampleKind {
    PteNotMinimaxRationalizable,
    Violation,
}

/// A replayable interesting game: `(seed, index)` regenerates it, `game`
/// carries its payoffs for inspection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub seed: u64,
    pub index: u64,
    pub shape: Vec<usize>,
    pub symmetric: bool,
    pub kind: CounterexampleKind,
    pub pte: Option<StrategyProfile>,
    pub minimax_rows: Vec<Vec<usize>>,
    pub violations: Vec<Violation>,
    pub game: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutput {
    pub config: SampleConfig,
    pub stats: ScanStats,
    /// Sorted by game index.
    pub counterexamples: Vec<CounterexampleRecord>,
}

#[derive(Default)]
struct Partial {
    stats: ScanStats,
    counterexamples: Vec<CounterexampleRecord>,
}

impl Partial {
    fn merge(mut self, other: Self) -> Self {
        self.stats = self.stats.merge(&other.stats);
        self.counterexamples.extend(other.counterexamples);
        self
    }
}

fn rational_game(game: &Game<i64>) -> Game<Rational> {
    game.map(|&v| Rational::from_integer(v.into()))
        .expect("integers are totally ordered")
}

fn scan_one(config: &SampleConfig, index: u64) -> Partial {
    let game = sample_game(config, index).expect("index below count");
    let report = classify(&game);
    let mut stats = ScanStats {
        games: 1,
        social_dilemmas: report.social_dilemma as u64,
        violations: !report.violations.is_empty() as u64,
        ..ScanStats::default()
    };
    let mut not_minimax = false;
    if let Some(pte) = report.pte_profile() {
        stats.pte_exists = 1;
        not_minimax = !report.minimax.is_rationalizable(pte);
        stats.pte_not_minimax_rationalizable = not_minimax as u64;
        stats.pte_is_nash = report.nash.contains(pte) as u64;
        let pte_payoffs = game.payoff_vector(pte).expect("PTE belongs to the game");
        stats.pte_dominates_nash = report.nash.iter().any(|n| {
            dominates_unchecked(
                pte_payoffs,
                game.payoff_vector(n)
                    .expect("Nash profile belongs to the game"),
                Dominance::Strict,
            )
        }) as u64;
    }
    let kind = if !report.violations.is_empty() {
        Some(CounterexampleKind::Violation)
    } else if not_minimax {
        Some(CounterexampleKind::PteNotMinimaxRationalizable)
    } else {
        None
    };
    let counterexamples = kind
        .map(|kind| {
            vec![CounterexampleRecord {
                seed: config.seed,
                index,
                shape: config.shape.clone(),
                symmetric: config.symmetric,
                kind,
                pte: report.pte_profile().cloned(),
                minimax_rows: (0..game.player_count())
                    .map(|p| report.minimax.active.strategies(p))
                    .collect(),
                violations: report.violations.clone(),
                game: serialize_game(&rational_game(&game)),
            }]
        })
        .unwrap_or_default();
    Partial {
        stats,
        counterexamples,
    }
}

/// Samples and classifies `config.count` games on `workers` threads
/// (`None` uses rayon's default). The output does not depend on the worker
/// count.
pub fn scan(config: &SampleConfig, workers: Option<usize>) -> Result<ScanOutput, SampleError> {
    config.validate()?;
    let run = || {
        (0..config.count)
            .into_par_iter()
            .fold(Partial::default, |acc, index| {
                acc.merge(scan_one(config, index))
            })
            .reduce(Partial::default, Partial::merge)
    };
    let partial = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    let mut counterexamples = partial.counterexamples;
    counterexamples.sort_by_key(|r| r.index);
    Ok(ScanOutput {
        config: config.clone(),
        stats: partial.stats,
        counterexamples,
    })
}

/// Regenerates a recorded game and checks that it still has the recorded
/// payoffs and classification.
pub fn replay(record: &CounterexampleRecord) -> Result<bool, SampleError> {
    let config = SampleConfig {
        shape: record.shape.clone(),
        count: record.index + 1,
        seed: record.seed,
        symmetric: record.symmetric,
    };
    let fresh = scan_one(&config, record.index);
    Ok(fresh.counterexamples.first() == Some(record))
}
