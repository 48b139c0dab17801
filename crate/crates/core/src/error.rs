use thiserror::Error;

use crate::game::StrategyProfile;

/// Errors raised while building or querying a [`Game`](crate::Game).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("player {player} has no strategies")]
    EmptyStrategySpace { player: usize },
    #[error("the profile space is too large to enumerate")]
    TooManyProfiles,
    #[error("expected {expected} payoff vectors, found {found}")]
    PayoffCount { expected: usize, found: usize },
    #[error("payoff vector #{profile} has {found} entries, expected {expected}")]
    PayoffLength {
        profile: usize,
        expected: usize,
        found: usize,
    },
    #[error("payoff of player {player} in payoff vector #{profile} is not comparable")]
    Incomparable { profile: usize, player: usize },
    #[error("player index {player} out of range for a {players}-player game")]
    PlayerOutOfRange { player: usize, players: usize },
    #[error("profile {profile} has {found} entries, expected {expected}")]
    ProfileLength {
        profile: StrategyProfile,
        expected: usize,
        found: usize,
    },
    #[error("strategy {strategy} out of range for player {player} ({count} strategies)")]
    StrategyOutOfRange {
        player: usize,
        strategy: usize,
        count: usize,
    },
    #[error("payoff vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("symmetry checks support at most {max} players, game has {players}")]
    TooManyPlayers { players: usize, max: usize },
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("invalid player permutation")]
    InvalidPermutation,
}

/// Errors raised by the solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("the survivor set is empty")]
    EmptySurvivors,
    #[error("survivor set covers {found} profiles, the game has {expected}")]
    SurvivorMismatch { expected: usize, found: usize },
    #[error("the game is not symmetric")]
    NotSymmetric,
    #[error("diagonal payoffs tie between strategies {first} and {second}")]
    DiagonalTies { first: usize, second: usize },
    #[error("game is not in general position: player {player} is indifferent between {first} and {second}")]
    GeneralPositionViolation {
        player: usize,
        first: StrategyProfile,
        second: StrategyProfile,
    },
    #[error("strategy {strategy} of player {player} is not active")]
    InactiveStrategy { player: usize, strategy: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}
