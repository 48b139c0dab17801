//! Solution concepts for finite normal-form games: Perfectly Transparent
//! Equilibrium, Nash, individual rationality, translucent and Hofstadter
//! equilibria, minimax-rationalizability, plus a Newcomb calculator and a
//! seeded random-game scanner.
//!
//! Solvers are generic over the payoff type (any [`Payoff`]); the aliases
//! below fix the common choices.
//!
//! ```
//! use pte_core::{pte_solve, Mode, IntGame, StrategyProfile};
//!
//! let pd = IntGame::bimatrix(vec![vec![(1, 1), (3, 0)], vec![(0, 3), (2, 2)]]).unwrap();
//! let result = pte_solve(&pd, Mode::Strict).unwrap();
//! assert_eq!(result.outcome.unique(), Some(&StrategyProfile::new(vec![1, 1])));
//! ```

pub mod analysis;
pub mod corpus;
pub mod equilibria;
pub mod error;
pub mod game;
pub mod io;
pub mod minimax;
pub mod newcomb;
pub mod number;
pub mod pte;
pub mod sampler;
pub mod scalar;
pub mod survivors;

pub use analysis::{
    classify, is_social_dilemma, replay, scan, verify_inclusions, CounterexampleKind,
    CounterexampleRecord, GameReport, ScanOutput, ScanStats, Symmetry, Violation,
};
pub use equilibria::{
    hofstadter_equilibrium, individually_rational_set, is_pure_nash, maximin, nash_pure_set,
    restricted_maximin, translucent_set, translucent_thresholds, MaximinVector,
};
pub use error::{GameError, SolveError};
pub use game::{dominates, Dominance, Game, StrategyProfile, Tie};
pub use io::{parse_game, serialize_game, ParseError};
pub use minimax::{
    dominated_strategies, minimax_dominated, minimax_rationalizable, minimax_rationalizable_by,
    ActiveStrategySets, MinimaxResult,
};
pub use newcomb::{
    expected_utilities, recommendation_sweep, Action, NewcombError, NewcombPayoffs, NewcombProblem,
    Recommendation, SweepPoint, Theory, TheoryVerdict,
};
pub use number::{format_rational, parse_rational};
pub use pte::{elimination_round, pte_solve, EliminationTrace, Mode, PteOutcome, PteResult, Round};
pub use sampler::{sample_game, sample_symmetric_game, SampleConfig, SampleError};
pub use scalar::Payoff;
pub use survivors::SurvivorSet;

/// Exact rational payoffs.
pub type Rational = num_rational::BigRational;
pub type RationalGame = Game<Rational>;
pub type IntGame = Game<i64>;
pub type F64Game = Game<f64>;
