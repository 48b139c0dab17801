//! Perfectly Transparent Equilibrium: iterated elimination of preempted
//! strategy profiles.
//!
//! Each round computes the maximin of every player restricted to the profiles
//! still alive, then keeps the survivors whose payoff vector weakly
//! Pareto-dominates that tuple. Rounds repeat until nothing is eliminated or
//! nothing is left. Under general position the fixpoint holds at most one
//! profile.

use crate::equilibria::{keep_dominating, restricted_maximin, MaximinVector};
use crate::error::SolveError;
use crate::game::{Game, StrategyProfile};
use crate::survivors::SurvivorSet;

/// How to treat games with ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Reject games that are not in general position.
    #[default]
    Strict,
    /// Accept ties; the fixpoint may then hold several profiles.
    Lenient,
}

/// One elimination round.
#[derive(Debug, Clone, PartialEq)]
pub struct Round<T> {
    /// Profiles alive when the round starts.
    pub survivors: SurvivorSet,
    /// Maximin tuple restricted to `survivors`.
    pub maximin: MaximinVector<T>,
    /// Profiles removed in this round, in profile order.
    pub eliminated: Vec<StrategyProfile>,
}

/// Rounds in order. The last round either eliminates nothing (a nonempty
/// fixpoint) or eliminates every remaining profile.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationTrace<T> {
    pub rounds: Vec<Round<T>>,
}

impl<T> EliminationTrace<T> {
    /// Maximin tuples in round order.
    pub fn maximins(&self) -> impl Iterator<Item = &MaximinVector<T>> {
        self.rounds.iter().map(|r| &r.maximin)
    }

    /// Rounds that removed at least one profile.
    pub fn eliminating_rounds(&self) -> impl Iterator<Item = &Round<T>> {
        self.rounds.iter().filter(|r| !r.eliminated.is_empty())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PteOutcome {
    Unique(StrategyProfile),
    NoEquilibrium,
    /// More than one profile survives; only reachable on games with ties.
    AmbiguousSet(Vec<StrategyProfile>),
}

impl PteOutcome {
    pub fn unique(&self) -> Option<&StrategyProfile> {
        match self {
            PteOutcome::Unique(p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PteResult<T> {
    pub outcome: PteOutcome,
    pub trace: EliminationTrace<T>,
    /// Profiles alive at the fixpoint.
    pub fixpoint: SurvivorSet,
}

/// One round: the survivors that weakly dominate the restricted maximin.
pub fn elimination_round<T: PartialOrd + Clone>(
    game: &Game<T>,
    survivors: &SurvivorSet,
) -> Result<SurvivorSet, SolveError> {
    let threshold = restricted_maximin(game, survivors)?;
    Ok(keep_dominating(game, survivors, &threshold))
}

/// Iterates [`elimination_round`] from the full profile set to its fixpoint.
pub fn pte_solve<T: PartialOrd + Clone>(
    game: &Game<T>,
    mode: Mode,
) -> Result<PteResult<T>, SolveError> {
    if mode == Mode::Strict {
        if let Some(tie) = game.general_position_tie() {
            return Err(SolveError::GeneralPositionViolation {
                player: tie.player,
                first: tie.first,
                second: tie.second,
            });
        }
    }
    let mut survivors = SurvivorSet::all(game);
    let mut rounds = Vec::new();
    loop {
        let maximin = restricted_maximin(game, &survivors)?;
        let next = keep_dominating(game, &survivors, &maximin);
        let eliminated = survivors.difference(&next).profiles(game);
        let done = eliminated.is_empty() || next.is_empty();
        rounds.push(Round {
            survivors,
            maximin,
            eliminated,
        });
        survivors = next;
        if done {
            break;
        }
    }
    let outcome = match survivors.len() {
        0 => PteOutcome::NoEquilibrium,
        1 => PteOutcome::Unique(survivors.profiles(game).remove(0)),
        _ => PteOutcome::AmbiguousSet(survivors.profiles(game)),
    };
    Ok(PteResult {
        outcome,
        trace: EliminationTrace { rounds },
        fixpoint: survivors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> StrategyProfile {
        StrategyProfile::new(v.to_vec())
    }

    fn pd() -> Game<i64> {
        Game::bimatrix(vec![vec![(1, 1), (3, 0)], vec![(0, 3), (2, 2)]]).unwrap()
    }

    #[test]
    fn prisoners_dilemma_walkthrough() {
        let g = pd();
        let s1 = elimination_round(&g, &SurvivorSet::all(&g)).unwrap();
        assert_eq!(s1.profiles(&g), vec![p(&[0, 0]), p(&[1, 1])]);
        let s2 = elimination_round(&g, &s1).unwrap();
        assert_eq!(s2.profiles(&g), vec![p(&[1, 1])]);

        let result = pte_solve(&g, Mode::Strict).unwrap();
        assert_eq!(result.outcome, PteOutcome::Unique(p(&[1, 1])));
        let maximins: Vec<_> = result.trace.maximins().cloned().collect();
        assert_eq!(maximins, vec![vec![1, 1], vec![2, 2], vec![2, 2]]);
        assert_eq!(
            result.trace.rounds[0].eliminated,
            vec![p(&[0, 1]), p(&[1, 0])]
        );
        assert_eq!(result.trace.rounds[1].eliminated, vec![p(&[0, 0])]);
        assert!(result.trace.rounds[2].eliminated.is_empty());
    }

    #[test]
    fn chicken_has_no_equilibrium() {
        let g = Game::bimatrix(vec![vec![(0i64, 0), (3, 1)], vec![(1, 3), (2, 2)]]).unwrap();
        let result = pte_solve(&g, Mode::Strict).unwrap();
        assert_eq!(result.outcome, PteOutcome::NoEquilibrium);
        let maximins: Vec<_> = result.trace.maximins().cloned().collect();
        assert_eq!(maximins, vec![vec![1, 1], vec![3, 3]]);
        assert_eq!(result.trace.rounds[1].eliminated.len(), 3);
        assert!(result.fixpoint.is_empty());
    }

    #[test]
    fn strict_mode_rejects_ties() {
        let g = Game::bimatrix(vec![vec![(1i64, 1), (0, 0)], vec![(0, 0), (2, 2)]]).unwrap();
        assert!(matches!(
            pte_solve(&g, Mode::Strict),
            Err(SolveError::GeneralPositionViolation { player: 0, .. })
        ));
        let lenient = pte_solve(&g, Mode::Lenient).unwrap();
        assert_eq!(
            lenient.outcome,
            PteOutcome::AmbiguousSet(g.profiles().collect())
        );
        assert_eq!(lenient.trace.rounds.len(), 1);
    }

    #[test]
    fn round_rejects_empty_input() {
        let g = pd();
        assert_eq!(
            elimination_round(&g, &SurvivorSet::empty(4)),
            Err(SolveError::EmptySurvivors)
        );
    }

    #[test]
    fn single_profile_game() {
        let g = Game::new(vec![1, 1], vec![vec![3i64, 4]]).unwrap();
        let result = pte_solve(&g, Mode::Strict).unwrap();
        assert_eq!(result.outcome, PteOutcome::Unique(p(&[0, 0])));
        assert_eq!(result.trace.rounds.len(), 1);
    }
}
