//! Single-round solution concepts: restricted maximin, individual
//! rationality, pure Nash equilibria, the Hofstadter (superrational)
//! equilibrium and the translucent equilibrium.

use std::cmp::Ordering;

use crate::error::SolveError;
use crate::game::{dominates_unchecked, Dominance, Game, StrategyProfile};
use crate::scalar::{cmp_payoff, max_of};
use crate::survivors::SurvivorSet;

/// Best worst payoff of every player, one entry per player.
pub type MaximinVector<T> = Vec<T>;

fn check_universe<T>(game: &Game<T>, survivors: &SurvivorSet) -> Result<(), SolveError> {
    if survivors.universe() != game.profile_count() {
        return Err(SolveError::SurvivorMismatch {
            expected: game.profile_count(),
            found: survivors.universe(),
        });
    }
    Ok(())
}

/// Per-player, per-strategy minimum payoff over the surviving profiles that
/// use that strategy. `None` marks a strategy with no surviving profile.
pub(crate) fn strategy_minima<'g, T: PartialOrd>(
    game: &'g Game<T>,
    survivors: &SurvivorSet,
) -> Vec<Vec<Option<&'g T>>> {
    let mut minima: Vec<Vec<Option<&T>>> = game
        .strategy_counts()
        .iter()
        .map(|&c| vec![None; c])
        .collect();
    for k in survivors.iter() {
        for (player, slots) in minima.iter_mut().enumerate() {
            let value = game.payoff_at(k, player);
            let slot = &mut slots[game.choice_at(k, player)];
            match slot {
                Some(current) if cmp_payoff(*current, value) != Ordering::Greater => {}
                _ => *slot = Some(value),
            }
        }
    }
    minima
}

/// Maximin of every player restricted to `survivors`: strategies with no
/// surviving profile do not take part in the maximum.
pub fn restricted_maximin<T: PartialOrd + Clone>(
    game: &Game<T>,
    survivors: &SurvivorSet,
) -> Result<MaximinVector<T>, SolveError> {
    check_universe(game, survivors)?;
    if survivors.is_empty() {
        return Err(SolveError::EmptySurvivors);
    }
    Ok(strategy_minima(game, survivors)
        .into_iter()
        .map(|slots| {
            max_of(slots.into_iter().flatten())
                .expect("a nonempty survivor set touches every player")
                .clone()
        })
        .collect())
}

/// Members of `candidates` whose payoff vector weakly dominates `threshold`.
pub(crate) fn keep_dominating<T: PartialOrd>(
    game: &Game<T>,
    candidates: &SurvivorSet,
    threshold: &[T],
) -> SurvivorSet {
    let mut kept = SurvivorSet::empty(game.profile_count());
    for k in candidates.iter() {
        if dominates_unchecked(game.payoffs_at(k), threshold, Dominance::Weak) {
            kept.insert(k);
        }
    }
    kept
}

/// Unrestricted maximin of every player.
pub fn maximin<T: PartialOrd + Clone>(game: &Game<T>) -> MaximinVector<T> {
    restricted_maximin(game, &SurvivorSet::all(game)).expect("the full profile set is never empty")
}

/// Profiles that weakly Pareto-dominate the maximin tuple.
pub fn individually_rational_set<T: PartialOrd + Clone>(game: &Game<T>) -> SurvivorSet {
    let all = SurvivorSet::all(game);
    keep_dominating(game, &all, &maximin(game))
}

/// True if no player gains by a unilateral deviation (weak best response).
pub fn is_pure_nash<T: PartialOrd>(game: &Game<T>, index: usize) -> bool {
    (0..game.player_count()).all(|player| {
        let own = game.payoff_at(index, player);
        (0..game.strategy_count(player)).all(|s| {
            let other = game.payoff_at(game.deviate(index, player, s), player);
            cmp_payoff(own, other) != Ordering::Less
        })
    })
}

/// All pure-strategy Nash equilibria, in profile order.
pub fn nash_pure_set<T: PartialOrd>(game: &Game<T>) -> Vec<StrategyProfile> {
    (0..game.profile_count())
        .filter(|&k| is_pure_nash(game, k))
        .map(|k| game.profile_at(k))
        .collect()
}

/// The diagonal profile with the highest common payoff on a symmetric game.
pub fn hofstadter_equilibrium<T: PartialOrd>(
    game: &Game<T>,
) -> Result<StrategyProfile, SolveError> {
    if !game.is_symmetric()? {
        return Err(SolveError::NotSymmetric);
    }
    let m = game.strategy_count(0);
    let diagonal: Vec<usize> = (0..m)
        .map(|s| {
            game.diagonal_index(s)
                .expect("symmetric games share strategy counts")
        })
        .collect();
    let mut best = 0;
    for s in 1..m {
        if cmp_payoff(
            game.payoff_at(diagonal[s], 0),
            game.payoff_at(diagonal[best], 0),
        ) == Ordering::Greater
        {
            best = s;
        }
    }
    for s in 0..m {
        if s != best
            && cmp_payoff(
                game.payoff_at(diagonal[s], 0),
                game.payoff_at(diagonal[best], 0),
            ) == Ordering::Equal
        {
            return Err(SolveError::DiagonalTies {
                first: s.min(best),
                second: s.max(best),
            });
        }
    }
    Ok(game.profile_at(diagonal[best]))
}

/// Per-player threshold: the second-lowest per-strategy minimum (the lone
/// minimum for a single-strategy player). Duplicated minima count twice.
pub fn translucent_thresholds<T: PartialOrd + Clone>(game: &Game<T>) -> Vec<T> {
    strategy_minima(game, &SurvivorSet::all(game))
        .into_iter()
        .map(|slots| {
            let mut minima: Vec<&T> = slots.into_iter().flatten().collect();
            minima.sort_by(|a, b| cmp_payoff(*a, *b));
            minima[1.min(minima.len() - 1)].clone()
        })
        .collect()
}

/// Profiles giving every player at least their translucent threshold.
pub fn translucent_set<T: PartialOrd + Clone>(game: &Game<T>) -> SurvivorSet {
    let all = SurvivorSet::all(game);
    keep_dominating(game, &all, &translucent_thresholds(game))
}
