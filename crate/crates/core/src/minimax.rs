//! Minimax-rationalizability: iterated deletion of minimax-dominated
//! strategies.
//!
//! A strategy is minimax-dominated when another active strategy of the same
//! player has a worst payoff strictly above its best payoff, both taken over
//! the opponents' active strategies.

use std::cmp::Ordering;

use crate::error::SolveError;
use crate::game::{Game, StrategyProfile};
use crate::scalar::cmp_payoff;

/// Surviving strategies of every player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActiveStrategySets {
    active: Vec<Vec<bool>>,
}

impl ActiveStrategySets {
    pub fn full<T>(game: &Game<T>) -> Self {
        Self {
            active: game
                .strategy_counts()
                .iter()
                .map(|&c| vec![true; c])
                .collect(),
        }
    }

    pub fn is_active(&self, player: usize, strategy: usize) -> bool {
        self.active
            .get(player)
            .and_then(|s| s.get(strategy))
            .copied()
            .unwrap_or(false)
    }

    /// Active strategy indices of `player`, ascending.
    pub fn strategies(&self, player: usize) -> Vec<usize> {
        self.active[player]
            .iter()
            .enumerate()
            .filter_map(|(s, &on)| on.then_some(s))
            .collect()
    }

    pub fn player_count(&self) -> usize {
        self.active.len()
    }

    pub fn remove(&mut self, player: usize, strategy: usize) {
        self.active[player][strategy] = false;
    }

    /// A profile survives when each of its strategies does.
    pub fn contains(&self, profile: &StrategyProfile) -> bool {
        profile.len() == self.active.len()
            && profile
                .choices()
                .iter()
                .enumerate()
                .all(|(player, &s)| self.is_active(player, s))
    }

    fn contains_index<T>(&self, game: &Game<T>, index: usize) -> bool {
        (0..game.player_count()).all(|player| self.active[player][game.choice_at(index, player)])
    }
}

/// (min, max) payoff of every active strategy over active opponent profiles.
fn extremes<'g, T: PartialOrd>(
    game: &'g Game<T>,
    active: &ActiveStrategySets,
) -> Vec<Vec<Option<(&'g T, &'g T)>>> {
    let mut out: Vec<Vec<Option<(&T, &T)>>> = game
        .strategy_counts()
        .iter()
        .map(|&c| vec![None; c])
        .collect();
    for k in 0..game.profile_count() {
        if !active.contains_index(game, k) {
            continue;
        }
        for (player, slots) in out.iter_mut().enumerate() {
            let v = game.payoff_at(k, player);
            let slot = &mut slots[game.choice_at(k, player)];
            *slot = Some(match *slot {
                None => (v, v),
                Some((lo, hi)) => (
                    if cmp_payoff(v, lo) == Ordering::Less {
                        v
                    } else {
                        lo
                    },
                    if cmp_payoff(v, hi) == Ordering::Greater {
                        v
                    } else {
                        hi
                    },
                ),
            });
        }
    }
    out
}

fn dominator<T: PartialOrd>(slots: &[Option<(&T, &T)>], strategy: usize) -> Option<usize> {
    let (_, worst_best) = slots[strategy]?;
    slots.iter().enumerate().find_map(|(u, slot)| {
        let (lo, _) = (*slot)?;
        (u != strategy && cmp_payoff(lo, worst_best) == Ordering::Greater).then_some(u)
    })
}

/// Some active strategy that minimax-dominates `strategy`, lowest index first.
pub fn minimax_dominated<T: PartialOrd>(
    game: &Game<T>,
    active: &ActiveStrategySets,
    player: usize,
    strategy: usize,
) -> Result<Option<usize>, SolveError> {
    game.check_player(player)?;
    if active.player_count() != game.player_count() || !active.is_active(player, strategy) {
        return Err(SolveError::InactiveStrategy { player, strategy });
    }
    Ok(dominator(&extremes(game, active)[player], strategy))
}

/// Every currently minimax-dominated `(player, strategy)` pair.
pub fn dominated_strategies<T: PartialOrd>(
    game: &Game<T>,
    active: &ActiveStrategySets,
) -> Vec<(usize, usize)> {
    let ext = extremes(game, active);
    let mut out = Vec::new();
    for (player, slots) in ext.iter().enumerate() {
        for s in 0..slots.len() {
            if dominator(slots, s).is_some() {
                out.push((player, s));
            }
        }
    }
    out
}

/// Fixpoint of iterated deletion plus the strategies removed per sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimaxResult {
    pub active: ActiveStrategySets,
    pub deletions: Vec<Vec<(usize, usize)>>,
}

impl MinimaxResult {
    pub fn is_rationalizable(&self, profile: &StrategyProfile) -> bool {
        self.active.contains(profile)
    }
}

/// Batch deletion: every sweep removes all currently dominated strategies of
/// all players at once.
pub fn minimax_rationalizable<T: PartialOrd>(game: &Game<T>) -> MinimaxResult {
    let mut active = ActiveStrategySets::full(game);
    let mut deletions = Vec::new();
    loop {
        let batch = dominated_strategies(game, &active);
        if batch.is_empty() {
            break;
        }
        for &(player, s) in &batch {
            active.remove(player, s);
        }
        deletions.push(batch);
    }
    MinimaxResult { active, deletions }
}

/// Deletes one dominated strategy at a time; `pick` chooses which one from
/// the current candidates (it gets a nonempty slice and returns an index
/// into it).
pub fn minimax_rationalizable_by<T: PartialOrd>(
    game: &Game<T>,
    mut pick: impl FnMut(&[(usize, usize)]) -> usize,
) -> ActiveStrategySets {
    let mut active = ActiveStrategySets::full(game);
    loop {
        let candidates = dominated_strategies(game, &active);
        if candidates.is_empty() {
            return active;
        }
        let (player, s) = candidates[pick(&candidates) % candidates.len()];
        active.remove(player, s);
    }
}
