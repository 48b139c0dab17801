//! Finite normal-form games.
//!
//! Profiles are enumerated lexicographically with player 0's strategy varying
//! slowest, and every profile set in the crate is indexed that way.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::scalar::{cmp_payoff, is_comparable};

/// Largest player count accepted by [`Game::is_symmetric`] (8! permutations).
pub const MAX_SYMMETRY_PLAYERS: usize = 8;

/// One strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StrategyProfile(Vec<usize>);

impl StrategyProfile {
    pub fn new(choices: Vec<usize>) -> Self {
        Self(choices)
    }

    pub fn choices(&self) -> &[usize] {
        &self.0
    }

    pub fn choice(&self, player: usize) -> usize {
        self.0[player]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every player picks the same strategy.
    pub fn is_diagonal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

impl From<Vec<usize>> for StrategyProfile {
    fn from(choices: Vec<usize>) -> Self {
        Self(choices)
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(", "))
    }
}

/// Weak or strict Pareto dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// Every component at least as large.
    Weak,
    /// Weak, and at least one component strictly larger.
    Strict,
}

/// Pareto comparison of two payoff vectors.
pub fn dominates<T: PartialOrd>(a: &[T], b: &[T], mode: Dominance) -> Result<bool, GameError> {
    if a.len() != b.len() {
        return Err(GameError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(dominates_unchecked(a, b, mode))
}

#[inline]
pub(crate) fn dominates_unchecked<T: PartialOrd>(a: &[T], b: &[T], mode: Dominance) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        match cmp_payoff(x, y) {
            Ordering::Less => return false,
            Ordering::Greater => strictly = true,
            Ordering::Equal => {}
        }
    }
    match mode {
        Dominance::Weak => true,
        Dominance::Strict => strictly,
    }
}

/// Witness that a game is not in general position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tie {
    pub player: usize,
    pub first: StrategyProfile,
    pub second: StrategyProfile,
}

/// A finite game in normal form with payoffs of type `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Game<T> {
    strategy_counts: Vec<usize>,
    strides: Vec<usize>,
    profile_count: usize,
    /// Profile-major: the payoff vector of profile `k` is
    /// `payoffs[k * n .. (k + 1) * n]`.
    payoffs: Vec<T>,
    labels: Option<Vec<Vec<String>>>,
}

impl<T: PartialOrd> Game<T> {
    /// Builds a game from one payoff vector per profile, in lexicographic
    /// profile order.
    pub fn new(strategy_counts: Vec<usize>, payoffs: Vec<Vec<T>>) -> Result<Self, GameError> {
        let n = strategy_counts.len();
        let profile_count = Self::check_counts(&strategy_counts)?;
        if payoffs.len() != profile_count {
            return Err(GameError::PayoffCount {
                expected: profile_count,
                found: payoffs.len(),
            });
        }
        let mut flat = Vec::with_capacity(profile_count * n);
        for (k, vector) in payoffs.into_iter().enumerate() {
            if vector.len() != n {
                return Err(GameError::PayoffLength {
                    profile: k,
                    expected: n,
                    found: vector.len(),
                });
            }
            flat.extend(vector);
        }
        Self::from_flat(strategy_counts, flat)
    }

    /// Builds a game from a flat profile-major payoff buffer.
    pub fn from_flat(strategy_counts: Vec<usize>, payoffs: Vec<T>) -> Result<Self, GameError> {
        let n = strategy_counts.len();
        let profile_count = Self::check_counts(&strategy_counts)?;
        if payoffs.len() != profile_count * n {
            return Err(GameError::PayoffCount {
                expected: profile_count,
                found: payoffs.len() / n,
            });
        }
        if let Some(pos) = payoffs.iter().position(|v| !is_comparable(v)) {
            return Err(GameError::Incomparable {
                profile: pos / n,
                player: pos % n,
            });
        }
        let mut strides = vec![1; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * strategy_counts[i + 1];
        }
        Ok(Self {
            strategy_counts,
            strides,
            profile_count,
            payoffs,
            labels: None,
        })
    }

    /// Two-player game from a matrix of `(row payoff, column payoff)` cells.
    pub fn bimatrix(rows: Vec<Vec<(T, T)>>) -> Result<Self, GameError> {
        let row_count = rows.len();
        let col_count = rows.first().map_or(0, Vec::len);
        let mut flat = Vec::with_capacity(row_count * col_count * 2);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != col_count {
                return Err(GameError::PayoffCount {
                    expected: (r + 1) * col_count,
                    found: r * col_count + row.len(),
                });
            }
            for (a, b) in row {
                flat.push(a);
                flat.push(b);
            }
        }
        Self::from_flat(vec![row_count, col_count], flat)
    }

    fn check_counts(strategy_counts: &[usize]) -> Result<usize, GameError> {
        if strategy_counts.is_empty() {
            return Err(GameError::NoPlayers);
        }
        let mut total: usize = 1;
        for (player, &count) in strategy_counts.iter().enumerate() {
            if count == 0 {
                return Err(GameError::EmptyStrategySpace { player });
            }
            total = total.checked_mul(count).ok_or(GameError::TooManyProfiles)?;
        }
        total
            .checked_mul(strategy_counts.len())
            .ok_or(GameError::TooManyProfiles)?;
        Ok(total)
    }

    /// Attaches strategy names, one list per player.
    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self, GameError> {
        if labels.len() != self.player_count() {
            return Err(GameError::InvalidLabels(format!(
                "{} label lists for {} players",
                labels.len(),
                self.player_count()
            )));
        }
        for (player, names) in labels.iter().enumerate() {
            if names.len() != self.strategy_counts[player] {
                return Err(GameError::InvalidLabels(format!(
                    "player {player} has {} strategies but {} labels",
                    self.strategy_counts[player],
                    names.len()
                )));
            }
            if let Some(bad) = names.iter().find(|s| {
                s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '#' || c == ',')
            }) {
                return Err(GameError::InvalidLabels(format!(
                    "label {bad:?} is not a plain token"
                )));
            }
            if names.iter().duplicates().next().is_some() {
                return Err(GameError::InvalidLabels(format!(
                    "player {player} has duplicate labels"
                )));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Applies `f` to every payoff, keeping shape and labels.
    pub fn map<U: PartialOrd>(&self, f: impl Fn(&T) -> U) -> Result<Game<U>, GameError> {
        let game = Game::from_flat(
            self.strategy_counts.clone(),
            self.payoffs.iter().map(f).collect(),
        )?;
        Ok(Game {
            labels: self.labels.clone(),
            ..game
        })
    }
}

impl<T> Game<T> {
    pub fn player_count(&self) -> usize {
        self.strategy_counts.len()
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.strategy_counts
    }

    pub fn strategy_count(&self, player: usize) -> usize {
        self.strategy_counts[player]
    }

    pub fn profile_count(&self) -> usize {
        self.profile_count
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    /// Display name of a strategy: its label, or its index.
    pub fn strategy_name(&self, player: usize, strategy: usize) -> String {
        match &self.labels {
            Some(labels) => labels[player][strategy].clone(),
            None => strategy.to_string(),
        }
    }

    /// Comma-joined strategy names, e.g. `Cooperate,Defect`.
    pub fn profile_name(&self, profile: &StrategyProfile) -> String {
        profile
            .choices()
            .iter()
            .enumerate()
            .map(|(player, &s)| self.strategy_name(player, s))
            .join(",")
    }

    /// Looks a strategy up by label (or by index when unlabeled).
    pub fn strategy_by_name(&self, player: usize, name: &str) -> Option<usize> {
        match &self.labels {
            Some(labels) => labels.get(player)?.iter().position(|l| l == name),
            None => name
                .parse()
                .ok()
                .filter(|&s| player < self.player_count() && s < self.strategy_counts[player]),
        }
    }

    /// Parses a comma-joined profile name produced by [`Game::profile_name`].
    pub fn profile_by_name(&self, name: &str) -> Option<StrategyProfile> {
        let parts: Vec<&str> = name.split(',').map(str::trim).collect();
        if parts.len() != self.player_count() {
            return None;
        }
        parts
            .iter()
            .enumerate()
            .map(|(player, part)| self.strategy_by_name(player, part))
            .collect::<Option<Vec<_>>>()
            .map(StrategyProfile)
    }

    pub fn check_player(&self, player: usize) -> Result<(), GameError> {
        if player < self.player_count() {
            Ok(())
        } else {
            Err(GameError::PlayerOutOfRange {
                player,
                players: self.player_count(),
            })
        }
    }

    /// Lexicographic index of a profile.
    pub fn profile_index(&self, profile: &StrategyProfile) -> Result<usize, GameError> {
        if profile.len() != self.player_count() {
            return Err(GameError::ProfileLength {
                profile: profile.clone(),
                expected: self.player_count(),
                found: profile.len(),
            });
        }
        let mut index = 0;
        for (player, (&s, &count)) in profile
            .choices()
            .iter()
            .zip(&self.strategy_counts)
            .enumerate()
        {
            if s >= count {
                return Err(GameError::StrategyOutOfRange {
                    player,
                    strategy: s,
                    count,
                });
            }
            index += s * self.strides[player];
        }
        Ok(index)
    }

    /// Profile at a lexicographic index. Panics when out of range.
    pub fn profile_at(&self, index: usize) -> StrategyProfile {
        assert!(index < self.profile_count, "profile index out of range");
        StrategyProfile(
            (0..self.player_count())
                .map(|player| self.choice_at(index, player))
                .collect(),
        )
    }

    /// Strategy of `player` in the profile with the given index.
    #[inline]
    pub fn choice_at(&self, index: usize, player: usize) -> usize {
        (index / self.strides[player]) % self.strategy_counts[player]
    }

    /// Index of the profile obtained by switching `player` to `strategy`.
    #[inline]
    pub fn deviate(&self, index: usize, player: usize, strategy: usize) -> usize {
        let current = self.choice_at(index, player);
        index - current * self.strides[player] + strategy * self.strides[player]
    }

    /// All profiles in lexicographic order.
    pub fn profiles(&self) -> impl Iterator<Item = StrategyProfile> + '_ {
        (0..self.profile_count).map(move |k| self.profile_at(k))
    }

    /// Payoff vector of the profile with the given index.
    #[inline]
    pub fn payoffs_at(&self, index: usize) -> &[T] {
        let n = self.player_count();
        &self.payoffs[index * n..(index + 1) * n]
    }

    #[inline]
    pub fn payoff_at(&self, index: usize, player: usize) -> &T {
        &self.payoffs[index * self.player_count() + player]
    }

    /// `u_player(profile)`.
    pub fn payoff(&self, profile: &StrategyProfile, player: usize) -> Result<&T, GameError> {
        self.check_player(player)?;
        let index = self.profile_index(profile)?;
        Ok(self.payoff_at(index, player))
    }

    pub fn payoff_vector(&self, profile: &StrategyProfile) -> Result<&[T], GameError> {
        let index = self.profile_index(profile)?;
        Ok(self.payoffs_at(index))
    }

    /// Index of the diagonal profile `(s, s, ..., s)`, if every player has `s`.
    pub fn diagonal_index(&self, strategy: usize) -> Option<usize> {
        if self.strategy_counts.iter().any(|&c| strategy >= c) {
            return None;
        }
        Some(self.strides.iter().map(|&stride| stride * strategy).sum())
    }
}

impl<T: PartialOrd + Clone> Game<T> {
    /// Relabels players: player `k` of the result is player `order[k]` of
    /// `self`.
    pub fn permute_players(&self, order: &[usize]) -> Result<Self, GameError> {
        let n = self.player_count();
        if order.len() != n || !order.iter().all_unique() || order.iter().any(|&p| p >= n) {
            return Err(GameError::InvalidPermutation);
        }
        let counts: Vec<usize> = order.iter().map(|&p| self.strategy_counts[p]).collect();
        let template = Game::from_flat(
            counts.clone(),
            vec![self.payoffs[0].clone(); self.payoffs.len()],
        )?;
        let mut flat = Vec::with_capacity(self.payoffs.len());
        for new_index in 0..self.profile_count {
            let mut old = vec![0; n];
            for (k, &p) in order.iter().enumerate() {
                old[p] = template.choice_at(new_index, k);
            }
            let old_index = self
                .profile_index(&StrategyProfile(old))
                .expect("permuted profile is in range");
            for &p in order {
                flat.push(self.payoff_at(old_index, p).clone());
            }
        }
        let game = Game::from_flat(counts, flat)?;
        let labels = self
            .labels
            .as_ref()
            .map(|l| order.iter().map(|&p| l[p].clone()).collect());
        Ok(Game { labels, ..game })
    }
}

impl<T: PartialOrd> Game<T> {
    /// First tie found, scanning players in order. `None` means the game is
    /// in general position.
    pub fn general_position_tie(&self) -> Option<Tie> {
        for player in 0..self.player_count() {
            let mut order: Vec<usize> = (0..self.profile_count).collect();
            order.sort_by(|&a, &b| {
                cmp_payoff(self.payoff_at(a, player), self.payoff_at(b, player)).then(a.cmp(&b))
            });
            for w in order.windows(2) {
                if cmp_payoff(self.payoff_at(w[0], player), self.payoff_at(w[1], player))
                    == Ordering::Equal
                {
                    let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                    return Some(Tie {
                        player,
                        first: self.profile_at(a),
                        second: self.profile_at(b),
                    });
                }
            }
        }
        None
    }

    pub fn is_general_position(&self) -> bool {
        self.general_position_tie().is_none()
    }

    /// Invariance under every permutation of the players.
    pub fn is_symmetric(&self) -> Result<bool, GameError> {
        let n = self.player_count();
        if n > MAX_SYMMETRY_PLAYERS {
            return Err(GameError::TooManyPlayers {
                players: n,
                max: MAX_SYMMETRY_PLAYERS,
            });
        }
        if !self.strategy_counts.iter().all_equal() {
            return Ok(false);
        }
        for perm in (0..n).permutations(n) {
            if perm.iter().enumerate().all(|(k, &p)| k == p) {
                continue;
            }
            for index in 0..self.profile_count {
                // sigma_pi = (sigma_{pi(0)}, ..., sigma_{pi(n-1)})
                let permuted: usize = perm
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| self.choice_at(index, p) * self.strides[k])
                    .sum();
                // player k of the permuted profile stands where player p was
                for (k, &p) in perm.iter().enumerate() {
                    if cmp_payoff(self.payoff_at(index, p), self.payoff_at(permuted, k))
                        != Ordering::Equal
                    {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Profiles whose payoff vector is not strictly dominated by another's.
    pub fn pareto_optimal_set(&self) -> Vec<StrategyProfile> {
        (0..self.profile_count)
            .filter(|&k| {
                !(0..self.profile_count).any(|j| {
                    j != k
                        && dominates_unchecked(
                            self.payoffs_at(j),
                            self.payoffs_at(k),
                            Dominance::Strict,
                        )
                })
            })
            .map(|k| self.profile_at(k))
            .collect()
    }
}
