//! Sets of strategy profiles, as bit vectors over the lexicographic profile
//! index.

use std::fmt;

use crate::game::{Game, StrategyProfile};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SurvivorSet {
    len: usize,
    words: Vec<u64>,
}

impl SurvivorSet {
    pub fn empty(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = Self {
            len,
            words: vec![u64::MAX; len.div_ceil(64)],
        };
        set.clear_tail();
        set
    }

    /// Every profile of `game`.
    pub fn all<T>(game: &Game<T>) -> Self {
        Self::full(game.profile_count())
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn from_profiles<'a, T>(
        game: &Game<T>,
        profiles: impl IntoIterator<Item = &'a StrategyProfile>,
    ) -> Result<Self, crate::GameError> {
        let mut set = Self::empty(game.profile_count());
        for p in profiles {
            set.insert(game.profile_index(p)?);
        }
        Ok(set)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the underlying profile space.
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        index < self.len && self.words[index / 64] & (1 << (index % 64)) != 0
    }

    /// Panics if `index` is outside the profile space.
    pub fn insert(&mut self, index: usize) {
        assert!(index < self.len, "profile index {index} out of range");
        self.words[index / 64] |= 1 << (index % 64);
    }

    pub fn remove(&mut self, index: usize) {
        if index < self.len {
            self.words[index / 64] &= !(1 << (index % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.len == other.len
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    /// Profile indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + tz)
            })
        })
    }

    pub fn profiles<T>(&self, game: &Game<T>) -> Vec<StrategyProfile> {
        self.iter().map(|k| game.profile_at(k)).collect()
    }
}

impl fmt::Debug for SurvivorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
