//! Scalar payoff types.
//!
//! Every solver in this crate only ever compares payoffs, so it is written
//! against [`Payoff`] rather than a concrete number type. Exact rationals are
//! the default for games read from text; sampled games use `i64`; `f64` works
//! as long as no NaN sneaks in (game construction rejects it).

use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::Num;

/// A payoff value: an ordered number that is cheap enough to clone.
pub trait Payoff: Num + Clone + PartialOrd + Debug + Send + Sync {}

impl<T> Payoff for T where T: Num + Clone + PartialOrd + Debug + Send + Sync {}

/// Total comparison for values already checked to be self-comparable.
#[inline]
pub(crate) fn cmp_payoff<T: PartialOrd>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b)
        .expect("payoff values are validated as totally ordered")
}

/// True if `value` compares equal to itself (rules out NaN-like values).
#[inline]
pub(crate) fn is_comparable<T: PartialOrd>(value: &T) -> bool {
    value.partial_cmp(value).is_some()
}

pub(crate) fn max_of<'a, T: PartialOrd + 'a>(
    values: impl IntoIterator<Item = &'a T>,
) -> Option<&'a T> {
    values
        .into_iter()
        .fold(None, |acc: Option<&T>, v| match acc {
            Some(m) if cmp_payoff(m, v) != Ordering::Less => Some(m),
            _ => Some(v),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_picks_the_largest() {
        let v = [3i64, -1, 7, 2];
        assert_eq!(max_of(&v), Some(&7));
        assert_eq!(max_of::<i64>(&[]), None);
    }

    #[test]
    fn nan_is_not_comparable() {
        assert!(!is_comparable(&f64::NAN));
        assert!(is_comparable(&1.5f64));
    }
}
