//! Expected utilities for Newcomb-style problems under causal (CDT),
//! evidential (EDT) and non-Nashian (NNDT) decision theory.
//!
//! The agent takes ONE box (the opaque one) or TWO boxes; the opaque box is
//! FULL or EMPTY depending on a prediction. `accuracy` is the probability
//! the prediction matches the decision.
//!
//! - CDT: `E_a = u(a, FULL) p + u(a, EMPTY) (1 - p)` with `p = prior_full`.
//! - EDT: `E_a = sum_s u(a, s) P(s | a)` with `P(FULL | ONE) = P(EMPTY | TWO) = accuracy`.
//! - NNDT: `E_a = sum_s u(a, s) P(a > s)` with the counterfactual
//!   `P(ONE > FULL) = P(TWO > EMPTY) = accuracy`.
//!
//! EDT and NNDT differ in reading (conditional probability against
//! probability of a counterfactual) but share the same numbers here.

use std::fmt;

use thiserror::Error;

use crate::scalar::Payoff;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    One,
    Two,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::One => "ONE",
            Action::Two => "TWO",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    Cdt,
    Edt,
    Nndt,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Cdt => "cdt",
            Theory::Edt => "edt",
            Theory::Nndt => "nndt",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NewcombError {
    #[error("{name} must lie in [0, 1]")]
    ProbabilityOutOfRange { name: &'static str },
    #[error("the parameter grid is empty")]
    EmptyGrid,
}

/// `u(action, state)` for the four outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct NewcombPayoffs<T> {
    pub one_full: T,
    pub one_empty: T,
    pub two_full: T,
    pub two_empty: T,
}

impl<T: Payoff> NewcombPayoffs<T> {
    /// 1,000,000 in the opaque box, 1,000 in the transparent one.
    pub fn canonical() -> Self {
        // built from one() so every Num type works, whatever its string syntax
        let int = |digits: &str| {
            let ten = (0..10).fold(T::zero(), |acc, _| acc + T::one());
            digits.bytes().fold(T::zero(), |acc, d| {
                (0..d - b'0').fold(acc * ten.clone(), |acc, _| acc + T::one())
            })
        };
        Self {
            one_full: int("1000000"),
            one_empty: T::zero(),
            two_full: int("1001000"),
            two_empty: int("1000"),
        }
    }

    fn of(&self, action: Action) -> (&T, &T) {
        match action {
            Action::One => (&self.one_full, &self.one_empty),
            Action::Two => (&self.two_full, &self.two_empty),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewcombProblem<T> {
    pub payoffs: NewcombPayoffs<T>,
    /// `P(FULL)`, used by CDT.
    pub prior_full: T,
    /// Probability the prediction matches the decision, used by EDT and NNDT.
    pub accuracy: T,
}

impl<T: Payoff> NewcombProblem<T> {
    /// Canonical payoffs, a prior of 1/2 and a perfect predictor.
    pub fn canonical() -> Self {
        let two = T::one() + T::one();
        Self {
            payoffs: NewcombPayoffs::canonical(),
            prior_full: T::one() / two,
            accuracy: T::one(),
        }
    }

    pub fn validate(&self) -> Result<(), NewcombError> {
        check_probability(&self.prior_full, "prior")?;
        check_probability(&self.accuracy, "accuracy")
    }

    /// `(P(FULL), P(EMPTY))` as seen by `theory` after choosing `action`.
    fn state_weights(&self, theory: Theory, action: Action) -> (T, T) {
        let p = match (theory, action) {
            (Theory::Cdt, _) => self.prior_full.clone(),
            (Theory::Edt | Theory::Nndt, Action::One) => self.accuracy.clone(),
            (Theory::Edt | Theory::Nndt, Action::Two) => T::one() - self.accuracy.clone(),
        };
        let q = T::one() - p.clone();
        (p, q)
    }

    pub fn expected_utility(&self, theory: Theory, action: Action) -> T {
        let (full, empty) = self.payoffs.of(action);
        let (p_full, p_empty) = self.state_weights(theory, action);
        full.clone() * p_full + empty.clone() * p_empty
    }
}

fn check_probability<T: Payoff>(p: &T, name: &'static str) -> Result<(), NewcombError> {
    if *p < T::zero() || *p > T::one() {
        Err(NewcombError::ProbabilityOutOfRange { name })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recommendation {
    Take(Action),
    Indifferent,
}

impl fmt::Display for Recommendation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recommendation::Take(a) => write!(f, "{a}"),
            Recommendation::Indifferent => f.write_str("indifferent"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoryVerdict<T> {
    pub theory: Theory,
    pub expected_one: T,
    pub expected_two: T,
    pub recommendation: Recommendation,
}

pub fn expected_utilities<T: Payoff>(
    problem: &NewcombProblem<T>,
    theory: Theory,
) -> Result<TheoryVerdict<T>, NewcombError> {
    problem.validate()?;
    let expected_one = problem.expected_utility(theory, Action::One);
    let expected_two = problem.expected_utility(theory, Action::Two);
    let recommendation = match expected_one.partial_cmp(&expected_two) {
        Some(std::cmp::Ordering::Greater) => Recommendation::Take(Action::One),
        Some(std::cmp::Ordering::Less) => Recommendation::Take(Action::Two),
        _ => Recommendation::Indifferent,
    };
    Ok(TheoryVerdict {
        theory,
        expected_one,
        expected_two,
        recommendation,
    })
}

/// Verdict at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint<T> {
    pub parameter: T,
    pub verdict: TheoryVerdict<T>,
}

/// Evaluates `theory` over a grid, in grid order. The grid varies the prior
/// for CDT and the accuracy for EDT and NNDT.
pub fn recommendation_sweep<T: Payoff>(
    problem: &NewcombProblem<T>,
    theory: Theory,
    grid: &[T],
) -> Result<Vec<SweepPoint<T>>, NewcombError> {
    if grid.is_empty() {
        return Err(NewcombError::EmptyGrid);
    }
    grid.iter()
        .map(|value| {
            let mut point = problem.clone();
            match theory {
                Theory::Cdt => point.prior_full = value.clone(),
                Theory::Edt | Theory::Nndt => point.accuracy = value.clone(),
            }
            Ok(SweepPoint {
                parameter: value.clone(),
                verdict: expected_utilities(&point, theory)?,
            })
        })
        .collect()
}
