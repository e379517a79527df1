//! Evaluable solution concepts.
//!
//! Reduced games are parameterized by a solution evaluated on subgames, so a
//! solution must be a rule applicable to any game within the cap, not a
//! payoff table for one game. A user-supplied table is still possible via
//! [`Tabulated`], which raises a coverage error when asked about a game it
//! does not know.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::game::{PayoffVector, TuGame, TuxGame};
use crate::values;
use crate::Rational;

/// A solution for TUX games: maps any game to a payoff vector keyed by that
/// game's player set.
pub trait SolutionConcept: Sync {
    fn name(&self) -> &str;
    fn evaluate(&self, w: &TuxGame) -> Result<PayoffVector>;
}

/// Shapley value of the Ewens-average game.
pub struct Mpw;

impl SolutionConcept for Mpw {
    fn name(&self) -> &str {
        "mpw"
    }

    fn evaluate(&self, w: &TuxGame) -> Result<PayoffVector> {
        values::mpw(w)
    }
}

/// Shapley value of the TU game with outsiders fixed as singletons.
pub struct ExternalityFree;

impl SolutionConcept for ExternalityFree {
    fn name(&self) -> &str {
        "ext-free"
    }

    fn evaluate(&self, w: &TuxGame) -> Result<PayoffVector> {
        values::externality_free_value(w)
    }
}

/// Splits the grand-coalition worth equally. Efficient by construction,
/// useful as a negative control in axiom checks.
pub struct EgalitarianSplit;

impl SolutionConcept for EgalitarianSplit {
    fn name(&self) -> &str {
        "egalitarian"
    }

    fn evaluate(&self, w: &TuxGame) -> Result<PayoffVector> {
        let n = w.num_players();
        if n == 0 {
            return Err(Error::TooFewPlayers { need: 1, got: 0 });
        }
        let share = w.grand_worth() / Rational::from_integer(n.into());
        Ok(PayoffVector::from_fn(w.players(), |_| share.clone()))
    }
}

/// A user-tabulated solution: payoffs for an explicit family of games.
///
/// Consistency checks evaluate the solution on restrictions of the input,
/// so the table must cover a family closed under restriction; otherwise a
/// coverage error is raised.
pub struct Tabulated {
    name: String,
    table: HashMap<TuxGame, PayoffVector>,
}

impl Tabulated {
    pub fn new(name: impl Into<String>, table: HashMap<TuxGame, PayoffVector>) -> Self {
        Tabulated {
            name: name.into(),
            table,
        }
    }
}

impl SolutionConcept for Tabulated {
    fn name(&self) -> &str {
        &self.name
    }

    fn evaluate(&self, w: &TuxGame) -> Result<PayoffVector> {
        self.table.get(w).cloned().ok_or(Error::Coverage)
    }
}

/// Caching wrapper; consistency checks evaluate the same subgames many
/// times over.
pub struct Memoized<S> {
    inner: S,
    cache: Mutex<HashMap<TuxGame, PayoffVector>>,
}

impl<S: SolutionConcept> Memoized<S> {
    pub fn new(inner: S) -> Self {
        Memoized {
            inner,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl<S: SolutionConcept> SolutionConcept for Memoized<S> {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn evaluate(&self, w: &TuxGame) -> Result<PayoffVector> {
        if let Some(hit) = self.cache.lock().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let out = self.inner.evaluate(w)?;
        self.cache.lock().unwrap().insert(w.clone(), out.clone());
        Ok(out)
    }
}

/// A solution for TU games, used by the TU-side reduced games.
pub trait TuSolution: Sync {
    fn name(&self) -> &str;
    fn evaluate(&self, v: &TuGame) -> Result<PayoffVector>;
}

/// The Shapley value as a [`TuSolution`].
pub struct ShapleyValue;

impl TuSolution for ShapleyValue {
    fn name(&self) -> &str {
        "shapley"
    }

    fn evaluate(&self, v: &TuGame) -> Result<PayoffVector> {
        values::shapley(v)
    }
}

impl SolutionConcept for PayoffVector {
    fn name(&self) -> &str {
        "fixed-payoff"
    }

    /// A single payoff vector acts as a solution only for games on its own
    /// player set; anything else is a coverage error.
    fn evaluate(&self, w: &TuxGame) -> Result<PayoffVector> {
        if w.players() == self.players() {
            Ok(self.clone())
        } else {
            Err(Error::Coverage)
        }
    }
}

/// A solution perturbed on one player, breaking efficiency. Negative-control
/// helper for the axiom checkers.
pub struct Perturbed<S> {
    inner: S,
    offset: Rational,
}

impl<S: SolutionConcept> Perturbed<S> {
    pub fn new(inner: S, offset: Rational) -> Self {
        Perturbed { inner, offset }
    }
}

impl<S: SolutionConcept> SolutionConcept for Perturbed<S> {
    fn name(&self) -> &str {
        "perturbed"
    }

    fn evaluate(&self, w: &TuxGame) -> Result<PayoffVector> {
        let base = self.inner.evaluate(w)?;
        let first = w.players().min_member();
        Ok(PayoffVector::from_fn(w.players(), |p| {
            if Some(p) == first && !self.offset.is_zero() {
                base.get(p) + &self.offset
            } else {
                base.get(p).clone()
            }
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::maskin_public_goods;
    use num_bigint::BigInt;

    #[test]
    fn egalitarian_split_is_equal_and_efficient() {
        let w = maskin_public_goods();
        let p = EgalitarianSplit.evaluate(&w).unwrap();
        let eight = Rational::from_integer(BigInt::from(8));
        for (_, v) in p.iter() {
            assert_eq!(v, &eight);
        }
        assert_eq!(&p.total(), w.grand_worth());
    }

    #[test]
    fn tabulated_coverage_error() {
        let w = maskin_public_goods();
        let solution = Tabulated::new("table", HashMap::new());
        assert_eq!(solution.evaluate(&w).unwrap_err(), Error::Coverage);

        let mut table = HashMap::new();
        table.insert(w.clone(), Mpw.evaluate(&w).unwrap());
        let solution = Tabulated::new("table", table);
        assert_eq!(solution.evaluate(&w).unwrap(), Mpw.evaluate(&w).unwrap());
    }

    #[test]
    fn memoized_matches_inner() {
        let w = maskin_public_goods();
        let memo = Memoized::new(Mpw);
        assert_eq!(memo.evaluate(&w).unwrap(), Mpw.evaluate(&w).unwrap());
        assert_eq!(memo.evaluate(&w).unwrap(), Mpw.evaluate(&w).unwrap());
    }
}
