//! Shapley value, average game, auxiliary game, MPW value, and the
//! externality-free value.

use num_traits::Zero;

use crate::combo::{enumerate_partitions, ewens_weight, factorial, Partition};
use crate::error::{Error, Result};
use crate::game::{PayoffVector, TuGame, TuxGame};
use crate::restriction::restrict_set;
use crate::Rational;

/// Shapley value by direct subset summation:
/// Sh_i(v) = Σ_{S⊆N∖{i}} s!(n−s−1)!/n! · (v(S∪{i}) − v(S)).
pub fn shapley(v: &TuGame) -> Result<PayoffVector> {
    let players = v.players();
    let n = players.len();
    if n == 0 {
        return Err(Error::TooFewPlayers { need: 1, got: 0 });
    }
    let n_fact = factorial(n);
    Ok(PayoffVector::from_fn(players, |i| {
        let mut total = Rational::zero();
        for s in players.remove(i).subsets() {
            let weight = Rational::new(
                factorial(s.len()) * factorial(n - s.len() - 1),
                n_fact.clone(),
            );
            total += (v.worth(s.insert(i)) - v.worth(s)) * weight;
        }
        total
    }))
}

/// Average game: v̄_w(S) = Σ_{π∈Π(N∖S)} p*(π)·w(S,π).
pub fn average_game(w: &TuxGame) -> Result<TuGame> {
    let players = w.players();
    TuGame::from_fn(players, |s| {
        let mut total = Rational::zero();
        for pi in enumerate_partitions(players.difference(s)).unwrap() {
            total += w.worth_of(s, &pi) * ewens_weight(&pi);
        }
        total
    })
}

/// Auxiliary game: v*_w(S) = w₋(N∖S)(S, ∅), each coalition's worth when all
/// other players have been removed by the restriction operator.
///
/// Computed through the restriction on purpose, independently of
/// [`average_game`], so that their equality is a checkable fact.
pub fn auxiliary_game(w: &TuxGame) -> Result<TuGame> {
    let players = w.players();
    let mut worths = std::collections::HashMap::new();
    for s in players.subsets_canonical() {
        let restricted = restrict_set(w, players.difference(s))?;
        let value = if s.is_empty() {
            Rational::zero()
        } else {
            restricted.worth_of(s, &Partition::empty()).clone()
        };
        worths.insert(s, value);
    }
    TuGame::from_fn(players, |s| worths[&s].clone())
}

/// MPW value: the Shapley value of the average game.
pub fn mpw(w: &TuxGame) -> Result<PayoffVector> {
    shapley(&average_game(w)?)
}

/// Externality-free value: the Shapley value of the TU game that fixes
/// outside players as singletons, v(S) = w(S, singletons of N∖S).
pub fn externality_free_value(w: &TuxGame) -> Result<PayoffVector> {
    let players = w.players();
    let fixed = TuGame::from_fn(players, |s| {
        w.worth_of(s, &Partition::singletons(players.difference(s)))
            .clone()
    })?;
    shapley(&fixed)
}
