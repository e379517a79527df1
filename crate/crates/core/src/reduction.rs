//! Sobolev and Hart–Mas-Colell reduced games, for TU and TUX games.
//!
//! Every reduced game stays a valid game: the raw HM formula can be nonzero
//! at S = ∅, but those entries are clamped to 0 by construction. No
//! consistency check ever evaluates them.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::combo::{Coalition, PlayerId};
use crate::error::{Error, Result};
use crate::game::{TuGame, TuxGame};
use crate::restriction::restrict_set;
use crate::solution::{SolutionConcept, TuSolution};
use crate::Rational;

fn require_at_least(n: usize, need: usize) -> Result<()> {
    if n < need {
        Err(Error::TooFewPlayers { need, got: n })
    } else {
        Ok(())
    }
}

fn require_member(players: Coalition, j: PlayerId) -> Result<()> {
    if players.contains(j) {
        Ok(())
    } else {
        Err(Error::PlayerNotInGround {
            player: j,
            ground: players,
        })
    }
}

/// Sobolev reduced TU game:
/// v₋ⱼ(S) = (s/(n−1))·(v(S∪{j}) − φⱼ(v)) + (1 − s/(n−1))·v(S).
pub fn sobolev_reduce_tu(v: &TuGame, j: PlayerId, phi: &dyn TuSolution) -> Result<TuGame> {
    let n = v.num_players();
    require_at_least(n, 2)?;
    require_member(v.players(), j)?;
    let payoff_j = phi.evaluate(v)?.get(j).clone();
    TuGame::from_fn(v.players().remove(j), |s| {
        let fraction = Rational::from_integer(s.len().into())
            / Rational::from_integer((n - 1).into());
        let with_j = v.worth(s.insert(j)) - &payoff_j;
        let without = v.worth(s).clone();
        &fraction * with_j + (Rational::one() - fraction) * without
    })
}

/// Sobolev reduced TUX game:
/// w₋ⱼ(S,π) = (s/(n−1))·(w(S∪{j},π) − φⱼ(w)) + (1 − s/(n−1))·w₋ⱼ(S,π),
/// with w₋ⱼ the restriction subgame.
pub fn sobolev_reduce_tux(
    w: &TuxGame,
    j: PlayerId,
    phi: &dyn SolutionConcept,
) -> Result<TuxGame> {
    let n = w.num_players();
    require_at_least(n, 2)?;
    require_member(w.players(), j)?;
    let payoff_j = phi.evaluate(w)?.get(j).clone();
    let subgame = crate::restriction::restrict_one(w, j)?;
    TuxGame::from_fn(w.players().remove(j), |key| {
        let fraction = Rational::from_integer(key.coalition.len().into())
            / Rational::from_integer((n - 1).into());
        let with_j = w.worth_of(key.coalition.insert(j), &key.outside) - &payoff_j;
        let without = subgame.worth(key).clone();
        &fraction * with_j + (Rational::one() - fraction) * without
    })
}

/// Hart–Mas-Colell reduced TU game:
/// v₋ⱼ(S) = v(S∪{j}) − φⱼ(v₋_{N∖(S∪{j})}).
pub fn hm_reduce_tu(v: &TuGame, j: PlayerId, phi: &dyn TuSolution) -> Result<TuGame> {
    let n = v.num_players();
    require_at_least(n, 2)?;
    require_member(v.players(), j)?;
    let mut payoffs: HashMap<Coalition, Rational> = HashMap::new();
    for s in v.players().remove(j).subsets() {
        if s.is_empty() {
            continue; // clamped below
        }
        let keep = s.insert(j);
        let subgame = v.remove_players(v.players().difference(keep))?;
        payoffs.insert(s, phi.evaluate(&subgame)?.get(j).clone());
    }
    TuGame::from_fn(v.players().remove(j), |s| {
        if s.is_empty() {
            return Rational::zero();
        }
        v.worth(s.insert(j)) - &payoffs[&s]
    })
}

/// Hart–Mas-Colell reduced TUX game:
/// w₋ⱼ(S,π) = w(S∪{j},π) − φⱼ(w₋_{N∖(S∪{j})}).
pub fn hm_reduce_tux(w: &TuxGame, j: PlayerId, phi: &dyn SolutionConcept) -> Result<TuxGame> {
    set_hm_reduce_tux(w, Coalition::singleton(j), phi)
}

/// Set Hart–Mas-Colell reduced TUX game for a removed coalition T ⊊ N:
/// w₋T(S,π) = w(S∪T,π) − Σ_{j∈T} φⱼ(w₋_{N∖(S∪T)}).
///
/// With T = {j} this is exactly the single-player HM reduction.
pub fn set_hm_reduce_tux(
    w: &TuxGame,
    t: Coalition,
    phi: &dyn SolutionConcept,
) -> Result<TuxGame> {
    let players = w.players();
    if !t.is_subset_of(players) {
        return Err(Error::OutsidePlayerSet {
            what: format!("{t}"),
            players,
        });
    }
    if t == players {
        return Err(Error::RemoveAll);
    }
    if !t.is_empty() {
        require_at_least(players.len(), 2)?;
    }
    // φ on the subgame w₋_{N∖(S∪T)} depends only on S, so evaluate it once
    // per coalition of the reduced game.
    let mut compensation: HashMap<Coalition, Rational> = HashMap::new();
    for s in players.difference(t).subsets() {
        if s.is_empty() {
            continue; // clamped below
        }
        let keep = s.union(t);
        let subgame = restrict_set(w, players.difference(keep))?;
        let payoffs = phi.evaluate(&subgame)?;
        let total = t
            .iter()
            .fold(Rational::zero(), |acc, j| acc + payoffs.get(j));
        compensation.insert(s, total);
    }
    TuxGame::from_fn(players.difference(t), |key| {
        w.worth_of(key.coalition.union(t), &key.outside) - &compensation[&key.coalition]
    })
}
