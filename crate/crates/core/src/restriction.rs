//! The restriction operator producing subgames of TUX games.
//!
//! Removing a player averages over that player's possible affiliations with
//! the outside blocks (joining a block with probability proportional to its
//! size, staying alone otherwise). Set removal iterates single removals;
//! path independence of the order is covered by tests, not assumed.

use num_traits::Zero;

use crate::combo::{add_player, ewens_weight, remove_players, Coalition, EmbeddedCoalition, PlayerId};
use crate::error::{Error, Result};
use crate::game::TuxGame;
use crate::Rational;

/// Subgame w₋ᵢ on N∖{i}:
/// w₋ᵢ(S,π) = (1/(n−s))·[w(S, π₊ᵢ⇝∅) + Σ_{j∈N∖(S∪{i})} w(S, π₊ᵢ⇝π(j))].
///
/// Removing the only player of a one-player game yields the degenerate
/// empty game.
pub fn restrict_one(w: &TuxGame, i: PlayerId) -> Result<TuxGame> {
    let players = w.players();
    if !players.contains(i) {
        return Err(Error::PlayerNotInGround {
            player: i,
            ground: players,
        });
    }
    let n = players.len();
    TuxGame::from_fn(players.remove(i), |key| {
        let s = key.coalition.len();
        // i joins as a singleton, or joins the block of each outside player j
        // (each of the n−s−1 outside players equally likely, plus the
        // singleton option).
        let singleton = add_player(&key.outside, i, None).unwrap();
        let mut total = w.worth_of(key.coalition, &singleton).clone();
        for block in key.outside.blocks() {
            let joined = add_player(&key.outside, i, Some(*block)).unwrap();
            total += w.worth_of(key.coalition, &joined) * Rational::from_integer(block.len().into());
        }
        total / Rational::from_integer((n - s).into())
    })
}

/// Iterated single removal of every player in `T`, in ascending order.
pub fn restrict_set(w: &TuxGame, t: Coalition) -> Result<TuxGame> {
    if !t.is_subset_of(w.players()) {
        return Err(Error::OutsidePlayerSet {
            what: format!("{t}"),
            players: w.players(),
        });
    }
    let mut current = w.clone();
    for p in t.iter() {
        current = restrict_one(&current, p)?;
    }
    Ok(current)
}

/// Direct evaluation of the iterated restriction at a single embedded
/// coalition (R, ρ) ∈ E(N∖S):
///
/// w₋S(R,ρ) = Σ_{τ∈Π(N∖R): τ₋S=ρ} [p*_{N∖R}(τ) / p*_{(N∖S)∖R}(ρ)]·w(R,τ).
///
/// Serves as an independent cross-check of [`restrict_set`].
pub fn restrict_direct(w: &TuxGame, s: Coalition, target: &EmbeddedCoalition) -> Result<Rational> {
    let players = w.players();
    if !s.is_subset_of(players) {
        return Err(Error::OutsidePlayerSet {
            what: format!("{s}"),
            players,
        });
    }
    let remaining = players.difference(s);
    if !target.coalition.is_subset_of(remaining)
        || target.ground() != remaining
    {
        return Err(Error::InvalidEntry {
            key: format!("{target}"),
        });
    }
    let rho_weight = ewens_weight(&target.outside);
    let mut total = Rational::zero();
    for tau in crate::combo::enumerate_partitions(players.difference(target.coalition))? {
        if remove_players(&tau, s)? != target.outside {
            continue;
        }
        total += w.worth_of(target.coalition, &tau) * (ewens_weight(&tau) / &rho_weight);
    }
    Ok(total)
}
