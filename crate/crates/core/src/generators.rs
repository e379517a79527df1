//! Worked example games and seeded random games for the property suites.
//!
//! Generated games use player indices 1..=n so the two textbook examples
//! read exactly like their published tables.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combo::Coalition;
use crate::error::{Error, Result};
use crate::game::TuxGame;
use crate::Rational;

fn players_one_to(n: usize) -> Coalition {
    (1..=n).collect()
}

/// Cournot oligopoly with `n` symmetric firms; `scale` is the demand/cost
/// constant (A−c)². With |π| cartels in total, every cartel earns
/// scale/(|π|+1)², so an embedded coalition (S, ρ) is worth
/// scale/(|ρ|+2)².
pub fn cournot_game(n: usize, scale: Rational) -> Result<TuxGame> {
    if n < 2 {
        return Err(Error::TooFewPlayers { need: 2, got: n });
    }
    crate::combo::check_cap(n)?;
    TuxGame::from_fn(players_one_to(n), |key| {
        let cartels = key.outside.num_blocks() + 1;
        let denom = BigInt::from((cartels + 1) * (cartels + 1));
        &scale / Rational::from_integer(denom)
    })
}

/// The three-player public goods game: contributing coalitions produce, and
/// a merged outside pair free-rides productively (worth 9 for a singleton
/// facing a merged pair, 0 facing singletons).
pub fn maskin_public_goods() -> TuxGame {
    let worth = |s: &[usize], v: i64| {
        (
            s.iter().copied().collect::<Coalition>(),
            Rational::from_integer(BigInt::from(v)),
        )
    };
    let singles: Vec<(Coalition, Rational)> = vec![
        worth(&[1], 0),
        worth(&[2], 0),
        worth(&[3], 0),
    ];
    let pairs = [
        worth(&[1, 2], 12),
        worth(&[1, 3], 13),
        worth(&[2, 3], 14),
    ];
    let grand = worth(&[1, 2, 3], 24);
    let merged = Rational::from_integer(BigInt::from(9));
    TuxGame::from_fn(players_one_to(3), move |key| {
        let s = key.coalition;
        if s.len() == 1 {
            if key.outside.num_blocks() == 1 {
                merged.clone()
            } else {
                singles
                    .iter()
                    .find(|(c, _)| *c == s)
                    .map(|(_, v)| v.clone())
                    .unwrap()
            }
        } else {
            pairs
                .iter()
                .chain(std::iter::once(&grand))
                .find(|(c, _)| *c == s)
                .map(|(_, v)| v.clone())
                .unwrap()
        }
    })
    .expect("three players fit any cap")
}

/// Deterministic random game: integer worths uniform in
/// [−magnitude, magnitude] for every nonempty-S embedded coalition, in
/// canonical key order, from a ChaCha stream seeded by `seed`.
pub fn random_tux_game(n: usize, seed: u64, magnitude: i64) -> Result<TuxGame> {
    if n < 1 {
        return Err(Error::TooFewPlayers { need: 1, got: n });
    }
    crate::combo::check_cap(n)?;
    let players = players_one_to(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let index = crate::game::TuxIndex::get(players)?;
    let mut entries = std::collections::HashMap::new();
    for key in index.keys() {
        if key.coalition.is_empty() {
            continue;
        }
        let value: i64 = rng.gen_range(-magnitude..=magnitude);
        entries.insert(key.clone(), Rational::from_integer(BigInt::from(value)));
    }
    TuxGame::from_entries(players, &entries, true)
}
