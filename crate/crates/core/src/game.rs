//! Exact-rational TU and TUX games, Dirac bases, and game linear algebra.
//!
//! Games are dense vectors over a canonical enumeration of their domain
//! (subsets for TU, embedded coalitions for TUX), so equality is plain
//! vector equality. The enumeration for a given player set is computed once
//! and shared.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::combo::{
    enumerate_embedded, ewens_weight, Coalition, EmbeddedCoalition, Partition, PlayerId,
};
use crate::error::{Error, Result};
use crate::Rational;

/// Canonical enumeration of E(N) with positional lookup.
pub struct TuxIndex {
    players: Coalition,
    keys: Vec<EmbeddedCoalition>,
    pos: HashMap<EmbeddedCoalition, u32>,
}

impl TuxIndex {
    /// Shared index for a player set; built once per distinct set.
    pub fn get(players: Coalition) -> Result<Arc<TuxIndex>> {
        static CACHE: OnceLock<Mutex<HashMap<u16, Arc<TuxIndex>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(idx) = cache.lock().unwrap().get(&players.mask()) {
            return Ok(Arc::clone(idx));
        }
        let keys = enumerate_embedded(players)?;
        let pos = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i as u32))
            .collect();
        let idx = Arc::new(TuxIndex { players, keys, pos });
        cache
            .lock()
            .unwrap()
            .entry(players.mask())
            .or_insert_with(|| Arc::clone(&idx));
        Ok(idx)
    }

    pub fn players(&self) -> Coalition {
        self.players
    }

    pub fn keys(&self) -> &[EmbeddedCoalition] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn position(&self, key: &EmbeddedCoalition) -> Option<usize> {
        self.pos.get(key).map(|&i| i as usize)
    }
}

/// TU game: a worth for every coalition S ⊆ N, with v(∅) = 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TuGame {
    players: Coalition,
    subsets: Vec<Coalition>,
    worths: Vec<Rational>,
}

impl TuGame {
    /// Build from a worth function. The empty coalition is forced to 0.
    pub fn from_fn(players: Coalition, f: impl Fn(Coalition) -> Rational) -> Result<Self> {
        crate::combo::check_cap(players.len())?;
        let subsets = players.subsets_canonical();
        let worths = subsets
            .iter()
            .map(|&s| if s.is_empty() { Rational::zero() } else { f(s) })
            .collect();
        Ok(TuGame {
            players,
            subsets,
            worths,
        })
    }

    /// Build from explicit entries. Missing nonempty coalitions error in
    /// strict mode and are filled with 0 otherwise.
    pub fn from_entries(
        players: Coalition,
        entries: &HashMap<Coalition, Rational>,
        strict: bool,
    ) -> Result<Self> {
        crate::combo::check_cap(players.len())?;
        for (s, v) in entries {
            if !s.is_subset_of(players) {
                return Err(Error::InvalidEntry {
                    key: format!("{s}"),
                });
            }
            if s.is_empty() && !v.is_zero() && strict {
                return Err(Error::InvalidEntry {
                    key: format!("{s} (the empty coalition must have worth 0)"),
                });
            }
        }
        if strict {
            for s in players.subsets_canonical() {
                if !s.is_empty() && !entries.contains_key(&s) {
                    return Err(Error::MissingEntry {
                        key: format!("{s}"),
                    });
                }
            }
        }
        TuGame::from_fn(players, |s| entries.get(&s).cloned().unwrap_or_default())
    }

    /// All-zero game.
    pub fn null(players: Coalition) -> Result<Self> {
        TuGame::from_fn(players, |_| Rational::zero())
    }

    /// Dirac TU game: worth 1 at T, 0 elsewhere.
    pub fn dirac(players: Coalition, t: Coalition) -> Result<Self> {
        if !t.is_subset_of(players) {
            return Err(Error::OutsidePlayerSet {
                what: format!("{t}"),
                players,
            });
        }
        TuGame::from_fn(players, |s| {
            if s == t {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn players(&self) -> Coalition {
        self.players
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn subsets(&self) -> &[Coalition] {
        &self.subsets
    }

    pub fn worth(&self, s: Coalition) -> &Rational {
        let idx = self
            .subsets
            .binary_search(&s)
            .unwrap_or_else(|_| panic!("coalition {s} outside game on {}", self.players));
        &self.worths[idx]
    }

    /// Plain TU subgame: drop the players in `T`, keep the worths of the
    /// remaining coalitions.
    pub fn remove_players(&self, t: Coalition) -> Result<TuGame> {
        if !t.is_subset_of(self.players) {
            return Err(Error::OutsidePlayerSet {
                what: format!("{t}"),
                players: self.players,
            });
        }
        TuGame::from_fn(self.players.difference(t), |s| self.worth(s).clone())
    }
}

impl fmt::Debug for TuGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TuGame on {}", self.players)?;
        for (s, v) in self.subsets.iter().zip(&self.worths) {
            writeln!(f, "  {s} = {v}")?;
        }
        Ok(())
    }
}

/// TUX game (partition function form): a worth for every embedded coalition
/// (S, π) ∈ E(N), with w(∅, π) = 0 for all π.
#[derive(Clone)]
pub struct TuxGame {
    index: Arc<TuxIndex>,
    worths: Vec<Rational>,
}

impl PartialEq for TuxGame {
    fn eq(&self, other: &Self) -> bool {
        self.players() == other.players() && self.worths == other.worths
    }
}

impl Eq for TuxGame {}

impl std::hash::Hash for TuxGame {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.players().hash(state);
        self.worths.hash(state);
    }
}

impl TuxGame {
    /// Build from a worth function. S = ∅ entries are forced to 0.
    pub fn from_fn(
        players: Coalition,
        f: impl Fn(&EmbeddedCoalition) -> Rational,
    ) -> Result<Self> {
        let index = TuxIndex::get(players)?;
        let worths = index
            .keys()
            .iter()
            .map(|k| {
                if k.coalition.is_empty() {
                    Rational::zero()
                } else {
                    f(k)
                }
            })
            .collect();
        Ok(TuxGame { index, worths })
    }

    /// Build from explicit entries.
    ///
    /// Entries with S = ∅ are forced to 0; in strict mode a nonzero worth
    /// there is an error, as is a missing nonempty-S entry.
    pub fn from_entries(
        players: Coalition,
        entries: &HashMap<EmbeddedCoalition, Rational>,
        strict: bool,
    ) -> Result<Self> {
        let index = TuxIndex::get(players)?;
        for (k, v) in entries {
            if index.position(k).is_none() {
                return Err(Error::InvalidEntry {
                    key: format!("{k}"),
                });
            }
            if k.coalition.is_empty() && !v.is_zero() && strict {
                return Err(Error::InvalidEntry {
                    key: format!("{k} (the empty coalition must have worth 0)"),
                });
            }
        }
        if strict {
            for k in index.keys() {
                if !k.coalition.is_empty() && !entries.contains_key(k) {
                    return Err(Error::MissingEntry {
                        key: format!("{k}"),
                    });
                }
            }
        }
        TuxGame::from_fn(players, |k| entries.get(k).cloned().unwrap_or_default())
    }

    /// All-zero game 0^N.
    pub fn null(players: Coalition) -> Result<Self> {
        TuxGame::from_fn(players, |_| Rational::zero())
    }

    /// Scaled Dirac game δ_{T,τ}: worth 1/p*_{N∖T}(τ) at (T, τ), 0 elsewhere.
    pub fn scaled_dirac(players: Coalition, t: Coalition, tau: &Partition) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::EmptyDirac);
        }
        let key = EmbeddedCoalition::new(t, tau.clone());
        let index = TuxIndex::get(players)?;
        if index.position(&key).is_none() {
            return Err(Error::InvalidEntry {
                key: format!("{key}"),
            });
        }
        let scale = ewens_weight(tau).recip();
        TuxGame::from_fn(players, |k| {
            if *k == key {
                scale.clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Embed a TU game: w(S, π) = v(S) for every outside partition π.
    pub fn from_tu(v: &TuGame) -> Result<Self> {
        TuxGame::from_fn(v.players(), |k| v.worth(k.coalition).clone())
    }

    pub fn players(&self) -> Coalition {
        self.index.players()
    }

    pub fn num_players(&self) -> usize {
        self.players().len()
    }

    pub fn index(&self) -> &Arc<TuxIndex> {
        &self.index
    }

    pub fn keys(&self) -> &[EmbeddedCoalition] {
        self.index.keys()
    }

    /// Entries in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&EmbeddedCoalition, &Rational)> {
        self.index.keys().iter().zip(self.worths.iter())
    }

    pub fn worth(&self, key: &EmbeddedCoalition) -> &Rational {
        let idx = self
            .index
            .position(key)
            .unwrap_or_else(|| panic!("embedded coalition {key} outside E({})", self.players()));
        &self.worths[idx]
    }

    pub fn worth_of(&self, s: Coalition, pi: &Partition) -> &Rational {
        self.worth(&EmbeddedCoalition::new(s, pi.clone()))
    }

    /// w(N, ∅).
    pub fn grand_worth(&self) -> &Rational {
        self.worth(&EmbeddedCoalition::new(self.players(), Partition::empty()))
    }

    /// Worth independent of the outside partition for every S?
    pub fn is_externality_free(&self) -> bool {
        let mut current: Option<(Coalition, &Rational)> = None;
        for (k, v) in self.entries() {
            match current {
                Some((s, w)) if s == k.coalition => {
                    if w != v {
                        return false;
                    }
                }
                _ => current = Some((k.coalition, v)),
            }
        }
        true
    }

    /// Coefficients c_{T,τ} = w(T,τ)·p*_{N∖T}(τ) of the scaled-Dirac
    /// representation, for every nonempty T.
    pub fn decompose(&self) -> Vec<(EmbeddedCoalition, Rational)> {
        self.entries()
            .filter(|(k, _)| !k.coalition.is_empty())
            .map(|(k, v)| (k.clone(), v * ewens_weight(&k.outside)))
            .collect()
    }

    /// Pointwise linear combination of games on a common player set.
    pub fn linear_combine(games: &[&TuxGame], coeffs: &[Rational]) -> Result<Self> {
        assert_eq!(games.len(), coeffs.len());
        let first = games.first().expect("at least one game");
        for g in games {
            if g.players() != first.players() {
                return Err(Error::PlayerSetMismatch {
                    left: first.players(),
                    right: g.players(),
                });
            }
        }
        let mut worths = vec![Rational::zero(); first.worths.len()];
        for (g, c) in games.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (acc, v) in worths.iter_mut().zip(&g.worths) {
                *acc += v * c;
            }
        }
        Ok(TuxGame {
            index: Arc::clone(&first.index),
            worths,
        })
    }

    /// a·self + b·other.
    pub fn scale_add(&self, a: &Rational, other: &TuxGame, b: &Rational) -> Result<Self> {
        TuxGame::linear_combine(&[self, other], &[a.clone(), b.clone()])
    }
}

impl fmt::Debug for TuxGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TuxGame on {}", self.players())?;
        for (k, v) in self.entries() {
            writeln!(f, "  {k} = {v}")?;
        }
        Ok(())
    }
}

/// One exact payoff per player of the associated game.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PayoffVector {
    players: Coalition,
    values: Vec<Rational>,
}

impl PayoffVector {
    pub fn new(players: Coalition, values: Vec<Rational>) -> Self {
        assert_eq!(players.len(), values.len());
        PayoffVector { players, values }
    }

    pub fn from_fn(players: Coalition, f: impl Fn(PlayerId) -> Rational) -> Self {
        let values = players.iter().map(f).collect();
        PayoffVector { players, values }
    }

    pub fn players(&self) -> Coalition {
        self.players
    }

    pub fn get(&self, p: PlayerId) -> &Rational {
        let idx = self
            .players
            .iter()
            .position(|q| q == p)
            .unwrap_or_else(|| panic!("player {p} not in payoff vector"));
        &self.values[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = (PlayerId, &Rational)> {
        self.players.iter().zip(self.values.iter())
    }

    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Debug for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, (p, v)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}: {v}")?;
        }
        write!(f, ")")
    }
}
