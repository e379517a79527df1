//! Set partitions, embedded coalitions, partition surgery, and the Ewens
//! weight that drives the averaging of games with externalities.
//!
//! Players are indices into a small universe (bitset semantics), so all
//! coalition operations are mask arithmetic. Partitions keep their blocks in
//! canonical order: blocks sorted by smallest member, members ascending.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Hard ceiling on the universe size. Bell-number growth makes anything
/// beyond this impractical for dense games.
pub const HARD_CAP: usize = 12;

static CAP: AtomicUsize = AtomicUsize::new(10);

/// Current universe cap (default 10).
pub fn universe_cap() -> usize {
    CAP.load(Ordering::Relaxed)
}

/// Raise or lower the universe cap, up to [`HARD_CAP`].
pub fn set_universe_cap(cap: usize) -> Result<()> {
    if cap == 0 || cap > HARD_CAP {
        return Err(Error::CapExceeded {
            got: cap,
            cap: HARD_CAP,
        });
    }
    CAP.store(cap, Ordering::Relaxed);
    Ok(())
}

pub(crate) fn check_cap(size: usize) -> Result<()> {
    let cap = universe_cap();
    if size > cap {
        Err(Error::CapExceeded { got: size, cap })
    } else {
        Ok(())
    }
}

/// Index of a player within the universe.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(u8);

impl PlayerId {
    pub fn new(index: usize) -> Self {
        // indices are 1-based in generated/parsed games, so allow HARD_CAP
        assert!(index <= HARD_CAP, "player index {index} exceeds hard cap");
        PlayerId(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of players, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Coalition(u16);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn singleton(p: PlayerId) -> Self {
        Coalition(1 << p.0)
    }

    pub fn from_mask(mask: u16) -> Self {
        Coalition(mask)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    /// Coalition {0, 1, ..., n-1}.
    pub fn first_n(n: usize) -> Self {
        assert!(n <= HARD_CAP);
        Coalition(((1u32 << n) - 1) as u16)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: PlayerId) -> bool {
        self.0 & (1 << p.0) != 0
    }

    pub fn insert(self, p: PlayerId) -> Self {
        Coalition(self.0 | (1 << p.0))
    }

    pub fn remove(self, p: PlayerId) -> Self {
        Coalition(self.0 & !(1 << p.0))
    }

    pub fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Self {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Coalition) -> Self {
        Coalition(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Coalition) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn min_member(self) -> Option<PlayerId> {
        if self.0 == 0 {
            None
        } else {
            Some(PlayerId(self.0.trailing_zeros() as u8))
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = PlayerId> {
        let mask = self.0;
        (0..HARD_CAP as u8)
            .filter(move |b| mask & (1 << b) != 0)
            .map(PlayerId)
    }

    pub fn members(self) -> Vec<PlayerId> {
        self.iter().collect()
    }

    /// All subsets, in ascending mask order.
    pub fn subsets(self) -> Vec<Coalition> {
        let full = self.0;
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub: u16 = 0;
        loop {
            out.push(Coalition(sub));
            if sub == full {
                break;
            }
            sub = (sub.wrapping_sub(full)) & full;
        }
        out
    }

    /// All subsets, sorted in canonical (member-lexicographic) order.
    pub fn subsets_canonical(self) -> Vec<Coalition> {
        let mut subs = self.subsets();
        subs.sort();
        subs
    }
}

impl FromIterator<PlayerId> for Coalition {
    fn from_iter<I: IntoIterator<Item = PlayerId>>(iter: I) -> Self {
        iter.into_iter()
            .fold(Coalition::EMPTY, |acc, p| acc.insert(p))
    }
}

impl FromIterator<usize> for Coalition {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter()
            .map(PlayerId::new)
            .fold(Coalition::EMPTY, |acc, p| acc.insert(p))
    }
}

/// Member-lexicographic order: {} < {1} < {1,2} < {1,3} < {2}.
impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// A partition of some ground set into disjoint nonempty blocks.
///
/// Blocks are kept sorted by their smallest member, which makes equality,
/// hashing, and ordering structural. The empty partition (no blocks) is the
/// unique partition of the empty ground set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<Coalition>,
}

impl Partition {
    /// The empty partition, the sole element of Π(∅).
    pub fn empty() -> Self {
        Partition { blocks: Vec::new() }
    }

    /// Build from blocks; validates disjointness/nonemptiness and
    /// canonicalizes the block order.
    pub fn new(mut blocks: Vec<Coalition>) -> Self {
        let mut seen = Coalition::EMPTY;
        for b in &blocks {
            assert!(!b.is_empty(), "partition block must be nonempty");
            assert!(seen.is_disjoint(*b), "partition blocks must be disjoint");
            seen = seen.union(*b);
        }
        blocks.sort_by_key(|b| b.min_member());
        Partition { blocks }
    }

    /// Single-block partition {ground}, or the empty partition for ∅.
    pub fn one_block(ground: Coalition) -> Self {
        if ground.is_empty() {
            Partition::empty()
        } else {
            Partition {
                blocks: vec![ground],
            }
        }
    }

    /// Partition of `ground` into singletons.
    pub fn singletons(ground: Coalition) -> Self {
        Partition {
            blocks: ground.iter().map(Coalition::singleton).collect(),
        }
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Union of all blocks.
    pub fn ground(&self) -> Coalition {
        self.blocks
            .iter()
            .fold(Coalition::EMPTY, |acc, b| acc.union(*b))
    }

    /// The block containing `p`, if present.
    pub fn block_of(&self, p: PlayerId) -> Option<Coalition> {
        self.blocks.iter().copied().find(|b| b.contains(p))
    }

    pub fn contains_block(&self, b: Coalition) -> bool {
        self.blocks.contains(&b)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "-");
        }
        for b in &self.blocks {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// A coalition together with a partition of the remaining players.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbeddedCoalition {
    pub coalition: Coalition,
    pub outside: Partition,
}

impl EmbeddedCoalition {
    pub fn new(coalition: Coalition, outside: Partition) -> Self {
        assert!(
            coalition.is_disjoint(outside.ground()),
            "coalition and outside partition must be disjoint"
        );
        EmbeddedCoalition { coalition, outside }
    }

    /// The player set of the game this embedded coalition belongs to.
    pub fn ground(&self) -> Coalition {
        self.coalition.union(self.outside.ground())
    }
}

impl fmt::Debug for EmbeddedCoalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for EmbeddedCoalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.coalition, self.outside)
    }
}

/// π₋T: drop the players in `T` from every block, discarding emptied blocks.
pub fn remove_players(pi: &Partition, t: Coalition) -> Result<Partition> {
    if !t.is_subset_of(pi.ground()) {
        return Err(Error::OutsidePlayerSet {
            what: format!("{t}"),
            players: pi.ground(),
        });
    }
    let blocks = pi
        .blocks()
        .iter()
        .map(|b| b.difference(t))
        .filter(|b| !b.is_empty())
        .collect();
    Ok(Partition::new(blocks))
}

/// π₊ᵢ⇝B (target = `Some(B)`) or π₊ᵢ⇝∅ (target = `None`, singleton insertion).
pub fn add_player(pi: &Partition, i: PlayerId, target: Option<Coalition>) -> Result<Partition> {
    if pi.ground().contains(i) {
        return Err(Error::PlayerAlreadyPresent { player: i });
    }
    match target {
        None => {
            let mut blocks = pi.blocks().to_vec();
            blocks.push(Coalition::singleton(i));
            Ok(Partition::new(blocks))
        }
        Some(b) => {
            if !pi.contains_block(b) {
                return Err(Error::NotABlock { target: b });
            }
            let blocks = pi
                .blocks()
                .iter()
                .map(|&blk| if blk == b { blk.insert(i) } else { blk })
                .collect();
            Ok(Partition::new(blocks))
        }
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Ewens weight of a partition of an m-element ground set:
/// (∏_{B∈π} (|B|−1)!) / m!. The empty partition has weight 1.
pub fn ewens_weight(pi: &Partition) -> BigRational {
    let m = pi.ground().len();
    let numer = pi
        .blocks()
        .iter()
        .fold(BigInt::one(), |acc, b| acc * factorial(b.len() - 1));
    BigRational::new(numer, factorial(m))
}

/// All partitions of `ground`, canonically ordered. The count is the Bell
/// number B(|ground|).
pub fn enumerate_partitions(ground: Coalition) -> Result<Vec<Partition>> {
    check_cap(ground.len())?;
    let players = ground.members();
    let mut out = Vec::new();
    let mut blocks: Vec<Coalition> = Vec::new();
    build_partitions(&players, 0, &mut blocks, &mut out);
    out.sort();
    Ok(out)
}

fn build_partitions(
    players: &[PlayerId],
    k: usize,
    blocks: &mut Vec<Coalition>,
    out: &mut Vec<Partition>,
) {
    if k == players.len() {
        out.push(Partition::new(blocks.clone()));
        return;
    }
    let p = players[k];
    for idx in 0..blocks.len() {
        blocks[idx] = blocks[idx].insert(p);
        build_partitions(players, k + 1, blocks, out);
        blocks[idx] = blocks[idx].remove(p);
    }
    blocks.push(Coalition::singleton(p));
    build_partitions(players, k + 1, blocks, out);
    blocks.pop();
}

/// All embedded coalitions (S, π) with S ⊆ N and π ∈ Π(N∖S), sorted by
/// coalition then outside partition. The count is B(n+1).
pub fn enumerate_embedded(n: Coalition) -> Result<Vec<EmbeddedCoalition>> {
    check_cap(n.len())?;
    let mut out = Vec::new();
    for s in n.subsets_canonical() {
        for pi in enumerate_partitions(n.difference(s))? {
            out.push(EmbeddedCoalition::new(s, pi));
        }
    }
    Ok(out)
}

/// Bell number B(n), by the triangle recurrence.
pub fn bell_number(n: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let prev = next.last().unwrap().clone();
            next.push(prev + v);
        }
        row = next;
    }
    row[0].clone()
}
