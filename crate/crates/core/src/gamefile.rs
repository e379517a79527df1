//! Text format for games with human-readable player labels.
//!
//! ```text
//! # lines starting with # are comments
//! game tux
//! players a b c
//! {a} | {b}{c} = 0
//! {a} | {b,c}  = 9
//! {a,b,c} | -  = 24
//! ...
//! ```
//!
//! TU games use `game tu` and drop the partition column. Values are
//! integers, fractions `p/q`, or finite decimals, all parsed exactly.
//! Serialization emits entries in canonical order and omits the forced-zero
//! empty-coalition rows, so parse ∘ serialize is the identity on games.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combo::{Coalition, EmbeddedCoalition, Partition, PlayerId};
use crate::error::{Error, Result};
use crate::game::{TuGame, TuxGame};
use crate::Rational;

/// A TU or TUX game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Game {
    Tu(TuGame),
    Tux(TuxGame),
}

impl Game {
    pub fn players(&self) -> Coalition {
        match self {
            Game::Tu(v) => v.players(),
            Game::Tux(w) => w.players(),
        }
    }

    pub fn num_players(&self) -> usize {
        self.players().len()
    }

    /// The TUX form: a TU game is embedded with partition-independent
    /// worths.
    pub fn to_tux(&self) -> Result<TuxGame> {
        match self {
            Game::Tu(v) => TuxGame::from_tu(v),
            Game::Tux(w) => Ok(w.clone()),
        }
    }
}

/// A game whose players carry external string labels. Label k (in file
/// order) is player index k internally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGame {
    labels: Vec<String>,
    game: Game,
}

impl LabeledGame {
    pub fn new(labels: Vec<String>, game: Game) -> Self {
        assert_eq!(labels.len(), game.num_players());
        LabeledGame { labels, game }
    }

    /// Numeric labels "1".."n" for a game produced in code.
    pub fn numbered(game: Game) -> Self {
        let labels = game.players().iter().map(|p| p.to_string()).collect();
        LabeledGame { labels, game }
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_of(&self, p: PlayerId) -> &str {
        let members = self.game.players().members();
        let idx = members
            .iter()
            .position(|&q| q == p)
            .expect("player belongs to the game");
        &self.labels[idx]
    }

    pub fn player_of(&self, label: &str) -> Option<PlayerId> {
        let members = self.game.players().members();
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|idx| members[idx])
    }

    /// Same labels, different game on the same player set.
    pub fn with_game(&self, game: Game) -> Self {
        let members = self.game.players().members();
        let labels = game
            .players()
            .iter()
            .map(|p| {
                let idx = members.iter().position(|&q| q == p).expect("subset");
                self.labels[idx].clone()
            })
            .collect();
        LabeledGame { labels, game }
    }
}

/// Parse an exact value: integer, fraction `p/q`, or finite decimal.
pub fn parse_value(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: String = format!("{whole}{frac}");
        let n: BigInt = digits.parse().ok()?;
        let d = BigInt::from(10u8).pow(frac.len() as u32);
        return Some(Rational::new(n, d));
    }
    text.parse::<BigInt>().ok().map(Rational::from_integer)
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

struct LabelMap {
    labels: Vec<String>,
    by_name: HashMap<String, PlayerId>,
}

impl LabelMap {
    fn new(labels: Vec<String>, line: usize) -> Result<Self> {
        let mut by_name = HashMap::new();
        for (idx, label) in labels.iter().enumerate() {
            if label.is_empty()
                || label
                    .chars()
                    .any(|c| c.is_whitespace() || "{},|=#".contains(c))
            {
                return Err(err(line, format!("invalid player label `{label}`")));
            }
            if by_name.insert(label.clone(), PlayerId::new(idx + 1)).is_some() {
                return Err(err(line, format!("duplicate player label `{label}`")));
            }
        }
        Ok(LabelMap { labels, by_name })
    }

    fn players(&self) -> Coalition {
        (1..=self.labels.len()).collect()
    }

    /// Parse `{a,b}`; `{}` is the empty coalition.
    fn coalition(&self, text: &str, line: usize) -> Result<Coalition> {
        let text = text.trim();
        let inner = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| err(line, format!("expected a coalition `{{...}}`, got `{text}`")))?;
        let mut out = Coalition::EMPTY;
        for part in inner.split(',') {
            let name = part.trim();
            if name.is_empty() {
                if inner.trim().is_empty() {
                    break; // `{}`
                }
                return Err(err(line, "empty player name in coalition"));
            }
            let p = *self
                .by_name
                .get(name)
                .ok_or_else(|| err(line, format!("unknown player `{name}`")))?;
            if out.contains(p) {
                return Err(err(line, format!("player `{name}` listed twice")));
            }
            out = out.insert(p);
        }
        Ok(out)
    }

    /// Parse `{a}{b,c}` or `-` (the empty partition).
    fn partition(&self, text: &str, line: usize) -> Result<Partition> {
        let text = text.trim();
        if text == "-" {
            return Ok(Partition::empty());
        }
        let mut blocks = Vec::new();
        let mut rest = text;
        let mut seen = Coalition::EMPTY;
        while !rest.is_empty() {
            if !rest.starts_with('{') {
                return Err(err(line, format!("expected a partition block, got `{rest}`")));
            }
            let end = rest
                .find('}')
                .ok_or_else(|| err(line, "unterminated partition block"))?;
            let block = self.coalition(&rest[..=end], line)?;
            if block.is_empty() {
                return Err(err(line, "partition block must be nonempty"));
            }
            if !seen.is_disjoint(block) {
                return Err(err(line, "partition blocks must be disjoint"));
            }
            seen = seen.union(block);
            blocks.push(block);
            rest = rest[end + 1..].trim_start();
        }
        Ok(Partition::new(blocks))
    }
}

/// Parse a game file. With `allow_missing`, unlisted embedded coalitions
/// default to worth 0; otherwise every nonempty-coalition entry is
/// required.
pub fn parse_game(text: &str, allow_missing: bool) -> Result<LabeledGame> {
    let mut kind: Option<(bool, usize)> = None; // (is_tux, line)
    let mut labels: Option<LabelMap> = None;
    let mut tux_entries: HashMap<EmbeddedCoalition, Rational> = HashMap::new();
    let mut tu_entries: HashMap<Coalition, Rational> = HashMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("game") {
            if kind.is_some() {
                return Err(err(line, "duplicate `game` directive"));
            }
            kind = match rest.trim() {
                "tux" => Some((true, line)),
                "tu" => Some((false, line)),
                other => return Err(err(line, format!("unknown game kind `{other}`"))),
            };
            continue;
        }
        if let Some(rest) = content.strip_prefix("players") {
            if labels.is_some() {
                return Err(err(line, "duplicate `players` directive"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return Err(err(line, "at least one player is required"));
            }
            crate::combo::check_cap(names.len())?;
            labels = Some(LabelMap::new(names, line)?);
            continue;
        }

        // worth entry
        let (is_tux, _) =
            kind.ok_or_else(|| err(line, "`game tu|tux` must precede worth entries"))?;
        let map = labels
            .as_ref()
            .ok_or_else(|| err(line, "`players ...` must precede worth entries"))?;
        let (lhs, rhs) = content
            .split_once('=')
            .ok_or_else(|| err(line, "expected `... = value`"))?;
        let value =
            parse_value(rhs).ok_or_else(|| err(line, format!("invalid value `{}`", rhs.trim())))?;
        if is_tux {
            let (coal_text, part_text) = lhs
                .split_once('|')
                .ok_or_else(|| err(line, "expected `coalition | partition = value`"))?;
            let s = map.coalition(coal_text, line)?;
            let pi = map.partition(part_text, line)?;
            if s.union(pi.ground()) != map.players() || !s.is_disjoint(pi.ground()) {
                return Err(err(
                    line,
                    "coalition and partition must split the player set",
                ));
            }
            let key = EmbeddedCoalition::new(s, pi);
            if tux_entries.insert(key.clone(), value).is_some() {
                return Err(err(line, format!("duplicate entry for {key}")));
            }
        } else {
            if lhs.contains('|') {
                return Err(err(line, "TU entries carry no partition column"));
            }
            let s = map.coalition(lhs, line)?;
            if tu_entries.insert(s, value).is_some() {
                return Err(err(line, format!("duplicate entry for {s}")));
            }
        }
    }

    let (is_tux, _) = kind.ok_or_else(|| err(0, "missing `game tu|tux` directive"))?;
    let map = labels.ok_or_else(|| err(0, "missing `players` directive"))?;
    let players = map.players();
    let game = if is_tux {
        Game::Tux(TuxGame::from_entries(players, &tux_entries, !allow_missing)?)
    } else {
        Game::Tu(TuGame::from_entries(players, &tu_entries, !allow_missing)?)
    };
    Ok(LabeledGame::new(map.labels, game))
}

fn write_coalition(out: &mut String, g: &LabeledGame, s: Coalition) {
    out.push('{');
    for (k, p) in s.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(g.label_of(p));
    }
    out.push('}');
}

fn write_partition(out: &mut String, g: &LabeledGame, pi: &Partition) {
    if pi.num_blocks() == 0 {
        out.push('-');
        return;
    }
    for &b in pi.blocks() {
        write_coalition(out, g, b);
    }
}

/// Serialize in the format accepted by [`parse_game`], entries in canonical
/// order, forced-zero empty-coalition rows omitted.
pub fn serialize_game(g: &LabeledGame) -> String {
    let mut out = String::new();
    match g.game() {
        Game::Tu(v) => {
            out.push_str("game tu\n");
            writeln!(out, "players {}", g.labels().join(" ")).unwrap();
            for &s in v.subsets() {
                if s.is_empty() {
                    continue;
                }
                let mut lhs = String::new();
                write_coalition(&mut lhs, g, s);
                writeln!(out, "{lhs} = {}", v.worth(s)).unwrap();
            }
        }
        Game::Tux(w) => {
            out.push_str("game tux\n");
            writeln!(out, "players {}", g.labels().join(" ")).unwrap();
            for (key, value) in w.entries() {
                if key.coalition.is_empty() {
                    continue;
                }
                let mut lhs = String::new();
                write_coalition(&mut lhs, g, key.coalition);
                lhs.push_str(" | ");
                write_partition(&mut lhs, g, &key.outside);
                writeln!(out, "{lhs} = {value}").unwrap();
            }
        }
    }
    out
}
