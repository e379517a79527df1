use crate::combo::{Coalition, PlayerId};

/// Errors produced by game construction, combinatorial surgery, and solution
/// evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("player set of size {got} exceeds the universe cap of {cap}")]
    CapExceeded { got: usize, cap: usize },

    #[error("player {player:?} is not in the ground set {ground:?}")]
    PlayerNotInGround { player: PlayerId, ground: Coalition },

    #[error("player {player:?} is already present in the partition")]
    PlayerAlreadyPresent { player: PlayerId },

    #[error("coalition {target:?} is not a block of the partition")]
    NotABlock { target: Coalition },

    #[error("{what} is not contained in the player set {players:?}")]
    OutsidePlayerSet { what: String, players: Coalition },

    #[error("entry keyed outside the embedded coalitions of the game: {key}")]
    InvalidEntry { key: String },

    #[error("missing worth for embedded coalition {key} in strict mode")]
    MissingEntry { key: String },

    #[error("player sets do not match: {left:?} vs {right:?}")]
    PlayerSetMismatch { left: Coalition, right: Coalition },

    #[error("operation requires at least {need} players, game has {got}")]
    TooFewPlayers { need: usize, got: usize },

    #[error("operation requires exactly {need} players, game has {got}")]
    WrongPlayerCount { need: usize, got: usize },

    #[error("coalition T must be a proper subset of the player set")]
    RemoveAll,

    #[error("the Dirac coalition T must be nonempty")]
    EmptyDirac,

    #[error("tabulated solution has no payoff for the requested game")]
    Coverage,

    #[error("degenerate affine system in the consistency solve")]
    DegenerateSolve,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
