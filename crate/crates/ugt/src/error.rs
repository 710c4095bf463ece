//! Error types.

use thiserror::Error;

/// Structural problems that prevent a game from being represented at all.
/// Axiom violations are reported by the validator instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("duplicate node name `{0}`")]
    DuplicateNode(String),
    #[error("duplicate tree name `{0}`")]
    DuplicateTreeName(String),
    #[error("trees `{0}` and `{1}` have the same node set")]
    DuplicateTree(String, String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown tree `{0}`")]
    UnknownTree(String),
    #[error("player {0} out of range")]
    BadPlayer(usize),
    #[error("node `{node}`: {msg}")]
    BadNode { node: String, msg: String },
    #[error("node `{node}`: successor map is not a bijection onto action profiles ({msg})")]
    NonBijective { node: String, msg: String },
    #[error("expected exactly one root, found {0}")]
    Roots(usize),
    #[error("node `{0}` is unreachable from the root")]
    Unreachable(String),
    #[error("no tree contains every node")]
    NoUpmostTree,
    #[error("tree `{0}` is not a connected subtree")]
    NotSubtree(String),
    #[error("trees `{0}` and `{1}` have no least upper bound")]
    NotJoinClosed(String, String),
    #[error("information set of player {player} hosted in `{host}` lists `{node}`, which is not in the host")]
    MemberNotInHost { player: usize, host: String, node: String },
    #[error("player {player} has no information set at `{node}@{tree}`")]
    MissingInfoSet { player: usize, node: String, tree: String },
    #[error("player {player} has two information sets at `{node}@{tree}`")]
    ConflictingInfoSet { player: usize, node: String, tree: String },
    #[error("player {player} is not active at `{node}@{tree}`")]
    ExtraInfoSet { player: usize, node: String, tree: String },
    #[error("`{node}` has no copy in `{tree}`")]
    NoCopy { node: String, tree: String },
    #[error("empty information set for player {0}")]
    EmptyInfoSet(usize),
}

/// Errors of the analysis layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UgtError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Result alias.
pub type Result<T, E = UgtError> = std::result::Result<T, E>;
