//! Exact analysis of finite extensive-form games with unawareness.

pub mod discovery;
pub mod efr;
pub mod equilibrium;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod generate;
pub mod io;
pub mod lp;
pub mod nash;
pub mod num;
pub mod strategy;

pub use error::{GameError, Result, UgtError};
pub use game::{Game, GameBuilder, Loc, NodeId, Player, TreeId, NATURE};
pub use num::Q;
