//! Interchangeability of Nash equilibria in one-dimensional cellular games.
//!
//! A cellular game is an infinite row of identical players indexed by the
//! integers, each paid according to her own strategy and her two neighbours'.
//! Players `a` and `b` are *interchangeable* (`a||b`) when for any two
//! equilibria there is a third that agrees with the first at `a` and the second
//! at `b`.
//!
//! The crate is split into four layers:
//!
//! * [`logic`]: formulas over `a||b`, a Hilbert-style proof checker and a
//!   validity decision procedure that returns concrete countermodels.
//! * [`games`]: the game families `G0`, `G1`, `G2`, `Gn` (`n >= 3`), `GINF`,
//!   products of games and user-supplied payoff tables.
//! * [`engine`]: turns a finite game into its equilibrium subshift (best
//!   response relation, bi-extendable core) and decides interchangeability,
//!   equilibrium existence and constrained-equilibrium queries.
//! * [`constructions`]: explicit equilibria and witness profiles for `Gn` that
//!   scale beyond what the engine can enumerate.

pub mod constructions;
pub mod engine;
pub mod error;
pub mod games;
pub mod logic;

pub use error::{Error, Result};

/// Resource guards used across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of strategies a game builder may enumerate.
    pub build_strategies: u64,
    /// Maximum number of strategies for monolithic relation construction.
    pub engine_strategies: u64,
    /// Maximum number of distinct distances (decide) or atoms (tautology check).
    pub atoms: usize,
}

impl Caps {
    pub const DEFAULT_BUILD_STRATEGIES: u64 = 65_536;
    pub const DEFAULT_ENGINE_STRATEGIES: u64 = 4096;
    pub const DEFAULT_ATOMS: usize = 20;
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            build_strategies: Self::DEFAULT_BUILD_STRATEGIES,
            engine_strategies: Self::DEFAULT_ENGINE_STRATEGIES,
            atoms: Self::DEFAULT_ATOMS,
        }
    }
}
