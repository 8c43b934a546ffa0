//! Game families, products and payoff tables.

mod g2;
mod game;
mod matrix;
mod spec;
mod table;

pub use g2::{payoff as g2_payoff, u1, u2, u3, G2Strategy, Penny};
pub use game::{Game, StrategyId};
pub use matrix::{gn_payoff_conditions, perfect_triple, semiperfect_triple, MatrixStrategy, MAX_N};
pub use spec::GameSpec;
pub use table::{load_game_table, parse_game_table};

use crate::{Caps, Result};

/// Builds `spec` with the given resource caps.
pub fn build_game(spec: &GameSpec, caps: &Caps) -> Result<Game> {
    Game::build(spec, caps)
}
