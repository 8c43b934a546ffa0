use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::games::g2::{self, G2Strategy};
use crate::games::matrix::{payoff_conditions_raw, MatrixStrategy, MAX_N};
use crate::games::{load_game_table, GameSpec};
use crate::Caps;

/// Index of a strategy in a game's canonical label order.
pub type StrategyId = usize;

/// Full payoff tables are materialized only up to this many triples.
const DENSE_TABLE_LIMIT: usize = 1 << 25;

#[derive(Debug, Clone)]
pub(crate) enum Payoff {
    /// Constant zero (`G0`, `GINF`).
    Zero,
    G1,
    G2,
    /// Row-major entries of every strategy, `2(n-1)` bytes each.
    Gn { n: usize, entries: Vec<u8> },
    /// Mixed-radix ids, first factor most significant.
    Product { parts: Vec<Arc<Game>>, radix: Vec<usize> },
    Table { sparse: HashMap<(u32, u32, u32), i64>, default: i64 },
    Dense(Vec<i64>),
}

/// A cellular game with finitely many strategies and integer payoffs.
#[derive(Debug, Clone)]
pub struct Game {
    spec: GameSpec,
    labels: Vec<String>,
    by_label: HashMap<String, StrategyId>,
    payoff: Payoff,
    max_payoff: i64,
}

impl Game {
    /// Builds any game named by `spec`, subject to `caps.build_strategies`.
    pub fn build(spec: &GameSpec, caps: &Caps) -> Result<Game> {
        match spec {
            GameSpec::G0 => Ok(Game::new(spec.clone(), vec!["0".into(), "1".into()], Payoff::Zero, 0)),
            GameSpec::Ginf => Ok(Game::new(spec.clone(), vec!["0".into()], Payoff::Zero, 0)),
            GameSpec::G1 => Ok(Game::new(spec.clone(), residue_labels(), Payoff::G1, 1)),
            GameSpec::G2 => {
                let labels = G2Strategy::ALL.iter().map(|s| s.to_string()).collect();
                Ok(Game::new(spec.clone(), labels, Payoff::G2, 3))
            }
            GameSpec::Gn(n) => build_gn(*n, caps),
            GameSpec::Prod(parts) => {
                let parts = parts.iter().map(|p| Game::build(p, caps).map(Arc::new)).collect::<Result<Vec<_>>>()?;
                Game::product(parts, caps)
            }
            GameSpec::File(path) => load_game_table(path),
        }
    }

    /// Product of already-built games; payoffs add up componentwise.
    pub fn product(parts: Vec<Arc<Game>>, caps: &Caps) -> Result<Game> {
        if parts.is_empty() {
            return Err(Error::Spec("empty product".into()));
        }
        let radix: Vec<usize> = parts.iter().map(|g| g.strategy_count()).collect();
        let total = radix.iter().try_fold(1u128, |acc, &r| Some(acc * r as u128)).unwrap_or(u128::MAX);
        if total > caps.build_strategies as u128 {
            return Err(Error::cap("product strategy count", total, caps.build_strategies));
        }
        let total = total as usize;
        let labels = (0..total)
            .map(|id| {
                split_id(id, &radix)
                    .iter()
                    .zip(&parts)
                    .map(|(&c, g)| g.label(c).to_string())
                    .collect::<Vec<_>>()
                    .join("×")
            })
            .collect();
        let spec = GameSpec::product(parts.iter().map(|g| g.spec.clone()).collect());
        let max_payoff = parts.iter().map(|g| g.max_payoff).sum();
        Ok(Game::new(spec, labels, Payoff::Product { parts, radix }, max_payoff))
    }

    pub(crate) fn new(spec: GameSpec, labels: Vec<String>, payoff: Payoff, max_payoff: i64) -> Game {
        let by_label = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut game = Game { spec, labels, by_label, payoff, max_payoff };
        game.materialize();
        game
    }

    /// Replaces sparse tables by a dense one when it fits.
    fn materialize(&mut self) {
        if !matches!(self.payoff, Payoff::Table { .. }) {
            return;
        }
        let s = self.labels.len();
        let Some(cells) = s.checked_pow(3).filter(|&c| c <= DENSE_TABLE_LIMIT) else {
            return;
        };
        let mut dense = Vec::with_capacity(cells);
        for x in 0..s {
            for y in 0..s {
                for z in 0..s {
                    dense.push(self.payoff(x, y, z));
                }
            }
        }
        self.payoff = Payoff::Dense(dense);
    }

    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    pub fn strategy_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: StrategyId) -> &str {
        &self.labels[s]
    }

    /// Inverse of [`label`](Self::label).
    pub fn parse_strategy(&self, label: &str) -> Result<StrategyId> {
        self.by_label.get(label.trim()).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// An upper bound on every payoff of the game (exact for the built-in families).
    pub fn max_payoff(&self) -> i64 {
        self.max_payoff
    }

    /// Component games of a product, if this is one.
    pub fn factors(&self) -> Option<&[Arc<Game>]> {
        match &self.payoff {
            Payoff::Product { parts, .. } => Some(parts),
            _ => None,
        }
    }

    /// Splits a product strategy into component strategies.
    pub fn project(&self, s: StrategyId) -> Vec<StrategyId> {
        match &self.payoff {
            Payoff::Product { radix, .. } => split_id(s, radix),
            _ => vec![s],
        }
    }

    /// Inverse of [`project`](Self::project).
    pub fn combine(&self, parts: &[StrategyId]) -> StrategyId {
        match &self.payoff {
            Payoff::Product { radix, .. } => join_id(parts, radix),
            _ => parts[0],
        }
    }

    /// The matrix behind a `Gn` strategy.
    pub fn matrix(&self, s: StrategyId) -> Option<MatrixStrategy> {
        match &self.payoff {
            Payoff::Gn { n, entries } => {
                let w = 2 * (n - 1);
                MatrixStrategy::new(*n, entries[s * w..(s + 1) * w].to_vec()).ok()
            }
            _ => None,
        }
    }

    /// Strategy id of a `Gn` matrix.
    pub fn matrix_id(&self, m: &MatrixStrategy) -> Option<StrategyId> {
        match &self.payoff {
            Payoff::Gn { n, .. } if *n == m.n() => Some(m.index() as usize),
            _ => None,
        }
    }

    pub fn payoff(&self, x: StrategyId, y: StrategyId, z: StrategyId) -> i64 {
        match &self.payoff {
            Payoff::Zero => 0,
            Payoff::G1 => (y != (x + 2) % 3) as i64,
            Payoff::G2 => g2::payoff(G2Strategy::from_id(x), G2Strategy::from_id(y), G2Strategy::from_id(z)),
            Payoff::Gn { n, entries } => {
                let w = 2 * (n - 1);
                let cell = |s: usize| &entries[s * w..(s + 1) * w];
                payoff_conditions_raw(*n, cell(x), cell(y), cell(z)) as i64
            }
            Payoff::Product { parts, radix } => {
                let (xs, ys, zs) = (split_id(x, radix), split_id(y, radix), split_id(z, radix));
                parts.iter().enumerate().map(|(i, g)| g.payoff(xs[i], ys[i], zs[i])).sum()
            }
            Payoff::Table { sparse, default } => {
                sparse.get(&(x as u32, y as u32, z as u32)).copied().unwrap_or(*default)
            }
            Payoff::Dense(table) => {
                let s = self.labels.len();
                table[(x * s + y) * s + z]
            }
        }
    }
}

fn residue_labels() -> Vec<String> {
    (0..3).map(|r| r.to_string()).collect()
}

fn build_gn(n: u64, caps: &Caps) -> Result<Game> {
    if n < 3 || n as usize > MAX_N {
        return Err(Error::Spec(format!("GN parameter must lie in 3..={MAX_N}, got {n}")));
    }
    let n = n as usize;
    let count = ((n + 1) as u128).checked_pow(2 * (n as u32 - 1)).unwrap_or(u128::MAX);
    if count > caps.build_strategies as u128 {
        return Err(Error::cap("GN strategy count", count, caps.build_strategies));
    }
    let count = count as usize;
    let mut entries = Vec::with_capacity(count * 2 * (n - 1));
    let mut labels = Vec::with_capacity(count);
    for id in 0..count {
        let m = MatrixStrategy::from_index(n, id as u64);
        entries.extend_from_slice(m.entries());
        labels.push(m.to_string());
    }
    Ok(Game::new(GameSpec::Gn(n as u64), labels, Payoff::Gn { n, entries }, 1))
}

pub(crate) fn split_id(mut id: usize, radix: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radix.len()];
    for (slot, &r) in out.iter_mut().zip(radix).rev() {
        *slot = id % r;
        id /= r;
    }
    out
}

pub(crate) fn join_id(parts: &[usize], radix: &[usize]) -> usize {
    parts.iter().zip(radix).fold(0, |acc, (&p, &r)| acc * r + p)
}
