use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::games::{Game, StrategyId};

/// Whether `y` is a best response to neighbours `x` and `z`.
///
/// Costs at most `|S|` payoff evaluations, and one when `y` already reaches
/// the game's payoff bound. Works for games too large to tabulate.
pub fn is_best_response(game: &Game, x: StrategyId, y: StrategyId, z: StrategyId) -> bool {
    let u = game.payoff(x, y, z);
    u >= game.max_payoff() || (0..game.strategy_count()).all(|s| game.payoff(x, s, z) <= u)
}

/// The best-response relation `T` of a finite game, stored as successor and
/// predecessor lists on strategy pairs.
///
/// Pair `(x, y)` has id `x * |S| + y`; its successors are the `z` with
/// `(x, y, z)` in `T` and the predecessors of `(y, z)` are the matching `x`.
#[derive(Debug, Clone)]
pub struct TransferRelation {
    game: Arc<Game>,
    size: usize,
    succ_offsets: Vec<u32>,
    succ: Vec<u32>,
    pred_offsets: Vec<u32>,
    pred: Vec<u32>,
}

impl TransferRelation {
    /// Evaluates all `|S|^3` payoffs; refuses games above `max_strategies`.
    pub fn new(game: Arc<Game>, max_strategies: u64) -> Result<Self> {
        let size = game.strategy_count();
        if size as u64 > max_strategies {
            return Err(Error::cap("strategy count for the best-response relation", size as u64, max_strategies));
        }
        let rows: Vec<Vec<Vec<u32>>> = (0..size)
            .into_par_iter()
            .map(|x| {
                let mut by_y = vec![Vec::new(); size];
                let mut best = Vec::with_capacity(size);
                for z in 0..size {
                    best.clear();
                    let mut top = i64::MIN;
                    for y in 0..size {
                        let u = game.payoff(x, y, z);
                        if u > top {
                            top = u;
                            best.clear();
                        }
                        if u == top {
                            best.push(y);
                        }
                    }
                    for &y in &best {
                        by_y[y].push(z as u32);
                    }
                }
                by_y
            })
            .collect();

        let total: usize = rows.iter().flatten().map(Vec::len).sum();
        if total > u32::MAX as usize {
            return Err(Error::cap("best-response triple count", total as u64, u32::MAX));
        }
        let mut succ_offsets = Vec::with_capacity(size * size + 1);
        let mut succ = Vec::with_capacity(total);
        let mut pred_count = vec![0u32; size * size + 1];
        succ_offsets.push(0);
        for row in &rows {
            for (y, zs) in row.iter().enumerate() {
                succ.extend_from_slice(zs);
                succ_offsets.push(succ.len() as u32);
                for &z in zs {
                    pred_count[y * size + z as usize + 1] += 1;
                }
            }
        }
        for i in 1..pred_count.len() {
            pred_count[i] += pred_count[i - 1];
        }
        let pred_offsets = pred_count;
        let mut fill = pred_offsets.clone();
        let mut pred = vec![0u32; total];
        for x in 0..size {
            for y in 0..size {
                let p = x * size + y;
                for &z in &succ[succ_offsets[p] as usize..succ_offsets[p + 1] as usize] {
                    let q = y * size + z as usize;
                    pred[fill[q] as usize] = x as u32;
                    fill[q] += 1;
                }
            }
        }
        Ok(TransferRelation { game, size, succ_offsets, succ, pred_offsets, pred })
    }

    pub fn game(&self) -> &Arc<Game> {
        &self.game
    }

    /// Number of strategies.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of triples in the relation.
    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn pair_id(&self, x: StrategyId, y: StrategyId) -> usize {
        x * self.size + y
    }

    /// The `z` with `(x, y, z)` in `T`, ascending.
    pub fn successors(&self, x: StrategyId, y: StrategyId) -> &[u32] {
        let p = self.pair_id(x, y);
        &self.succ[self.succ_offsets[p] as usize..self.succ_offsets[p + 1] as usize]
    }

    /// The `x` with `(x, y, z)` in `T`, ascending.
    pub fn predecessors(&self, y: StrategyId, z: StrategyId) -> &[u32] {
        let p = self.pair_id(y, z);
        &self.pred[self.pred_offsets[p] as usize..self.pred_offsets[p + 1] as usize]
    }

    pub fn contains(&self, x: StrategyId, y: StrategyId, z: StrategyId) -> bool {
        x < self.size && y < self.size && z < self.size && self.successors(x, y).binary_search(&(z as u32)).is_ok()
    }

    /// All triples in lexicographic order.
    pub fn triples(&self) -> impl Iterator<Item = (StrategyId, StrategyId, StrategyId)> + '_ {
        (0..self.size).flat_map(move |x| {
            (0..self.size).flat_map(move |y| self.successors(x, y).iter().map(move |&z| (x, y, z as usize)))
        })
    }
}
