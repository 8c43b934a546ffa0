use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::engine::{CoreGraph, EventuallyPeriodicProfile, ProfileWindow, TransferRelation, Trajectory};
use crate::error::{Error, Result};
use crate::games::{Game, StrategyId};
use crate::Caps;

/// Upper bound on the number of windows returned by window enumeration.
pub const MAX_WINDOWS: usize = 1 << 20;

/// Upper bound on the number of constraints of a constrained search.
pub const MAX_CONSTRAINTS: usize = 8;

/// How much of a window [`verify_window`](Analysis::verify_window) checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowMode {
    /// Every fully contained triple is a best response.
    Interior,
    /// Additionally the window extends to an equilibrium.
    Extendable,
}

pub type Profile = EventuallyPeriodicProfile<StrategyId>;
pub type Window = ProfileWindow<StrategyId>;

/// Monolithic equilibrium analysis of one game: its best-response relation
/// and bi-extendable core.
#[derive(Debug, Clone)]
pub struct Analysis {
    game: Arc<Game>,
    relation: TransferRelation,
    core: CoreGraph,
}

impl Analysis {
    pub fn new(game: Arc<Game>, caps: &Caps) -> Result<Self> {
        let relation = TransferRelation::new(game.clone(), caps.engine_strategies)?;
        let core = CoreGraph::new(&relation);
        Ok(Analysis { game, relation, core })
    }

    pub fn game(&self) -> &Arc<Game> {
        &self.game
    }

    pub fn relation(&self) -> &TransferRelation {
        &self.relation
    }

    pub fn core(&self) -> &CoreGraph {
        &self.core
    }

    pub fn has_equilibrium(&self) -> bool {
        !self.core.is_empty()
    }

    /// Strategies played by some equilibrium at any fixed position.
    pub fn realizable(&self) -> Vec<StrategyId> {
        self.core.heads()
    }

    /// Whether players `a` and `b` are interchangeable.
    pub fn interchangeable(&self, a: i64, b: i64) -> bool {
        let heads = self.realizable();
        if heads.is_empty() {
            return true;
        }
        if a == b {
            return heads.len() <= 1;
        }
        let d = a.abs_diff(b);
        let mut wanted = FixedBitSet::with_capacity(self.core.strategy_count());
        heads.iter().for_each(|&h| wanted.insert(h));
        heads.par_iter().all(|&s| {
            let reached = self.core.advance(self.core.with_head(s), d);
            wanted.is_subset(&self.core.heads_of(&reached))
        })
    }

    /// An equilibrium playing `s` at position `p` for every `(p, s)`, if any.
    pub fn constrained_equilibrium(&self, constraints: &[(i64, StrategyId)]) -> Result<Option<Profile>> {
        let constraints = sorted_constraints(constraints, self.game.strategy_count())?;
        if self.core.is_empty() {
            return Ok(None);
        }
        let Some(&(first_pos, first_s)) = constraints.first() else {
            return Ok(Some(self.close_walk(vec![0], 0)));
        };

        let mut frontier = self.core.with_head(first_s);
        if frontier.is_clear() {
            return Ok(None);
        }
        let mut legs: Vec<(u64, Trajectory)> = Vec::new();
        for pair in constraints.windows(2) {
            let ((p, _), (q, s)) = (pair[0], pair[1]);
            let gap = q.abs_diff(p);
            let tr = self.core.trajectory(frontier, gap);
            let mut reach = tr.at(gap).clone();
            reach.intersect_with(&self.core.with_head(s));
            if reach.is_clear() {
                return Ok(None);
            }
            legs.push((gap, tr));
            frontier = reach;
        }

        let mut node = frontier.minimum().expect("nonempty");
        let mut path = vec![node];
        for (gap, tr) in legs.iter().rev() {
            for t in (0..*gap).rev() {
                let allowed = tr.at(t);
                node = self
                    .core
                    .predecessors(node)
                    .iter()
                    .map(|&u| u as usize)
                    .find(|&u| allowed.contains(u))
                    .expect("frontier node has a predecessor in the previous frontier");
                path.push(node);
            }
        }
        path.reverse();
        Ok(Some(self.close_walk(path, first_pos)))
    }

    /// Extends a walk of core nodes, the first at `start`, into a profile by
    /// following smallest predecessors and successors until they cycle.
    fn close_walk(&self, path: Vec<usize>, start: i64) -> Profile {
        let (back, back_cycle) = self.cycle_walk(path[0], |id| self.core.predecessors(id));
        let (fwd, fwd_cycle) = self.cycle_walk(*path.last().expect("nonempty"), |id| self.core.successors(id));

        let mut full: Vec<usize> = back[1..=back_cycle].iter().rev().copied().collect();
        full.extend(&path);
        full.extend(&fwd[1..]);
        let heads: Vec<StrategyId> = full.iter().map(|&id| self.core.head(id)).collect();

        let l = back.len() - back_cycle;
        let left = (0..l).map(|q| self.core.head(back[back_cycle + (l - q) % l])).collect();
        let r = fwd.len() - fwd_cycle;
        let split = heads.len() - r;
        let profile = EventuallyPeriodicProfile {
            anchor: start - back_cycle as i64,
            left,
            mid: heads[..split].to_vec(),
            right: heads[split..].to_vec(),
        };
        profile.reduce()
    }

    /// Walks from `start` along the first neighbour until a node repeats.
    /// Returns the distinct nodes visited and the index where the cycle begins.
    fn cycle_walk<'a>(&'a self, start: usize, next: impl Fn(usize) -> &'a [u32]) -> (Vec<usize>, usize) {
        let mut seen = HashMap::new();
        let mut walk = Vec::new();
        let mut cur = start;
        loop {
            if let Some(&i) = seen.get(&cur) {
                return (walk, i);
            }
            seen.insert(cur, walk.len());
            walk.push(cur);
            cur = next(cur)[0] as usize;
        }
    }

    /// Every window of `len` cells that extends to an equilibrium, sorted by labels.
    pub fn enumerate_ne_windows(&self, len: usize) -> Result<Vec<Window>> {
        if len == 0 {
            return Err(Error::Precondition("window length must be positive".into()));
        }
        let mut out: Vec<Vec<StrategyId>> = Vec::new();
        if len == 1 {
            out = self.realizable().into_iter().map(|s| vec![s]).collect();
        } else {
            let mut stack = Vec::with_capacity(len);
            for id in 0..self.core.len() {
                stack.push(id);
                self.extend_windows(&mut stack, len - 1, &mut out)?;
                stack.pop();
            }
        }
        let game = &self.game;
        out.sort_by_cached_key(|w| w.iter().map(|&s| game.label(s).to_string()).collect::<Vec<_>>());
        Ok(out.into_iter().map(|cells| ProfileWindow { start: 0, cells }).collect())
    }

    fn extend_windows(&self, stack: &mut Vec<usize>, edges: usize, out: &mut Vec<Vec<StrategyId>>) -> Result<()> {
        if stack.len() == edges {
            if out.len() >= MAX_WINDOWS {
                return Err(Error::cap("window count", (MAX_WINDOWS + 1) as u64, MAX_WINDOWS as u64));
            }
            let mut cells: Vec<StrategyId> = stack.iter().map(|&id| self.core.head(id)).collect();
            cells.push(self.core.node(*stack.last().expect("nonempty")).1);
            out.push(cells);
            return Ok(());
        }
        let last = *stack.last().expect("nonempty");
        for &s in self.core.successors(last) {
            stack.push(s as usize);
            self.extend_windows(stack, edges, out)?;
            stack.pop();
        }
        Ok(())
    }

    /// Every triple of the profile is a best response.
    pub fn verify_profile(&self, p: &Profile) -> bool {
        p.check_range().all(|i| self.relation.contains(*p.at(i - 1), *p.at(i), *p.at(i + 1)))
    }

    pub fn verify_window(&self, w: &Window, mode: WindowMode) -> bool {
        let c = &w.cells;
        if c.is_empty() || c.iter().any(|&s| s >= self.game.strategy_count()) {
            return false;
        }
        if !c.windows(3).all(|t| self.relation.contains(t[0], t[1], t[2])) {
            return false;
        }
        match mode {
            WindowMode::Interior => true,
            WindowMode::Extendable if c.len() == 1 => self.realizable().contains(&c[0]),
            WindowMode::Extendable => self.core.contains((c[0], c[1])) && self.core.contains((c[c.len() - 2], c[c.len() - 1])),
        }
    }
}

fn sorted_constraints(constraints: &[(i64, StrategyId)], size: usize) -> Result<Vec<(i64, StrategyId)>> {
    if constraints.len() > MAX_CONSTRAINTS {
        return Err(Error::Precondition(format!("at most {MAX_CONSTRAINTS} constraints, got {}", constraints.len())));
    }
    let mut sorted = constraints.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Precondition(format!("position {} constrained twice", w[0].0)));
    }
    if let Some(&(_, s)) = sorted.iter().find(|&&(_, s)| s >= size) {
        return Err(Error::Precondition(format!("strategy id {s} out of range")));
    }
    Ok(sorted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::GameSpec;

    fn analysis(spec: GameSpec) -> Analysis {
        let g = Arc::new(Game::build(&spec, &Caps::default()).unwrap());
        Analysis::new(g, &Caps::default()).unwrap()
    }

    #[test]
    fn small_interchangeability_tables() {
        let g0 = analysis(GameSpec::G0);
        assert!(!g0.interchangeable(0, 0));
        assert!(g0.interchangeable(0, 5));
        let g1 = analysis(GameSpec::G1);
        assert!(!g1.interchangeable(0, 1));
        assert!(g1.interchangeable(0, 2));
        let g2 = analysis(GameSpec::G2);
        assert!(g2.interchangeable(0, 1));
        assert!(!g2.interchangeable(0, 2));
        assert!(g2.interchangeable(7, 4));
    }

    #[test]
    fn g1_constrained_search() {
        let g1 = analysis(GameSpec::G1);
        let p = g1.constrained_equilibrium(&[(0, 0), (2, 2)]).unwrap().unwrap();
        assert!(g1.verify_profile(&p));
        assert_eq!((*p.at(0), *p.at(2)), (0, 2));
        assert_eq!(g1.constrained_equilibrium(&[(0, 0), (1, 2)]).unwrap(), None);
        let far = g1.constrained_equilibrium(&[(-7, 1), (1000, 0), (3, 2)]).unwrap().unwrap();
        assert!(g1.verify_profile(&far));
        assert_eq!((*far.at(-7), *far.at(3), *far.at(1000)), (1, 2, 0));
    }

    #[test]
    fn unconstrained_and_trivial_searches() {
        let inf = analysis(GameSpec::Ginf);
        let p = inf.constrained_equilibrium(&[(0, 0)]).unwrap().unwrap();
        assert_eq!(p, EventuallyPeriodicProfile::constant(0).reduce());
        let g2 = analysis(GameSpec::G2);
        let p = g2.constrained_equilibrium(&[]).unwrap().unwrap();
        assert!(g2.verify_profile(&p));
        assert_eq!(g2.constrained_equilibrium(&[(0, 3)]).unwrap(), None);
        assert!(g2.constrained_equilibrium(&[(0, 1), (0, 2)]).is_err());
    }

    #[test]
    fn window_counts() {
        assert_eq!(analysis(GameSpec::G1).enumerate_ne_windows(2).unwrap().len(), 6);
        assert_eq!(analysis(GameSpec::G0).enumerate_ne_windows(1).unwrap().len(), 2);
        assert_eq!(analysis(GameSpec::G2).enumerate_ne_windows(1).unwrap().len(), 3);
        assert_eq!(analysis(GameSpec::G2).enumerate_ne_windows(3).unwrap().len(), 18);
    }

    #[test]
    fn profile_checks() {
        let g1 = analysis(GameSpec::G1);
        assert!(g1.verify_profile(&EventuallyPeriodicProfile::constant(0)));
        let bad = EventuallyPeriodicProfile::new(0, vec![0], vec![], vec![2]).unwrap();
        assert!(!g1.verify_profile(&bad));
        let w = ProfileWindow::new(0, vec![0, 0, 1, 2]).unwrap();
        assert!(g1.verify_window(&w, WindowMode::Extendable));
        let w = ProfileWindow::new(0, vec![0, 2]).unwrap();
        assert!(g1.verify_window(&w, WindowMode::Interior));
        assert!(!g1.verify_window(&w, WindowMode::Extendable));
    }
}
