use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::engine::TransferRelation;
use crate::games::StrategyId;

const ABSENT: u32 = u32::MAX;

/// Node of the pair graph: the strategies of two adjacent players.
pub type Pair = (StrategyId, StrategyId);

/// The bi-extendable core `B` of a transfer relation: the strategy pairs
/// lying on some bi-infinite walk, with the edges between them.
///
/// Nodes carry dense local ids in ascending pair order.
#[derive(Debug, Clone)]
pub struct CoreGraph {
    size: usize,
    nodes: Vec<Pair>,
    local: Vec<u32>,
    succ_offsets: Vec<u32>,
    succ: Vec<u32>,
    pred_offsets: Vec<u32>,
    pred: Vec<u32>,
}

impl CoreGraph {
    /// Prunes pairs without an in-edge or an out-edge until none remain.
    pub fn new(t: &TransferRelation) -> Self {
        let size = t.size();
        let pairs = size * size;
        let mut out_deg: Vec<u32> = (0..pairs).map(|p| t.successors(p / size, p % size).len() as u32).collect();
        let mut in_deg: Vec<u32> = (0..pairs).map(|p| t.predecessors(p / size, p % size).len() as u32).collect();
        let mut alive = vec![true; pairs];
        let mut queue: Vec<usize> = (0..pairs).filter(|&p| out_deg[p] == 0 || in_deg[p] == 0).collect();
        for &p in &queue {
            alive[p] = false;
        }
        while let Some(p) = queue.pop() {
            let (x, y) = (p / size, p % size);
            for &z in t.successors(x, y) {
                let q = y * size + z as usize;
                in_deg[q] -= 1;
                if alive[q] && in_deg[q] == 0 {
                    alive[q] = false;
                    queue.push(q);
                }
            }
            for &w in t.predecessors(x, y) {
                let q = w as usize * size + x;
                out_deg[q] -= 1;
                if alive[q] && out_deg[q] == 0 {
                    alive[q] = false;
                    queue.push(q);
                }
            }
        }

        let mut local = vec![ABSENT; pairs];
        let mut nodes = Vec::new();
        for p in (0..pairs).filter(|&p| alive[p]) {
            local[p] = nodes.len() as u32;
            nodes.push((p / size, p % size));
        }
        let (mut succ_offsets, mut succ) = (vec![0u32], Vec::new());
        let (mut pred_offsets, mut pred) = (vec![0u32], Vec::new());
        for &(x, y) in &nodes {
            succ.extend(t.successors(x, y).iter().map(|&z| local[y * size + z as usize]).filter(|&l| l != ABSENT));
            succ_offsets.push(succ.len() as u32);
            pred.extend(t.predecessors(x, y).iter().map(|&w| local[w as usize * size + x]).filter(|&l| l != ABSENT));
            pred_offsets.push(pred.len() as u32);
        }
        CoreGraph { size, nodes, local, succ_offsets, succ, pred_offsets, pred }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of strategies of the underlying game.
    pub fn strategy_count(&self) -> usize {
        self.size
    }

    pub fn nodes(&self) -> &[Pair] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> Pair {
        self.nodes[id]
    }

    pub fn head(&self, id: usize) -> StrategyId {
        self.nodes[id].0
    }

    pub fn contains(&self, pair: Pair) -> bool {
        self.local_id(pair).is_some()
    }

    pub fn local_id(&self, (x, y): Pair) -> Option<usize> {
        if x >= self.size || y >= self.size {
            return None;
        }
        let l = self.local[x * self.size + y];
        (l != ABSENT).then_some(l as usize)
    }

    /// Out-neighbours inside `B`, ascending.
    pub fn successors(&self, id: usize) -> &[u32] {
        &self.succ[self.succ_offsets[id] as usize..self.succ_offsets[id + 1] as usize]
    }

    /// In-neighbours inside `B`, ascending.
    pub fn predecessors(&self, id: usize) -> &[u32] {
        &self.pred[self.pred_offsets[id] as usize..self.pred_offsets[id + 1] as usize]
    }

    /// Strategies played in some equilibrium, ascending.
    pub fn heads(&self) -> Vec<StrategyId> {
        let mut h: Vec<_> = self.nodes.iter().map(|n| n.0).collect();
        h.dedup();
        h
    }

    /// The nodes whose head is `s`.
    pub fn with_head(&self, s: StrategyId) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        let lo = self.nodes.partition_point(|n| n.0 < s);
        let hi = self.nodes.partition_point(|n| n.0 <= s);
        set.insert_range(lo..hi);
        set
    }

    /// Heads present in `set`.
    pub fn heads_of(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.size);
        for id in set.ones() {
            out.insert(self.head(id));
        }
        out
    }

    /// All nodes reachable from `set` in one step.
    pub fn step(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut next = FixedBitSet::with_capacity(self.len());
        for id in set.ones() {
            for &s in self.successors(id) {
                next.insert(s as usize);
            }
        }
        next
    }

    /// The frontiers reached from `start` after `0..=steps` steps.
    pub fn trajectory(&self, start: FixedBitSet, steps: u64) -> Trajectory {
        let mut seen = HashMap::new();
        let mut states = vec![start];
        loop {
            let t = states.len() - 1;
            if t as u64 == steps {
                return Trajectory { cycle_start: states.len(), states };
            }
            let last = states.last().expect("nonempty");
            if let Some(&first) = seen.get(last) {
                states.pop();
                return Trajectory { states, cycle_start: first };
            }
            seen.insert(last.clone(), t);
            let next = self.step(last);
            states.push(next);
        }
    }

    /// Nodes reachable from `start` by walks of exactly `steps` edges.
    pub fn advance(&self, start: FixedBitSet, steps: u64) -> FixedBitSet {
        self.trajectory(start, steps).at(steps).clone()
    }

    /// Whether some walk of exactly `d` edges inside `B` leads from a node
    /// with head `s` to a node with head `t`.
    pub fn path_exists(&self, s: StrategyId, t: StrategyId, d: u64) -> bool {
        let reached = self.advance(self.with_head(s), d);
        reached.ones().any(|id| self.head(id) == t)
    }
}

/// An eventually periodic sequence of frontiers.
#[derive(Debug, Clone)]
pub struct Trajectory {
    states: Vec<FixedBitSet>,
    cycle_start: usize,
}

impl Trajectory {
    pub fn at(&self, t: u64) -> &FixedBitSet {
        let len = self.states.len() as u64;
        let idx = if t < len {
            t
        } else {
            let c = self.cycle_start as u64;
            c + (t - c) % (len - c)
        };
        &self.states[idx as usize]
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::games::{Game, GameSpec};
    use crate::Caps;

    fn core(spec: GameSpec) -> CoreGraph {
        let g = Arc::new(Game::build(&spec, &Caps::default()).unwrap());
        CoreGraph::new(&TransferRelation::new(g, 4096).unwrap())
    }

    #[test]
    fn g1_core_drops_backward_steps() {
        let b = core(GameSpec::G1);
        assert_eq!(b.len(), 6);
        assert!(b.nodes().iter().all(|&(x, y)| (y + 3 - x) % 3 <= 1));
    }

    #[test]
    fn g2_core_is_the_residue_pairs() {
        let b = core(GameSpec::G2);
        assert_eq!(b.len(), 9);
        assert!(b.nodes().iter().all(|&(x, y)| x < 3 && y < 3));
        assert_eq!(b.heads(), [0, 1, 2]);
    }

    #[test]
    fn every_core_node_has_both_degrees() {
        for spec in [GameSpec::G0, GameSpec::G1, GameSpec::G2, GameSpec::Ginf] {
            let b = core(spec);
            for id in 0..b.len() {
                assert!(!b.successors(id).is_empty() && !b.predecessors(id).is_empty());
            }
        }
    }

    #[test]
    fn g1_paths() {
        let b = core(GameSpec::G1);
        assert!(b.path_exists(0, 2, 2));
        assert!(!b.path_exists(0, 2, 1));
        assert!(b.path_exists(0, 2, 1 << 40));
        let inf = core(GameSpec::Ginf);
        assert_eq!(inf.len(), 1);
        assert!(inf.path_exists(0, 0, 12345));
    }

    #[test]
    fn trajectory_wraps_around_its_cycle() {
        let b = core(GameSpec::G1);
        let start = b.with_head(0);
        let tr = b.trajectory(start.clone(), 1000);
        let mut cur = start;
        for t in 0..50 {
            assert_eq!(tr.at(t), &cur);
            cur = b.step(&cur);
        }
    }
}
