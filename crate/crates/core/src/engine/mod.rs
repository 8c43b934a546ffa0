//! Equilibrium analysis of finite cellular games.
//!
//! A profile is a Nash equilibrium exactly when every consecutive triple lies
//! in the best-response relation `T`. Walking through strategy pairs
//! `(x, y) -> (y, z)` for `(x, y, z)` in `T` turns equilibria into
//! bi-infinite walks, so everything reduces to reachability in the core of
//! that pair graph.

mod analysis;
mod core_graph;
mod profile;
mod relation;

use std::sync::Arc;

use itertools::Itertools;

pub use analysis::{Analysis, Profile, Window, WindowMode, MAX_CONSTRAINTS, MAX_WINDOWS};
pub use core_graph::{CoreGraph, Pair, Trajectory};
pub use profile::{EventuallyPeriodicProfile, ProfileWindow};
pub use relation::{is_best_response, TransferRelation};

use crate::error::{Error, Result};
use crate::games::{Game, StrategyId};
use crate::logic::Formula;
use crate::Caps;

/// Equilibrium analysis of a game; products are analysed factor by factor.
#[derive(Debug, Clone)]
pub struct Engine {
    game: Arc<Game>,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Single(Box<Analysis>),
    Product(Vec<Analysis>),
}

impl Engine {
    /// Componentwise for products, monolithic otherwise.
    pub fn new(game: Arc<Game>, caps: &Caps) -> Result<Self> {
        let kind = match game.factors() {
            Some(parts) => Kind::Product(parts.iter().map(|g| Analysis::new(g.clone(), caps)).collect::<Result<_>>()?),
            None => Kind::Single(Box::new(Analysis::new(game.clone(), caps)?)),
        };
        Ok(Engine { game, kind })
    }

    /// A single relation over the whole strategy set, even for products.
    pub fn monolithic(game: Arc<Game>, caps: &Caps) -> Result<Self> {
        let kind = Kind::Single(Box::new(Analysis::new(game.clone(), caps)?));
        Ok(Engine { game, kind })
    }

    pub fn game(&self) -> &Arc<Game> {
        &self.game
    }

    /// The monolithic analysis, unless the engine works componentwise.
    pub fn analysis(&self) -> Option<&Analysis> {
        match &self.kind {
            Kind::Single(a) => Some(a.as_ref()),
            Kind::Product(_) => None,
        }
    }

    /// The analyses the engine combines: one per factor, or just one.
    pub fn parts(&self) -> &[Analysis] {
        match &self.kind {
            Kind::Single(a) => std::slice::from_ref(a.as_ref()),
            Kind::Product(parts) => parts,
        }
    }

    pub fn has_equilibrium(&self) -> bool {
        self.parts().iter().all(Analysis::has_equilibrium)
    }

    /// Ascending strategy ids.
    pub fn realizable(&self) -> Vec<StrategyId> {
        match &self.kind {
            Kind::Single(a) => a.realizable(),
            Kind::Product(parts) => {
                let mut ids: Vec<StrategyId> = parts
                    .iter()
                    .map(Analysis::realizable)
                    .multi_cartesian_product()
                    .map(|combo| self.game.combine(&combo))
                    .collect();
                ids.sort_unstable();
                ids
            }
        }
    }

    pub fn interchangeable(&self, a: i64, b: i64) -> bool {
        if !self.has_equilibrium() {
            return true;
        }
        self.parts().iter().all(|p| p.interchangeable(a, b))
    }

    /// Evaluates `f` with every atom `a||b` read as interchangeability.
    pub fn satisfies(&self, f: &Formula) -> bool {
        f.eval_with(&mut |a, b| self.interchangeable(a, b))
    }

    pub fn constrained_equilibrium(&self, constraints: &[(i64, StrategyId)]) -> Result<Option<Profile>> {
        match &self.kind {
            Kind::Single(a) => a.constrained_equilibrium(constraints),
            Kind::Product(parts) => {
                if let Some(&(_, s)) = constraints.iter().find(|&&(_, s)| s >= self.game.strategy_count()) {
                    return Err(Error::Precondition(format!("strategy id {s} out of range")));
                }
                let mut found = Vec::with_capacity(parts.len());
                for (i, part) in parts.iter().enumerate() {
                    let projected: Vec<_> = constraints.iter().map(|&(p, s)| (p, self.game.project(s)[i])).collect();
                    match part.constrained_equilibrium(&projected)? {
                        Some(p) => found.push(p),
                        None => return Ok(None),
                    }
                }
                let zipped = EventuallyPeriodicProfile::zip_with(&found, |cells| {
                    self.game.combine(&cells.into_iter().copied().collect::<Vec<_>>())
                });
                Ok(Some(zipped.reduce()))
            }
        }
    }

    /// Windows of `len` cells extending to an equilibrium, sorted by labels.
    pub fn enumerate_ne_windows(&self, len: usize) -> Result<Vec<Window>> {
        match &self.kind {
            Kind::Single(a) => a.enumerate_ne_windows(len),
            Kind::Product(parts) => {
                let per_part = parts.iter().map(|p| p.enumerate_ne_windows(len)).collect::<Result<Vec<_>>>()?;
                let total = per_part.iter().try_fold(1usize, |acc, w| acc.checked_mul(w.len())).unwrap_or(usize::MAX);
                if total > MAX_WINDOWS {
                    return Err(Error::cap("window count", total as u64, MAX_WINDOWS as u64));
                }
                let mut windows: Vec<Vec<StrategyId>> = per_part
                    .iter()
                    .map(|ws| ws.iter())
                    .multi_cartesian_product()
                    .map(|combo| {
                        (0..len)
                            .map(|i| self.game.combine(&combo.iter().map(|w| w.cells[i]).collect::<Vec<_>>()))
                            .collect()
                    })
                    .collect();
                let game = &self.game;
                windows.sort_by_cached_key(|w| w.iter().map(|&s| game.label(s).to_string()).collect::<Vec<_>>());
                Ok(windows.into_iter().map(|cells| ProfileWindow { start: 0, cells }).collect())
            }
        }
    }

    pub fn verify_profile(&self, p: &Profile) -> bool {
        match &self.kind {
            Kind::Single(a) => a.verify_profile(p),
            Kind::Product(parts) => {
                if !self.in_range(p.left.iter().chain(&p.mid).chain(&p.right)) {
                    return false;
                }
                parts.iter().enumerate().all(|(i, part)| part.verify_profile(&p.map(|&s| self.game.project(s)[i])))
            }
        }
    }

    pub fn verify_window(&self, w: &Window, mode: WindowMode) -> bool {
        match &self.kind {
            Kind::Single(a) => a.verify_window(w, mode),
            Kind::Product(parts) => {
                if !self.in_range(w.cells.iter()) {
                    return false;
                }
                parts.iter().enumerate().all(|(i, part)| {
                    let cells = w.cells.iter().map(|&s| self.game.project(s)[i]).collect();
                    part.verify_window(&ProfileWindow { start: w.start, cells }, mode)
                })
            }
        }
    }

    fn in_range<'a>(&self, mut ids: impl Iterator<Item = &'a StrategyId>) -> bool {
        ids.all(|&s| s < self.game.strategy_count())
    }

    /// Renders strategy ids with the game's labels.
    pub fn profile_text(&self, p: &Profile) -> String {
        p.to_text(|&s| self.game.label(s).to_string())
    }

    pub fn window_text(&self, w: &Window) -> String {
        w.to_text(|&s| self.game.label(s).to_string())
    }

    pub fn parse_profile(&self, text: &str) -> Result<Profile> {
        Profile::parse_text(text, |l| self.game.parse_strategy(l))
    }

    pub fn parse_window(&self, text: &str) -> Result<Window> {
        Window::parse_text(text, |l| self.game.parse_strategy(l))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::GameSpec;

    fn engines(spec: GameSpec) -> (Engine, Engine) {
        let g = Arc::new(Game::build(&spec, &Caps::default()).unwrap());
        (Engine::new(g.clone(), &Caps::default()).unwrap(), Engine::monolithic(g, &Caps::default()).unwrap())
    }

    #[test]
    fn product_matches_monolithic() {
        let (split, mono) = engines(GameSpec::Prod(vec![GameSpec::G1, GameSpec::G2]));
        assert!(split.analysis().is_none());
        assert_eq!(split.has_equilibrium(), mono.has_equilibrium());
        assert_eq!(split.realizable(), mono.realizable());
        assert_eq!(split.realizable().len(), 9);
        for d in 0..=6 {
            assert_eq!(split.interchangeable(0, d), mono.interchangeable(0, d), "d={d}");
        }
        for len in 1..=3 {
            assert_eq!(split.enumerate_ne_windows(len).unwrap(), mono.enumerate_ne_windows(len).unwrap());
        }
    }

    #[test]
    fn product_constrained_search() {
        let (split, mono) = engines(GameSpec::Prod(vec![GameSpec::G1, GameSpec::G2]));
        let g = split.game().clone();
        let s = |l: &str| g.parse_strategy(l).unwrap();
        let p = split.constrained_equilibrium(&[(0, s("0×0")), (3, s("2×1"))]).unwrap().unwrap();
        assert!(mono.verify_profile(&p));
        assert!(split.verify_profile(&p));
        assert_eq!((*p.at(0), *p.at(3)), (s("0×0"), s("2×1")));
        assert_eq!(split.constrained_equilibrium(&[(0, s("0×0")), (1, s("2×0"))]).unwrap(), None);
        let text = split.profile_text(&p);
        assert_eq!(split.parse_profile(&text).unwrap(), p);
    }

    #[test]
    fn satisfies_formulas() {
        let (g3, _) = engines(GameSpec::G1);
        let f = crate::logic::parse_formula("0||2 & !(0||1)").unwrap();
        assert!(g3.satisfies(&f));
    }
}
