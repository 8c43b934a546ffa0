use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::games::GameSpec;
use crate::logic::Formula;

/// A truth assignment to atoms that some concrete cellular game realizes.
///
/// `AllTrue` is realized by `GINF`. `Distance(D)` makes `a||b` true exactly
/// when `a != b` and `|a-b|` is not in `D`; it is realized by `G0` when `D` is
/// empty and by the product of `G_d` over `d` in `D` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Assignment {
    AllTrue,
    Distance(BTreeSet<u64>),
}

impl Assignment {
    pub fn distance(ds: impl IntoIterator<Item = u64>) -> Self {
        // 0 is redundant: a != b already forces |a-b| >= 1.
        Assignment::Distance(ds.into_iter().filter(|&d| d > 0).collect())
    }

    pub fn atom(&self, a: i64, b: i64) -> bool {
        match self {
            Assignment::AllTrue => true,
            Assignment::Distance(ds) => a != b && !ds.contains(&a.abs_diff(b)),
        }
    }

    /// The game realizing this assignment.
    pub fn countermodel(&self) -> GameSpec {
        match self {
            Assignment::AllTrue => GameSpec::Ginf,
            Assignment::Distance(ds) if ds.is_empty() => GameSpec::G0,
            Assignment::Distance(ds) => {
                GameSpec::product(ds.iter().map(|&d| GameSpec::for_distance(d)).collect())
            }
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assignment::AllTrue => write!(f, "ALL"),
            Assignment::Distance(ds) => {
                let items: Vec<String> = ds.iter().map(u64::to_string).collect();
                write!(f, "D={{{}}}", items.join(","))
            }
        }
    }
}

pub fn eval_formula(f: &Formula, assignment: &Assignment) -> bool {
    f.eval_with(&mut |a, b| assignment.atom(a, b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid { countermodel: GameSpec, assignment: Assignment },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Decides whether `f` holds in every cellular game.
///
/// Checks `AllTrue` and then every `Distance(D)` with `D` a subset of the
/// formula's distances, smallest `D` first (by size, then lexicographically).
/// The first falsifying assignment is reported together with the game that
/// realizes it.
pub fn decide(f: &Formula, max_distances: usize) -> Result<Verdict> {
    let ds: Vec<u64> = f.distances().into_iter().collect();
    if ds.len() > max_distances {
        return Err(Error::cap("distinct distances", ds.len() as u64, max_distances as u64));
    }
    let falsified = |a: Assignment| (!eval_formula(f, &a)).then_some(a);
    if let Some(a) = falsified(Assignment::AllTrue) {
        return Ok(invalid(a));
    }
    for size in 0..=ds.len() {
        for subset in ds.iter().copied().combinations(size) {
            if let Some(a) = falsified(Assignment::Distance(subset.into_iter().collect())) {
                return Ok(invalid(a));
            }
        }
    }
    Ok(Verdict::Valid)
}

fn invalid(assignment: Assignment) -> Verdict {
    Verdict::Invalid { countermodel: assignment.countermodel(), assignment }
}
