use rand::Rng;

use crate::constructions::{close_to_equilibrium, MatrixProfile, MatrixWindow};
use crate::error::{Error, Result};
use crate::games::MatrixStrategy;

/// A uniformly random `Gn` strategy with top-left entry `0`.
pub fn random_cell(n: usize, rng: &mut impl Rng) -> MatrixStrategy {
    let mut m = MatrixStrategy::from_fn(n, |_, _| rng.random_range(0..=n as i64));
    m.set(1, 1, 0);
    m
}

/// A random successor `z` of `(x, y)` with the player holding `y` semi-perfect.
pub fn random_successor(x: &MatrixStrategy, y: &MatrixStrategy, rng: &mut impl Rng) -> MatrixStrategy {
    let n = y.n();
    let e = |m: &MatrixStrategy, r, c| m.get(r, c) as i64;
    MatrixStrategy::from_fn(n, |row, col| match (row, col) {
        (1, 1) => 0,
        (1, 2) => e(x, n - 1, 2) + e(y, n - 1, 1) + rng.random_range(0..=1),
        (r, 1) => e(x, r - 1, 2) + e(y, r - 1, 1) - e(y, r, 2) + rng.random_range(0..=1),
        _ => rng.random_range(0..=n as i64),
    })
}

/// A random window of `len` cells starting at `0` with `first` as first cell,
/// semi-perfect inside.
pub fn random_semiperfect_window(first: &MatrixStrategy, len: usize, rng: &mut impl Rng) -> Result<MatrixWindow> {
    let n = first.n();
    if len < 2 {
        return Err(Error::Precondition("a random window needs at least two cells".into()));
    }
    if first.get(1, 1) != 0 {
        return Err(Error::Precondition("first cell must have top-left entry 0".into()));
    }
    let mut cells = vec![first.clone(), random_cell(n, rng)];
    while cells.len() < len {
        let k = cells.len();
        let z = random_successor(&cells[k - 2], &cells[k - 1], rng);
        cells.push(z);
    }
    MatrixWindow::new(n, 0, cells)
}

/// A random equilibrium of `Gn`, closed from a random window.
pub fn random_equilibrium(n: usize, rng: &mut impl Rng) -> Result<MatrixProfile> {
    let len = rng.random_range(2..=n + 3);
    let first = random_cell(n, rng);
    close_to_equilibrium(n, &random_semiperfect_window(&first, len, rng)?)
}
