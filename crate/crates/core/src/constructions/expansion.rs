use std::collections::HashMap;

use crate::constructions::{verify_matrix_profile, MatrixProfile, MatrixWindow};
use crate::engine::EventuallyPeriodicProfile;
use crate::error::{Error, Result};
use crate::games::MatrixStrategy;

/// The cell after `(x, y)` that makes the player holding `y` perfect.
///
/// Top row `[0, x[n-1,2] + y[n-1,1]]`, then row `k+1` is
/// `[x[k,2] + y[k,1] - y[k+1,2], 0]`.
pub fn right_cell(x: &MatrixStrategy, y: &MatrixStrategy) -> MatrixStrategy {
    let n = y.n();
    let e = |m: &MatrixStrategy, r, c| m.get(r, c) as i64;
    MatrixStrategy::from_fn(n, |row, col| match (row, col) {
        (1, 1) => 0,
        (1, 2) => e(x, n - 1, 2) + e(y, n - 1, 1),
        (r, 1) => e(x, r - 1, 2) + e(y, r - 1, 1) - e(y, r, 2),
        _ => 0,
    })
}

/// The cell before `(y, z)` that makes the player holding `y` perfect.
///
/// Left column `[0]`; right column `y[k+1,2] + z[k+1,1] - y[k,1]` for
/// `k < n-1` and `z[1,2] - y[n-1,1]` in the last row.
pub fn left_cell(y: &MatrixStrategy, z: &MatrixStrategy) -> MatrixStrategy {
    let n = y.n();
    let e = |m: &MatrixStrategy, r, c| m.get(r, c) as i64;
    MatrixStrategy::from_fn(n, |row, col| match (row, col) {
        (_, 1) => 0,
        (r, _) if r == n - 1 => e(z, 1, 2) - e(y, n - 1, 1),
        (r, _) => e(y, r + 1, 2) + e(z, r + 1, 1) - e(y, r, 1),
    })
}

fn check_expandable(n: usize, w: &MatrixWindow) -> Result<()> {
    if w.n() != n {
        return Err(Error::Mismatch(format!("window has n={}, expected {n}", w.n())));
    }
    if w.len() < 2 {
        return Err(Error::Precondition("expansion needs a window of at least two cells".into()));
    }
    Ok(())
}

/// Appends the cell that makes the old last player semi-perfect.
pub fn expand_right(n: usize, w: &MatrixWindow) -> Result<MatrixWindow> {
    check_expandable(n, w)?;
    let c = w.cells();
    let mut out = w.clone();
    out.push_back(right_cell(&c[c.len() - 2], &c[c.len() - 1]));
    if !out.semiperfect_at(w.last()) {
        return Err(Error::Precondition(format!("player {} cannot be completed: top-left entry is not 0", w.last())));
    }
    Ok(out)
}

/// Prepends the cell that makes the old first player semi-perfect.
pub fn expand_left(n: usize, w: &MatrixWindow) -> Result<MatrixWindow> {
    check_expandable(n, w)?;
    let c = w.cells();
    let mut out = w.clone();
    out.push_front(left_cell(&c[0], &c[1]));
    if !out.semiperfect_at(w.start()) {
        return Err(Error::Precondition(format!("player {} cannot be completed: top-left entry is not 0", w.start())));
    }
    Ok(out)
}

/// Iterates `step` on the boundary pair until a pair repeats.
/// Returns the generated cells and the offset where their period begins.
fn periodic_tail(
    first: &MatrixStrategy,
    second: &MatrixStrategy,
    step: impl Fn(&MatrixStrategy, &MatrixStrategy) -> MatrixStrategy,
) -> (Vec<MatrixStrategy>, usize) {
    let mut seq = vec![first.clone(), second.clone()];
    let mut seen = HashMap::new();
    loop {
        let i = seq.len() - 2;
        let key = (seq[i].clone(), seq[i + 1].clone());
        if let Some(&j) = seen.get(&key) {
            seq.truncate(i);
            return (seq, j);
        }
        seen.insert(key, i);
        let next = step(&seq[i], &seq[i + 1]);
        seq.push(next);
    }
}

/// Extends a window that is semi-perfect inside to an equilibrium agreeing
/// with it on the window.
pub fn close_to_equilibrium(n: usize, w: &MatrixWindow) -> Result<MatrixProfile> {
    check_expandable(n, w)?;
    if !w.is_semiperfect() {
        return Err(Error::Precondition("window is not semi-perfect inside".into()));
    }
    if w.cells().iter().any(|c| c.get(1, 1) != 0) {
        return Err(Error::Precondition("every cell of the window needs top-left entry 0".into()));
    }
    let c = w.cells();
    let m = c.len();
    // Right: seq[t] sits at w.last() - 1 + t and repeats from `rc` with period |seq| - rc.
    let (right, rc) = periodic_tail(&c[m - 2], &c[m - 1], right_cell);
    // Left: seq[t] sits at w.start() + 1 - t.
    let (left, lc) = periodic_tail(&c[1], &c[0], |z, y| left_cell(y, z));

    // Positions at or below `left_top` repeat leftward with period `lp`, and
    // positions from `right_bottom` on repeat rightward with period `rp`.
    let lp = (left.len() - lc) as i64;
    let left_top = w.start() + 1 - lc as i64;
    let rp = (right.len() - rc) as i64;
    let right_bottom = w.last() - 1 + rc as i64;
    let tail = |seq: &[MatrixStrategy], cycle: usize, t: usize| -> MatrixStrategy {
        let t = if t < seq.len() { t } else { cycle + (t - cycle) % (seq.len() - cycle) };
        seq[t].clone()
    };
    let value = |i: i64| -> MatrixStrategy {
        if i < w.start() {
            tail(&left, lc, (w.start() + 1 - i) as usize)
        } else if i > w.last() {
            tail(&right, rc, (i - (w.last() - 1)) as usize)
        } else {
            c[(i - w.start()) as usize].clone()
        }
    };
    let anchor = (left_top + 1).min(right_bottom);
    let profile = EventuallyPeriodicProfile {
        anchor,
        left: (anchor - lp..anchor).map(value).collect(),
        mid: (anchor..right_bottom).map(value).collect(),
        right: (right_bottom..right_bottom + rp).map(value).collect(),
    };
    let profile = profile.reduce();
    let agrees = (w.start()..=w.last()).all(|i| Some(profile.at(i)) == w.at(i));
    if !agrees || !verify_matrix_profile(n, &profile) {
        return Err(Error::Internal("closed profile is not an equilibrium extending the window".into()));
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3(rows: [[u8; 2]; 2]) -> MatrixStrategy {
        MatrixStrategy::new(3, rows.concat()).unwrap()
    }

    #[test]
    fn worked_right_expansion() {
        let w = MatrixWindow::new(3, 0, vec![m3([[0, 1], [2, 3]]), m3([[0, 2], [3, 1]])]).unwrap();
        let e = expand_right(3, &w).unwrap();
        assert_eq!(e.cells()[2], m3([[0, 2], [0, 0]]));
        assert_eq!(e.start(), 0);
        let l = expand_left(3, &w).unwrap();
        assert_eq!(l.start(), -1);
        assert!(l.semiperfect_at(0));
    }

    #[test]
    fn zero_windows_expand_to_zero() {
        let w = MatrixWindow::new(4, 0, vec![MatrixStrategy::zero(4); 2]).unwrap();
        assert!(expand_right(4, &w).unwrap().cells()[2].is_zero());
        assert!(expand_left(4, &w).unwrap().cells()[0].is_zero());
        let p = close_to_equilibrium(4, &w).unwrap();
        assert_eq!(p, EventuallyPeriodicProfile::constant(MatrixStrategy::zero(4)).reduce());
        assert!(p.mid.is_empty());
    }

    #[test]
    fn short_or_broken_windows_are_rejected() {
        let one = MatrixWindow::new(3, 0, vec![MatrixStrategy::zero(3)]).unwrap();
        assert!(expand_right(3, &one).is_err());
        let bad = MatrixWindow::new(3, 0, vec![MatrixStrategy::zero(3), m3([[1, 0], [0, 0]])]).unwrap();
        assert!(expand_right(3, &bad).is_err());
        assert!(close_to_equilibrium(3, &bad).is_err());
        assert!(expand_right(4, &MatrixWindow::new(3, 0, vec![MatrixStrategy::zero(3); 2]).unwrap()).is_err());
    }

    #[test]
    fn closing_keeps_the_window() {
        let w = MatrixWindow::new(3, 10, vec![m3([[0, 1], [2, 3]]), m3([[0, 2], [3, 1]]), m3([[0, 2], [0, 0]])])
            .unwrap();
        let p = close_to_equilibrium(3, &w).unwrap();
        for i in 10..=12 {
            assert_eq!(Some(p.at(i)), w.at(i));
        }
    }
}
