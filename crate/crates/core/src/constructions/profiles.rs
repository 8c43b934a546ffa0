use std::collections::HashMap;

use crate::constructions::{zig_sequence, MatrixWindow};
use crate::error::{Error, Result};
use crate::games::MatrixStrategy;

fn check_cell(n: usize, m: &MatrixStrategy, name: &str) -> Result<()> {
    if m.n() != n {
        return Err(Error::Mismatch(format!("{name} has n={}, expected {n}", m.n())));
    }
    if m.get(1, 1) != 0 {
        return Err(Error::Precondition(format!("{name} must have top-left entry 0")));
    }
    Ok(())
}

/// A window over `min(a,b)..=max(a,b)` with `m` at `a`, the zero matrix at
/// `b`, perfect at every player strictly between them.
pub fn perfect_profile(n: usize, m: &MatrixStrategy, a: i64, b: i64) -> Result<MatrixWindow> {
    check_cell(n, m, "M")?;
    let d = a.abs_diff(b) as usize;
    if d == 0 || d >= n {
        return Err(Error::Precondition(format!("need 0 < |a-b| < {n}, got |{a}-{b}| = {d}")));
    }
    let zero = MatrixStrategy::zero(n);
    let x12 = m.get(1, 2) as i64;
    let mut cells = vec![zero.clone(); d + 1];
    let start = a.min(b);
    if a < b {
        cells[0] = m.clone();
        if d >= 2 {
            cells[1] = MatrixStrategy::from_fn(n, |row, col| match (row, col) {
                (1, _) => 0,
                (r, 1) => -(m.get(r, 2) as i64),
                (2, 2) => x12,
                _ => 0,
            });
        }
        for (j, cell) in cells.iter_mut().enumerate().take(d).skip(2) {
            cell.set(j + 1, 2, x12);
        }
    } else {
        cells[d] = m.clone();
        if d >= 2 {
            cells[d - 1] = MatrixStrategy::from_fn(n, |row, col| match (row, col) {
                (1, _) => 0,
                (r, 2) => -(m.get(r, 1) as i64),
                (r, 1) if r == n - 1 => x12,
                _ => 0,
            });
        }
        for j in 2..d {
            cells[d - j].set(n - j, 1, x12);
        }
    }
    let w = MatrixWindow::new(n, start, cells)?;
    if !w.is_perfect() {
        return Err(Error::Internal(format!("perfect profile for M={m}, a={a}, b={b} is not perfect")));
    }
    Ok(w)
}

/// Cell-wise sum modulo `n+1` of two windows over the same span.
pub fn sum_windows(p: &MatrixWindow, q: &MatrixWindow) -> Result<MatrixWindow> {
    if p.n() != q.n() {
        return Err(Error::Mismatch(format!("windows for n={} and n={}", p.n(), q.n())));
    }
    if p.start() != q.start() || p.len() != q.len() {
        return Err(Error::Mismatch(format!(
            "windows over {}..={} and {}..={}",
            p.start(),
            p.last(),
            q.start(),
            q.last()
        )));
    }
    let cells = p.cells().iter().zip(q.cells()).map(|(x, y)| x.add(y)).collect::<Result<_>>()?;
    MatrixWindow::new(p.n(), p.start(), cells)
}

/// A window over the span of `a` and `b` with `ca` at `a` and `cb` at `b`,
/// semi-perfect at every player strictly between them.
///
/// Writing `D(i,k) = x[i-1][k,2] + x[i][k,1]`, the conditions at player `i`
/// say that `D(i+1,k+1) - D(i,k)` and `x[i+1][1,2] - D(i,n-1)` lie in
/// `{0,1}`. These links split the diagonal sums into disjoint chains. Only
/// `ca[1,2]` and `cb[1,2]` are pinned; they share a chain exactly when `n`
/// divides `|a-b|`, and that chain is long enough for a zig sequence. All
/// other chains are constant, and each sum is then split into entries.
pub fn semiperfect_profile(n: usize, ca: &MatrixStrategy, cb: &MatrixStrategy, a: i64, b: i64) -> Result<MatrixWindow> {
    check_cell(n, ca, "A")?;
    check_cell(n, cb, "B")?;
    let d = a.abs_diff(b) as usize;
    if d <= n {
        return Err(Error::Precondition(format!("need |a-b| > {n}, got |{a}-{b}| = {d}")));
    }
    let (lo, hi) = if a < b { (ca, cb) } else { (cb, ca) };

    // Variables are D(i,k) for 1 <= i <= d (window-relative), 1 <= k <= n-1,
    // plus the pinned top-right entry of the last cell.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
    enum Var {
        Sum(usize, usize),
        Last,
    }
    let mut next: HashMap<Var, Var> = HashMap::new();
    for p in 1..d {
        for k in 1..n - 1 {
            next.insert(Var::Sum(p, k), Var::Sum(p + 1, k + 1));
        }
        let target = if p + 1 == d { Var::Last } else { Var::Sum(p + 2, 1) };
        next.insert(Var::Sum(p, n - 1), target);
    }
    let has_pred: std::collections::HashSet<Var> = next.values().copied().collect();
    let starts = (1..=d).flat_map(|i| (1..n).map(move |k| Var::Sum(i, k))).filter(|v| !has_pred.contains(v));

    let pinned_lo = Var::Sum(1, 1);
    let (u, v) = (lo.get(1, 2) as u64, hi.get(1, 2) as u64);
    let mut value: HashMap<Var, i64> = HashMap::new();
    for s in starts {
        let mut chain = vec![s];
        while let Some(&t) = next.get(chain.last().expect("nonempty")) {
            chain.push(t);
        }
        let ends_high = *chain.last().expect("nonempty") == Var::Last;
        let values: Vec<i64> = match (s == pinned_lo, ends_high) {
            (true, true) => zig_sequence(n as u64 + 1, u, v, chain.len())?.into_iter().map(|z| z as i64).collect(),
            (true, false) => vec![u as i64; chain.len()],
            (false, true) => vec![v as i64; chain.len()],
            (false, false) => vec![0; chain.len()],
        };
        value.extend(chain.into_iter().zip(values));
    }

    let mut cells = vec![MatrixStrategy::zero(n); d + 1];
    cells[0] = lo.clone();
    cells[d] = hi.clone();
    for i in 1..=d {
        for k in 1..n {
            let s = value[&Var::Sum(i, k)];
            if k == 1 {
                if i > 1 {
                    cells[i - 1].set(1, 2, s);
                }
            } else if i == 1 {
                cells[1].set(k, 1, s - lo.get(k, 2) as i64);
            } else if i == d {
                cells[d - 1].set(k, 2, s - hi.get(k, 1) as i64);
            } else {
                cells[i].set(k, 1, s);
            }
        }
    }
    let w = MatrixWindow::new(n, a.min(b), cells)?;
    if !w.is_semiperfect() || w.at(a) != Some(ca) || w.at(b) != Some(cb) {
        return Err(Error::Internal(format!("semi-perfect window for a={a}, b={b} failed verification")));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m3(rows: [[u8; 2]; 2]) -> MatrixStrategy {
        MatrixStrategy::new(3, rows.concat()).unwrap()
    }

    fn random_cell(n: usize, rng: &mut impl Rng) -> MatrixStrategy {
        let mut m = MatrixStrategy::from_fn(n, |_, _| rng.random_range(0..=n as i64));
        m.set(1, 1, 0);
        m
    }

    #[test]
    fn worked_perfect_example() {
        let w = perfect_profile(3, &m3([[0, 1], [2, 3]]), 0, 2).unwrap();
        assert_eq!(w.cells(), [m3([[0, 1], [2, 3]]), m3([[0, 0], [1, 1]]), m3([[0, 0], [0, 0]])]);
    }

    #[test]
    fn adjacent_perfect_window_is_trivial() {
        let w = perfect_profile(3, &MatrixStrategy::zero(3), 0, 1).unwrap();
        assert!(w.cells().iter().all(MatrixStrategy::is_zero));
    }

    #[test]
    fn perfect_profiles_in_both_directions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..=7 {
            for _ in 0..30 {
                let m = random_cell(n, &mut rng);
                for d in 1..n as i64 {
                    for (a, b) in [(5, 5 + d), (5 + d, 5)] {
                        let w = perfect_profile(n, &m, a, b).unwrap();
                        assert_eq!(w.at(a), Some(&m));
                        assert!(w.at(b).unwrap().is_zero());
                    }
                }
            }
        }
        assert!(perfect_profile(3, &MatrixStrategy::zero(3), 0, 3).is_err());
        assert!(perfect_profile(3, &m3([[1, 0], [0, 0]]), 0, 2).is_err());
    }

    #[test]
    fn sums_of_perfect_windows_stay_perfect() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let n = rng.random_range(3..=4);
            let d = rng.random_range(1..n as i64);
            let p = perfect_profile(n, &random_cell(n, &mut rng), 0, d).unwrap();
            let q = perfect_profile(n, &random_cell(n, &mut rng), d, 0).unwrap();
            assert!(sum_windows(&p, &q).unwrap().is_perfect());
        }
        let p = perfect_profile(3, &m3([[0, 1], [2, 3]]), 0, 2).unwrap();
        let zero = MatrixWindow::new(3, 0, vec![MatrixStrategy::zero(3); 3]).unwrap();
        assert_eq!(sum_windows(&p, &zero).unwrap(), p);
        let shifted = MatrixWindow::new(3, 1, vec![MatrixStrategy::zero(3); 3]).unwrap();
        assert!(sum_windows(&p, &shifted).is_err());
    }

    #[test]
    fn semiperfect_examples() {
        let zero = MatrixStrategy::zero(3);
        let w = semiperfect_profile(3, &zero, &zero, 0, 5).unwrap();
        assert!(w.cells().iter().all(MatrixStrategy::is_zero));
        let g = MatrixStrategy::g_cell(3);
        let w = semiperfect_profile(3, &zero, &g, 0, 4).unwrap();
        assert_eq!(w.len(), 5);
        assert!(semiperfect_profile(3, &zero, &g, 0, 3).is_err());
    }

    #[test]
    fn semiperfect_random_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 3..=6 {
            for d in n as i64 + 1..=3 * n as i64 + 2 {
                for _ in 0..10 {
                    let (ca, cb) = (random_cell(n, &mut rng), random_cell(n, &mut rng));
                    semiperfect_profile(n, &ca, &cb, -2, d - 2).unwrap();
                    semiperfect_profile(n, &ca, &cb, d, 0).unwrap();
                }
            }
        }
    }
}
