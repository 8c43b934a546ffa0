use crate::constructions::MatrixWindow;
use crate::error::{Error, Result};

/// Checks the diagonal sums `x[a+k][k+1,2] + x[a+k+1][k+1,1]` against
/// `{0,...,k}` for `k <= n-2`, and `x[a+n][1,2]` against `{0,...,n-1}`,
/// where `a` is the window start.
///
/// Only the first `n+1` cells are read. A window that is semi-perfect inside
/// always passes; any window that fails was not semi-perfect.
pub fn diagonal_check(n: usize, w: &MatrixWindow) -> Result<bool> {
    if w.n() != n {
        return Err(Error::Mismatch(format!("window has n={}, expected {n}", w.n())));
    }
    if w.len() < n + 1 {
        return Err(Error::Precondition(format!("need at least {} cells, got {}", n + 1, w.len())));
    }
    let c = w.cells();
    if c[0].get(1, 2) != 0 {
        return Err(Error::Precondition("first cell must have top-right entry 0".into()));
    }
    let modulus = n + 1;
    let diagonal = (0..n - 1).all(|k| {
        let s = (c[k].get(k + 1, 2) as usize + c[k + 1].get(k + 1, 1) as usize) % modulus;
        s <= k
    });
    Ok(diagonal && (c[n].get(1, 2) as usize) < n)
}
