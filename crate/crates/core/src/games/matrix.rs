use std::fmt;

use crate::error::{Error, Result};

/// Largest `n` for which `Gn` payoffs are evaluated.
pub const MAX_N: usize = 64;

/// A strategy of `Gn` for `n >= 3`: an `(n-1) x 2` matrix over `Z_{n+1}`.
///
/// Rows and columns are addressed 1-based through [`get`](Self::get) to
/// match the usual matrix notation; storage is row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixStrategy {
    n: usize,
    entries: Vec<u8>,
}

fn check_n(n: usize) -> Result<()> {
    if !(3..=MAX_N).contains(&n) {
        return Err(Error::Precondition(format!("matrix strategies need 3 <= n <= {MAX_N}, got {n}")));
    }
    Ok(())
}

impl MatrixStrategy {
    pub fn zero(n: usize) -> Self {
        check_n(n).expect("valid n");
        MatrixStrategy { n, entries: vec![0; 2 * (n - 1)] }
    }

    /// Row-major entries, each reduced modulo `n+1` by the caller.
    pub fn new(n: usize, entries: Vec<u8>) -> Result<Self> {
        check_n(n)?;
        if entries.len() != 2 * (n - 1) {
            return Err(Error::Precondition(format!(
                "expected {} entries for n={n}, got {}",
                2 * (n - 1),
                entries.len()
            )));
        }
        if let Some(&e) = entries.iter().find(|&&e| e as usize > n) {
            return Err(Error::Precondition(format!("entry {e} is not a residue mod {}", n + 1)));
        }
        Ok(MatrixStrategy { n, entries })
    }

    /// Builds a matrix from `(row, col) -> value`; values are reduced mod `n+1`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        check_n(n).expect("valid n");
        let m = (n + 1) as i64;
        let mut entries = Vec::with_capacity(2 * (n - 1));
        for row in 1..n {
            for col in 1..=2 {
                entries.push(f(row, col).rem_euclid(m) as u8);
            }
        }
        MatrixStrategy { n, entries }
    }

    /// The matrix whose entries are all `[0]` except `[n]` in the right column.
    pub fn g_cell(n: usize) -> Self {
        Self::from_fn(n, |_, col| if col == 2 { n as i64 } else { 0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> usize {
        self.n + 1
    }

    pub fn rows(&self) -> usize {
        self.n - 1
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[(row - 1) * 2 + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        let m = self.modulus() as i64;
        self.entries[(row - 1) * 2 + (col - 1)] = value.rem_euclid(m) as u8;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Element-wise sum modulo `n+1`.
    pub fn add(&self, other: &MatrixStrategy) -> Result<MatrixStrategy> {
        same_n(&[self, other])?;
        let m = self.modulus() as u16;
        let entries =
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| ((a as u16 + b as u16) % m) as u8).collect();
        Ok(MatrixStrategy { n: self.n, entries })
    }

    /// Position of this matrix in the canonical (row-major, lexicographic) enumeration.
    pub fn index(&self) -> u64 {
        let m = self.modulus() as u64;
        self.entries.iter().fold(0u64, |acc, &e| acc * m + e as u64)
    }

    pub fn from_index(n: usize, mut index: u64) -> Self {
        check_n(n).expect("valid n");
        let m = (n + 1) as u64;
        let mut entries = vec![0u8; 2 * (n - 1)];
        for e in entries.iter_mut().rev() {
            *e = (index % m) as u8;
            index /= m;
        }
        MatrixStrategy { n, entries }
    }

    /// Parses `[r11,r12;r21,r22;...]`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let bad = || Error::UnknownLabel(text.to_string());
        let inner = text.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let mut entries = Vec::new();
        for row in inner.split(';') {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != 2 {
                return Err(bad());
            }
            for c in cols {
                entries.push(c.trim().parse::<u8>().map_err(|_| bad())?);
            }
        }
        MatrixStrategy::new(n, entries).map_err(|_| bad())
    }
}

impl fmt::Display for MatrixStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, pair) in self.entries.chunks(2).enumerate() {
            if r > 0 {
                write!(f, ";")?;
            }
            write!(f, "{},{}", pair[0], pair[1])?;
        }
        write!(f, "]")
    }
}

fn same_n(ms: &[&MatrixStrategy]) -> Result<usize> {
    let n = ms[0].n;
    if let Some(m) = ms.iter().find(|m| m.n != n) {
        return Err(Error::Mismatch(format!("matrix strategies for n={n} and n={}", m.n)));
    }
    Ok(n)
}

/// `(value mod m)` as a residue in `0..m`.
#[inline]
fn residue(value: i64, m: i64) -> i64 {
    value.rem_euclid(m)
}

/// The three payoff conditions of `Gn`, on raw row-major entry slices.
///
/// 1. `y[1,1] = 0`
/// 2. `y[k+1,2] + z[k+1,1] - x[k,2] - y[k,1]` in `{0,1}` for `1 <= k < n-1`
/// 3. `z[1,2] - x[n-1,2] - y[n-1,1]` in `{0,1}`
#[inline]
pub(crate) fn payoff_conditions_raw(n: usize, x: &[u8], y: &[u8], z: &[u8]) -> bool {
    let m = (n + 1) as i64;
    let at = |s: &[u8], row: usize, col: usize| s[(row - 1) * 2 + (col - 1)] as i64;
    if at(y, 1, 1) != 0 {
        return false;
    }
    for k in 1..n - 1 {
        let v = residue(at(y, k + 1, 2) + at(z, k + 1, 1) - at(x, k, 2) - at(y, k, 1), m);
        if v > 1 {
            return false;
        }
    }
    residue(at(z, 1, 2) - at(x, n - 1, 2) - at(y, n - 1, 1), m) <= 1
}

/// Payoff of `Gn` is 1 exactly when this holds.
pub fn gn_payoff_conditions(
    n: usize,
    x: &MatrixStrategy,
    y: &MatrixStrategy,
    z: &MatrixStrategy,
) -> Result<bool> {
    check_params(n, x, y, z)?;
    Ok(payoff_conditions_raw(n, &x.entries, &y.entries, &z.entries))
}

fn check_params(n: usize, x: &MatrixStrategy, y: &MatrixStrategy, z: &MatrixStrategy) -> Result<()> {
    let k = same_n(&[x, y, z])?;
    if k != n {
        return Err(Error::Mismatch(format!("expected n={n}, strategies have n={k}")));
    }
    Ok(())
}

/// Slack of the diagonal transitions at the middle player of `(prev, cur, next)`.
///
/// Writing `D(k) = prev[k,2] + cur[k,1]` for the value entering row `k` and
/// `U(k) = cur[k+1,2] + next[k+1,1]` for the value leaving it, returns
/// `U(k) - D(k)` for `k < n-1` followed by `next[1,2] - D(n-1)`, all mod `n+1`.
fn diagonal_steps(prev: &MatrixStrategy, cur: &MatrixStrategy, next: &MatrixStrategy) -> Vec<i64> {
    let n = cur.n;
    let m = (n + 1) as i64;
    let entering = |k: usize| prev.get(k, 2) as i64 + cur.get(k, 1) as i64;
    let mut steps: Vec<i64> = (1..n - 1)
        .map(|k| residue(cur.get(k + 1, 2) as i64 + next.get(k + 1, 1) as i64 - entering(k), m))
        .collect();
    steps.push(residue(next.get(1, 2) as i64 - entering(n - 1), m));
    steps
}

/// Semi-perfect at the middle player of `(prev, cur, next)`: `cur[1,1] = 0`
/// and every diagonal step is `[0]` or `[1]`.
pub fn semiperfect_triple(
    n: usize,
    prev: &MatrixStrategy,
    cur: &MatrixStrategy,
    next: &MatrixStrategy,
) -> Result<bool> {
    check_params(n, prev, cur, next)?;
    Ok(cur.get(1, 1) == 0 && diagonal_steps(prev, cur, next).iter().all(|&s| s <= 1))
}

/// Perfect at the middle player: `cur[1,1] = 0` and every diagonal step is `[0]`.
pub fn perfect_triple(
    n: usize,
    prev: &MatrixStrategy,
    cur: &MatrixStrategy,
    next: &MatrixStrategy,
) -> Result<bool> {
    check_params(n, prev, cur, next)?;
    Ok(cur.get(1, 1) == 0 && diagonal_steps(prev, cur, next).iter().all(|&s| s == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3(rows: [[u8; 2]; 2]) -> MatrixStrategy {
        MatrixStrategy::new(3, rows.concat()).unwrap()
    }

    #[test]
    fn payoff_condition_examples() {
        let zero = MatrixStrategy::zero(3);
        assert!(gn_payoff_conditions(3, &zero, &zero, &zero).unwrap());
        let y = m3([[1, 0], [0, 0]]);
        assert!(!gn_payoff_conditions(3, &zero, &y, &zero).unwrap());
        let z = m3([[0, 2], [0, 0]]);
        assert!(!gn_payoff_conditions(3, &zero, &zero, &z).unwrap());
        for f in [gn_payoff_conditions, semiperfect_triple] {
            assert!(f(3, &zero, &zero, &zero).unwrap());
            assert!(!f(3, &zero, &y, &zero).unwrap());
            assert!(!f(3, &zero, &zero, &z).unwrap());
        }
    }

    #[test]
    fn named_cells_are_semiperfect() {
        for n in 3..=8 {
            let f = MatrixStrategy::zero(n);
            let g = MatrixStrategy::g_cell(n);
            assert!(semiperfect_triple(n, &f, &f, &f).unwrap());
            assert!(semiperfect_triple(n, &g, &g, &g).unwrap());
            assert!(perfect_triple(n, &f, &f, &f).unwrap());
        }
    }

    #[test]
    fn worked_perfect_triple() {
        let x = m3([[0, 1], [2, 3]]);
        let y = m3([[0, 0], [1, 1]]);
        let z = MatrixStrategy::zero(3);
        assert!(perfect_triple(3, &x, &y, &z).unwrap());
    }

    #[test]
    fn parameter_mismatch_is_an_error() {
        let a = MatrixStrategy::zero(3);
        let b = MatrixStrategy::zero(4);
        assert!(matches!(gn_payoff_conditions(3, &a, &a, &b), Err(Error::Mismatch(_))));
        assert!(matches!(semiperfect_triple(4, &a, &a, &a), Err(Error::Mismatch(_))));
        assert!(matches!(perfect_triple(3, &b, &b, &b), Err(Error::Mismatch(_))));
    }

    #[test]
    fn codec_and_index_round_trip() {
        for i in [0u64, 1, 17, 255] {
            let m = MatrixStrategy::from_index(3, i);
            assert_eq!(m.index(), i);
            assert_eq!(MatrixStrategy::parse(3, &m.to_string()).unwrap(), m);
        }
        assert_eq!(MatrixStrategy::from_index(3, 255).to_string(), "[3,3;3,3]");
        assert_eq!(MatrixStrategy::from_index(3, 1).to_string(), "[0,0;0,1]");
        assert!(MatrixStrategy::parse(3, "[0,4;0,0]").is_err());
        assert!(MatrixStrategy::parse(3, "[0,0;0]").is_err());
        assert!(MatrixStrategy::new(3, vec![0; 3]).is_err());
    }
}
