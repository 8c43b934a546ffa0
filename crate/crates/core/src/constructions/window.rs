use crate::engine::{EventuallyPeriodicProfile, ProfileWindow};
use crate::error::{Error, Result};
use crate::games::{perfect_triple, semiperfect_triple, MatrixStrategy};

/// A bi-infinite `Gn` profile.
pub type MatrixProfile = EventuallyPeriodicProfile<MatrixStrategy>;

/// A finite stretch of `Gn` strategies, all with the same `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixWindow {
    n: usize,
    start: i64,
    cells: Vec<MatrixStrategy>,
}

impl MatrixWindow {
    pub fn new(n: usize, start: i64, cells: Vec<MatrixStrategy>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Precondition("a window needs at least one cell".into()));
        }
        if let Some(c) = cells.iter().find(|c| c.n() != n) {
            return Err(Error::Mismatch(format!("window for n={n} holds a cell for n={}", c.n())));
        }
        Ok(MatrixWindow { n, start, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Position of the last cell.
    pub fn last(&self) -> i64 {
        self.start + self.cells.len() as i64 - 1
    }

    pub fn cells(&self) -> &[MatrixStrategy] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<MatrixStrategy> {
        self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The cell at absolute position `i`.
    pub fn at(&self, i: i64) -> Option<&MatrixStrategy> {
        if i < self.start {
            return None;
        }
        self.cells.get((i - self.start) as usize)
    }

    /// Players strictly inside the window.
    pub fn interior(&self) -> impl Iterator<Item = i64> {
        (self.start + 1)..self.last()
    }

    fn triple(&self, i: i64) -> Option<(&MatrixStrategy, &MatrixStrategy, &MatrixStrategy)> {
        Some((self.at(i - 1)?, self.at(i)?, self.at(i + 1)?))
    }

    /// Semi-perfect at player `i`; false when `i` is not interior.
    pub fn semiperfect_at(&self, i: i64) -> bool {
        self.triple(i).is_some_and(|(x, y, z)| semiperfect_triple(self.n, x, y, z).expect("uniform n"))
    }

    pub fn perfect_at(&self, i: i64) -> bool {
        self.triple(i).is_some_and(|(x, y, z)| perfect_triple(self.n, x, y, z).expect("uniform n"))
    }

    pub fn is_semiperfect(&self) -> bool {
        self.interior().all(|i| self.semiperfect_at(i))
    }

    pub fn is_perfect(&self) -> bool {
        self.interior().all(|i| self.perfect_at(i))
    }

    pub fn to_profile_window(&self) -> ProfileWindow<MatrixStrategy> {
        ProfileWindow { start: self.start, cells: self.cells.clone() }
    }

    pub(crate) fn push_back(&mut self, cell: MatrixStrategy) {
        self.cells.push(cell);
    }

    pub(crate) fn push_front(&mut self, cell: MatrixStrategy) {
        self.cells.insert(0, cell);
        self.start -= 1;
    }
}

/// Whether `p` is an equilibrium of `Gn`, i.e. semi-perfect at every player.
pub fn verify_matrix_profile(n: usize, p: &MatrixProfile) -> bool {
    let cells = p.left.iter().chain(&p.mid).chain(&p.right);
    if cells.into_iter().any(|c| c.n() != n) {
        return false;
    }
    p.check_range().all(|i| semiperfect_triple(n, p.at(i - 1), p.at(i), p.at(i + 1)).expect("uniform n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_mixed_parameters() {
        let cells = vec![MatrixStrategy::zero(3), MatrixStrategy::zero(4)];
        assert!(matches!(MatrixWindow::new(3, 0, cells), Err(Error::Mismatch(_))));
        assert!(MatrixWindow::new(3, 0, vec![]).is_err());
    }

    #[test]
    fn zero_window_is_perfect() {
        let w = MatrixWindow::new(4, -3, vec![MatrixStrategy::zero(4); 5]).unwrap();
        assert_eq!(w.interior().collect::<Vec<_>>(), [-2, -1, 0]);
        assert!(w.is_perfect() && w.is_semiperfect());
        assert!(!w.semiperfect_at(-3));
        assert!(verify_matrix_profile(4, &EventuallyPeriodicProfile::constant(MatrixStrategy::zero(4))));
        assert!(!verify_matrix_profile(3, &EventuallyPeriodicProfile::constant(MatrixStrategy::zero(4))));
    }
}
