use std::fmt;

/// A penny face in the matching-pennies part of `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Penny {
    Head,
    Tail,
}

/// A strategy of `G2`: a residue mod 3, or a pair of pennies played against
/// the left and right neighbour respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum G2Strategy {
    Residue(u8),
    Pennies(Penny, Penny),
}

use Penny::{Head, Tail};

impl G2Strategy {
    /// Canonical order: `0`, `1`, `2`, `HH`, `HT`, `TH`, `TT`.
    pub const ALL: [G2Strategy; 7] = [
        G2Strategy::Residue(0),
        G2Strategy::Residue(1),
        G2Strategy::Residue(2),
        G2Strategy::Pennies(Head, Head),
        G2Strategy::Pennies(Head, Tail),
        G2Strategy::Pennies(Tail, Head),
        G2Strategy::Pennies(Tail, Tail),
    ];

    pub fn from_id(id: usize) -> Self {
        Self::ALL[id]
    }

    pub fn id(self) -> usize {
        Self::ALL.iter().position(|&s| s == self).expect("listed")
    }

    fn residue(self) -> Option<u8> {
        match self {
            G2Strategy::Residue(r) => Some(r),
            G2Strategy::Pennies(..) => None,
        }
    }

    fn pennies(self) -> Option<(Penny, Penny)> {
        match self {
            G2Strategy::Pennies(a, b) => Some((a, b)),
            G2Strategy::Residue(_) => None,
        }
    }
}

impl fmt::Display for G2Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let face = |p: &Penny| if *p == Head { 'H' } else { 'T' };
        match self {
            G2Strategy::Residue(r) => write!(f, "{r}"),
            G2Strategy::Pennies(a, b) => write!(f, "{}{}", face(a), face(b)),
        }
    }
}

/// Pays a pennies strategy unless both neighbours are residues with
/// `z - x` in `{0, 1}`.
pub fn u1(x: G2Strategy, y: G2Strategy, z: G2Strategy) -> i64 {
    let trigger = match (x.residue(), z.residue()) {
        (Some(x), Some(z)) => (x + 2) % 3 == z,
        _ => true,
    };
    (trigger && y.pennies().is_some()) as i64
}

/// The right player of a pennies pair wants to match the left one's penny.
pub fn u2(x: G2Strategy, y: G2Strategy) -> i64 {
    match (x.pennies(), y.pennies()) {
        (Some((_, x2)), Some((y1, _))) => (x2 == y1) as i64,
        _ => 0,
    }
}

/// The left player of a pennies pair wants to mismatch the right one's penny.
pub fn u3(y: G2Strategy, z: G2Strategy) -> i64 {
    match (y.pennies(), z.pennies()) {
        (Some((_, y2)), Some((z1, _))) => (y2 != z1) as i64,
        _ => 0,
    }
}

pub fn payoff(x: G2Strategy, y: G2Strategy, z: G2Strategy) -> i64 {
    u1(x, y, z) + u2(x, y) + u3(y, z)
}
