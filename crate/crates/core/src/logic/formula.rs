use std::collections::BTreeSet;
use std::fmt;

/// A formula over the interchangeability predicate `a||b`.
///
/// `Not`, `And` and `Or` are kept as native nodes so that formulas print back
/// the way they were written; [`Formula::desugar`] rewrites them into the core
/// language of `false`, atoms and implication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Bottom,
    Atom(i64, i64),
    Implies(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(a: i64, b: i64) -> Self {
        Formula::Atom(a, b)
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    /// Rewrites `Not`/`And`/`Or` into `false` and `->`.
    ///
    /// `!x` is `x -> false`, `x & y` is `!(x -> !y)` and `x | y` is `!x -> y`.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::Bottom => Formula::Bottom,
            Formula::Atom(a, b) => Formula::Atom(*a, *b),
            Formula::Implies(l, r) => Formula::implies(l.desugar(), r.desugar()),
            Formula::Not(x) => Formula::implies(x.desugar(), Formula::Bottom),
            Formula::And(l, r) => {
                let inner = Formula::implies(
                    l.desugar(),
                    Formula::implies(r.desugar(), Formula::Bottom),
                );
                Formula::implies(inner, Formula::Bottom)
            }
            Formula::Or(l, r) => Formula::implies(
                Formula::implies(l.desugar(), Formula::Bottom),
                r.desugar(),
            ),
        }
    }

    /// Evaluates the formula classically, asking `atom` for the truth of each atom.
    pub fn eval_with(&self, atom: &mut impl FnMut(i64, i64) -> bool) -> bool {
        match self {
            Formula::Bottom => false,
            Formula::Atom(a, b) => atom(*a, *b),
            Formula::Implies(l, r) => !l.eval_with(atom) || r.eval_with(atom),
            Formula::Not(x) => !x.eval_with(atom),
            Formula::And(l, r) => l.eval_with(atom) && r.eval_with(atom),
            Formula::Or(l, r) => l.eval_with(atom) || r.eval_with(atom),
        }
    }

    /// Distinct atoms in order of first occurrence.
    pub fn atoms(&self) -> Vec<(i64, i64)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.visit_atoms(&mut |a, b| {
            if seen.insert((a, b)) {
                out.push((a, b));
            }
        });
        out
    }

    fn visit_atoms(&self, f: &mut impl FnMut(i64, i64)) {
        match self {
            Formula::Bottom => {}
            Formula::Atom(a, b) => f(*a, *b),
            Formula::Not(x) => x.visit_atoms(f),
            Formula::Implies(l, r) | Formula::And(l, r) | Formula::Or(l, r) => {
                l.visit_atoms(f);
                r.visit_atoms(f);
            }
        }
    }

    /// `{|a-b| : a||b occurs in the formula, a != b}`.
    pub fn distances(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a, b| {
            if a != b {
                out.insert(a.abs_diff(b));
            }
        });
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if f.precedence() < min {
        write!(out, "(")?;
        write_at(f, 0, out)?;
        return write!(out, ")");
    }
    match f {
        Formula::Bottom => write!(out, "false"),
        Formula::Atom(a, b) => write!(out, "{a}||{b}"),
        Formula::Not(x) => {
            write!(out, "!")?;
            // Atoms are parenthesised after `!` for readability; both forms parse.
            if matches!(**x, Formula::Atom(..)) {
                write!(out, "({x})")
            } else {
                write_at(x, 3, out)
            }
        }
        // Right associative.
        Formula::Implies(l, r) => {
            write_at(l, 1, out)?;
            write!(out, " -> ")?;
            write_at(r, 0, out)
        }
        // Left associative.
        Formula::Or(l, r) => {
            write_at(l, 1, out)?;
            write!(out, " | ")?;
            write_at(r, 2, out)
        }
        Formula::And(l, r) => {
            write_at(l, 2, out)?;
            write!(out, " & ")?;
            write_at(r, 3, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, f)
    }
}
