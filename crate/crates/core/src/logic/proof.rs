//! Hilbert-style proofs: propositional tautologies, the Reflexivity,
//! Homogeneity and Symmetry schemes, and Modus Ponens.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{parse_formula, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    Taut,
    /// `a||a -> a||b`
    Refl(i64, i64),
    /// `a||b -> (a+c)||(b+c)`
    Hom(i64, i64, i64),
    /// `a||b -> b||a`
    Sym(i64, i64),
    /// Line `j` is `line_i -> this`.
    Mp(u64, u64),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Taut => write!(f, "TAUT"),
            Justification::Refl(a, b) => write!(f, "REFL {a} {b}"),
            Justification::Hom(a, b, c) => write!(f, "HOM {a} {b} {c}"),
            Justification::Sym(a, b) => write!(f, "SYM {a} {b}"),
            Justification::Mp(i, j) => write!(f, "MP {i} {j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub index: u64,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProofScript {
    pub lines: Vec<ProofLine>,
}

impl ProofScript {
    pub fn push(&mut self, formula: Formula, justification: Justification) -> u64 {
        let index = self.lines.last().map_or(1, |l| l.index + 1);
        self.lines.push(ProofLine { index, formula, justification });
        index
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    /// Parses the line-oriented proof format:
    /// `<index>. <formula> ; TAUT | REFL a b | HOM a b c | SYM a b | MP i j`.
    pub fn parse(text: &str) -> Result<ProofScript> {
        let mut script = ProofScript::default();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Proof { line: lineno as u64, msg };
            let (index, rest) = line
                .split_once('.')
                .ok_or_else(|| bad("expected `<index>.`".into()))?;
            let index: u64 = index
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad line index `{}`", index.trim())))?;
            let (formula, just) = rest
                .rsplit_once(';')
                .ok_or_else(|| bad("expected `; <justification>`".into()))?;
            let formula = parse_formula(formula).map_err(|e| bad(e.to_string()))?;
            let justification = parse_justification(just).map_err(bad)?;
            script.lines.push(ProofLine { index, formula, justification });
        }
        Ok(script)
    }
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{}. {} ; {}", l.index, l.formula, l.justification)?;
        }
        Ok(())
    }
}

fn parse_justification(text: &str) -> std::result::Result<Justification, String> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let ints = |n: usize| -> std::result::Result<Vec<i64>, String> {
        if words.len() != n + 1 {
            return Err(format!("`{}` takes {n} arguments", words[0]));
        }
        words[1..]
            .iter()
            .map(|w| w.parse::<i64>().map_err(|_| format!("bad integer `{w}`")))
            .collect()
    };
    match words.first().map(|w| w.to_ascii_uppercase()).as_deref() {
        Some("TAUT") if words.len() == 1 => Ok(Justification::Taut),
        Some("TAUT") => Err("`TAUT` takes no arguments".into()),
        Some("REFL") => ints(2).map(|v| Justification::Refl(v[0], v[1])),
        Some("HOM") => ints(3).map(|v| Justification::Hom(v[0], v[1], v[2])),
        Some("SYM") => ints(2).map(|v| Justification::Sym(v[0], v[1])),
        Some("MP") => {
            let v = ints(2)?;
            if v.iter().any(|&x| x < 1) {
                return Err("MP references must be positive".into());
            }
            Ok(Justification::Mp(v[0] as u64, v[1] as u64))
        }
        Some(other) => Err(format!("unknown justification `{other}`")),
        None => Err("missing justification".into()),
    }
}

/// True iff `f` is a propositional tautology when distinct atoms are read as
/// independent propositional variables.
pub fn is_tautology(f: &Formula, max_atoms: usize) -> Result<bool> {
    let atoms = f.atoms();
    if atoms.len() > max_atoms {
        return Err(Error::cap("distinct atoms", atoms.len() as u64, max_atoms as u64));
    }
    let slot: HashMap<(i64, i64), usize> = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    for mask in 0u64..(1u64 << atoms.len()) {
        if !f.eval_with(&mut |a, b| mask >> slot[&(a, b)] & 1 == 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn add(a: i64, c: i64, line: u64) -> Result<i64> {
    a.checked_add(c).ok_or_else(|| Error::Proof {
        line,
        msg: format!("{a}+{c} overflows the 64-bit range"),
    })
}

/// Checks every line of the script and returns the conclusion (last formula).
pub fn check_proof(script: &ProofScript, max_atoms: usize) -> Result<Formula> {
    if script.lines.is_empty() {
        return Err(Error::Proof { line: 0, msg: "empty proof".into() });
    }
    let mut proved: HashMap<u64, &Formula> = HashMap::new();
    let mut last = 0u64;
    for l in &script.lines {
        let line = l.index;
        let fail = |msg: String| Err(Error::Proof { line, msg });
        if line == 0 || line <= last && !proved.is_empty() {
            return fail(format!("index {line} does not increase"));
        }
        let expected = match l.justification {
            Justification::Taut => {
                match is_tautology(&l.formula, max_atoms) {
                    Ok(true) => None,
                    Ok(false) => return fail("not a propositional tautology".into()),
                    Err(e) => return fail(e.to_string()),
                }
            }
            Justification::Refl(a, b) => {
                Some(Formula::implies(Formula::atom(a, a), Formula::atom(a, b)))
            }
            Justification::Hom(a, b, c) => Some(Formula::implies(
                Formula::atom(a, b),
                Formula::atom(add(a, c, line)?, add(b, c, line)?),
            )),
            Justification::Sym(a, b) => {
                Some(Formula::implies(Formula::atom(a, b), Formula::atom(b, a)))
            }
            Justification::Mp(i, j) => {
                let (Some(&fi), Some(&fj)) = (proved.get(&i), proved.get(&j)) else {
                    return fail(format!("MP {i} {j} references a line that is not earlier"));
                };
                match fj {
                    Formula::Implies(lhs, rhs) if **lhs == *fi && **rhs == l.formula => None,
                    _ => return fail(format!("line {j} is not `({fi}) -> ({})`", l.formula)),
                }
            }
        };
        if let Some(expected) = expected {
            if expected != l.formula {
                return fail(format!("scheme mismatch: expected {expected}"));
            }
        }
        proved.insert(line, &l.formula);
        last = line;
    }
    Ok(script.lines.last().map(|l| l.formula.clone()).expect("nonempty"))
}

/// Builds a proof of `a||b -> c||d` for `|a-b| = |c-d|`.
///
/// Same orientation (`a-b = c-d`) needs one Homogeneity instance with shift
/// `c-a`. Opposite orientation first flips `a||b` by Symmetry and then chains
/// the two implications through a tautology and two Modus Ponens steps.
pub fn abs_value_script(a: i64, b: i64, c: i64, d: i64) -> Result<ProofScript> {
    if a.abs_diff(b) != c.abs_diff(d) {
        return Err(Error::Precondition(format!("|{a}-{b}| != |{c}-{d}|")));
    }
    let overflow = || Error::Overflow(format!("shift for {a}||{b} -> {c}||{d}"));
    let ab = Formula::atom(a, b);
    let cd = Formula::atom(c, d);
    let mut s = ProofScript::default();
    // a-b = c-d, compared without overflow.
    let same_orientation = a.abs_diff(b) == 0 || (a > b) == (c > d);
    if same_orientation {
        let shift = c.checked_sub(a).ok_or_else(overflow)?;
        s.push(Formula::implies(ab, cd), Justification::Hom(a, b, shift));
        return Ok(s);
    }
    let ba = Formula::atom(b, a);
    let shift = c.checked_sub(b).ok_or_else(overflow)?;
    let flip = Formula::implies(ab.clone(), ba.clone());
    let shifted = Formula::implies(ba, cd.clone());
    let goal = Formula::implies(ab, cd);
    let l1 = s.push(flip.clone(), Justification::Sym(a, b));
    let l2 = s.push(shifted.clone(), Justification::Hom(b, a, shift));
    let chain = Formula::implies(shifted.clone(), goal.clone());
    let l3 = s.push(Formula::implies(flip, chain.clone()), Justification::Taut);
    let l4 = s.push(chain, Justification::Mp(l1, l3));
    s.push(goal, Justification::Mp(l2, l4));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(index: u64, f: &str, j: Justification) -> ProofLine {
        ProofLine { index, formula: parse_formula(f).unwrap(), justification: j }
    }

    #[test]
    fn single_homogeneity_line() {
        let s = ProofScript { lines: vec![line(1, "0||1 -> 5||6", Justification::Hom(0, 1, 5))] };
        assert_eq!(check_proof(&s, 20).unwrap(), parse_formula("0||1 -> 5||6").unwrap());
    }

    #[test]
    fn contraposition_via_tautology() {
        let s = ProofScript {
            lines: vec![
                line(1, "0||0 -> 0||5", Justification::Refl(0, 5)),
                line(2, "(0||0 -> 0||5) -> (!(0||5) -> !(0||0))", Justification::Taut),
                line(3, "!(0||5) -> !(0||0)", Justification::Mp(1, 2)),
            ],
        };
        assert_eq!(check_proof(&s, 20).unwrap(), parse_formula("!(0||5) -> !(0||0)").unwrap());
    }

    #[test]
    fn scheme_mismatch_names_expected_formula() {
        let s = ProofScript { lines: vec![line(1, "0||1 -> 2||4", Justification::Hom(0, 1, 2))] };
        let err = check_proof(&s, 20).unwrap_err();
        assert_eq!(err, Error::Proof { line: 1, msg: "scheme mismatch: expected 0||1 -> 2||3".into() });
    }

    #[test]
    fn rejects_bad_scripts() {
        let empty = ProofScript::default();
        assert!(check_proof(&empty, 20).is_err());
        let not_taut = ProofScript { lines: vec![line(1, "0||1 -> 0||2", Justification::Taut)] };
        assert!(matches!(check_proof(&not_taut, 20), Err(Error::Proof { line: 1, .. })));
        let forward_ref = ProofScript {
            lines: vec![
                line(1, "0||1", Justification::Mp(1, 2)),
                line(2, "0||1 -> 0||1", Justification::Taut),
            ],
        };
        assert!(matches!(check_proof(&forward_ref, 20), Err(Error::Proof { line: 1, .. })));
        let non_increasing = ProofScript {
            lines: vec![
                line(2, "0||1 -> 0||1", Justification::Taut),
                line(2, "0||1 -> 0||1", Justification::Taut),
            ],
        };
        assert!(matches!(check_proof(&non_increasing, 20), Err(Error::Proof { line: 2, .. })));
        let wide: Vec<String> = (0..21).map(|i| format!("0||{i}")).collect();
        let guard = ProofScript {
            lines: vec![line(1, &format!("{} -> 0||0", wide.join(" & ")), Justification::Taut)],
        };
        assert!(matches!(check_proof(&guard, 20), Err(Error::Proof { line: 1, .. })));
        let overflow = ProofScript {
            lines: vec![line(1, "0||1 -> 0||1", Justification::Hom(i64::MAX, 1, 1))],
        };
        assert!(check_proof(&overflow, 20).is_err());
    }

    #[test]
    fn abs_value_scripts_follow_orientation() {
        let s = abs_value_script(0, 1, 5, 6).unwrap();
        assert_eq!(s.lines.len(), 1);
        assert_eq!(s.lines[0].justification, Justification::Hom(0, 1, 5));
        let s = abs_value_script(0, 0, 5, 5).unwrap();
        assert_eq!(s.lines.len(), 1);
        assert_eq!(s.lines[0].justification, Justification::Hom(0, 0, 5));
        let s = abs_value_script(2, 0, 0, 2).unwrap();
        assert!(s.lines.len() > 1);
        assert!(s.lines.iter().any(|l| matches!(l.justification, Justification::Sym(..))));
        assert!(s.lines.iter().any(|l| matches!(l.justification, Justification::Hom(..))));
        assert_eq!(check_proof(&s, 20).unwrap(), parse_formula("2||0 -> 0||2").unwrap());
        assert!(abs_value_script(0, 1, 0, 2).is_err());
    }

    #[test]
    fn file_format_round_trip() {
        let text = "# contraposition\n1. 0||0 -> 0||5 ; REFL 0 5\n\n2. (0||0 -> 0||5) -> (!(0||5) -> !(0||0)) ; TAUT\n3. !(0||5) -> !(0||0) ; MP 1 2  # done\n";
        let s = ProofScript::parse(text).unwrap();
        assert_eq!(s.lines.len(), 3);
        assert_eq!(ProofScript::parse(&s.to_string()).unwrap(), s);
        assert!(ProofScript::parse("1 0||1 ; TAUT").is_err());
        assert!(ProofScript::parse("1. 0||1 ; FOO").is_err());
        assert!(ProofScript::parse("1. 0||1 ; HOM 1 2").is_err());
        assert!(ProofScript::parse("x. 0||1 ; TAUT").is_err());
    }
}
