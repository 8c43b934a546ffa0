use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Symbolic name of a game: one of the built-in families, a product, or a
/// payoff table on disk.
///
/// Text form: `G0 | G1 | G2 | GINF | GN:<n> | PROD(<spec>,...) | FILE:<path>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GameSpec {
    G0,
    G1,
    G2,
    /// `n >= 3`.
    Gn(u64),
    Ginf,
    /// Nonempty and flat (no nested products).
    Prod(Vec<GameSpec>),
    File(PathBuf),
}

impl GameSpec {
    /// The game whose only non-interchangeable distances are `0` and `d`.
    pub fn for_distance(d: u64) -> GameSpec {
        match d {
            0 => GameSpec::G0,
            1 => GameSpec::G1,
            2 => GameSpec::G2,
            n => GameSpec::Gn(n),
        }
    }

    /// Normalized product: nested products are flattened and a single factor
    /// stands for itself.
    pub fn product(parts: Vec<GameSpec>) -> GameSpec {
        let mut flat = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                GameSpec::Prod(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        assert!(!flat.is_empty(), "empty product");
        if flat.len() == 1 {
            flat.pop().expect("one factor")
        } else {
            GameSpec::Prod(flat)
        }
    }

    /// The factors of a product, or the game itself.
    pub fn factors(&self) -> &[GameSpec] {
        match self {
            GameSpec::Prod(parts) => parts,
            other => std::slice::from_ref(other),
        }
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameSpec::G0 => write!(f, "G0"),
            GameSpec::G1 => write!(f, "G1"),
            GameSpec::G2 => write!(f, "G2"),
            GameSpec::Gn(n) => write!(f, "GN:{n}"),
            GameSpec::Ginf => write!(f, "GINF"),
            GameSpec::Prod(parts) => {
                write!(f, "PROD(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            GameSpec::File(p) => write!(f, "FILE:{}", p.display()),
        }
    }
}

impl FromStr for GameSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (spec, rest) = parse_spec(s.trim())?;
        if !rest.trim().is_empty() {
            return Err(Error::Spec(format!("trailing input `{rest}` in `{s}`")));
        }
        Ok(spec)
    }
}

fn parse_spec(s: &str) -> Result<(GameSpec, &str)> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix("PROD(") {
        let mut parts = Vec::new();
        let mut rest = rest;
        loop {
            let (part, tail) = parse_spec(rest)?;
            parts.push(part);
            let tail = tail.trim_start();
            if let Some(t) = tail.strip_prefix(',') {
                rest = t;
            } else if let Some(t) = tail.strip_prefix(')') {
                return Ok((GameSpec::product(parts), t));
            } else {
                return Err(Error::Spec(format!("expected `,` or `)` before `{tail}`")));
            }
        }
    }
    if let Some(path) = s.strip_prefix("FILE:") {
        // A path runs to the next top-level `,` or `)`.
        let end = path.find([',', ')']).unwrap_or(path.len());
        let p = path[..end].trim();
        if p.is_empty() {
            return Err(Error::Spec("empty FILE path".into()));
        }
        return Ok((GameSpec::File(PathBuf::from(p)), &path[end..]));
    }
    if let Some(num) = s.strip_prefix("GN:") {
        let end = num.find(|c: char| !c.is_ascii_digit()).unwrap_or(num.len());
        let n: u64 = num[..end].parse().map_err(|_| Error::Spec(format!("bad GN parameter in `{s}`")))?;
        return Ok((GameSpec::for_distance(n), &num[end..]));
    }
    for (name, spec) in [("GINF", GameSpec::Ginf), ("G0", GameSpec::G0), ("G1", GameSpec::G1), ("G2", GameSpec::G2)] {
        if let Some(rest) = s.strip_prefix(name) {
            if rest.starts_with(|c: char| c.is_alphanumeric()) {
                continue;
            }
            return Ok((spec, rest));
        }
    }
    Err(Error::Spec(format!("unrecognized game `{s}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for text in ["G0", "G1", "G2", "GINF", "GN:3", "PROD(G1,G2)", "PROD(G1,GN:3,GINF)", "FILE:g0.tbl"] {
            let spec: GameSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert_eq!("PROD( G1 , PROD(G2,GN:4) )".parse::<GameSpec>().unwrap().to_string(), "PROD(G1,G2,GN:4)");
        assert_eq!("PROD(GN:3)".parse::<GameSpec>().unwrap(), GameSpec::Gn(3));
        assert_eq!("GN:2".parse::<GameSpec>().unwrap(), GameSpec::G2);
        assert_eq!(
            "PROD(FILE:a.tbl,G1)".parse::<GameSpec>().unwrap(),
            GameSpec::Prod(vec![GameSpec::File("a.tbl".into()), GameSpec::G1])
        );
    }

    #[test]
    fn rejects_garbage() {
        for text in ["", "G3", "GN:", "GN:x", "PROD()", "PROD(G1", "PROD(G1;G2)", "G1 G2", "FILE:", "G12"] {
            assert!(text.parse::<GameSpec>().is_err(), "{text}");
        }
    }
}
