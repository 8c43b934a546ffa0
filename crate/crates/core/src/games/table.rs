use std::collections::{HashMap, HashSet};
use std::path::Path;

use crate::error::{Error, Result};
use crate::games::game::{Game, Payoff};
use crate::games::GameSpec;

const HEADER: &str = "cellgame-table v1";

/// Reads a payoff table file.
///
/// ```text
/// cellgame-table v1
/// strategies: a,b,c
/// default: 0
/// a b c 5
/// ```
pub fn load_game_table(path: impl AsRef<Path>) -> Result<Game> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_game_table(&text, GameSpec::File(path.to_path_buf()))
}

/// Parses the contents of a payoff table; `spec` is recorded as the game's name.
pub fn parse_game_table(text: &str, spec: GameSpec) -> Result<Game> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let err = |line: usize, msg: String| Error::Table { line, msg };
    let mut next = |what: &str| lines.next().ok_or_else(|| err(0, format!("missing {what}")));

    let (ln, header) = next("header")?;
    if header != HEADER {
        return Err(err(ln, format!("expected header `{HEADER}`")));
    }

    let (ln, line) = next("strategies line")?;
    let list = line.strip_prefix("strategies:").ok_or_else(|| err(ln, "expected `strategies:`".into()))?;
    let labels: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
    let mut seen = HashSet::new();
    for l in &labels {
        if l.is_empty() || l.contains(char::is_whitespace) {
            return Err(err(ln, format!("invalid strategy label `{l}`")));
        }
        if !seen.insert(l.as_str()) {
            return Err(err(ln, format!("duplicate strategy label `{l}`")));
        }
    }
    let index: HashMap<&str, u32> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i as u32)).collect();

    let (ln, line) = next("default line")?;
    let default = line
        .strip_prefix("default:")
        .and_then(|v| v.trim().parse::<i64>().ok())
        .ok_or_else(|| err(ln, "expected `default: <int>`".into()))?;

    let mut sparse = HashMap::new();
    let mut max_payoff = default;
    for (ln, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [x, y, z, v] = fields[..] else {
            return Err(err(ln, format!("expected `<x> <y> <z> <payoff>`, got `{line}`")));
        };
        let id = |l: &str| index.get(l).copied().ok_or_else(|| err(ln, format!("unknown strategy label `{l}`")));
        let key = (id(x)?, id(y)?, id(z)?);
        let v: i64 = v.parse().map_err(|_| err(ln, format!("payoff `{v}` is not an integer")))?;
        max_payoff = max_payoff.max(v);
        sparse.insert(key, v);
    }
    Ok(Game::new(spec, labels, Payoff::Table { sparse, default }, max_payoff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Game> {
        parse_game_table(text, GameSpec::File("t.tbl".into()))
    }

    #[test]
    fn single_triple_with_default() {
        let g = parse("cellgame-table v1\n# custom\nstrategies: a, b, c\ndefault: 0\na b c 5\n").unwrap();
        assert_eq!(g.labels(), ["a", "b", "c"]);
        let s = |l| g.parse_strategy(l).unwrap();
        assert_eq!(g.payoff(s("a"), s("b"), s("c")), 5);
        assert_eq!(g.payoff(s("b"), s("a"), s("c")), 0);
        assert_eq!(g.max_payoff(), 5);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let bad = [
            "strategies: a\ndefault: 0\n",
            "cellgame-table v1\nstrategies: a,a\ndefault: 0\n",
            "cellgame-table v1\nstrategies: a,b\ndefault: 0\na b d 1\n",
            "cellgame-table v1\nstrategies: a,b\ndefault: 0\na b a 1.5\n",
            "cellgame-table v1\nstrategies: a,b\ndefault: x\n",
            "cellgame-table v1\nstrategies: a,b\n",
            "cellgame-table v1\nstrategies: a,b\ndefault: 0\na b 1\n",
        ];
        for text in bad {
            assert!(matches!(parse(text), Err(Error::Table { .. })), "{text}");
        }
        let e = parse("cellgame-table v1\nstrategies: a,b\ndefault: 0\n\na b d 1\n").unwrap_err();
        assert_eq!(e, Error::Table { line: 5, msg: "unknown strategy label `d`".into() });
    }

    #[test]
    fn missing_file_is_an_io_error() {
        assert!(matches!(load_game_table("/nonexistent/table"), Err(Error::Io(_))));
    }
}
