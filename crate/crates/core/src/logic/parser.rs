//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! formula := or ( "->" formula )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "!" unary | "false" | "(" formula ")" | INT "||" INT
//! ```

use crate::error::{Error, Result};
use crate::logic::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Token {
    Int(i64),
    Parallel,
    Arrow,
    Bang,
    Amp,
    Bar,
    LParen,
    RParen,
    False,
}

/// Splits `text` into tokens with their byte offsets. `||` is always preferred
/// over `|`, and `->` over a leading minus sign.
pub fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'|' if bytes.get(i + 1) == Some(&b'|') => {
                i += 2;
                Token::Parallel
            }
            b'|' => {
                i += 1;
                Token::Bar
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Token::Arrow
            }
            b'!' => {
                i += 1;
                Token::Bang
            }
            b'&' => {
                i += 1;
                Token::Amp
            }
            b'(' => {
                i += 1;
                Token::LParen
            }
            b')' => {
                i += 1;
                Token::RParen
            }
            b'-' | b'0'..=b'9' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &text[start..i];
                if lit == "-" {
                    return Err(Error::syntax(start, "expected digits after `-`"));
                }
                let v = lit
                    .parse::<i64>()
                    .map_err(|_| Error::Overflow(format!("integer `{lit}` at position {start} is outside the 64-bit range")))?;
                Token::Int(v)
            }
            _ if text[i..].starts_with("false") => {
                i += 5;
                Token::False
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        let at = self.offset();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(Error::syntax(at, format!("expected {what}, found {t:?}"))),
            None => Err(Error::syntax(at, format!("expected {what}, found end of input"))),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.peek() == Some(Token::Arrow) {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.peek() == Some(Token::Bar) {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(Token::Amp) {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let at = self.offset();
        match self.bump() {
            Some(Token::Bang) => Ok(Formula::not(self.unary()?)),
            Some(Token::False) => Ok(Formula::Bottom),
            Some(Token::LParen) => {
                let f = self.formula()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(f)
            }
            Some(Token::Int(a)) => {
                self.expect(Token::Parallel, "`||`")?;
                let at = self.offset();
                match self.bump() {
                    Some(Token::Int(b)) => Ok(Formula::Atom(a, b)),
                    _ => Err(Error::syntax(at, "expected integer after `||`")),
                }
            }
            Some(t) => Err(Error::syntax(at, format!("unexpected token {t:?}"))),
            None => Err(Error::syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses a formula in the concrete syntax (see the module docs).
pub fn parse_formula(text: &str) -> Result<Formula> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, end: text.len() };
    let f = p.formula()?;
    if p.pos < p.tokens.len() {
        let at = p.offset();
        return Err(Error::syntax(at, "trailing input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implication_of_atoms() {
        let f = parse_formula("0 || 1 -> 5 || 6").unwrap();
        assert_eq!(f, Formula::implies(Formula::atom(0, 1), Formula::atom(5, 6)));
    }

    #[test]
    fn negation_desugars_to_implication() {
        let f = parse_formula("!(0||0)").unwrap();
        assert_eq!(f, Formula::not(Formula::atom(0, 0)));
        assert_eq!(f.desugar(), Formula::implies(Formula::atom(0, 0), Formula::Bottom));
    }

    #[test]
    fn maximal_munch_separates_parallel_from_bar() {
        let toks: Vec<Token> = tokenize("0 || 1 | 2 || 3").unwrap().into_iter().map(|t| t.1).collect();
        assert_eq!(
            toks,
            vec![
                Token::Int(0),
                Token::Parallel,
                Token::Int(1),
                Token::Bar,
                Token::Int(2),
                Token::Parallel,
                Token::Int(3)
            ]
        );
        let f = parse_formula("0 || 1 | 2 || 3").unwrap();
        assert_eq!(f, Formula::or(Formula::atom(0, 1), Formula::atom(2, 3)));
        // No whitespace at all: `|||` is `||` then `|`.
        let g = parse_formula("0||1|||2||3");
        assert!(g.is_err());
        assert_eq!(parse_formula("0||1|2||3").unwrap(), f);
    }

    #[test]
    fn negative_integers_and_arrows() {
        let f = parse_formula("-1||-2->-3||4").unwrap();
        assert_eq!(f, Formula::implies(Formula::atom(-1, -2), Formula::atom(-3, 4)));
    }

    #[test]
    fn implication_is_right_associative_and_weakest() {
        let f = parse_formula("0||1 & 0||2 -> 0||3 -> false").unwrap();
        let expect = Formula::implies(
            Formula::and(Formula::atom(0, 1), Formula::atom(0, 2)),
            Formula::implies(Formula::atom(0, 3), Formula::Bottom),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_formula("0||") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        match parse_formula("0||1 ->") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("(0||1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("0||1 0||1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("x"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_formula(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn overflow_is_its_own_error() {
        assert!(matches!(parse_formula("9223372036854775808||0"), Err(Error::Overflow(_))));
        assert_eq!(
            parse_formula("-9223372036854775808||9223372036854775807").unwrap(),
            Formula::atom(i64::MIN, i64::MAX)
        );
    }
}
