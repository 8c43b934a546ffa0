use std::fmt::Display;

use crate::error::{Error, Result};

/// A bi-infinite profile `e_i` described finitely: `mid` occupies positions
/// `anchor..anchor+|mid|`, `left` repeats to the left of it and `right` to
/// the right.
///
/// For `i < anchor`, `e_i = left[(i - anchor) mod |left|]`, so the last cell
/// of `left` sits at `anchor - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicProfile<T> {
    pub anchor: i64,
    pub left: Vec<T>,
    pub mid: Vec<T>,
    pub right: Vec<T>,
}

/// A finite stretch `cells[0]` at `start`, `cells[1]` at `start + 1`, ...
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProfileWindow<T> {
    pub start: i64,
    pub cells: Vec<T>,
}

impl<T: Clone> EventuallyPeriodicProfile<T> {
    pub fn new(anchor: i64, left: Vec<T>, mid: Vec<T>, right: Vec<T>) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::Profile("periodic parts must be nonempty".into()));
        }
        Ok(EventuallyPeriodicProfile { anchor, left, mid, right })
    }

    /// The profile playing `s` everywhere.
    pub fn constant(s: T) -> Self {
        EventuallyPeriodicProfile { anchor: 0, left: vec![s.clone()], mid: Vec::new(), right: vec![s] }
    }

    /// First position after `mid`.
    pub fn mid_end(&self) -> i64 {
        self.anchor + self.mid.len() as i64
    }

    pub fn at(&self, i: i64) -> &T {
        if i < self.anchor {
            &self.left[(i - self.anchor).rem_euclid(self.left.len() as i64) as usize]
        } else if i < self.mid_end() {
            &self.mid[(i - self.anchor) as usize]
        } else {
            &self.right[(i - self.mid_end()).rem_euclid(self.right.len() as i64) as usize]
        }
    }

    /// Middle positions whose triples determine every triple of the profile.
    pub fn check_range(&self) -> std::ops::RangeInclusive<i64> {
        let l = self.left.len() as i64;
        let r = self.right.len() as i64;
        (self.anchor - 2 * l - 2)..=(self.mid_end() + 2 * r + 2)
    }

    /// The cells on `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> ProfileWindow<T> {
        ProfileWindow { start: lo, cells: (lo..=hi).map(|i| self.at(i).clone()).collect() }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> EventuallyPeriodicProfile<U> {
        EventuallyPeriodicProfile {
            anchor: self.anchor,
            left: self.left.iter().map(&mut f).collect(),
            mid: self.mid.iter().map(&mut f).collect(),
            right: self.right.iter().map(&mut f).collect(),
        }
    }

    /// Combines several profiles position by position.
    pub fn zip_with<U>(parts: &[Self], mut f: impl FnMut(Vec<&T>) -> U) -> EventuallyPeriodicProfile<U> {
        assert!(!parts.is_empty(), "nothing to zip");
        let lcm = |lens: &mut dyn Iterator<Item = usize>| lens.fold(1usize, |acc, l| acc / gcd(acc, l) * l);
        let left_len = lcm(&mut parts.iter().map(|p| p.left.len()));
        let right_len = lcm(&mut parts.iter().map(|p| p.right.len()));
        let anchor = parts.iter().map(|p| p.anchor).min().expect("nonempty");
        let end = parts.iter().map(|p| p.mid_end()).max().expect("nonempty");
        let mut cell = |i: i64| f(parts.iter().map(|p| p.at(i)).collect());
        let left = (0..left_len as i64).map(|j| cell(anchor - left_len as i64 + j)).collect();
        let mid = (anchor..end).map(&mut cell).collect();
        let right = (0..right_len as i64).map(|j| cell(end + j)).collect();
        EventuallyPeriodicProfile { anchor, left, mid, right }
    }
}

impl<T: Clone + PartialEq> EventuallyPeriodicProfile<T> {
    /// Shortens both periods to their minimal length.
    pub fn reduce(mut self) -> Self {
        self.left = minimal_period(&self.left);
        self.right = minimal_period(&self.right);
        self
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn minimal_period<T: Clone + PartialEq>(word: &[T]) -> Vec<T> {
    let n = word.len();
    let p = (1..=n).find(|&p| n.is_multiple_of(p) && (p..n).all(|i| word[i] == word[i - p])).unwrap_or(n);
    word[..p].to_vec()
}

impl<T> ProfileWindow<T> {
    pub fn new(start: i64, cells: Vec<T>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Profile("a window needs at least one cell".into()));
        }
        Ok(ProfileWindow { start, cells })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Position just past the last cell.
    pub fn end(&self) -> i64 {
        self.start + self.cells.len() as i64
    }

    pub fn get(&self, i: i64) -> Option<&T> {
        if i < self.start {
            return None;
        }
        self.cells.get((i - self.start) as usize)
    }
}

/// Splits at `sep` outside square brackets.
fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut last = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[last..i]);
                last = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[last..]);
    parts
}

fn cells<T>(text: &str, parse: &mut impl FnMut(&str) -> Result<T>) -> Result<Vec<T>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    split_top(text, ',').into_iter().map(|c| parse(c.trim())).collect()
}

fn join<T>(cells: &[T], label: &mut impl FnMut(&T) -> String) -> String {
    cells.iter().map(label).collect::<Vec<_>>().join(",")
}

/// Reads the `; key: value` fields of a `<kind> v1; ...` line in order.
fn fields<'a>(text: &'a str, kind: &str, keys: &[&str]) -> Result<Vec<&'a str>> {
    let parts = split_top(text.trim(), ';');
    if parts.len() != keys.len() + 1 || parts[0].trim() != format!("{kind} v1") {
        return Err(Error::Profile(format!("expected `{kind} v1; {}: ...`", keys.join(": ...; "))));
    }
    parts[1..]
        .iter()
        .zip(keys)
        .map(|(p, k)| {
            p.trim()
                .strip_prefix(k)
                .and_then(|r| r.strip_prefix(':'))
                .ok_or_else(|| Error::Profile(format!("expected field `{k}:`, got `{}`", p.trim())))
        })
        .collect()
}

fn int(text: &str) -> Result<i64> {
    text.trim().parse().map_err(|_| Error::Profile(format!("`{}` is not an integer", text.trim())))
}

impl<T: Clone> EventuallyPeriodicProfile<T> {
    /// `profile v1; anchor: <int>; left: ..; mid: ..; right: ..`
    pub fn to_text(&self, mut label: impl FnMut(&T) -> String) -> String {
        format!(
            "profile v1; anchor: {}; left: {}; mid: {}; right: {}",
            self.anchor,
            join(&self.left, &mut label),
            join(&self.mid, &mut label),
            join(&self.right, &mut label)
        )
    }

    pub fn parse_text(text: &str, mut parse: impl FnMut(&str) -> Result<T>) -> Result<Self> {
        let f = fields(text, "profile", &["anchor", "left", "mid", "right"])?;
        let anchor = int(f[0])?;
        Self::new(anchor, cells(f[1], &mut parse)?, cells(f[2], &mut parse)?, cells(f[3], &mut parse)?)
    }
}

impl<T> ProfileWindow<T> {
    /// `window v1; start: <int>; cells: ..`
    pub fn to_text(&self, mut label: impl FnMut(&T) -> String) -> String {
        format!("window v1; start: {}; cells: {}", self.start, join(&self.cells, &mut label))
    }

    pub fn parse_text(text: &str, mut parse: impl FnMut(&str) -> Result<T>) -> Result<Self> {
        let f = fields(text, "window", &["start", "cells"])?;
        Self::new(int(f[0])?, cells(f[1], &mut parse)?)
    }
}

impl<T: Display + Clone> Display for EventuallyPeriodicProfile<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text(|c| c.to_string()))
    }
}

impl<T: Display> Display for ProfileWindow<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text(|c| c.to_string()))
    }
}
