//! Words in the free group, with commutator notation.
//!
//! Text syntax: products are written with `*`, powers with `^` (negative
//! exponents allowed), commutators as `[u,v,...]` (left-normed) and the empty
//! word as `1`. Variables are a letter prefix followed by a 1-based index
//! (`x1`, `g3`), or one of the bare letters `x y z w u v` (indices 0 to 5).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::Table;

/// A freely reduced word; each letter is a variable index and a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(usize, bool)>,
}

const BARE: &str = "xyzwuv";

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn var(i: usize) -> Word {
        Word {
            letters: vec![(i, false)],
        }
    }

    /// Letters as `(variable, inverted)`.
    pub fn letters(&self) -> &[(usize, bool)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of variables needed to evaluate the word.
    pub fn rank(&self) -> usize {
        self.letters.iter().map(|&(v, _)| v + 1).max().unwrap_or(0)
    }

    fn push(&mut self, l: (usize, bool)) {
        if let Some(&(v, s)) = self.letters.last() {
            if v == l.0 && s != l.1 {
                self.letters.pop();
                return;
            }
        }
        self.letters.push(l);
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(v, s)| (v, !s)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Left-normed commutator `[[w1, w2], w3], ...`.
    pub fn left_normed(ws: &[Word]) -> Word {
        let mut it = ws.iter();
        let mut acc = it.next().cloned().unwrap_or_default();
        for w in it {
            acc = Word::commutator(&acc, w);
        }
        acc
    }

    /// `[x1, ..., x_{c+1}]` in distinct variables.
    pub fn left_normed_vars(c: usize) -> Word {
        let vars: Vec<Word> = (0..=c).map(Word::var).collect();
        Word::left_normed(&vars)
    }

    fn check_rank(&self, n: usize) -> Result<()> {
        if n < self.rank() {
            return Err(Error::InvalidParameters(format!(
                "word needs {} values, got {}",
                self.rank(),
                n
            )));
        }
        Ok(())
    }

    /// Evaluates the word at permutations.
    pub fn eval(&self, values: &[Permutation]) -> Result<Permutation> {
        self.check_rank(values.len())?;
        let degree = values.first().map_or(0, |p| p.degree());
        let inverses: Vec<Permutation> = values.iter().map(|p| p.inverse()).collect();
        let mut acc: Vec<u32> = (0..degree as u32).collect();
        // Right-to-left composition: apply the rightmost letter first.
        for &(v, s) in self.letters.iter().rev() {
            let p = if s { &inverses[v] } else { &values[v] };
            if p.degree() != degree {
                return Err(Error::DegreeMismatch(degree, p.degree()));
            }
            for a in acc.iter_mut() {
                *a = p.apply(*a);
            }
        }
        Permutation::from_images(acc)
    }

    /// Evaluates the word at element indices of a table.
    pub fn eval_table(&self, t: &Table, values: &[usize]) -> Result<usize> {
        self.check_rank(values.len())?;
        Ok(self.eval_table_unchecked(t, values))
    }

    pub(crate) fn eval_table_unchecked(&self, t: &Table, values: &[usize]) -> usize {
        let mut acc = 0;
        for &(v, s) in &self.letters {
            let x = if s { t.inv(values[v]) } else { values[v] };
            acc = t.m(acc, x);
        }
        acc
    }

    /// Formats with variables named `<prefix><index+1>`.
    pub fn display_with(&self, prefix: &str) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let (v, s) = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == (v, s) {
                j += 1;
            }
            let k = (j - i) as i64;
            let e = if s { -k } else { k };
            if e == 1 {
                parts.push(format!("{}{}", prefix, v + 1));
            } else {
                parts.push(format!("{}{}^{}", prefix, v + 1, e));
            }
            i = j;
        }
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut p = Parser {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let w = p.product()?;
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(w)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<Word> {
        let mut w = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            w = w.mul(&self.power()?);
        }
        Ok(w)
    }

    fn power(&mut self) -> Result<Word> {
        let w = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(w);
        }
        self.pos += 1;
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected exponent"));
        }
        let e: i64 = self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        Ok(w.pow(if neg { -e } else { e }))
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some('(') => {
                self.pos += 1;
                let w = self.product()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let mut parts = vec![self.product()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    parts.push(self.product()?);
                }
                if self.peek() != Some(']') {
                    return Err(self.error("expected ']'"));
                }
                if parts.len() < 2 {
                    return Err(self.error("commutator needs two entries"));
                }
                self.pos += 1;
                Ok(Word::left_normed(&parts))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().map_or(false, |c| c.is_ascii_alphabetic()) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let dstart = self.pos;
                while self.peek().map_or(false, |c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                if dstart == self.pos {
                    match BARE.find(name.as_str()) {
                        Some(i) if name.len() == 1 => Ok(Word::var(i)),
                        _ => Err(Error::Parse {
                            line: 1,
                            column: start + 1,
                            message: format!("unknown variable '{}'", name),
                        }),
                    }
                } else {
                    let idx: usize = self.chars[dstart..self.pos]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| self.error("index out of range"))?;
                    if idx == 0 {
                        return Err(self.error("variable indices start at 1"));
                    }
                    Ok(Word::var(idx - 1))
                }
            }
            _ => Err(self.error("expected a variable, '1', '(' or '['")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse_cycles(s, 3).unwrap()
    }

    #[test]
    fn parse_and_reduce() {
        let w: Word = "x*y*y^-1*x".parse().unwrap();
        assert_eq!(w, Word::var(0).pow(2));
        assert_eq!(w.to_string(), "x1^2");
        let c: Word = "[x,y]".parse().unwrap();
        assert_eq!(c.to_string(), "x1^-1*x2^-1*x1*x2");
        assert_eq!("g2*g1^-1".parse::<Word>().unwrap().display_with("g"), "g2*g1^-1");
        assert!("x*".parse::<Word>().is_err());
        assert!("q".parse::<Word>().is_err());
    }

    #[test]
    fn metabelian_law() {
        let w: Word = "[[x,y],[z,w]]".parse().unwrap();
        assert_eq!(w.rank(), 4);
        // S3 is metabelian, so the law holds at every assignment.
        let vals = [p("(1 2)"), p("(1 2 3)"), p("(1 2)"), p("(1 3 2)")];
        assert!(w.eval(&vals).unwrap().is_identity());
        assert!(w.eval(&vals[..3]).is_err());
        let q = |s: &str| Permutation::parse_cycles(s, 4).unwrap();
        let vals = [q("(1 2)"), q("(2 3)"), q("(2 3)"), q("(3 4)")];
        assert!(!w.eval(&vals).unwrap().is_identity());
    }

    #[test]
    fn evaluation_matches_composition() {
        let w: Word = "x*y".parse().unwrap();
        let (a, b) = (p("(1 2)"), p("(1 2 3)"));
        assert_eq!(w.eval(&[a.clone(), b.clone()]).unwrap(), a.mul(&b));
    }
}
