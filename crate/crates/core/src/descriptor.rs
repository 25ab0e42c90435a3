//! Declarative group recipes and their canonical text form.
//!
//! ```text
//! cyclic(6)  abelian(2,4)  elementary(2,3)  dihedral(8)  quaternion(16)
//! symmetric(4)  alternating(5)  sl23  heisenberg(3)  modular(4)
//! extraspecial(3,9)  direct(cyclic(2),sl23)  wreath(cyclic(2),symmetric(3))
//! semidirect(abelian(5,5),cyclic(3),action=[[g2,g1^-1*g2^-1]])  regular(sl23)
//! ```
//!
//! In `semidirect`, each inner list gives, for one generator `t` of the top
//! group, the images `t g_i t^-1` of the bottom generators as words in
//! `g1, g2, ...`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    Cyclic(u64),
    /// Cyclic factors, in the given order.
    Abelian(Vec<u64>),
    /// `C_p^k`.
    Elementary(u64, u32),
    /// Dihedral group of the given order `2n`.
    Dihedral(u64),
    /// Generalized quaternion group of the given order `2^n`, `n >= 3`.
    Quaternion(u64),
    Symmetric(usize),
    Alternating(usize),
    Sl23,
    /// Upper unitriangular 3x3 matrices over `Z/m`.
    Heisenberg(u64),
    /// `<a, b | a^(2^(n-1)) = b^2 = 1, a^b = a^(2^(n-2)+1)>`, order `2^n`.
    Modular(u32),
    /// Extraspecial group of order `p^3` and the given exponent (`p` or `p^2`), `p` odd.
    Extraspecial(u64, u64),
    Direct(Vec<GroupDescriptor>),
    Semidirect {
        bottom: Box<GroupDescriptor>,
        top: Box<GroupDescriptor>,
        action: Vec<Vec<Word>>,
    },
    /// Imprimitive wreath product; the top group acts on its own points.
    Wreath(Box<GroupDescriptor>, Box<GroupDescriptor>),
    /// Left-regular representation.
    Regular(Box<GroupDescriptor>),
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupDescriptor::*;
        match self {
            Cyclic(n) => write!(f, "cyclic({})", n),
            Abelian(v) => write!(f, "abelian({})", join(v)),
            Elementary(p, k) => write!(f, "elementary({},{})", p, k),
            Dihedral(n) => write!(f, "dihedral({})", n),
            Quaternion(n) => write!(f, "quaternion({})", n),
            Symmetric(n) => write!(f, "symmetric({})", n),
            Alternating(n) => write!(f, "alternating({})", n),
            Sl23 => write!(f, "sl23"),
            Heisenberg(m) => write!(f, "heisenberg({})", m),
            Modular(n) => write!(f, "modular({})", n),
            Extraspecial(p, e) => write!(f, "extraspecial({},{})", p, e),
            Direct(v) => write!(f, "direct({})", join(v)),
            Semidirect { bottom, top, action } => {
                let lists: Vec<String> = action
                    .iter()
                    .map(|ws| {
                        let inner: Vec<String> = ws.iter().map(|w| w.display_with("g")).collect();
                        format!("[{}]", inner.join(","))
                    })
                    .collect();
                write!(f, "semidirect({},{},action=[{}])", bottom, top, lists.join(","))
            }
            Wreath(b, t) => write!(f, "wreath({},{})", b, t),
            Regular(d) => write!(f, "regular({})", d),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupDescriptor> {
        let mut p = Parser {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let d = p.descriptor()?;
        if p.pos != p.chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(d)
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

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c)))
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn ints(&mut self) -> Result<Vec<u64>> {
        self.expect('(')?;
        let mut v = vec![self.int()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            v.push(self.int()?);
        }
        self.expect(')')?;
        Ok(v)
    }

    fn fixed(&mut self, n: usize) -> Result<Vec<u64>> {
        let at = self.pos;
        let v = self.ints()?;
        if v.len() != n {
            self.pos = at;
            return Err(self.error(&format!("expected {} argument(s)", n)));
        }
        Ok(v)
    }

    fn descriptor(&mut self) -> Result<GroupDescriptor> {
        use GroupDescriptor::*;
        let start = self.pos;
        let name = self.ident();
        let small = |v: u64| v as usize;
        let d = match name.as_str() {
            "cyclic" => Cyclic(self.fixed(1)?[0]),
            "abelian" => Abelian(self.ints()?),
            "elementary" => {
                let v = self.fixed(2)?;
                Elementary(v[0], v[1] as u32)
            }
            "dihedral" => Dihedral(self.fixed(1)?[0]),
            "quaternion" => Quaternion(self.fixed(1)?[0]),
            "symmetric" => Symmetric(small(self.fixed(1)?[0])),
            "alternating" => Alternating(small(self.fixed(1)?[0])),
            "sl23" => Sl23,
            "heisenberg" => Heisenberg(self.fixed(1)?[0]),
            "modular" => Modular(self.fixed(1)?[0] as u32),
            "extraspecial" => {
                let v = self.fixed(2)?;
                Extraspecial(v[0], v[1])
            }
            "direct" => {
                self.expect('(')?;
                let mut v = vec![self.descriptor()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    v.push(self.descriptor()?);
                }
                self.expect(')')?;
                Direct(v)
            }
            "wreath" => {
                self.expect('(')?;
                let b = self.descriptor()?;
                self.expect(',')?;
                let t = self.descriptor()?;
                self.expect(')')?;
                Wreath(Box::new(b), Box::new(t))
            }
            "regular" => {
                self.expect('(')?;
                let d = self.descriptor()?;
                self.expect(')')?;
                Regular(Box::new(d))
            }
            "semidirect" => {
                self.expect('(')?;
                let bottom = self.descriptor()?;
                self.expect(',')?;
                let top = self.descriptor()?;
                self.expect(',')?;
                if self.ident() != "action" {
                    return Err(self.error("expected 'action='"));
                }
                self.expect('=')?;
                let action = self.action()?;
                self.expect(')')?;
                Semidirect {
                    bottom: Box::new(bottom),
                    top: Box::new(top),
                    action,
                }
            }
            _ => {
                self.pos = start;
                return Err(self.error(&format!("unknown group family '{}'", name)));
            }
        };
        Ok(d)
    }

    fn action(&mut self) -> Result<Vec<Vec<Word>>> {
        self.expect('[')?;
        let mut lists = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(lists);
        }
        loop {
            lists.push(self.word_list()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(lists);
                }
                _ => return Err(self.error("expected ',' or ']'")),
            }
        }
    }

    fn word_list(&mut self) -> Result<Vec<Word>> {
        self.expect('[')?;
        let mut words = Vec::new();
        loop {
            let start = self.pos;
            let mut depth = 0i32;
            while let Some(c) = self.peek() {
                match c {
                    '[' | '(' => depth += 1,
                    ']' | ')' if depth > 0 => depth -= 1,
                    ',' | ']' if depth == 0 => break,
                    _ => {}
                }
                self.pos += 1;
            }
            let text: String = self.chars[start..self.pos].iter().collect();
            let w = text.parse::<Word>().map_err(|e| match e {
                Error::Parse { column, message, .. } => Error::Parse {
                    line: 1,
                    column: start + column,
                    message,
                },
                other => other,
            })?;
            words.push(w);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(words);
                }
                _ => return Err(self.error("unterminated action list")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        for s in [
            "cyclic(6)",
            "abelian(2,4,4)",
            "elementary(3,2)",
            "sl23",
            "extraspecial(3,9)",
            "direct(sl23,cyclic(5))",
            "wreath(dihedral(8),cyclic(2))",
            "regular(quaternion(8))",
            "semidirect(abelian(5,5),cyclic(3),action=[[g2,g1^-1*g2^-1]])",
            "semidirect(cyclic(7),cyclic(3),action=[[g1^2]])",
        ] {
            let d: GroupDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
    }

    #[test]
    fn spaces_are_ignored() {
        let d: GroupDescriptor = "direct( cyclic(2) , cyclic(3) )".parse().unwrap();
        assert_eq!(d.to_string(), "direct(cyclic(2),cyclic(3))");
    }

    #[test]
    fn errors_carry_columns() {
        match "direct(cyclic(2),foo(3))".parse::<GroupDescriptor>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 18),
            other => panic!("{:?}", other),
        }
        assert!("cyclic(2,3)".parse::<GroupDescriptor>().is_err());
    }
}
