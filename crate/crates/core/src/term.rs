//! Quandle terms in left-associated form and their expansion into group words.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{parse_word, GroupWord};

/// The quandle operation `*` or its inverse `*^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Star,
    StarInv,
}

impl Op {
    pub fn sign(self) -> i8 {
        match self {
            Op::Star => 1,
            Op::StarInv => -1,
        }
    }

    pub fn inverse(self) -> Op {
        match self {
            Op::Star => Op::StarInv,
            Op::StarInv => Op::Star,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Star => "*",
            Op::StarInv => "*^-1",
        })
    }
}

/// `x1 *^e1 x2 *^e2 ... xk`, read as `(((x1 *^e1 x2) *^e2 x3) ...)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuandleTerm {
    pub head: String,
    pub tail: Vec<(String, Op)>,
}

impl QuandleTerm {
    pub fn atom(name: impl Into<String>) -> Self {
        QuandleTerm {
            head: name.into(),
            tail: Vec::new(),
        }
    }

    pub fn star(mut self, operand: impl Into<String>) -> Self {
        self.tail.push((operand.into(), Op::Star));
        self
    }

    pub fn star_inv(mut self, operand: impl Into<String>) -> Self {
        self.tail.push((operand.into(), Op::StarInv));
        self
    }

    pub fn then(mut self, operand: impl Into<String>, op: Op) -> Self {
        self.tail.push((operand.into(), op));
        self
    }

    /// Number of operations applied to the head.
    pub fn depth(&self) -> usize {
        self.tail.len()
    }

    /// Every atom name occurring in the term, head first.
    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.head.as_str()).chain(self.tail.iter().map(|(a, _)| a.as_str()))
    }

    /// `self *^op rhs` for an arbitrary right operand, rewritten into
    /// left-associated form with the right-distributive law:
    /// `x * (y *^e z) = ((x *^-e z) * y) *^e z`.
    pub fn apply(mut self, op: Op, rhs: &QuandleTerm) -> Self {
        for (y, e) in rhs.tail.iter().rev() {
            self.tail.push((y.clone(), e.inverse()));
        }
        self.tail.push((rhs.head.clone(), op));
        self.tail.extend(rhs.tail.iter().cloned());
        self
    }
}

impl fmt::Display for QuandleTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.head)?;
        for (atom, op) in &self.tail {
            write!(f, " {op} {atom}")?;
        }
        Ok(())
    }
}

/// Parses `a * b * a *^-1 b`. The inverse operation may also be spelled
/// `*-1`; parentheses group right operands. Atom names are identifiers with
/// an optional `^` suffix (`a^m`, `a^4`, `a^-m`).
pub fn parse_term(text: &str) -> Result<QuandleTerm> {
    let mut p = TermParser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::syntax(p.pos, "unexpected trailing input"));
    }
    Ok(t)
}

impl FromStr for QuandleTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

struct TermParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

impl TermParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<QuandleTerm> {
        let mut acc = self.primary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    let op = self.op()?;
                    let rhs = self.primary()?;
                    acc = acc.apply(op, &rhs);
                }
                None | Some(b')') => return Ok(acc),
                Some(c) => {
                    return Err(Error::syntax(
                        self.pos,
                        format!("unknown operator {:?}", c as char),
                    ))
                }
            }
        }
    }

    fn op(&mut self) -> Result<Op> {
        debug_assert_eq!(self.peek(), Some(b'*'));
        self.pos += 1;
        let rest = &self.bytes[self.pos..];
        if rest.starts_with(b"^-1") {
            self.pos += 3;
            Ok(Op::StarInv)
        } else if rest.starts_with(b"-1") {
            self.pos += 2;
            Ok(Op::StarInv)
        } else if rest.first() == Some(&b'^') || rest.first() == Some(&b'-') {
            Err(Error::syntax(
                self.pos,
                "unknown operator; expected `*`, `*^-1` or `*-1`",
            ))
        } else {
            Ok(Op::Star)
        }
    }

    fn primary(&mut self) -> Result<QuandleTerm> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.term()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(Error::syntax(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) if is_ident_start(c) => Ok(QuandleTerm::atom(self.atom_name()?)),
            Some(c) => Err(Error::syntax(
                self.pos,
                format!("expected atom or `(`, found {:?}", c as char),
            )),
            None => Err(Error::syntax(self.pos, "expected atom, found end of input")),
        }
    }

    fn atom_name(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(is_ident_char) {
            self.pos += 1;
        }
        if self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                self.pos += 1;
            }
            let suffix = self.pos;
            while self.peek().is_some_and(is_ident_char) {
                self.pos += 1;
            }
            if suffix == self.pos {
                return Err(Error::syntax(
                    self.pos,
                    "expected exponent after `^` in atom name",
                ));
            }
        }
        Ok(String::from_utf8(self.bytes[start..self.pos].to_vec()).expect("ascii atom"))
    }
}

/// Group-word values for the atoms of a term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtomAssignment {
    bindings: BTreeMap<String, GroupWord>,
    literal_fallback: bool,
}

impl AtomAssignment {
    /// Only explicit bindings are used.
    pub fn new() -> Self {
        Self::default()
    }

    /// Atoms that are themselves words (`a`, `b`, `a^4`, `b^-1`) denote that
    /// word unless explicitly rebound.
    pub fn literal() -> Self {
        AtomAssignment {
            bindings: BTreeMap::new(),
            literal_fallback: true,
        }
    }

    pub fn bind(mut self, name: impl Into<String>, w: GroupWord) -> Self {
        self.bindings.insert(name.into(), w);
        self
    }

    pub fn insert(&mut self, name: impl Into<String>, w: GroupWord) {
        self.bindings.insert(name.into(), w);
    }

    pub fn get(&self, name: &str) -> Option<GroupWord> {
        if let Some(w) = self.bindings.get(name) {
            return Some(w.clone());
        }
        if self.literal_fallback {
            return parse_word(name).ok();
        }
        None
    }

    pub fn bindings(&self) -> &BTreeMap<String, GroupWord> {
        &self.bindings
    }
}

/// Folds a term into a group word under the conjugation operation:
/// `u * v = v⁻¹ u v` and `u *^-1 v = v u v⁻¹`.
pub fn expand_term(t: &QuandleTerm, sigma: &AtomAssignment) -> Result<GroupWord> {
    let lookup = |name: &str| {
        sigma
            .get(name)
            .ok_or_else(|| Error::UnassignedAtom(name.into()))
    };
    let mut acc = lookup(&t.head)?;
    for (name, op) in &t.tail {
        let v = lookup(name)?;
        acc = match op {
            Op::Star => acc.conjugate_by(&v)?,
            Op::StarInv => acc.conjugate_by_inverse(&v)?,
        };
    }
    Ok(acc)
}
