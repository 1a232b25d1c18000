//! Free-group words in run-length (syllable) form.
//!
//! A word is stored as a list of syllables `g^e` with `e != 0` and no two
//! neighbouring syllables on the same letter. Every constructor returns a
//! freely reduced word, so structural equality is free-group equality.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the two generators of a Baumslag-Solitar group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    B,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gen::A => "a",
            Gen::B => "b",
        })
    }
}

/// A maximal run `letter^exponent` inside a reduced word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable<G> {
    pub letter: G,
    pub exp: i64,
}

impl<G> Syllable<G> {
    pub fn new(letter: G, exp: i64) -> Self {
        Syllable { letter, exp }
    }
}

/// A freely reduced word over an arbitrary alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord<G> {
    syllables: Vec<Syllable<G>>,
}

/// Words over `{a, b}`, the element representation used throughout.
pub type GroupWord = FreeWord<Gen>;

impl<G> Default for FreeWord<G> {
    fn default() -> Self {
        FreeWord {
            syllables: Vec::new(),
        }
    }
}

/// Freely reduces an arbitrary syllable list: drops zero exponents, merges
/// equal neighbours and cancels until nothing changes.
pub fn free_reduce<G, I>(syllables: I) -> Result<FreeWord<G>>
where
    G: Clone + Eq,
    I: IntoIterator<Item = (G, i64)>,
{
    let mut w = FreeWord::identity();
    for (g, e) in syllables {
        w.push(g, e)?;
    }
    Ok(w)
}

impl<G: Clone + Eq> FreeWord<G> {
    pub fn identity() -> Self {
        Self::default()
    }

    /// The single-syllable word `g^e` (identity when `e == 0`).
    pub fn power(g: G, e: i64) -> Result<Self> {
        free_reduce([(g, e)])
    }

    pub fn letter(g: G) -> Self {
        FreeWord {
            syllables: vec![Syllable::new(g, 1)],
        }
    }

    pub fn syllables(&self) -> &[Syllable<G>] {
        &self.syllables
    }

    pub fn into_syllables(self) -> Vec<Syllable<G>> {
        self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of letters, i.e. the sum of `|exp|`.
    pub fn letter_count(&self) -> u128 {
        self.syllables
            .iter()
            .map(|s| s.exp.unsigned_abs() as u128)
            .sum()
    }

    /// Appends `g^e` on the right, keeping the word reduced.
    pub(crate) fn push(&mut self, g: G, e: i64) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        if e == i64::MIN {
            return Err(Error::Overflow);
        }
        match self.syllables.last_mut() {
            Some(top) if top.letter == g => {
                let sum = top.exp.checked_add(e).ok_or(Error::Overflow)?;
                if sum == i64::MIN {
                    return Err(Error::Overflow);
                }
                if sum == 0 {
                    self.syllables.pop();
                } else {
                    top.exp = sum;
                }
            }
            _ => self.syllables.push(Syllable::new(g, e)),
        }
        Ok(())
    }

    /// Reverses the syllable order and negates every exponent.
    pub fn invert(&self) -> Self {
        FreeWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.letter.clone(), -s.exp))
                .collect(),
        }
    }

    /// The reduced form of the juxtaposition `self · other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.letter.clone(), s.exp)?;
        }
        Ok(out)
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        g.invert().concat(self)?.concat(g)
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by_inverse(&self, g: &Self) -> Result<Self> {
        g.concat(self)?.concat(&g.invert())
    }

    /// Sum of the exponents carried by `g`.
    pub fn exponent_sum(&self, g: &G) -> Result<i64> {
        self.syllables
            .iter()
            .filter(|s| s.letter == *g)
            .try_fold(0i64, |acc, s| acc.checked_add(s.exp).ok_or(Error::Overflow))
    }
}

impl<G: fmt::Display> fmt::Display for FreeWord<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.exp == 1 {
                write!(f, "{}", s.letter)?;
            } else {
                write!(f, "{}^{}", s.letter, s.exp)?;
            }
        }
        Ok(())
    }
}

/// Parses a word such as `b^-1 a^2 b`. Whitespace is ignored; the empty
/// string and a lone `1` both denote the identity.
pub fn parse_word(text: &str) -> Result<GroupWord> {
    let mut p = WordParser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.peek() == Some(b'1') {
        p.pos += 1;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(Error::syntax(p.pos, "unexpected input after identity `1`"));
        }
        return Ok(GroupWord::identity());
    }
    let mut raw = Vec::new();
    while let Some(c) = p.peek() {
        let g = match c {
            b'a' => Gen::A,
            b'b' => Gen::B,
            _ => {
                return Err(Error::syntax(
                    p.pos,
                    format!("expected generator `a` or `b`, found {:?}", c as char),
                ))
            }
        };
        p.pos += 1;
        p.skip_ws();
        let mut e = 1i64;
        if p.peek() == Some(b'^') {
            p.pos += 1;
            p.skip_ws();
            e = p.signed_integer()?;
        }
        raw.push((g, e));
        p.skip_ws();
    }
    free_reduce(raw)
}

struct WordParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn signed_integer(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::syntax(self.pos, "expected digits after `^`"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let magnitude: i64 = digits
            .parse()
            .map_err(|_| Error::syntax(start, "exponent does not fit in 64 bits"))?;
        Ok(if neg { -magnitude } else { magnitude })
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl GroupWord {
    pub fn a() -> Self {
        Self::letter(Gen::A)
    }

    pub fn b() -> Self {
        Self::letter(Gen::B)
    }

    /// `a^e`.
    pub fn a_pow(e: i64) -> Self {
        Self::power(Gen::A, e).expect("a single in-range syllable cannot overflow")
    }

    /// `b^e`.
    pub fn b_pow(e: i64) -> Self {
        Self::power(Gen::B, e).expect("a single in-range syllable cannot overflow")
    }

    /// True when the word contains the stable letter `b`.
    pub fn has_b(&self) -> bool {
        self.syllables.iter().any(|s| s.letter == Gen::B)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn syl(g: Gen, e: i64) -> Syllable<Gen> {
        Syllable::new(g, e)
    }

    #[test]
    fn parses_defining_relation_side() {
        let w = parse_word("b^-1 a^2 b").unwrap();
        assert_eq!(
            w.syllables(),
            &[syl(Gen::B, -1), syl(Gen::A, 2), syl(Gen::B, 1)]
        );
    }

    #[test]
    fn parses_with_cancellation() {
        assert!(parse_word("a a^-1").unwrap().is_identity());
        assert!(parse_word("").unwrap().is_identity());
        assert!(parse_word(" 1 ").unwrap().is_identity());
        assert!(parse_word("a^0").unwrap().is_identity());
    }

    #[test]
    fn parses_case_one_word() {
        let w = parse_word("b a^-1 b^-1 a b a b^-1").unwrap();
        assert_eq!(
            w.syllables(),
            &[
                syl(Gen::B, 1),
                syl(Gen::A, -1),
                syl(Gen::B, -1),
                syl(Gen::A, 1),
                syl(Gen::B, 1),
                syl(Gen::A, 1),
                syl(Gen::B, -1),
            ]
        );
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse_word("b ^ - 1a^2b").unwrap(),
            parse_word("b^-1 a^2 b").unwrap()
        );
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_word("a c") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_word("a^"),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse_word("a^-x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("1 a"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_word("a^99999999999999999999"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn free_reduce_examples() {
        assert!(free_reduce([(Gen::A, 2), (Gen::A, -2)])
            .unwrap()
            .is_identity());
        let w = free_reduce([(Gen::A, 1), (Gen::B, 1), (Gen::B, -1), (Gen::A, 1)]).unwrap();
        assert_eq!(w.syllables(), &[syl(Gen::A, 2)]);
        assert!(free_reduce([(Gen::B, -1), (Gen::A, 0), (Gen::B, 1)])
            .unwrap()
            .is_identity());
    }

    #[test]
    fn overflow_is_reported() {
        let big = GroupWord::a_pow(i64::MAX);
        assert_eq!(big.concat(&GroupWord::a()), Err(Error::Overflow));
        assert_eq!(GroupWord::power(Gen::A, i64::MIN), Err(Error::Overflow));
    }

    #[test]
    fn invert_and_concat() {
        let w = parse_word("b^-1 a^2 b").unwrap();
        assert_eq!(w.invert(), parse_word("b^-1 a^-2 b").unwrap());
        assert!(GroupWord::a()
            .concat(&GroupWord::a_pow(-1))
            .unwrap()
            .is_identity());
        assert_eq!(
            GroupWord::a()
                .concat(&GroupWord::b_pow(2))
                .unwrap()
                .syllables(),
            &[syl(Gen::A, 1), syl(Gen::B, 2)]
        );
    }

    #[test]
    fn renders_bit_exact() {
        assert_eq!(parse_word("b^-1 a^2 b").unwrap().to_string(), "b^-1 a^2 b");
        assert_eq!(GroupWord::identity().to_string(), "1");
        assert_eq!(parse_word("a a a").unwrap().to_string(), "a^3");
    }

    fn raw_syllables() -> impl Strategy<Value = Vec<(Gen, i64)>> {
        prop::collection::vec((prop_oneof![Just(Gen::A), Just(Gen::B)], -4i64..=4), 0..16)
    }

    fn reduced() -> impl Strategy<Value = GroupWord> {
        raw_syllables().prop_map(|raw| free_reduce(raw).unwrap())
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_and_shrinks(raw in raw_syllables()) {
            let once = free_reduce(raw.clone()).unwrap();
            let twice = free_reduce(once.syllables().iter().map(|s| (s.letter, s.exp))).unwrap();
            prop_assert_eq!(&once, &twice);
            let raw_letters: u128 = raw.iter().map(|(_, e)| e.unsigned_abs() as u128).sum();
            prop_assert!(once.letter_count() <= raw_letters);
            for pair in once.syllables().windows(2) {
                prop_assert_ne!(pair[0].letter, pair[1].letter);
            }
            prop_assert!(once.syllables().iter().all(|s| s.exp != 0));
        }

        #[test]
        fn concat_is_associative(u in reduced(), v in reduced(), w in reduced()) {
            let left = u.concat(&v).unwrap().concat(&w).unwrap();
            let right = u.concat(&v.concat(&w).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_cancels(w in reduced()) {
            prop_assert!(w.concat(&w.invert()).unwrap().is_identity());
            prop_assert!(w.invert().concat(&w).unwrap().is_identity());
        }

        #[test]
        fn render_parse_round_trip(w in reduced()) {
            prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        }
    }
}
