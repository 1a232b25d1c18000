//! The free quandle on a set of atoms, as conjugates `u⁻¹ x u` of atoms in
//! the free group, kept in canonical form.

use std::fmt;

use crate::error::Result;
use crate::word::FreeWord;

pub type AtomWord = FreeWord<String>;

/// `conjugator⁻¹ · atom · conjugator`, with the conjugator reduced and not
/// starting with a power of `atom`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeQuandleElement {
    atom: String,
    conjugator: AtomWord,
}

/// Canonical form of the element `u⁻¹ x u`. A leading power of `x` in `u`
/// commutes with `x` and is dropped.
pub fn free_quandle_canonical(atom: impl Into<String>, conjugator: AtomWord) -> FreeQuandleElement {
    let atom = atom.into();
    let mut syl = conjugator.into_syllables();
    if syl.first().is_some_and(|s| s.letter == atom) {
        syl.remove(0);
    }
    let conjugator = crate::word::free_reduce(syl.into_iter().map(|s| (s.letter, s.exp)))
        .expect("dropping a syllable cannot overflow");
    FreeQuandleElement { atom, conjugator }
}

impl FreeQuandleElement {
    pub fn generator(atom: impl Into<String>) -> Self {
        free_quandle_canonical(atom, AtomWord::identity())
    }

    pub fn atom(&self) -> &str {
        &self.atom
    }

    pub fn conjugator(&self) -> &AtomWord {
        &self.conjugator
    }

    /// The element as a free-group word.
    pub fn to_word(&self) -> Result<AtomWord> {
        AtomWord::letter(self.atom.clone()).conjugate_by(&self.conjugator)
    }

    /// `(x, u) * (y, v) = (x, u v⁻¹ y v)`.
    pub fn star(&self, other: &FreeQuandleElement) -> Result<FreeQuandleElement> {
        let c = self.conjugator.concat(&other.to_word()?)?;
        Ok(free_quandle_canonical(self.atom.clone(), c))
    }

    /// `(x, u) *^-1 (y, v) = (x, u v⁻¹ y⁻¹ v)`.
    pub fn star_inv(&self, other: &FreeQuandleElement) -> Result<FreeQuandleElement> {
        let c = self.conjugator.concat(&other.to_word()?.invert())?;
        Ok(free_quandle_canonical(self.atom.clone(), c))
    }
}

impl fmt::Display for FreeQuandleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.atom, self.conjugator)
    }
}
