use std::fmt;

use serde::{Deserialize, Serialize};

use super::SrsError;

/// A generator `T_i` of the alphabet, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(transparent)]
pub struct Generator(pub u16);

impl Generator {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite word over the generators. The empty word is a first-class value.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn from_indices(indices: &[u16]) -> Self {
        Word(indices.iter().map(|&i| Generator(i)).collect())
    }

    /// The decreasing run `hi, hi-1, ..., lo` (empty when `hi < lo`).
    pub fn descending(hi: u16, lo: u16) -> Self {
        if hi < lo {
            return Word::empty();
        }
        Word((lo..=hi).rev().map(Generator).collect())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat3(a: &Word, b: &Word, c: &Word) -> Word {
        let mut v = Vec::with_capacity(a.len() + b.len() + c.len());
        v.extend_from_slice(&a.0);
        v.extend_from_slice(&b.0);
        v.extend_from_slice(&c.0);
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0..len)
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        self.slice(start..self.len())
    }

    /// Does `pattern` occur in `self` starting at `pos`?
    pub fn occurs_at(&self, pattern: &Word, pos: usize) -> bool {
        pos + pattern.len() <= self.len() && self.0[pos..pos + pattern.len()] == pattern.0[..]
    }

    pub fn starts_with(&self, pattern: &Word) -> bool {
        self.occurs_at(pattern, 0)
    }

    pub fn ends_with(&self, pattern: &Word) -> bool {
        pattern.len() <= self.len() && self.occurs_at(pattern, self.len() - pattern.len())
    }

    pub fn count(&self, g: u16) -> usize {
        self.0.iter().filter(|x| x.0 == g).count()
    }

    pub fn max_letter(&self) -> u16 {
        self.0.iter().map(|g| g.0).max().unwrap_or(0)
    }

    /// Replace `len` letters at `pos` by `replacement`.
    pub fn splice(&self, pos: usize, len: usize, replacement: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + replacement.len() - len.min(self.len()));
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&replacement.0);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    /// Renders with the alphabet-size convention: concatenated digits when
    /// `n <= 9`, dot-separated integers otherwise; the empty word is `ε`.
    pub fn render(&self, n: usize) -> String {
        if self.is_empty() {
            return "ε".to_string();
        }
        if n <= 9 {
            self.0.iter().map(|g| g.0.to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|g| g.0.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Parses a word for an alphabet of size `n`. Accepts `""`, `"-"` and
    /// `"ε"` for the empty word.
    pub fn parse(s: &str, n: usize) -> Result<Word, SrsError> {
        let s = s.trim();
        if s.is_empty() || s == "-" || s == "ε" {
            return Ok(Word::empty());
        }
        let letters: Vec<u16> = if n <= 9 && !s.contains('.') {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u16)
                        .ok_or_else(|| SrsError::Parse(format!("bad letter {c:?} in word {s:?}")))
                })
                .collect::<Result<_, _>>()?
        } else {
            s.split('.')
                .map(|p| {
                    p.parse::<u16>()
                        .map_err(|_| SrsError::Parse(format!("bad letter {p:?} in word {s:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        let w = Word::from_indices(&letters);
        w.check_alphabet(n)?;
        Ok(w)
    }

    pub fn check_alphabet(&self, n: usize) -> Result<(), SrsError> {
        for g in &self.0 {
            if g.0 == 0 || g.index() > n {
                return Err(SrsError::InvalidLetter { letter: g.0, n });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = if self.max_letter() <= 9 { 9 } else { usize::MAX };
        f.write_str(&self.render(n))
    }
}

impl From<&[u16]> for Word {
    fn from(v: &[u16]) -> Self {
        Word::from_indices(v)
    }
}
