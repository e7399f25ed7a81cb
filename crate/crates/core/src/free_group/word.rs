use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator or its inverse. Generator `k` is `a_{k/2+1}` for even `k` and
/// `b_{k/2+1}` for odd `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// Handle index, 1-based.
    pub fn handle(self) -> usize {
        self.generator / 2 + 1
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.generator % 2, self.inverse) {
            (0, false) => 'a',
            (0, true) => 'A',
            (_, false) => 'b',
            (_, true) => 'B',
        };
        write!(f, "{}{}", c, self.handle())
    }
}

pub fn generator_name(k: usize) -> String {
    Letter::new(k, false).to_string()
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(k: usize) -> Self {
        FreeWord(vec![Letter::new(k, false)])
    }

    pub fn a(i: usize) -> Self {
        Self::generator(2 * (i - 1))
    }

    pub fn b(i: usize) -> Self {
        Self::generator(2 * (i - 1) + 1)
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.0.iter().chain(&other.0).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `x y x^-1 y^-1`
    pub fn commutator(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(
            self.0.iter().chain(&other.0).copied().chain(self.inverse().0).chain(other.inverse().0),
        )
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.mul(&base))
    }

    /// `x w x^-1`
    pub fn conjugate_by(&self, x: &FreeWord) -> FreeWord {
        x.mul(self).mul(&x.inverse())
    }

    /// Exponent sums in `Z^rank`.
    pub fn abelianization(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for l in &self.0 {
            v[l.generator] += if l.inverse { -1 } else { 1 };
        }
        v
    }
}

/// `[a_1,b_1] .. [a_h,b_h]`.
pub fn partial_boundary_word(h: usize) -> FreeWord {
    (1..=h).fold(FreeWord::identity(), |acc, i| acc.mul(&FreeWord::a(i).commutator(&FreeWord::b(i))))
}

/// The boundary word `c = [a_1,b_1] .. [a_g,b_g]`.
pub fn boundary_word(genus: usize) -> FreeWord {
    partial_boundary_word(genus)
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    /// Accepts letters `a<i>`, `b<i>`, `A<i>`, `B<i>` with optional whitespace
    /// between them; `1` or the empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(FreeWord::identity());
        }
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (family, inverse) = match chars[i] {
                'a' => (0, false),
                'A' => (0, true),
                'b' => (1, false),
                'B' => (1, true),
                c => return Err(Error::Parse(format!("unexpected `{c}` in word `{s}`"))),
            };
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let handle: usize =
                digits.parse().map_err(|_| Error::Parse(format!("missing handle index in word `{s}`")))?;
            if handle == 0 {
                return Err(Error::Parse(format!("handle indices start at 1 in `{s}`")));
            }
            letters.push(Letter::new(2 * (handle - 1) + family, inverse));
        }
        Ok(FreeWord::from_letters(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn basic_operations() {
        assert!(w("a1").mul(&w("A1")).is_identity());
        assert_eq!(w("a1").commutator(&w("b1")), boundary_word(1));
        assert_eq!(boundary_word(1).to_string(), "a1 b1 A1 B1");
        assert_eq!(w("a1 b1").inverse(), w("B1 A1"));
        assert_eq!(w("a1b2B2"), w("a1"));
        assert_eq!(w("a1").pow(-2), w("A1 A1"));
    }

    #[test]
    fn parse_errors() {
        assert!("c1".parse::<FreeWord>().is_err());
        assert!("a".parse::<FreeWord>().is_err());
        assert!("a0".parse::<FreeWord>().is_err());
    }
}
