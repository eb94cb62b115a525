use std::fmt;
use std::str::FromStr;

/// Longest monomial that fits in the packed representation.
pub const MAX_DEGREE: usize = 128;

/// A reduced monomial in `a`, `b`: no factor `aa` and no factor `bbb`.
///
/// Letters are packed into the low `len` bits of `bits`, first letter in the
/// most significant position, `a = 0` and `b = 1`. The derived order compares
/// length first and then the word lexicographically with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    len: u8,
    bits: u128,
}

fn mask(len: u32) -> u128 {
    if len >= 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { len: 0, bits: 0 };
    pub const A: Monomial = Monomial { len: 1, bits: 0 };
    pub const B: Monomial = Monomial { len: 1, bits: 1 };

    /// Builds a monomial from letters, `None` if the word contains `aa` or `bbb`.
    pub fn from_letters(word: &[bool]) -> Option<Monomial> {
        assert!(word.len() <= MAX_DEGREE, "monomial longer than {MAX_DEGREE}");
        let mut m = Monomial::ONE;
        for &is_b in word {
            m = m.mul(if is_b { Monomial::B } else { Monomial::A })?;
        }
        Some(m)
    }

    pub fn degree(self) -> usize {
        self.len as usize
    }

    pub fn is_one(self) -> bool {
        self.len == 0
    }

    /// Letter `i` from the left; `true` for `b`.
    pub fn letter(self, i: usize) -> bool {
        assert!(i < self.degree());
        (self.bits >> (self.len as usize - 1 - i)) & 1 == 1
    }

    pub fn letters(self) -> impl Iterator<Item = bool> {
        (0..self.degree()).map(move |i| self.letter(i))
    }

    pub fn b_count(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn a_count(self) -> usize {
        self.degree() - self.b_count()
    }

    /// Number of positions `i` with `x_i x_{i+1}` equal to `ab` or `ba`.
    pub fn alternations(self) -> usize {
        if self.len < 2 {
            return 0;
        }
        ((self.bits ^ (self.bits >> 1)) & mask(self.len as u32 - 1)).count_ones() as usize
    }

    fn leading_bs(self) -> u32 {
        if self.len == 0 {
            return 0;
        }
        let shifted = self.bits << (128 - self.len as u32);
        shifted.leading_ones().min(self.len as u32)
    }

    fn trailing_bs(self) -> u32 {
        self.bits.trailing_ones().min(self.len as u32)
    }

    pub fn starts_with_a(self) -> bool {
        self.len > 0 && !self.letter(0)
    }

    pub fn ends_with_a(self) -> bool {
        self.len > 0 && self.bits & 1 == 0
    }

    pub(crate) fn from_raw(len: usize, bits: u128) -> Monomial {
        debug_assert!(len <= MAX_DEGREE && bits & !mask(len as u32) == 0);
        Monomial { len: len as u8, bits }
    }

    pub(crate) fn bits(self) -> u128 {
        self.bits
    }

    /// 0 if the monomial starts with `a`, 1 with exactly one `b`, 2 with `bb`.
    pub(crate) fn leading_class(self) -> usize {
        if self.starts_with_a() {
            0
        } else {
            self.leading_bs().min(2) as usize
        }
    }

    /// 0 if the monomial ends with `a`, 1 with exactly one `b`, 2 with `bb`.
    pub(crate) fn trailing_class(self) -> usize {
        if self.ends_with_a() {
            0
        } else {
            self.trailing_bs().min(2) as usize
        }
    }

    /// Product in the quotient by `aa` and `bbb`; `None` when it vanishes.
    ///
    /// Panics if the product is longer than [`MAX_DEGREE`].
    #[inline]
    pub fn mul(self, other: Monomial) -> Option<Monomial> {
        if self.len == 0 {
            return Some(other);
        }
        if other.len == 0 {
            return Some(self);
        }
        if self.ends_with_a() && other.starts_with_a() {
            return None;
        }
        if self.trailing_bs() + other.leading_bs() >= 3 {
            return None;
        }
        let len = self.len as usize + other.len as usize;
        assert!(len <= MAX_DEGREE, "monomial product of degree {len} exceeds {MAX_DEGREE}");
        Some(Monomial { len: len as u8, bits: (self.bits << other.len) | other.bits })
    }

    /// The subword of letters `start..end`.
    pub fn slice(self, start: usize, end: usize) -> Monomial {
        assert!(start <= end && end <= self.degree());
        let len = (end - start) as u32;
        Monomial { len: len as u8, bits: (self.bits >> (self.degree() - end)) & mask(len) }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for is_b in self.letters() {
            f.write_str(if is_b { "b" } else { "a" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseMonomialError {
    #[error("unexpected character `{0}` in monomial")]
    BadLetter(char),
    #[error("monomial `{0}` is zero modulo aa and bbb")]
    Vanishes(String),
    #[error("monomial longer than {MAX_DEGREE} letters")]
    TooLong,
}

impl FromStr for Monomial {
    type Err = ParseMonomialError;

    /// Accepts `1` for the empty monomial or a word in `a`, `b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "1" {
            return Ok(Monomial::ONE);
        }
        let letters = s
            .chars()
            .map(|c| match c {
                'a' => Ok(false),
                'b' => Ok(true),
                other => Err(ParseMonomialError::BadLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if letters.len() > MAX_DEGREE {
            return Err(ParseMonomialError::TooLong);
        }
        Monomial::from_letters(&letters).ok_or_else(|| ParseMonomialError::Vanishes(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn relations_kill() {
        assert_eq!(Monomial::A.mul(Monomial::A), None);
        assert_eq!(m("bb").mul(Monomial::B), None);
        assert_eq!(m("ab").mul(m("bba")), None);
        assert_eq!(m("ab").mul(m("ba")), Some(m("abba")));
        assert!("aab".parse::<Monomial>().is_err());
        assert!("abx".parse::<Monomial>().is_err());
    }

    #[test]
    fn counts_and_display() {
        let x = m("abbab");
        assert_eq!((x.a_count(), x.b_count(), x.degree()), (2, 3, 5));
        assert_eq!(x.alternations(), 3);
        assert_eq!(m("aba").alternations(), 2);
        assert_eq!(m("bb").alternations(), 0);
        assert_eq!(x.to_string(), "abbab");
        assert_eq!(Monomial::ONE.to_string(), "1");
        assert_eq!(x.slice(1, 4), m("bba"));
    }

    #[test]
    fn order_is_degree_then_lex() {
        let mut v = [m("ba"), m("b"), m("ab"), m("a"), Monomial::ONE, m("aba")];
        v.sort();
        let s: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(s, ["1", "a", "b", "ab", "ba", "aba"]);
    }

    #[test]
    fn full_width_monomial() {
        let word: Vec<bool> = (0..128).map(|i| i % 2 == 1).collect();
        let x = Monomial::from_letters(&word).unwrap();
        assert_eq!(x.degree(), 128);
        assert_eq!(x.alternations(), 127);
        assert!(x.starts_with_a() && !x.ends_with_a());
    }
}
