use std::fmt;
use std::str::FromStr;

use super::poly::FreePoly;
use super::scalar::Scalar;
use super::EngelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    APrime,
    BPrime,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::APrime, Letter::BPrime];

    /// The letter swap `A ↔ A′`, `B ↔ B′` used by the bar operation.
    pub fn primed(self) -> Letter {
        match self {
            Letter::A => Letter::APrime,
            Letter::APrime => Letter::A,
            Letter::B => Letter::BPrime,
            Letter::BPrime => Letter::B,
        }
    }

    pub fn is_a_like(self) -> bool {
        matches!(self, Letter::A | Letter::APrime)
    }

    /// Image under `A ↦ a`, `B ↦ b`, `A′ ↦ -a`, `B′ ↦ b² - b`.
    pub fn substitute<C: Scalar>(self) -> FreePoly<C> {
        match self {
            Letter::A => FreePoly::a(),
            Letter::B => FreePoly::b(),
            Letter::APrime => -FreePoly::a(),
            Letter::BPrime => &(&FreePoly::b() * &FreePoly::b()) - &FreePoly::b(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "A",
            Letter::B => "B",
            Letter::APrime => "A′",
            Letter::BPrime => "B′",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

/// Occurrences of each letter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LetterCounts {
    pub a: usize,
    pub b: usize,
    pub a_prime: usize,
    pub b_prime: usize,
}

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(parts: &[&Word]) -> Word {
        Word(parts.iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    /// Reverses the word and swaps primed and unprimed letters.
    pub fn bar(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.primed()).collect())
    }

    pub fn letter_counts(&self) -> LetterCounts {
        let mut c = LetterCounts::default();
        for l in &self.0 {
            match l {
                Letter::A => c.a += 1,
                Letter::B => c.b += 1,
                Letter::APrime => c.a_prime += 1,
                Letter::BPrime => c.b_prime += 1,
            }
        }
        c
    }

    /// Occurrences of `v` as a factor of the word.
    pub fn occurrences(&self, v: &Word) -> usize {
        if v.is_empty() {
            return self.len() + 1;
        }
        self.0.windows(v.len()).filter(|w| *w == v.0.as_slice()).count()
    }

    /// After every `A`/`A′` comes a `B`/`B′` and vice versa.
    pub fn alternates(&self) -> bool {
        self.0.windows(2).all(|p| p[0].is_a_like() != p[1].is_a_like())
    }

    /// The substitution `A ↦ a`, `B ↦ b`, `A′ ↦ -a`, `B′ ↦ b² - b`, multiplied out.
    pub fn substitute<C: Scalar>(&self) -> FreePoly<C> {
        let mut acc = FreePoly::one();
        for l in &self.0 {
            acc = &acc * &l.substitute();
            if acc.is_zero() {
                break;
            }
        }
        acc
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = EngelError;

    /// Accepts `A`, `B`, `A′`, `B′`, with `'` as an ASCII prime.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out: Vec<Letter> = Vec::new();
        for ch in s.chars() {
            match ch {
                'A' => out.push(Letter::A),
                'B' => out.push(Letter::B),
                '′' | '\'' => match out.pop() {
                    Some(l @ (Letter::A | Letter::B)) => out.push(l.primed()),
                    _ => return Err(EngelError::Parse(format!("misplaced prime in `{s}`"))),
                },
                c if c.is_whitespace() => {}
                c => return Err(EngelError::Parse(format!("unexpected `{c}` in word `{s}`"))),
            }
        }
        Ok(Word(out))
    }
}

/// Longest word the builders will produce.
pub const MAX_WORD_INDEX: usize = 24;

/// `W_1 = A`, `W_{n+1} = W_n B bar(W_n)`.
pub fn word_w(n: usize) -> Result<Word, EngelError> {
    if n < 1 {
        return Err(EngelError::IndexTooSmall { what: "W", n, min: 1 });
    }
    if n > MAX_WORD_INDEX {
        return Err(EngelError::TooLarge { what: "W", n, bound: MAX_WORD_INDEX });
    }
    let mut w = Word(vec![Letter::A]);
    for _ in 1..n {
        w = Word::concat(&[&w, &Word(vec![Letter::B]), &w.bar()]);
    }
    Ok(w)
}

pub fn word_bar(w: &Word) -> Word {
    w.bar()
}
