//! Words in the free group `F_m = <x_1, ..., x_m>`.
//!
//! A letter is a nonzero signed integer: `k > 0` stands for `x_k`, `k < 0` for
//! `x_|k|^-1`. Every [`GroupWord`] is kept freely reduced.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

use crate::{Error, Result};

/// A freely reduced word in a free group.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord {
    letters: Vec<i32>,
}

/// Freely reduces a raw letter sequence.
///
/// # Panics
///
/// If a letter is 0. Use [`GroupWord::from_letters`] for unchecked input.
pub fn reduce<I: IntoIterator<Item = i32>>(raw: I) -> GroupWord {
    let mut letters: Vec<i32> = Vec::new();
    for k in raw {
        assert!(k != 0, "0 is not a free group letter");
        push_reduced(&mut letters, k);
    }
    GroupWord { letters }
}

fn push_reduced(letters: &mut Vec<i32>, k: i32) {
    if letters.last() == Some(&-k) {
        letters.pop();
    } else {
        letters.push(k);
    }
}

/// Parses the word grammar: whitespace separated `xN`, `xN^-1` or signed integers.
pub fn parse_word(text: &str) -> Result<GroupWord> {
    let mut letters = Vec::new();
    for (position, token) in tokens(text) {
        let letter = parse_token(token, position)?;
        push_reduced(&mut letters, letter);
    }
    Ok(GroupWord { letters })
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - text.as_ptr() as usize, tok))
}

fn parse_token(token: &str, position: usize) -> Result<i32> {
    let syntax = |message: &str| Error::Syntax {
        position,
        message: message.to_string(),
    };
    let (index, negative) = if let Some(rest) = token.strip_prefix('x') {
        match rest.strip_suffix("^-1") {
            Some(digits) => (
                parse_index(digits).ok_or_else(|| syntax("expected xN^-1"))?,
                true,
            ),
            None => (
                parse_index(rest).ok_or_else(|| syntax("expected xN"))?,
                false,
            ),
        }
    } else if let Some(digits) = token.strip_prefix('-') {
        (
            parse_index(digits).ok_or_else(|| syntax("expected a signed integer"))?,
            true,
        )
    } else {
        let digits = token.strip_prefix('+').unwrap_or(token);
        (
            parse_index(digits).ok_or_else(|| syntax("expected xN, xN^-1 or a signed integer"))?,
            false,
        )
    };
    if index == 0 {
        return Err(Error::ZeroIndex { position });
    }
    Ok(if negative { -index } else { index })
}

fn parse_index(digits: &str) -> Option<i32> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

impl GroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Single generator `x_index` (or its inverse).
    pub fn generator(index: u32, positive: bool) -> Self {
        assert!(index >= 1 && index <= i32::MAX as u32);
        let k = index as i32;
        Self {
            letters: vec![if positive { k } else { -k }],
        }
    }

    /// Reduces `raw`, rejecting the invalid letter 0.
    pub fn from_letters<I: IntoIterator<Item = i32>>(raw: I) -> Result<Self> {
        let mut letters = Vec::new();
        for (position, k) in raw.into_iter().enumerate() {
            if k == 0 {
                return Err(Error::ZeroIndex { position });
            }
            push_reduced(&mut letters, k);
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Smallest `m` such that the word lives in `F_m` (0 for the identity).
    pub fn rank(&self) -> u32 {
        self.letters
            .iter()
            .map(|k| k.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|k| -k).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        // Only the seam can cancel.
        let overlap = self
            .letters
            .iter()
            .rev()
            .zip(other.letters.iter())
            .take_while(|(a, b)| **a == -**b)
            .count();
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * overlap);
        letters.extend_from_slice(&self.letters[..self.len() - overlap]);
        letters.extend_from_slice(&other.letters[overlap..]);
        Self { letters }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity();
        for _ in 0..n {
            out = out.concat(self);
        }
        out
    }

    /// Signed occurrence count of each generator `x_1..x_m`.
    pub fn exponent_sums(&self, generators: usize) -> Result<Vec<i64>> {
        let mut sums = vec![0i64; generators];
        for &k in &self.letters {
            let index = k.unsigned_abs();
            let slot = sums
                .get_mut(index as usize - 1)
                .ok_or(Error::GeneratorOutOfRange { index, generators })?;
            *slot += i64::from(k.signum());
        }
        Ok(sums)
    }
}

impl Mul for &GroupWord {
    type Output = GroupWord;

    fn mul(self, rhs: &GroupWord) -> GroupWord {
        self.concat(rhs)
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, k) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *k > 0 {
                write!(f, "x{k}")?;
            } else {
                write!(f, "x{}^-1", -k)?;
            }
        }
        Ok(())
    }
}
