//! Classical and welded braids and the core group presentation of their closures.
//!
//! Strand positions carry free group words. A crossing replaces the under-arc
//! by `y x^-1 y`, where `y` is the over-arc and `x` the incoming under-arc; a
//! virtual crossing just swaps the two positions.
//!
//! For `sigma_k` the strand entering at position `k` passes over:
//! `(a, b) -> (a b^-1 a, a)`. For `sigma_k^-1` the other strand is over:
//! `(a, b) -> (b, b a^-1 b)`. The two maps are mutually inverse, so
//! `sigma_k sigma_k^-1` leaves all labels unchanged.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::words::GroupWord;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraidLetter {
    /// `sigma_k` (`positive`) or `sigma_k^-1`, acting on positions `k, k+1`.
    Classical { k: usize, positive: bool },
    /// Virtual crossing of positions `k, k+1`.
    Virtual { k: usize },
}

impl BraidLetter {
    pub fn position(self) -> usize {
        match self {
            Self::Classical { k, .. } | Self::Virtual { k } => k,
        }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Classical { k, positive: true } => write!(f, "{k}"),
            Self::Classical { k, positive: false } => write!(f, "-{k}"),
            Self::Virtual { k } => write!(f, "v{k}"),
        }
    }
}

/// A braid on a fixed number of strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

/// A finite presentation `<x_1, ..., x_m | R>` with reduced, nontrivial relators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: usize,
    relators: Vec<GroupWord>,
}

impl Presentation {
    /// Validates generator indices and drops identity relators.
    pub fn new(generators: usize, relators: Vec<GroupWord>) -> Result<Self> {
        if generators == 0 {
            return Err(Error::NoGenerators);
        }
        for r in &relators {
            let index = r.rank();
            if index as usize > generators {
                return Err(Error::GeneratorOutOfRange { index, generators });
            }
        }
        let relators = relators.into_iter().filter(|r| !r.is_identity()).collect();
        Ok(Self {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for i in 1..=self.generators {
            if i > 1 {
                write!(f, ", ")?;
            }
            write!(f, "x{i}")?;
        }
        write!(f, " | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        for letter in &letters {
            check_position(letter.position(), strands)?;
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Parses `letter := INT | "v" INT`, `group := "(" letter+ ")" "^" INT`,
    /// with groups expanded in place.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        let tokens = lex(text)?;
        let mut letters = Vec::new();
        let mut group: Option<(usize, usize)> = None;
        let mut iter = tokens.into_iter().peekable();
        while let Some((position, token)) = iter.next() {
            match token {
                Token::Letter(letter) => {
                    check_position(letter.position(), strands)?;
                    letters.push(letter);
                }
                Token::Open => {
                    if group.is_some() {
                        return Err(syntax(position, "nested groups are not supported"));
                    }
                    group = Some((position, letters.len()));
                }
                Token::Close => {
                    let (_, start) = group
                        .take()
                        .ok_or_else(|| syntax(position, "unmatched ')'"))?;
                    if start == letters.len() {
                        return Err(syntax(position, "empty group"));
                    }
                    match iter.next() {
                        Some((_, Token::Caret)) => {}
                        _ => return Err(syntax(position, "expected '^' after ')'")),
                    }
                    let exponent = match iter.next() {
                        Some((_, Token::Int(n))) => n,
                        Some((p, _)) => return Err(syntax(p, "expected a repetition count")),
                        None => return Err(syntax(text.len(), "expected a repetition count")),
                    };
                    if exponent < 1 {
                        return Err(Error::BadExponent(exponent));
                    }
                    let body: Vec<BraidLetter> = letters[start..].to_vec();
                    for _ in 1..exponent {
                        letters.extend_from_slice(&body);
                    }
                }
                Token::Caret => return Err(syntax(position, "'^' must follow a group")),
                Token::Int(_) => unreachable!("integers after '^' are consumed with the group"),
            }
        }
        if let Some((position, _)) = group {
            return Err(syntax(position, "unclosed '('"));
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn classical_crossings(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| matches!(l, BraidLetter::Classical { .. }))
            .count()
    }

    /// Terminal arc labels `Q_1..Q_n` when the initial arcs carry `x_1..x_n`.
    pub fn propagate_labels(&self) -> Vec<GroupWord> {
        let mut labels: Vec<GroupWord> = (1..=self.strands as u32)
            .map(|i| GroupWord::generator(i, true))
            .collect();
        for &letter in &self.letters {
            let k = letter.position() - 1;
            match letter {
                BraidLetter::Virtual { .. } => labels.swap(k, k + 1),
                BraidLetter::Classical { positive, .. } => {
                    let (a, b) = (&labels[k], &labels[k + 1]);
                    let (left, right) = if positive {
                        (a.concat(&b.inverse()).concat(a), a.clone())
                    } else {
                        (b.clone(), b.concat(&a.inverse()).concat(b))
                    };
                    labels[k] = left;
                    labels[k + 1] = right;
                }
            }
        }
        labels
    }

    /// Presentation of the closure: relators `Q_i x_i^-1`, identities dropped.
    pub fn closure_presentation(&self) -> Presentation {
        let relators = self
            .propagate_labels()
            .into_iter()
            .enumerate()
            .map(|(i, q)| q.concat(&GroupWord::generator(i as u32 + 1, false)))
            .collect();
        Presentation::new(self.strands, relators).expect("labels only use strand generators")
    }

    /// Presentation with one generator per arc of the closed diagram and one
    /// relator `y x^-1 y z^-1` per classical crossing.
    ///
    /// Arc ids start as `0..n` on the initial strands, each classical crossing
    /// opens one new arc, and closing the braid glues each terminal arc to the
    /// initial arc at the same position. Glued classes are renumbered in order of
    /// their smallest member.
    pub fn arc_level_presentation(&self) -> Presentation {
        let n = self.strands;
        let mut positions: Vec<usize> = (0..n).collect();
        let mut arcs = n;
        let mut crossings: Vec<[usize; 3]> = Vec::new();
        for &letter in &self.letters {
            let k = letter.position() - 1;
            match letter {
                BraidLetter::Virtual { .. } => positions.swap(k, k + 1),
                BraidLetter::Classical { positive, .. } => {
                    let (a, b) = (positions[k], positions[k + 1]);
                    let z = arcs;
                    arcs += 1;
                    if positive {
                        crossings.push([a, b, z]);
                        positions[k] = z;
                        positions[k + 1] = a;
                    } else {
                        crossings.push([b, a, z]);
                        positions[k] = b;
                        positions[k + 1] = z;
                    }
                }
            }
        }

        let mut parent: Vec<usize> = (0..arcs).collect();
        for (i, &terminal) in positions.iter().enumerate() {
            union(&mut parent, i, terminal);
        }
        let mut class_id = alloc::vec![usize::MAX; arcs];
        let mut generators = 0;
        for arc in 0..arcs {
            let root = find(&mut parent, arc);
            if class_id[root] == usize::MAX {
                generators += 1;
                class_id[root] = generators;
            }
        }
        let mut generator_of = |arc: usize| class_id[find(&mut parent, arc)] as i32;

        let relators = crossings
            .iter()
            .map(|&[over, under_in, under_out]| {
                let y = generator_of(over);
                let x = generator_of(under_in);
                let z = generator_of(under_out);
                crate::words::reduce([y, -x, y, -z])
            })
            .collect();
        Presentation::new(generators, relators).expect("arc generators are in range")
    }

    /// Inserts `p` copies of `sigma_k^(+-1)` before letter `position`.
    ///
    /// `p` consecutive half twists on two strands can be undone by one `p`-move,
    /// so the closures of `self` and the result are `p`-move equivalent.
    pub fn insert_p_move(&self, position: usize, k: usize, positive: bool, p: u32) -> Result<Self> {
        if position > self.letters.len() {
            return Err(Error::PositionOutOfRange {
                position,
                len: self.letters.len(),
            });
        }
        check_position(k, self.strands)?;
        if p == 0 {
            return Err(Error::ZeroMoveOrder);
        }
        let mut letters = self.letters.clone();
        letters.splice(
            position..position,
            core::iter::repeat_n(BraidLetter::Classical { k, positive }, p as usize),
        );
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

fn check_position(index: usize, strands: usize) -> Result<()> {
    if index >= 1 && index < strands {
        Ok(())
    } else {
        Err(Error::StrandOutOfRange { index, strands })
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    // Keep the smaller id as root so renumbering follows first appearance.
    if ra < rb {
        parent[rb] = ra;
    } else {
        parent[ra] = rb;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Letter(BraidLetter),
    Open,
    Close,
    Caret,
    Int(i64),
}

fn syntax(position: usize, message: &str) -> Error {
    Error::Syntax {
        position,
        message: message.to_string(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        match bytes[i] {
            b if b.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            b'(' => {
                out.push((start, Token::Open));
                i += 1;
            }
            b')' => {
                out.push((start, Token::Close));
                i += 1;
            }
            b'^' => {
                out.push((start, Token::Caret));
                i += 1;
            }
            b'v' | b'-' | b'0'..=b'9' => {
                let virtual_letter = bytes[i] == b'v';
                let negative = bytes[i] == b'-';
                if virtual_letter || negative {
                    i += 1;
                }
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(syntax(start, "expected digits"));
                }
                let value: i64 = text[digits_start..i]
                    .parse()
                    .map_err(|_| syntax(start, "number too large"))?;
                let after_caret = matches!(out.last(), Some((_, Token::Caret)));
                let token = if after_caret {
                    if virtual_letter {
                        return Err(syntax(start, "expected a repetition count"));
                    }
                    Token::Int(if negative { -value } else { value })
                } else {
                    let k =
                        usize::try_from(value).map_err(|_| syntax(start, "number too large"))?;
                    if virtual_letter {
                        Token::Letter(BraidLetter::Virtual { k })
                    } else {
                        Token::Letter(BraidLetter::Classical {
                            k,
                            positive: !negative,
                        })
                    }
                };
                out.push((start, token));
            }
            _ => return Err(syntax(start, "unexpected character")),
        }
    }
    Ok(out)
}
