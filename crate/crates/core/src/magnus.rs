//! Truncated power series in non-commuting variables `X_1, X_2, ...` over `Z/p`,
//! and the Magnus expansion `x_i -> 1 + X_i`, `x_i^-1 -> 1 - X_i + X_i^2 - ...`.
//!
//! Series are sparse: only nonzero coefficients of degree `1..=trunc` are stored,
//! keyed by index sequence, next to a separate constant term. Terms of degree
//! above `trunc` are discarded as soon as they arise.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::words::GroupWord;
use crate::zp;
use crate::{Error, Result};

/// Default cap on the number of stored terms of one series.
pub const DEFAULT_MAX_TERMS: usize = 10_000_000;

/// A non-commutative monomial `X_{i_1} ... X_{i_d}` with `d >= 1`.
///
/// Ordered by degree first, then lexicographically by indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    /// # Panics
    ///
    /// If `indices` is empty or contains 0.
    pub fn new(indices: impl Into<Vec<u32>>) -> Self {
        let indices = indices.into();
        assert!(!indices.is_empty(), "a monomial has degree at least 1");
        assert!(
            indices.iter().all(|&i| i >= 1),
            "variables are numbered from 1"
        );
        Self(indices)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    /// Indices sorted ascending; equal for monomials that differ by a permutation.
    pub fn multiset_key(&self) -> Vec<u32> {
        let mut key = self.0.clone();
        key.sort_unstable();
        key
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.0 {
            write!(f, "X{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    modulus: u32,
    trunc: usize,
    constant: u32,
    terms: BTreeMap<Monomial, u32>,
}

impl TruncatedSeries {
    /// The series `1`.
    pub fn one(p: u32, trunc: usize) -> Result<Self> {
        zp::ensure_prime(p)?;
        if trunc == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Self {
            modulus: p,
            trunc,
            constant: 1 % p,
            terms: BTreeMap::new(),
        })
    }

    /// Builds a series from integer coefficients, reducing mod `p` and dropping zeros.
    /// Repeated monomials are summed.
    pub fn from_terms<I>(p: u32, trunc: usize, constant: i64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let mut series = Self::one(p, trunc)?;
        series.constant = zp::residue(constant, p);
        for (mono, c) in terms {
            if mono.degree() > trunc {
                return Err(Error::BeyondTruncation {
                    degree: mono.degree(),
                    trunc,
                });
            }
            let c = zp::residue(c, p);
            let slot = series.terms.entry(mono).or_insert(0);
            *slot = zp::add(*slot, c, p);
        }
        series.terms.retain(|_, c| *c != 0);
        Ok(series)
    }

    /// Magnus image of `x_i` (`positive`) or `x_i^-1`.
    pub fn generator(i: u32, positive: bool, p: u32, trunc: usize) -> Result<Self> {
        let mut series = Self::one(p, trunc)?;
        let i = i32::try_from(i).map_err(|_| Error::GeneratorOutOfRange {
            index: i,
            generators: i32::MAX as usize,
        })?;
        series.apply_letter(if positive { i } else { -i }, usize::MAX)?;
        Ok(series)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn constant(&self) -> u32 {
        self.constant
    }

    /// Number of stored nonzero terms of positive degree.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant == 1 && self.terms.is_empty()
    }

    /// Nonzero terms of positive degree, by degree then lexicographically.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    /// Nonzero terms of exactly `degree`, lexicographically.
    pub fn terms_of_degree(&self, degree: usize) -> impl Iterator<Item = (&Monomial, u32)> + '_ {
        self.terms
            .iter()
            .skip_while(move |(m, _)| m.degree() < degree)
            .take_while(move |(m, _)| m.degree() == degree)
            .map(|(m, c)| (m, *c))
    }

    /// Coefficient of `mono`; asking beyond the truncation degree is an error.
    pub fn coefficient(&self, mono: &Monomial) -> Result<u32> {
        if mono.degree() > self.trunc {
            return Err(Error::BeyondTruncation {
                degree: mono.degree(),
                trunc: self.trunc,
            });
        }
        Ok(self.terms.get(mono).copied().unwrap_or(0))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_capped(other, DEFAULT_MAX_TERMS)
    }

    pub fn mul_capped(&self, other: &Self, max_terms: usize) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        let p = self.modulus;
        let mut out = BTreeMap::new();
        let mut add = |m: Monomial, c: u32| {
            if c != 0 {
                let slot = out.entry(m).or_insert(0);
                *slot = zp::add(*slot, c, p);
            }
        };
        for (m, c) in self.terms() {
            add(m.clone(), zp::mul(c, other.constant, p));
        }
        for (m, c) in other.terms() {
            add(m.clone(), zp::mul(self.constant, c, p));
        }
        for (ms, cs) in self.terms() {
            let room = self.trunc - ms.degree();
            for (mt, ct) in other.terms().take_while(|(mt, _)| mt.degree() <= room) {
                let mut indices = Vec::with_capacity(ms.degree() + mt.degree());
                indices.extend_from_slice(ms.indices());
                indices.extend_from_slice(mt.indices());
                add(Monomial(indices), zp::mul(cs, ct, p));
            }
        }
        out.retain(|_, c| *c != 0);
        if out.len() > max_terms {
            return Err(Error::Capacity { cap: max_terms });
        }
        Ok(Self {
            modulus: p,
            trunc: self.trunc,
            constant: zp::mul(self.constant, other.constant, p),
            terms: out,
        })
    }

    /// Right-multiplies in place by the Magnus image of one free group letter.
    fn apply_letter(&mut self, letter: i32, max_terms: usize) -> Result<()> {
        let p = self.modulus;
        let index = letter.unsigned_abs();
        let positive = letter > 0;
        // x^-1 contributes (-1)^e X^e for every e >= 1; x only X.
        let max_power = if positive { 1 } else { self.trunc };
        let mut additions: Vec<(Vec<u32>, u32)> = Vec::new();
        let constant = (self.constant != 0).then_some((&[][..], self.constant));
        let existing = self
            .terms
            .iter()
            .take_while(|(m, _)| m.degree() < self.trunc)
            .map(|(m, c)| (m.indices(), *c));
        for (prefix, c) in constant.into_iter().chain(existing) {
            let powers = max_power.min(self.trunc - prefix.len());
            let mut indices = prefix.to_vec();
            let mut coeff = c;
            for _ in 0..powers {
                indices.push(index);
                if !positive {
                    coeff = zp::neg(coeff, p);
                }
                additions.push((indices.clone(), coeff));
            }
        }
        for (indices, c) in additions {
            match self.terms.entry(Monomial(indices)) {
                Entry::Vacant(slot) => {
                    slot.insert(c);
                }
                Entry::Occupied(mut slot) => {
                    let sum = zp::add(*slot.get(), c, p);
                    if sum == 0 {
                        slot.remove();
                    } else {
                        *slot.get_mut() = sum;
                    }
                }
            }
        }
        if self.terms.len() > max_terms {
            return Err(Error::Capacity { cap: max_terms });
        }
        Ok(())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.constant != 0 || self.terms.is_empty() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}·{m}")?;
        }
        Ok(())
    }
}

/// Magnus expansion of `w` over `Z/p`, truncated above degree `trunc`.
pub fn expand(w: &GroupWord, p: u32, trunc: usize) -> Result<TruncatedSeries> {
    expand_capped(w, p, trunc, DEFAULT_MAX_TERMS)
}

/// [`expand`] failing with [`Error::Capacity`] once a partial product holds more
/// than `max_terms` terms.
pub fn expand_capped(
    w: &GroupWord,
    p: u32,
    trunc: usize,
    max_terms: usize,
) -> Result<TruncatedSeries> {
    let mut series = TruncatedSeries::one(p, trunc)?;
    for &letter in w.letters() {
        series.apply_letter(letter, max_terms)?;
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_word, reduce};
    use alloc::format;
    use alloc::vec;
    use proptest::prelude::*;

    fn mono(indices: &[u32]) -> Monomial {
        Monomial::new(indices)
    }

    fn series(p: u32, d: usize, terms: &[(&[u32], i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(p, d, 1, terms.iter().map(|(m, c)| (mono(m), *c))).unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(
            TruncatedSeries::generator(1, true, 3, 3).unwrap(),
            series(3, 3, &[(&[1], 1)])
        );
        assert_eq!(
            TruncatedSeries::generator(1, false, 2, 2).unwrap(),
            series(2, 2, &[(&[1], 1), (&[1, 1], 1)])
        );
        assert_eq!(
            TruncatedSeries::generator(2, false, 5, 3).unwrap(),
            series(5, 3, &[(&[2], 4), (&[2, 2], 1), (&[2, 2, 2], 4)])
        );
        assert_eq!(
            TruncatedSeries::generator(1, true, 4, 3),
            Err(Error::NotPrime(4))
        );
        assert_eq!(
            TruncatedSeries::generator(1, true, 3, 0),
            Err(Error::ZeroDegree)
        );
    }

    #[test]
    fn mul_examples() {
        let x1 = TruncatedSeries::generator(1, true, 3, 2).unwrap();
        let x2 = TruncatedSeries::generator(2, true, 3, 2).unwrap();
        let x1_inv = TruncatedSeries::generator(1, false, 3, 2).unwrap();
        assert_eq!(
            x1.mul(&x2).unwrap(),
            series(3, 2, &[(&[1], 1), (&[2], 1), (&[1, 2], 1)])
        );
        assert!(x1.mul(&x1_inv).unwrap().is_one());
        let ba = x2.mul(&x1).unwrap();
        assert_eq!(ba, series(3, 2, &[(&[1], 1), (&[2], 1), (&[2, 1], 1)]));
        assert_eq!(ba.coefficient(&mono(&[1, 2])), Ok(0));

        let other_p = TruncatedSeries::one(5, 2).unwrap();
        assert_eq!(x1.mul(&other_p), Err(Error::ModulusMismatch(3, 5)));
        let other_d = TruncatedSeries::one(3, 3).unwrap();
        assert_eq!(x1.mul(&other_d), Err(Error::TruncationMismatch(2, 3)));
    }

    #[test]
    fn expand_examples() {
        assert!(expand(&GroupWord::identity(), 7, 4).unwrap().is_one());
        // (1+X1)(1+X2)(1-X1+X1^2)(1-X2+X2^2) up to degree 2: 1 + X1X2 - X2X1.
        let commutator = parse_word("x1 x2 x1^-1 x2^-1").unwrap();
        assert_eq!(
            expand(&commutator, 3, 2).unwrap(),
            series(3, 2, &[(&[1, 2], 1), (&[2, 1], 2)])
        );
        assert_eq!(expand(&commutator, 6, 2), Err(Error::NotPrime(6)));
    }

    #[test]
    fn coefficient_examples() {
        let s = TruncatedSeries::generator(1, true, 3, 2).unwrap();
        assert_eq!(s.coefficient(&mono(&[1])), Ok(1));
        assert_eq!(s.coefficient(&mono(&[2])), Ok(0));
        assert_eq!(
            s.coefficient(&mono(&[1, 1, 1])),
            Err(Error::BeyondTruncation {
                degree: 3,
                trunc: 2
            })
        );
    }

    #[test]
    fn capacity_guard() {
        let w = parse_word("x1 x2 x3 x1^-1 x2^-1 x3^-1").unwrap();
        assert_eq!(
            expand_capped(&w, 5, 4, 10),
            Err(Error::Capacity { cap: 10 })
        );
        assert!(expand_capped(&w, 5, 4, 10_000).is_ok());
    }

    #[test]
    fn rendering_orders_by_degree_then_lex() {
        let s = series(
            5,
            3,
            &[(&[4, 2, 3], 2), (&[2], 1), (&[1, 3], 3), (&[1, 2], 4)],
        );
        assert_eq!(format!("{s}"), "1 + 1·X2 + 4·X1X2 + 3·X1X3 + 2·X4X2X3");
        let zero = TruncatedSeries::from_terms(3, 2, 0, vec![]).unwrap();
        assert_eq!(format!("{zero}"), "0");
        let d3: Vec<_> = s
            .terms_of_degree(2)
            .map(|(m, c)| (m.indices().to_vec(), c))
            .collect();
        assert_eq!(d3, [(vec![1, 2], 4), (vec![1, 3], 3)]);
    }

    fn word(m: i32, max_len: usize) -> impl Strategy<Value = GroupWord> {
        prop::collection::vec((1..=m, any::<bool>()), 0..=max_len)
            .prop_map(|v| reduce(v.into_iter().map(|(k, s)| if s { k } else { -k })))
    }

    fn prime() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![2u32, 3, 5])
    }

    proptest! {
        #[test]
        fn expansion_is_a_homomorphism(u in word(4, 12), v in word(4, 12), p in prime(), d in 1usize..=5) {
            let lhs = expand(&u.concat(&v), p, d).unwrap();
            let rhs = expand(&u, p, d).unwrap().mul(&expand(&v, p, d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_words_expand_to_inverse_series(w in word(4, 12), p in prime(), d in 1usize..=5) {
            let s = expand(&w, p, d).unwrap().mul(&expand(&w.inverse(), p, d).unwrap()).unwrap();
            prop_assert!(s.is_one());
        }

        #[test]
        fn linear_part_is_exponent_sums(w in word(4, 16), p in prime()) {
            let s = expand(&w, p, 2).unwrap();
            let sums = w.exponent_sums(4).unwrap();
            for i in 1..=4u32 {
                let expected = zp::residue(sums[i as usize - 1], p);
                prop_assert_eq!(s.coefficient(&mono(&[i])).unwrap(), expected);
            }
        }
    }
}
