//! Slow, independent reference computations for cross-checking.
//!
//! Nothing here shares code paths with [`crate::coloring`] or the incremental
//! product in [`crate::magnus`]; the CLI exposes both behind `--verify`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::braid::Presentation;
use crate::magnus::{Monomial, TruncatedSeries};
use crate::words::GroupWord;
use crate::zp;
use crate::{Error, Result};

/// Largest assignment space [`enumerate_colorings`] will walk.
pub const MAX_ASSIGNMENTS: u64 = 1_000_000;
/// Longest word [`naive_expand`] accepts.
pub const MAX_NAIVE_WORD: usize = 16;
/// Highest truncation degree [`naive_expand`] accepts.
pub const MAX_NAIVE_DEGREE: usize = 4;

/// Counts `f in (Z/p)^m` with `sum_i e_i(r) f_i = 0 (mod p)` for every relator,
/// by trying every assignment.
pub fn enumerate_colorings(pr: &Presentation, p: u32) -> Result<u64> {
    zp::ensure_prime(p)?;
    let m = pr.generators();
    let space = u32::try_from(m)
        .ok()
        .and_then(|m| u64::from(p).checked_pow(m))
        .filter(|&n| n <= MAX_ASSIGNMENTS)
        .ok_or_else(|| {
            Error::OracleGuard(format!("{p}^{m} assignments exceed {MAX_ASSIGNMENTS}"))
        })?;

    // Relators as raw letter lists; evaluation walks the word itself.
    let relators: Vec<&[i32]> = pr.relators().iter().map(GroupWord::letters).collect();
    let modulus = i64::from(p);
    let mut colors = vec![0i64; m];
    let mut count = 0;
    for _ in 0..space {
        let ok = relators.iter().all(|letters| {
            let total: i64 = letters
                .iter()
                .map(|&k| k.signum() as i64 * colors[k.unsigned_abs() as usize - 1])
                .sum();
            total % modulus == 0
        });
        if ok {
            count += 1;
        }
        // Odometer increment.
        for c in colors.iter_mut() {
            *c += 1;
            if *c < modulus {
                break;
            }
            *c = 0;
        }
    }
    Ok(count)
}

/// Magnus expansion by explicit distribution: picks one term from every
/// letter's polynomial, multiplies out over the integers, and reduces mod `p`
/// only at the end.
pub fn naive_expand(w: &GroupWord, p: u32, trunc: usize) -> Result<TruncatedSeries> {
    zp::ensure_prime(p)?;
    if trunc == 0 {
        return Err(Error::ZeroDegree);
    }
    if w.len() > MAX_NAIVE_WORD || trunc > MAX_NAIVE_DEGREE {
        return Err(Error::OracleGuard(format!(
            "naive expansion is limited to words of length <= {MAX_NAIVE_WORD} and degree <= {MAX_NAIVE_DEGREE}"
        )));
    }
    // Letter polynomial as (power of X_i, integer coefficient) pairs.
    let polys: Vec<(u32, Vec<(usize, i64)>)> = w
        .letters()
        .iter()
        .map(|&k| {
            let terms = if k > 0 {
                vec![(0, 1), (1, 1)]
            } else {
                (0..=trunc)
                    .map(|e| (e, if e % 2 == 0 { 1 } else { -1 }))
                    .collect()
            };
            (k.unsigned_abs(), terms)
        })
        .collect();

    let mut acc: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    let mut chosen = Vec::new();
    distribute(&polys, trunc, &mut chosen, 1, &mut acc);

    let constant = acc.remove(&Vec::new()).unwrap_or(0);
    TruncatedSeries::from_terms(
        p,
        trunc,
        constant,
        acc.into_iter()
            .map(|(indices, c)| (Monomial::new(indices), c)),
    )
}

fn distribute(
    polys: &[(u32, Vec<(usize, i64)>)],
    room: usize,
    chosen: &mut Vec<u32>,
    coeff: i64,
    acc: &mut BTreeMap<Vec<u32>, i64>,
) {
    let Some(((index, terms), rest)) = polys.split_first() else {
        *acc.entry(chosen.clone()).or_insert(0) += coeff;
        return;
    };
    for &(power, c) in terms {
        if power > room {
            continue;
        }
        let mark = chosen.len();
        chosen.extend(core::iter::repeat_n(*index, power));
        distribute(rest, room - power, chosen, coeff * c, acc);
        chosen.truncate(mark);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::coloring::coloring_rank;
    use crate::magnus::expand;
    use crate::words::{parse_word, reduce};
    use proptest::prelude::*;

    #[test]
    fn coloring_counts() {
        let trefoil = BraidWord::parse("1 1 1", 2)
            .unwrap()
            .arc_level_presentation();
        assert_eq!(enumerate_colorings(&trefoil, 3), Ok(9));
        let hopf = BraidWord::parse("1 1", 2).unwrap().arc_level_presentation();
        assert_eq!(enumerate_colorings(&hopf, 3), Ok(3));
        let unlink = Presentation::new(2, vec![]).unwrap();
        assert_eq!(enumerate_colorings(&unlink, 5), Ok(25));
    }

    #[test]
    fn coloring_guard() {
        let big = Presentation::new(9, vec![]).unwrap();
        assert!(matches!(
            enumerate_colorings(&big, 5),
            Err(Error::OracleGuard(_))
        ));
        let edge = Presentation::new(6, vec![]).unwrap();
        assert_eq!(enumerate_colorings(&edge, 7), Ok(117_649));
    }

    #[test]
    fn naive_examples() {
        let xy = parse_word("x1 x2").unwrap();
        let s = naive_expand(&xy, 3, 2).unwrap();
        assert_eq!(s, expand(&xy, 3, 2).unwrap());
        assert_eq!(s.len(), 3);
        assert!(naive_expand(&parse_word("x1 x1^-1").unwrap(), 3, 4)
            .unwrap()
            .is_one());
        let commutator = parse_word("x1 x2 x1^-1 x2^-1").unwrap();
        let s = naive_expand(&commutator, 3, 2).unwrap();
        assert_eq!(s.coefficient(&Monomial::new([1, 2])), Ok(1));
        assert_eq!(s.coefficient(&Monomial::new([2, 1])), Ok(2));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn naive_guard() {
        let long = reduce((0..17).map(|_| 1));
        assert!(matches!(
            naive_expand(&long, 3, 2),
            Err(Error::OracleGuard(_))
        ));
        assert!(matches!(
            naive_expand(&GroupWord::identity(), 3, 5),
            Err(Error::OracleGuard(_))
        ));
    }

    fn word(m: i32, max_len: usize) -> impl Strategy<Value = GroupWord> {
        prop::collection::vec((1..=m, any::<bool>()), 0..=max_len)
            .prop_map(|v| reduce(v.into_iter().map(|(k, s)| if s { k } else { -k })))
    }

    proptest! {
        #[test]
        fn naive_matches_incremental(
            w in word(3, 16),
            p in prop::sample::select(vec![2u32, 3, 5, 7]),
            d in 1usize..=4,
        ) {
            prop_assert_eq!(naive_expand(&w, p, d).unwrap(), expand(&w, p, d).unwrap());
        }

        #[test]
        fn enumeration_matches_rank(
            rels in prop::collection::vec(word(4, 8), 0..4),
            p in prop::sample::select(vec![2u32, 3, 5, 7]),
        ) {
            let pr = Presentation::new(4, rels).unwrap();
            let order = coloring_rank(&pr, p).unwrap().order_exponent as u32;
            prop_assert_eq!(enumerate_colorings(&pr, p).unwrap(), u64::from(p).pow(order));
        }
    }
}
