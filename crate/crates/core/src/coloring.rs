//! Abelian (coloring) data of a presentation over `Z/p`.
//!
//! Homomorphisms from the core group to `Z/p` are the solutions `f` of
//! `sum_i e_i(r) f_i = 0` for every relator `r`, where `e(r)` is the exponent
//! sum vector. For an arc-level presentation these are exactly the Fox
//! `p`-colorings, and the count is `p^(m - rank)`.

use alloc::vec::Vec;

use crate::braid::Presentation;
use crate::zp;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringRank {
    /// Rank over `Z/p` of the relator exponent-sum matrix.
    pub rank: usize,
    /// `m - rank`; the coloring group has order `p^order_exponent`.
    pub order_exponent: usize,
}

/// Exponent sums of every relator, reduced mod `p`.
pub fn exponent_matrix(pr: &Presentation, p: u32) -> Vec<Vec<u32>> {
    pr.relators()
        .iter()
        .map(|r| {
            r.exponent_sums(pr.generators())
                .expect("presentation relators are in range")
                .into_iter()
                .map(|e| zp::residue(e, p))
                .collect()
        })
        .collect()
}

pub fn coloring_rank(pr: &Presentation, p: u32) -> Result<ColoringRank> {
    zp::ensure_prime(p)?;
    let rank = rank_mod_p(exponent_matrix(pr, p), pr.generators(), p);
    Ok(ColoringRank {
        rank,
        order_exponent: pr.generators() - rank,
    })
}

/// Row reduction over `Z/p`.
fn rank_mod_p(mut rows: Vec<Vec<u32>>, cols: usize, p: u32) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = zp::inverse(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = zp::mul(*v, inv, p);
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (v, &pv) in row.iter_mut().zip(pivot_row) {
                *v = zp::add(*v, zp::neg(zp::mul(factor, pv, p), p), p);
            }
        }
        rank += 1;
    }
    rank
}

/// First relator (0-based) whose exponent sums are not all `0 mod p`, with the
/// reduced vector.
pub fn first_nonvanishing(pr: &Presentation, p: u32) -> Option<(usize, Vec<u32>)> {
    exponent_matrix(pr, p)
        .into_iter()
        .enumerate()
        .find(|(_, row)| row.iter().any(|&v| v != 0))
}

/// Whether the abelianized quotient mod `p` is all of `(Z/p)^m`, i.e. every
/// relator has exponent sums `0 mod p`.
pub fn precondition_holds(pr: &Presentation, p: u32) -> Result<bool> {
    zp::ensure_prime(p)?;
    Ok(first_nonvanishing(pr, p).is_none())
}
