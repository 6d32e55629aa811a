//! Obstructions to trivializing a link by `p`-moves or 4-moves.
//!
//! Let `<x_1..x_m | R>` present the associated core group of `L`, and suppose
//! every relator has exponent sums `0 mod p` (equivalently the `Z/p` coloring
//! group has the maximal order `p^m`). If `L` is `p`-move equivalent to a
//! trivial link then each relator lies in the normal closure of all `p`-th
//! powers times a deep enough term of the lower central series, so its Magnus
//! expansion over `Z/p` has the form
//!
//! ```text
//! E(r) = 1 + sum c(i_1..i_p) X_{i_1}...X_{i_p} + (terms of degree > p)
//! ```
//!
//! with `c` invariant under permuting its arguments. A relator whose expansion
//! has a nonzero term of degree `1..p-1`, or two permuted degree-`p` monomials
//! with different coefficients, therefore certifies that `L` is not `p`-move
//! trivial. The 4-move variant runs the same test with `Z/2` coefficients up to
//! degree 4 and needs no coloring hypothesis.
//!
//! A clean result is inconclusive: the test is one-sided.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::braid::Presentation;
use crate::coloring::first_nonvanishing;
use crate::magnus::{expand_capped, Monomial, TruncatedSeries, DEFAULT_MAX_TERMS};
use crate::words::GroupWord;
use crate::zp;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `p`-moves for a prime `p`: coefficients in `Z/p`, symmetric part in degree `p`.
    PMove { p: u32 },
    /// 4-moves: coefficients in `Z/2`, symmetric part in degree 4.
    FourMove,
}

impl Mode {
    pub fn modulus(self) -> u32 {
        match self {
            Self::PMove { p } => p,
            Self::FourMove => 2,
        }
    }

    /// Degree of the permutation-symmetric part; lower degrees must vanish.
    pub fn degree(self) -> usize {
        match self {
            Self::PMove { p } => p as usize,
            Self::FourMove => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub monomial: Monomial,
    pub coefficient: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    /// Lowest nonzero term below the symmetric degree.
    LowDegree(Witness),
    /// Two permutations of the same index multiset with different coefficients.
    Asymmetry {
        first: Witness,
        second: Witness,
    },
    /// Only degrees `1..=degree` were computed and they vanish. Inconclusive.
    Screened {
        degree: usize,
    },
}

impl Verdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, Self::LowDegree(_) | Self::Asymmetry { .. })
    }

    pub fn status(&self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::LowDegree(_) => "low_degree_violation",
            Self::Asymmetry { .. } => "asymmetry_violation",
            Self::Screened { .. } => "screened",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelatorVerdict {
    /// 1-based position of the relator in the presentation.
    pub index: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Precondition {
    Holds,
    /// Relator `relator` (1-based) has exponent sums `exponent_sums` (mod `p`), not all zero.
    Fails {
        relator: usize,
        exponent_sums: Vec<u32>,
    },
    NotRequired,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Overall {
    /// Not equivalent to a trivial link under the chosen move.
    Obstructed,
    /// Every relator has the required shape; nothing can be concluded.
    NoObstruction,
    /// The coloring hypothesis fails, so the test does not apply.
    Inapplicable,
}

impl Overall {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Obstructed => "obstructed",
            Self::NoObstruction => "no_obstruction",
            Self::Inapplicable => "inapplicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObstructionReport {
    pub mode: Mode,
    pub precondition: Precondition,
    pub verdicts: Vec<RelatorVerdict>,
    pub overall: Overall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Cap on stored series terms while expanding a relator.
    pub max_terms: usize,
    /// Expand only up to this degree (when below the symmetric degree) and
    /// check vanishing there. Sound for obstruction, never yields `Pass`.
    pub screen_degree: Option<usize>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            max_terms: DEFAULT_MAX_TERMS,
            screen_degree: None,
        }
    }
}

/// Runs independent per-relator jobs. Implementations may run them in any
/// order or concurrently but must return results in index order.
pub trait Scheduler {
    fn map<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Scheduler for Sequential {
    fn map<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(job).collect()
    }
}

/// Classifies an expansion whose symmetric part should sit in degree `top`.
///
/// Witnesses are the first violation in degree-then-lexicographic order: the
/// lowest nonzero term below `top`, or else, in the first asymmetric multiset
/// class, its sorted monomial paired with the lexicographically first
/// permutation carrying a different coefficient.
pub fn inspect(series: &TruncatedSeries, top: usize) -> Verdict {
    if let Some((m, c)) = series.terms().next() {
        if m.degree() < top {
            return Verdict::LowDegree(Witness {
                monomial: m.clone(),
                coefficient: c,
            });
        }
    }

    let mut classes: BTreeMap<Vec<u32>, Vec<(&Monomial, u32)>> = BTreeMap::new();
    for (m, c) in series.terms_of_degree(top) {
        classes.entry(m.multiset_key()).or_default().push((m, c));
    }
    for (key, members) in &classes {
        let full = multinomial(key) == members.len() as u128;
        let uniform = members.iter().all(|&(_, c)| c == members[0].1);
        if full && uniform {
            continue;
        }
        let coefficient = |indices: &[u32]| {
            series
                .coefficient(&Monomial::new(indices))
                .expect("degree is within truncation")
        };
        let c0 = coefficient(key);
        let first = Witness {
            monomial: Monomial::new(key.clone()),
            coefficient: c0,
        };
        let second = if c0 == 0 {
            // Stored members are nonzero; the lexicographically first one differs.
            let (m, c) = members[0];
            Witness {
                monomial: m.clone(),
                coefficient: c,
            }
        } else {
            let mut perm = key.clone();
            loop {
                let advanced = next_permutation(&mut perm);
                debug_assert!(advanced, "an asymmetric class has a differing permutation");
                let c = coefficient(&perm);
                if c != c0 {
                    break Witness {
                        monomial: Monomial::new(perm),
                        coefficient: c,
                    };
                }
            }
        };
        return Verdict::Asymmetry { first, second };
    }
    Verdict::Pass
}

/// Number of distinct orderings of a sorted multiset, saturating.
fn multinomial(sorted: &[u32]) -> u128 {
    let mut total: u128 = 1;
    let mut seen = 0u128;
    for run in sorted.chunk_by(|a, b| a == b) {
        // Multiply by C(seen + run, run) one factor at a time; each partial
        // product is itself a binomial coefficient, so the division is exact.
        for j in 1..=run.len() as u128 {
            seen += 1;
            total = match total.checked_mul(seen) {
                Some(v) => v / j,
                None => return u128::MAX,
            };
        }
    }
    total
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Checks one relator against the `p`-move criterion (expansion to degree `p`).
pub fn check_relator(r: &GroupWord, p: u32) -> Result<Verdict> {
    check_relator_with(r, Mode::PMove { p }, &CheckOptions::default())
}

pub fn check_relator_with(r: &GroupWord, mode: Mode, options: &CheckOptions) -> Result<Verdict> {
    let top = mode.degree();
    match options.screen_degree {
        Some(screen) if screen < top => {
            let series = expand_capped(r, mode.modulus(), screen.max(1), options.max_terms)?;
            Ok(match inspect(&series, top) {
                Verdict::LowDegree(w) => Verdict::LowDegree(w),
                _ => Verdict::Screened {
                    degree: screen.max(1),
                },
            })
        }
        _ => {
            let series = expand_capped(r, mode.modulus(), top, options.max_terms)?;
            Ok(inspect(&series, top))
        }
    }
}

pub fn obstruct_p(pr: &Presentation, p: u32) -> Result<ObstructionReport> {
    obstruct_p_with(pr, p, &CheckOptions::default(), &Sequential)
}

pub fn obstruct_p_with<S: Scheduler>(
    pr: &Presentation,
    p: u32,
    options: &CheckOptions,
    scheduler: &S,
) -> Result<ObstructionReport> {
    zp::ensure_prime(p)?;
    let mode = Mode::PMove { p };
    if let Some((row, exponent_sums)) = first_nonvanishing(pr, p) {
        return Ok(ObstructionReport {
            mode,
            precondition: Precondition::Fails {
                relator: row + 1,
                exponent_sums,
            },
            verdicts: Vec::new(),
            overall: Overall::Inapplicable,
        });
    }
    run_checks(pr, mode, Precondition::Holds, options, scheduler)
}

/// The 4-move criterion. The caller asserts that the presentation has one
/// generator per component (true for braid closures).
pub fn obstruct_4(pr: &Presentation) -> Result<ObstructionReport> {
    obstruct_4_with(pr, &CheckOptions::default(), &Sequential)
}

pub fn obstruct_4_with<S: Scheduler>(
    pr: &Presentation,
    options: &CheckOptions,
    scheduler: &S,
) -> Result<ObstructionReport> {
    run_checks(
        pr,
        Mode::FourMove,
        Precondition::NotRequired,
        options,
        scheduler,
    )
}

fn run_checks<S: Scheduler>(
    pr: &Presentation,
    mode: Mode,
    precondition: Precondition,
    options: &CheckOptions,
    scheduler: &S,
) -> Result<ObstructionReport> {
    let relators = pr.relators();
    let results = scheduler.map(relators.len(), |i| {
        check_relator_with(&relators[i], mode, options)
    });
    let verdicts = results
        .into_iter()
        .enumerate()
        .map(|(i, verdict)| {
            Ok(RelatorVerdict {
                index: i + 1,
                verdict: verdict?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let overall = if verdicts.iter().any(|v| v.verdict.is_violation()) {
        Overall::Obstructed
    } else {
        Overall::NoObstruction
    };
    Ok(ObstructionReport {
        mode,
        precondition,
        verdicts,
        overall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::words::{parse_word, reduce};
    use crate::Error;
    use alloc::vec;
    use proptest::prelude::*;

    fn closure(text: &str, strands: usize) -> Presentation {
        BraidWord::parse(text, strands)
            .unwrap()
            .closure_presentation()
    }

    fn witness(indices: &[u32], coefficient: u32) -> Witness {
        Witness {
            monomial: Monomial::new(indices),
            coefficient,
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1, 1]), 1);
        assert_eq!(multinomial(&[1, 1, 2]), 3);
        assert_eq!(multinomial(&[1, 2, 3]), 6);
        assert_eq!(multinomial(&[1, 1, 2, 2]), 6);
        assert_eq!(multinomial(&[1, 2, 2, 3, 3, 3]), 60);
        assert_eq!(multinomial(&(1..=40).collect::<Vec<u32>>()), u128::MAX);
    }

    #[test]
    fn permutations_in_lex_order() {
        let mut v = vec![1, 1, 2];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen, [vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
    }

    #[test]
    fn cube_passes() {
        let r = parse_word("x1 x1 x1").unwrap();
        assert_eq!(check_relator(&r, 3), Ok(Verdict::Pass));
        let s = crate::magnus::expand(&r, 3, 3).unwrap();
        assert_eq!(s.coefficient(&Monomial::new([1, 1, 1])), Ok(1));
    }

    #[test]
    fn identity_passes_for_every_prime() {
        for p in [2, 3, 5, 7, 11] {
            assert_eq!(check_relator(&GroupWord::identity(), p), Ok(Verdict::Pass));
        }
    }

    #[test]
    fn commutator_is_asymmetric_at_two() {
        // 1 + X1X2 + X2X1 over Z/2 is symmetric; over Z/3 it is 1 + X1X2 + 2X2X1.
        let r = parse_word("x1 x2 x1^-1 x2^-1").unwrap();
        assert_eq!(check_relator(&r, 2), Ok(Verdict::Pass));
        assert_eq!(
            check_relator(&r, 3),
            Ok(Verdict::LowDegree(witness(&[1, 2], 1)))
        );
    }

    fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    fn x(i: u32) -> GroupWord {
        GroupWord::generator(i, true)
    }

    #[test]
    fn asymmetry_witness_with_zero_sorted_member() {
        // E([[x1, x3], x2]) = 1 + X1X3X2 - X3X1X2 - X2X1X3 + X2X3X1 + ...
        let r = commutator(&commutator(&x(1), &x(3)), &x(2));
        assert_eq!(
            check_relator(&r, 3),
            Ok(Verdict::Asymmetry {
                first: witness(&[1, 2, 3], 0),
                second: witness(&[1, 3, 2], 1),
            })
        );
    }

    #[test]
    fn asymmetry_witness_with_nonzero_sorted_member() {
        // E([[x1, x2], x3]) = 1 + X1X2X3 - X2X1X3 - X3X1X2 + X3X2X1 + ...
        let r = commutator(&commutator(&x(1), &x(2)), &x(3));
        assert_eq!(
            check_relator(&r, 3),
            Ok(Verdict::Asymmetry {
                first: witness(&[1, 2, 3], 1),
                second: witness(&[1, 3, 2], 0),
            })
        );
    }

    #[test]
    fn symmetric_degree_three_class_passes() {
        // [[x1, x2], x1] = 2X1X2X1 - X2X1X1 - X1X1X2 + ..., constant 2 mod 3 on {1,1,2}.
        let r = commutator(&commutator(&x(1), &x(2)), &x(1));
        assert_eq!(check_relator(&r, 3), Ok(Verdict::Pass));
    }

    #[test]
    fn trefoil_has_no_obstruction_at_three() {
        let report = obstruct_p(&closure("1 1 1", 2), 3).unwrap();
        assert_eq!(report.precondition, Precondition::Holds);
        assert_eq!(report.overall, Overall::NoObstruction);
        assert_eq!(report.verdicts.len(), 2);
        assert!(report.verdicts.iter().all(|v| v.verdict == Verdict::Pass));
    }

    #[test]
    fn hopf_is_inapplicable_at_three() {
        let report = obstruct_p(&closure("1 1", 2), 3).unwrap();
        assert_eq!(
            report.precondition,
            Precondition::Fails {
                relator: 1,
                exponent_sums: vec![2, 1]
            }
        );
        assert_eq!(report.overall, Overall::Inapplicable);
        assert!(report.verdicts.is_empty());
    }

    #[test]
    fn empty_presentation_has_no_four_move_obstruction() {
        let pr = Presentation::new(2, vec![]).unwrap();
        let report = obstruct_4(&pr).unwrap();
        assert_eq!(report.precondition, Precondition::NotRequired);
        assert_eq!(report.overall, Overall::NoObstruction);
        assert_eq!(report.mode.modulus(), 2);
        assert_eq!(report.mode.degree(), 4);
    }

    #[test]
    fn composite_modulus_is_rejected() {
        let pr = Presentation::new(2, vec![]).unwrap();
        assert_eq!(obstruct_p(&pr, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn screening_never_passes() {
        let r = parse_word("x1 x1 x1 x1 x1").unwrap();
        let opts = CheckOptions {
            screen_degree: Some(3),
            ..CheckOptions::default()
        };
        assert_eq!(
            check_relator_with(&r, Mode::PMove { p: 5 }, &opts),
            Ok(Verdict::Screened { degree: 3 })
        );
        let full = CheckOptions {
            screen_degree: Some(5),
            ..opts
        };
        assert_eq!(
            check_relator_with(&r, Mode::PMove { p: 5 }, &full),
            Ok(Verdict::Pass)
        );
        let commutator = parse_word("x1 x2 x1^-1 x2^-1").unwrap();
        assert_eq!(
            check_relator_with(&commutator, Mode::PMove { p: 5 }, &opts),
            Ok(Verdict::LowDegree(witness(&[1, 2], 1)))
        );
    }

    #[test]
    fn capacity_error_propagates() {
        let pr = closure("(1 2 3 4)^10", 5);
        let opts = CheckOptions {
            max_terms: 50,
            screen_degree: None,
        };
        assert_eq!(
            obstruct_p_with(&pr, 3, &opts, &Sequential),
            Err(Error::Capacity { cap: 50 })
        );
    }

    fn word(m: i32, max_len: usize) -> impl Strategy<Value = GroupWord> {
        prop::collection::vec((1..=m, any::<bool>()), 0..=max_len)
            .prop_map(|v| reduce(v.into_iter().map(|(k, s)| if s { k } else { -k })))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn padding_by_cubes_preserves_verdict_class(r in word(3, 8), u in word(3, 4)) {
            let padded = u.pow(3).concat(&r);
            let before = check_relator(&r, 3).unwrap();
            let after = check_relator(&padded, 3).unwrap();
            prop_assert_eq!(before.is_violation(), after.is_violation());
            if let (Verdict::LowDegree(a), Verdict::LowDegree(b)) = (&before, &after) {
                prop_assert_eq!(a.monomial.degree(), b.monomial.degree());
            }
        }

        #[test]
        fn witnesses_are_well_formed(r in word(3, 10), p in prop::sample::select(vec![2u32, 3, 5])) {
            match check_relator(&r, p).unwrap() {
                Verdict::LowDegree(w) => {
                    prop_assert!(w.monomial.degree() >= 1 && w.monomial.degree() < p as usize);
                    prop_assert!(w.coefficient != 0);
                }
                Verdict::Asymmetry { first, second } => {
                    prop_assert_eq!(first.monomial.degree(), p as usize);
                    prop_assert_eq!(first.monomial.multiset_key(), second.monomial.multiset_key());
                    prop_assert_ne!(first.coefficient, second.coefficient);
                    prop_assert!(first.monomial < second.monomial);
                }
                Verdict::Pass => {}
                Verdict::Screened { .. } => prop_assert!(false, "no screening requested"),
            }
        }
    }
}
