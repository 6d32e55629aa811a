//! Pure algebra for deciding when a link cannot be trivialized by `p`-moves.
//!
//! The crate works over an explicit presentation of the associated core group
//! of a link (one generator per strand of a braid closure, relators
//! `Q_i x_i^-1`), expands each relator through the Magnus map into truncated
//! non-commutative power series over `Z/p`, and inspects the low-degree part:
//! a link that is `p`-move equivalent to a trivial link must have every relator
//! expand to `1 + (permutation-symmetric degree-p terms) + (higher terms)`.
//!
//! Everything here is `no_std` with `alloc`. File formats, the command line and
//! parallel scheduling live in the companion `burnside` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod braid;
pub mod coloring;
mod error;
pub mod magnus;
pub mod obstruction;
pub mod oracle;
pub mod words;
pub mod zp;

pub use braid::{BraidLetter, BraidWord, Presentation};
pub use coloring::{coloring_rank, precondition_holds, ColoringRank};
pub use error::Error;
pub use magnus::{expand, Monomial, TruncatedSeries, DEFAULT_MAX_TERMS};
pub use obstruction::{
    check_relator, obstruct_4, obstruct_p, CheckOptions, Mode, ObstructionReport, Overall,
    Precondition, RelatorVerdict, Scheduler, Sequential, Verdict, Witness,
};
pub use words::{parse_word, reduce, GroupWord};

pub type Result<T, E = Error> = core::result::Result<T, E>;
