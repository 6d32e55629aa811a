//! File formats, report rendering, parallel relator checks and the `burnside`
//! command line on top of [`burnside_core`].

pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;

pub use parallel::Parallel;
