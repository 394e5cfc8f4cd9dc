//! Bounded edit distance from oracle access.
//!
//! [`solve`] runs the recursive divide-and-conquer with anchor
//! re-validation over growing thresholds and quota-limited child programs;
//! [`find_anchor`] / [`is_anchor`] localise the work to a compressible window
//! and [`lz_edit_distance`] finishes it on LZ factorizations with
//! Landau–Vishkin.

mod anchor;
mod lv;
mod script;
mod solve;
mod tokens;

pub use anchor::{
    compressible_window, find_anchor, is_anchor, lz_size_at_most, paired_range, retrieve_lz,
    WindowBounds,
};
pub use lv::{bounded_edit_distance, lz_edit_distance};
pub use script::{Edit, EditScript};
pub use solve::{solve, NodeRecord, Solution, SolveConfig, TokenReport};
pub use tokens::{ceil_log2, radix_for, TokenBudget, TokenScheduler};
