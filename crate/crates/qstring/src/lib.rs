//! Classical simulation of quantum-query string algorithms.
//!
//! Texts are hidden behind an [`oracle_sim::OracleText`] whose reads are
//! counted; Grover-style subroutines are simulated exactly and charged their
//! quantum query cost. On top of that layer the crate provides LZ77 /
//! LZ-End / LZ-End+τ factorizations, bounded edit distance with the
//! token-scheduled recursion, a run-length BWT index with LF^τ shortcuts, and
//! a few applications.

pub mod applications;
pub mod bench;
pub mod bwt_index;
pub mod corpus;
pub mod edit_distance;
pub mod error;
pub mod fingerprint;
pub mod lz_core;
pub mod lz_end_tau;
pub mod oracle_sim;
pub mod par;
pub mod pipeline;
pub mod pool;
pub mod reference;
pub mod suffix;
pub mod verify;

pub use error::{Error, Result};
pub use oracle_sim::{Ledger, OracleText, Sym};
