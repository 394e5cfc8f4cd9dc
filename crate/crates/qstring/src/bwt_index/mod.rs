//! Run-length BWT index: RL-BWT with LF, `LF^τ` shortcuts built by pull-back
//! and alphabet replacement, sampled SA with LCE-backed ISA, the
//! run-boundary pull-back search, and pattern count/locate.

mod index;
mod io;
mod rlbwt;
mod shortcut;

pub use index::{default_tau, BwtIndex, SampledSa};
pub use io::{
    load_bundle, read_rlbwt_binary, read_rlbwt_text, save_bundle, write_rlbwt_binary,
    write_rlbwt_text, BUNDLE_VERSION,
};
pub use rlbwt::{decode, encode, internal_text, RlBwt, SENTINEL};
pub use shortcut::{Level, LfShortcut};
