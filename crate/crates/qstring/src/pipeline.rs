//! Oracle-driven factorization entry points shared by the CLI and the
//! verification suites.

use crate::error::{Error, Result};
use crate::lz_core::{
    convert_to_lz77, lz_end_classical, non_overlapping_lz77_oracle, Factorization,
};
use crate::lz_end_tau::{build, build_with_tau, BuildConfig, Strategy};
use crate::oracle_sim::OracleText;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// LZ-End+τ with a doubling phrase guess, converted to LZ77.
    Lz77,
    /// Non-overlapping LZ77.
    NoLz77,
    /// LZ-End, parsed after reading the text.
    LzEnd,
    /// LZ-End+τ; with no τ given, the doubling build picks it.
    LzEndTau,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lz77" => Ok(Algorithm::Lz77),
            "nolz77" => Ok(Algorithm::NoLz77),
            "lzend" => Ok(Algorithm::LzEnd),
            "lzend-tau" => Ok(Algorithm::LzEndTau),
            _ => Err(Error::Parse(format!("unknown algorithm {s}"))),
        }
    }
}

fn unbounded_build(o: &OracleText) -> Result<Factorization> {
    build(o, &BuildConfig::default())
        .factorization
        .ok_or_else(|| Error::Invariant("unbounded build gave up".into()))
}

/// Factorizes the oracle text, charging its ledger.
pub fn factorize(o: &OracleText, algo: Algorithm, tau: Option<usize>) -> Result<Factorization> {
    match algo {
        Algorithm::Lz77 => convert_to_lz77(&unbounded_build(o)?),
        Algorithm::NoLz77 => Ok(non_overlapping_lz77_oracle(o)),
        Algorithm::LzEnd => {
            let text = (1..=o.len())
                .map(|i| o.read(i))
                .collect::<Result<Vec<_>>>()?;
            Ok(lz_end_classical(&text))
        }
        Algorithm::LzEndTau => match tau {
            Some(0) => Err(Error::Precondition("tau must be positive".into())),
            Some(t) => build_with_tau(o, t, Strategy::Merged, None)
                .ok_or_else(|| Error::Invariant("unbounded parse gave up".into())),
            None => unbounded_build(o),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle_sim::Ledger;

    #[test]
    fn lz77_example() {
        let o = OracleText::from_bytes(b"abacabcabcaaaab", Ledger::new(1));
        let f = factorize(&o, Algorithm::Lz77, None).unwrap();
        assert_eq!(
            f.pairs_string(|c| (c as u8 as char).to_string()),
            "(a,0),(b,0),(1,1),(c,0),(1,2),(4,5),(11,3),(9,1)"
        );
        let e = OracleText::from_bytes(b"", Ledger::new(1));
        assert_eq!(factorize(&e, Algorithm::Lz77, None).unwrap().len(), 0);
        let t = OracleText::from_bytes(b"00010011011", Ledger::new(1));
        assert_eq!(
            factorize(&t, Algorithm::LzEndTau, Some(2)).unwrap().len(),
            8
        );
        assert_eq!(factorize(&t, Algorithm::LzEnd, None).unwrap().len(), 7);
    }
}
