//! Benchmark suites over planted corpora and their CSV records.
//!
//! Every case derives its own RNG from the suite seed and its size, so a
//! seed reproduces the same rows in either execution mode. Wall time is the
//! only nondeterministic column and is left empty unless requested.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bwt_index::BwtIndex;
use crate::corpus::{self, DNA};
use crate::edit_distance::{solve, SolveConfig};
use crate::error::{Error, Result};
use crate::lz_core::convert_to_lz77;
use crate::lz_end_tau::{build, BuildConfig};
use crate::oracle_sim::{Ledger, OracleText, TAG_PREDICATE, TAG_READ, TAG_STRUCTURAL};
use crate::par::{map_with, Execution};

/// Version of the CSV column layout below.
pub const BENCH_SCHEMA: u32 = 1;

/// One benchmark run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub schema: u32,
    pub algorithm: String,
    pub n: usize,
    /// Name of the planted parameter: `z`, `k`, or `tau`.
    pub param_name: String,
    pub param: u64,
    /// What the run measured: LZ77 size, edit distance, or BWT runs.
    pub measured: u64,
    pub ledger_total: u64,
    pub reads: u64,
    pub structural: u64,
    pub predicate: u64,
    pub wall_us: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lz,
    Ed,
    Index,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lz" => Ok(Suite::Lz),
            "ed" => Ok(Suite::Ed),
            "index" => Ok(Suite::Index),
            _ => Err(Error::Parse(format!("unknown suite {s}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub suite: Suite,
    pub sizes: Vec<usize>,
    pub seed: u64,
    /// Planted LZ size for the text corpora.
    pub z: usize,
    /// Planted edits for the edit-distance pairs.
    pub k: usize,
    pub repetition_factor: u64,
    pub execution: Execution,
    pub timings: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            suite: Suite::Lz,
            sizes: (10..=14).map(|e| 1 << e).collect(),
            seed: 1,
            z: 16,
            k: 4,
            repetition_factor: 1,
            execution: Execution::default(),
            timings: false,
        }
    }
}

fn case_seed(seed: u64, n: usize) -> u64 {
    seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn record(
    algorithm: &str,
    n: usize,
    param: (&str, u64),
    measured: u64,
    ledger: &Ledger,
    wall: Option<u64>,
) -> BenchRecord {
    BenchRecord {
        schema: BENCH_SCHEMA,
        algorithm: algorithm.into(),
        n,
        param_name: param.0.into(),
        param: param.1,
        measured,
        ledger_total: ledger.total(),
        reads: ledger.count(TAG_READ),
        structural: ledger.count(TAG_STRUCTURAL),
        predicate: ledger.count(TAG_PREDICATE),
        wall_us: wall,
    }
}

fn run_case(cfg: &BenchConfig, n: usize) -> Result<BenchRecord> {
    let mut rng = corpus::rng(case_seed(cfg.seed, n));
    let text = corpus::planted_z(&mut rng, n, cfg.z, &DNA);
    let ledger = Ledger::new(cfg.repetition_factor);
    let start = Instant::now();
    let wall = |start: Instant| cfg.timings.then(|| start.elapsed().as_micros() as u64);
    match cfg.suite {
        Suite::Lz => {
            let o = OracleText::new(text, ledger.clone());
            let cfgb = BuildConfig {
                scope_rounds: false,
                ..BuildConfig::default()
            };
            let f = build(&o, &cfgb)
                .factorization
                .ok_or_else(|| Error::Invariant("unbounded build gave up".into()))?;
            let z = convert_to_lz77(&f)?.len() as u64;
            Ok(record(
                "lz-end-tau",
                n,
                ("z", cfg.z as u64),
                z,
                &ledger,
                wall(start),
            ))
        }
        Suite::Ed => {
            let y = corpus::planted_edits(&mut rng, &text, cfg.k, &DNA);
            let ox = OracleText::new(text, ledger.clone());
            let oy = OracleText::new(y, ledger.clone());
            let sol = solve(&ox, &oy, &SolveConfig::default())?;
            Ok(record(
                "solve",
                n,
                ("k", cfg.k as u64),
                sol.distance as u64,
                &ledger,
                wall(start),
            ))
        }
        Suite::Index => {
            let o = OracleText::new(text, ledger.clone());
            let f = build(
                &o,
                &BuildConfig {
                    scope_rounds: false,
                    ..BuildConfig::default()
                },
            )
            .factorization
            .ok_or_else(|| Error::Invariant("unbounded build gave up".into()))?;
            let index = BwtIndex::from_factorization(&f, None)?;
            let r = index.rlbwt().run_count() as u64;
            Ok(record(
                "rlbwt-index",
                n,
                ("tau", index.tau() as u64),
                r,
                &ledger,
                wall(start),
            ))
        }
    }
}

/// Runs every size of the suite; rows come out in `sizes` order.
pub fn run_suite(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    map_with(cfg.execution, cfg.sizes.clone(), |n| run_case(cfg, n))
        .into_iter()
        .collect()
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().map(|x| x.map_err(Error::from)).collect()
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (mx, my) = (lx.iter().sum::<f64>() / m, ly.iter().sum::<f64>() / m);
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if var == 0.0 {
        0.0
    } else {
        cov / var
    }
}

/// Slope of `ledger / √(measured · n)` against `n`: near zero when the
/// ledger grows like `√(zn)` (LZ) or `√(kn)` (solve), up to log factors.
pub fn normalized_slope(records: &[BenchRecord]) -> f64 {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .map(|r| {
            let scale = ((r.measured.max(1) as f64) * r.n as f64).sqrt();
            (r.n as f64, r.ledger_total.max(1) as f64 / scale)
        })
        .collect();
    loglog_slope(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<(f64, f64)> = (1..10)
            .map(|i| (i as f64, 3.0 * (i as f64).powf(0.5)))
            .collect();
        assert!((loglog_slope(&pts) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn csv_round_trip_and_determinism() {
        let cfg = BenchConfig {
            sizes: vec![64, 128],
            ..BenchConfig::default()
        };
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&BenchConfig {
            execution: Execution::Sequential,
            ..cfg
        })
        .unwrap();
        assert_eq!(a, b);
        let mut buf = Vec::new();
        write_csv(&a, &mut buf).unwrap();
        assert_eq!(read_csv(buf.as_slice()).unwrap(), a);
    }
}
