//! RL-BWT file formats and the on-disk index bundle.
//!
//! Text format: a header line `n r`, then `r` lines `symbol run_length`
//! with the sentinel written as `$`. Binary format: magic `QRLB`, then
//! little-endian `u32` version, `u64 n`, `u64 r`, and per run a `u8` tag
//! (0 sentinel, 1 symbol), `u32` symbol and `u64` length.
//!
//! A bundle directory holds `header.json` (format name, version, sizes),
//! `rlbwt.txt`, `shortcut.json`, `samples.json`, and the text as LZ77
//! JSON lines in `text.lz77.jsonl`.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::index::{BwtIndex, SampledSa};
use super::rlbwt::RlBwt;
use super::shortcut::{Level, LfShortcut};
use crate::error::{Error, Result};
use crate::lz_core::{lz77_greedy, Factorization};
use crate::oracle_sim::Sym;

const MAGIC: &[u8; 4] = b"QRLB";
const BINARY_VERSION: u32 = 1;

/// Bundle format version written by this build.
pub const BUNDLE_VERSION: u32 = 1;
const BUNDLE_FORMAT: &str = "qstring-bwt-index";

pub fn write_rlbwt_text<W: Write>(bwt: &RlBwt, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", bwt.len(), bwt.run_count())?;
    for (c, l) in bwt.runs() {
        match c {
            Some(c) => writeln!(out, "{c} {l}")?,
            None => writeln!(out, "$ {l}")?,
        }
    }
    Ok(())
}

fn parse_num<T: std::str::FromStr>(s: Option<&str>, what: &str) -> Result<T> {
    s.and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad {what}")))
}

pub fn read_rlbwt_text<R: BufRead>(input: R) -> Result<RlBwt> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header".into()))??;
    let mut h = header.split_whitespace();
    let n: usize = parse_num(h.next(), "length")?;
    let r: usize = parse_num(h.next(), "run count")?;
    let mut runs = Vec::with_capacity(r);
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut f = line.split_whitespace();
        let sym = match f.next() {
            Some("$") => None,
            s => Some(parse_num::<Sym>(s, "symbol")?),
        };
        runs.push((sym, parse_num::<usize>(f.next(), "run length")?));
    }
    finish_runs(n, r, &runs)
}

fn finish_runs(n: usize, r: usize, runs: &[(Option<Sym>, usize)]) -> Result<RlBwt> {
    if runs.len() != r {
        return Err(Error::Parse(format!(
            "expected {r} runs, found {}",
            runs.len()
        )));
    }
    let bwt = RlBwt::from_runs(runs)?;
    if bwt.len() != n {
        return Err(Error::Parse(format!(
            "runs sum to {}, header says {n}",
            bwt.len()
        )));
    }
    Ok(bwt)
}

pub fn write_rlbwt_binary<W: Write>(bwt: &RlBwt, mut out: W) -> Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&BINARY_VERSION.to_le_bytes())?;
    out.write_all(&(bwt.len() as u64).to_le_bytes())?;
    out.write_all(&(bwt.run_count() as u64).to_le_bytes())?;
    for (c, l) in bwt.runs() {
        out.write_all(&[u8::from(c.is_some())])?;
        out.write_all(&c.unwrap_or(0).to_le_bytes())?;
        out.write_all(&(l as u64).to_le_bytes())?;
    }
    Ok(())
}

fn read_array<const N: usize, R: Read>(input: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    input.read_exact(&mut buf)?;
    Ok(buf)
}

fn read_len<R: Read>(input: &mut R) -> Result<usize> {
    usize::try_from(u64::from_le_bytes(read_array(input)?))
        .map_err(|_| Error::Parse("length overflow".into()))
}

pub fn read_rlbwt_binary<R: Read>(mut input: R) -> Result<RlBwt> {
    if &read_array::<4, _>(&mut input)? != MAGIC {
        return Err(Error::Parse("not a binary RL-BWT".into()));
    }
    let version = u32::from_le_bytes(read_array(&mut input)?);
    if version != BINARY_VERSION {
        return Err(Error::Version(version));
    }
    let n = read_len(&mut input)?;
    let r = read_len(&mut input)?;
    let mut runs = Vec::with_capacity(r.min(1 << 20));
    for _ in 0..r {
        let [tag] = read_array::<1, _>(&mut input)?;
        let sym = u32::from_le_bytes(read_array(&mut input)?);
        let len = read_len(&mut input)?;
        let c = match tag {
            0 => None,
            1 => Some(sym),
            t => return Err(Error::Parse(format!("bad run tag {t}"))),
        };
        runs.push((c, len));
    }
    finish_runs(n, r, &runs)
}

#[derive(Debug, Serialize, Deserialize)]
struct BundleHeader {
    format: String,
    version: u32,
    n: usize,
    r: usize,
    tau: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct StoredShortcut {
    levels: Vec<Level>,
}

/// Writes the index into directory `dir` (created if missing).
pub fn save_bundle(index: &BwtIndex, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let header = BundleHeader {
        format: BUNDLE_FORMAT.into(),
        version: BUNDLE_VERSION,
        n: index.len(),
        r: index.rlbwt().run_count(),
        tau: index.tau(),
    };
    fs::write(
        dir.join("header.json"),
        serde_json::to_string_pretty(&header)?,
    )?;
    let mut rl = Vec::new();
    write_rlbwt_text(index.rlbwt(), &mut rl)?;
    fs::write(dir.join("rlbwt.txt"), rl)?;
    let shortcut = StoredShortcut {
        levels: index.shortcut().levels().to_vec(),
    };
    fs::write(dir.join("shortcut.json"), serde_json::to_string(&shortcut)?)?;
    fs::write(
        dir.join("samples.json"),
        serde_json::to_string(index.samples())?,
    )?;
    fs::write(
        dir.join("text.lz77.jsonl"),
        lz77_greedy(&index.text()).to_jsonl(),
    )?;
    Ok(())
}

pub fn load_bundle(dir: &Path) -> Result<BwtIndex> {
    let header: BundleHeader = serde_json::from_str(&fs::read_to_string(dir.join("header.json"))?)?;
    if header.format != BUNDLE_FORMAT {
        return Err(Error::Parse(format!(
            "unknown bundle format {}",
            header.format
        )));
    }
    if header.version != BUNDLE_VERSION {
        return Err(Error::Version(header.version));
    }
    let bwt = read_rlbwt_text(BufReader::new(fs::File::open(dir.join("rlbwt.txt"))?))?;
    if bwt.len() != header.n || bwt.run_count() != header.r {
        return Err(Error::Parse("RL-BWT does not match the header".into()));
    }
    let stored: StoredShortcut =
        serde_json::from_str(&fs::read_to_string(dir.join("shortcut.json"))?)?;
    let shortcut = LfShortcut::from_levels(header.n, header.tau, stored.levels)?;
    let samples: SampledSa = serde_json::from_str(&fs::read_to_string(dir.join("samples.json"))?)?;
    let f =
        Factorization::read_jsonl(BufReader::new(fs::File::open(dir.join("text.lz77.jsonl"))?))?;
    BwtIndex::from_parts(bwt, shortcut, samples, &f.decompress()?)
}
