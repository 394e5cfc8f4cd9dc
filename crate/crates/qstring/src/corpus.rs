//! Deterministic test and benchmark corpora.
//!
//! All generators draw from a ChaCha8 stream seeded explicitly, so a seed
//! reproduces a corpus bit for bit on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle_sim::Sym;

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symbols of the DNA alphabet `ACGT`, used for planted corpora.
pub const DNA: [Sym; 4] = [b'A' as Sym, b'C' as Sym, b'G' as Sym, b'T' as Sym];

/// Uniform text over `[0..sigma)`.
pub fn random_text(rng: &mut CorpusRng, n: usize, sigma: u32) -> Vec<Sym> {
    (0..n).map(|_| rng.gen_range(0..sigma)).collect()
}

/// Uniform text over the given alphabet.
pub fn random_over(rng: &mut CorpusRng, n: usize, alphabet: &[Sym]) -> Vec<Sym> {
    (0..n)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
        .collect()
}

/// Every string of length `len` over `[0..sigma)`, in lexicographic order.
pub fn all_strings(len: usize, sigma: u32) -> impl Iterator<Item = Vec<Sym>> {
    let total = (sigma as u64).pow(len as u32);
    (0..total).map(move |mut m| {
        let mut s = vec![0; len];
        for c in s.iter_mut().rev() {
            *c = (m % sigma as u64) as Sym;
            m /= sigma as u64;
        }
        s
    })
}

/// Every string of length at most `max_len` over `[0..sigma)`.
pub fn all_strings_up_to(max_len: usize, sigma: u32) -> impl Iterator<Item = Vec<Sym>> {
    (0..=max_len).flat_map(move |l| all_strings(l, sigma))
}

/// A block of length `⌈n/z⌉` over `alphabet`, repeated to length `n`, each
/// copy after the first with one random position replaced.
pub fn planted_z(rng: &mut CorpusRng, n: usize, z: usize, alphabet: &[Sym]) -> Vec<Sym> {
    let z = z.max(1);
    let block_len = n.div_ceil(z).max(1);
    let block = random_over(rng, block_len, alphabet);
    let mut out = Vec::with_capacity(n);
    let mut first = true;
    while out.len() < n {
        let mut copy = block.clone();
        if !first {
            let p = rng.gen_range(0..block_len);
            copy[p] = alphabet[rng.gen_range(0..alphabet.len())];
        }
        first = false;
        let take = (n - out.len()).min(block_len);
        out.extend_from_slice(&copy[..take]);
    }
    out
}

/// `x` with `k` random edits (insertions, deletions, substitutions) over
/// `alphabet`. The true distance is at most `k`.
pub fn planted_edits(rng: &mut CorpusRng, x: &[Sym], k: usize, alphabet: &[Sym]) -> Vec<Sym> {
    let mut y = x.to_vec();
    for _ in 0..k {
        let op = rng.gen_range(0..3);
        match op {
            0 => {
                let p = rng.gen_range(0..=y.len());
                y.insert(p, alphabet[rng.gen_range(0..alphabet.len())]);
            }
            1 if !y.is_empty() => {
                let p = rng.gen_range(0..y.len());
                y.remove(p);
            }
            _ if !y.is_empty() => {
                let p = rng.gen_range(0..y.len());
                y[p] = alphabet[rng.gen_range(0..alphabet.len())];
            }
            _ => y.push(alphabet[rng.gen_range(0..alphabet.len())]),
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_sized() {
        let a = planted_z(&mut rng(7), 1000, 16, &DNA);
        let b = planted_z(&mut rng(7), 1000, 16, &DNA);
        assert_eq!(a, b);
        assert_eq!(a.len(), 1000);
        assert_eq!(all_strings(3, 3).count(), 27);
        assert_eq!(all_strings_up_to(2, 2).count(), 7);
        let x = random_text(&mut rng(1), 50, 3);
        let y = planted_edits(&mut rng(2), &x, 5, &[0, 1, 2]);
        assert!(crate::reference::edit_distance(&x, &y) <= 5);
    }
}
