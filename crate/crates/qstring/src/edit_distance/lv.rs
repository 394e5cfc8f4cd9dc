//! Landau–Vishkin edit distance on LZ-compressed inputs.
//!
//! Diagonal waves are extended with LCE queries over `X · Y`. The LCE
//! structure is the fingerprint index built from the decompressed texts, so
//! no oracle is queried.

use super::script::{Edit, EditScript};
use crate::error::Result;
use crate::fingerprint::DynamicLce;
use crate::lz_core::Factorization;
use crate::oracle_sim::Sym;

const NONE: isize = -1;

#[derive(Clone, Copy)]
enum Step {
    Start,
    Substitute,
    Delete,
    Insert,
}

struct Wave {
    /// Furthest row per diagonal `d ∈ [−e, e]` (index `d + e`).
    rows: Vec<isize>,
    steps: Vec<Step>,
}

/// Bounded edit distance of two known texts; `None` when it exceeds `cap`.
pub fn bounded_edit_distance(
    x: &[Sym],
    y: &[Sym],
    cap: Option<usize>,
) -> Option<(usize, EditScript)> {
    let (nx, ny) = (x.len(), y.len());
    let mut joined = Vec::with_capacity(nx + ny);
    joined.extend_from_slice(x);
    joined.extend_from_slice(y);
    // built on first need: short inputs are compared directly
    let lce = std::cell::OnceCell::new();
    let slide = |i: usize, d: isize| -> usize {
        let j = (i as isize + d) as usize;
        if i >= nx || j >= ny {
            return i;
        }
        // short runs are cheaper to scan than to fingerprint
        let mut t = 0usize;
        while t < 8 && i + t < nx && j + t < ny {
            if x[i + t] != y[j + t] {
                return i + t;
            }
            t += 1;
        }
        if i + t == nx || j + t == ny {
            return i + t;
        }
        i + lce
            .get_or_init(|| DynamicLce::from_text(&joined))
            .lce(i, nx + j)
            .min(nx - i)
            .min(ny - j)
    };
    let goal = ny as isize - nx as isize;
    let max_e = cap.unwrap_or(nx + ny).min(nx + ny);
    let mut waves: Vec<Wave> = Vec::new();
    for e in 0..=max_e {
        let ei = e as isize;
        let mut rows = vec![NONE; 2 * e + 1];
        let mut steps = vec![Step::Start; 2 * e + 1];
        for d in -ei..=ei {
            if d < -(nx as isize) || d > ny as isize {
                continue;
            }
            let (start, step) = if e == 0 {
                (0isize, Step::Start)
            } else {
                let prev = &waves[e - 1].rows;
                let at = |dd: isize| -> isize {
                    if dd.abs() > ei - 1 {
                        NONE
                    } else {
                        prev[(dd + ei - 1) as usize]
                    }
                };
                let mut best = (NONE, Step::Start);
                let sub = at(d);
                if sub != NONE && sub < nx as isize && sub + d < ny as isize {
                    best = (sub + 1, Step::Substitute);
                }
                let del = at(d + 1);
                if del != NONE && del < nx as isize && del + 1 > best.0 {
                    best = (del + 1, Step::Delete);
                }
                let ins = at(d - 1);
                if ins != NONE && ins + d <= ny as isize && ins > best.0 {
                    best = (ins, Step::Insert);
                }
                best
            };
            if start == NONE {
                continue;
            }
            let k = (d + ei) as usize;
            rows[k] = slide(start as usize, d) as isize;
            steps[k] = step;
        }
        let reached = goal.abs() <= ei && rows[(goal + ei) as usize] == nx as isize;
        waves.push(Wave { rows, steps });
        if reached {
            return Some((e, trace(&waves, y, goal)));
        }
    }
    None
}

fn trace(waves: &[Wave], y: &[Sym], goal: isize) -> EditScript {
    let mut edits = Vec::new();
    let mut d = goal;
    for e in (1..waves.len()).rev() {
        let ei = e as isize;
        let step = waves[e].steps[(d + ei) as usize];
        let prev = |dd: isize| waves[e - 1].rows[(dd + ei - 1) as usize] as usize;
        match step {
            Step::Substitute => {
                let p = prev(d);
                let j = (p as isize + d) as usize;
                edits.push(Edit::Substitute {
                    x: p + 1,
                    sym: y[j],
                });
            }
            Step::Delete => {
                let p = prev(d + 1);
                edits.push(Edit::Delete { x: p + 1 });
                d += 1;
            }
            Step::Insert => {
                let p = prev(d - 1);
                let j = (p as isize + d - 1) as usize;
                edits.push(Edit::Insert {
                    y: j + 1,
                    sym: y[j],
                });
                d -= 1;
            }
            Step::Start => unreachable!("only the first wave starts fresh"),
        }
    }
    edits.reverse();
    EditScript::new(edits)
}

/// Edit distance of the texts encoded by two factorizations (of any
/// LZ77-like kind), with an optimal script, or `None` when the distance
/// exceeds `cap`. Issues no oracle queries.
pub fn lz_edit_distance(
    fx: &Factorization,
    fy: &Factorization,
    cap: Option<usize>,
) -> Result<Option<(usize, EditScript)>> {
    let x = fx.decompress()?;
    let y = fy.decompress()?;
    Ok(bounded_edit_distance(&x, &y, cap))
}
