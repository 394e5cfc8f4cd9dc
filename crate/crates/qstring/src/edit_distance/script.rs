//! Edit scripts: witness alignments written as insertions, deletions and
//! substitutions in 1-based input coordinates.

use std::fmt;

use crate::error::{Error, Result};
use crate::oracle_sim::Sym;

/// One edit. `x` positions refer to the source string, `y` positions to the
/// target string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edit {
    /// Insert `sym`, which becomes `Y[y]`.
    Insert { y: usize, sym: Sym },
    /// Delete `X[x]`.
    Delete { x: usize },
    /// Replace `X[x]` by `sym`.
    Substitute { x: usize, sym: Sym },
}

impl Edit {
    /// The same edit with both coordinates shifted.
    pub fn shifted(self, dx: usize, dy: usize) -> Edit {
        match self {
            Edit::Insert { y, sym } => Edit::Insert { y: y + dy, sym },
            Edit::Delete { x } => Edit::Delete { x: x + dx },
            Edit::Substitute { x, sym } => Edit::Substitute { x: x + dx, sym },
        }
    }
}

/// Edits in alignment order (left to right in both strings).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditScript {
    pub edits: Vec<Edit>,
}

impl EditScript {
    pub fn new(edits: Vec<Edit>) -> Self {
        EditScript { edits }
    }

    pub fn cost(&self) -> usize {
        self.edits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edits.is_empty()
    }

    pub fn shifted(&self, dx: usize, dy: usize) -> EditScript {
        EditScript::new(self.edits.iter().map(|e| e.shifted(dx, dy)).collect())
    }

    pub fn append(&mut self, other: EditScript) {
        self.edits.extend(other.edits);
    }

    /// Applies the script to `x`. Between edits, symbols of `x` are copied;
    /// an insertion at `y` first copies until the output holds `y − 1`
    /// symbols.
    pub fn apply(&self, x: &[Sym]) -> Result<Vec<Sym>> {
        let mut out = Vec::with_capacity(x.len() + self.edits.len());
        let mut i = 0usize;
        let bad = |k: usize, why: &str| Err(Error::Invariant(format!("edit {k}: {why}")));
        for (k, e) in self.edits.iter().enumerate() {
            match *e {
                Edit::Delete { x: p } | Edit::Substitute { x: p, .. } => {
                    if p <= i || p > x.len() {
                        return bad(k, "source position out of order");
                    }
                    out.extend_from_slice(&x[i..p - 1]);
                    if let Edit::Substitute { sym, .. } = *e {
                        out.push(sym);
                    }
                    i = p;
                }
                Edit::Insert { y, sym } => {
                    if y <= out.len() {
                        return bad(k, "target position out of order");
                    }
                    let need = y - 1 - out.len();
                    if i + need > x.len() {
                        return bad(k, "insertion beyond the source");
                    }
                    out.extend_from_slice(&x[i..i + need]);
                    i += need;
                    out.push(sym);
                }
            }
        }
        out.extend_from_slice(&x[i..]);
        Ok(out)
    }

    /// Whether the script turns `x` into `y`.
    pub fn transforms(&self, x: &[Sym], y: &[Sym]) -> bool {
        self.apply(x).is_ok_and(|out| out == y)
    }

    /// The `y` at which the alignment described by this script passes
    /// source boundary `target` (the first such `y` if the alignment stays on
    /// that row for several columns).
    pub fn y_at(&self, target: usize) -> usize {
        let (mut i, mut j) = (0usize, 0usize);
        for e in &self.edits {
            match *e {
                Edit::Delete { x: p } | Edit::Substitute { x: p, .. } => {
                    if target < p {
                        return j + (target - i);
                    }
                    j += p - 1 - i;
                    if matches!(e, Edit::Substitute { .. }) {
                        j += 1;
                    }
                    i = p;
                }
                Edit::Insert { y, .. } => {
                    let run = y - 1 - j;
                    if target <= i + run {
                        return j + (target - i);
                    }
                    i += run;
                    j = y;
                }
            }
        }
        j + (target - i)
    }

    /// One edit per line: `D x`, `I y c`, `S x c`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut edits = Vec::new();
        for (ln, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let num = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {}: bad number {t:?}", ln + 1)))
            };
            let sym = |t: &str| {
                t.parse::<Sym>()
                    .map_err(|_| Error::Parse(format!("line {}: bad symbol {t:?}", ln + 1)))
            };
            let e = match parts.as_slice() {
                ["D", x] => Edit::Delete { x: num(x)? },
                ["I", y, c] => Edit::Insert {
                    y: num(y)?,
                    sym: sym(c)?,
                },
                ["S", x, c] => Edit::Substitute {
                    x: num(x)?,
                    sym: sym(c)?,
                },
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: unrecognised edit {line:?}",
                        ln + 1
                    )))
                }
            };
            edits.push(e);
        }
        Ok(EditScript { edits })
    }
}

impl fmt::Display for EditScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edits {
            match *e {
                Edit::Delete { x } => writeln!(f, "D {x}")?,
                Edit::Insert { y, sym } => writeln!(f, "I {y} {sym}")?,
                Edit::Substitute { x, sym } => writeln!(f, "S {x} {sym}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Vec<Sym> {
        t.bytes().map(Sym::from).collect()
    }

    #[test]
    fn kitten_to_sitting() {
        let script = EditScript::new(vec![
            Edit::Substitute {
                x: 1,
                sym: b's' as Sym,
            },
            Edit::Substitute {
                x: 5,
                sym: b'i' as Sym,
            },
            Edit::Insert {
                y: 7,
                sym: b'g' as Sym,
            },
        ]);
        assert_eq!(script.apply(&s("kitten")).unwrap(), s("sitting"));
        assert_eq!(EditScript::parse(&script.to_text()).unwrap(), script);
        assert_eq!(script.y_at(0), 0);
        assert_eq!(script.y_at(6), 6);
    }

    #[test]
    fn y_at_follows_insertions_and_deletions() {
        // "abc" -> "xabd": insert x at 1, substitute c by d
        let script = EditScript::new(vec![
            Edit::Insert { y: 1, sym: 0 },
            Edit::Substitute { x: 3, sym: 1 },
        ]);
        assert_eq!(script.y_at(0), 0);
        assert_eq!(script.y_at(1), 2);
        assert_eq!(script.y_at(3), 4);
        let del = EditScript::new(vec![Edit::Delete { x: 2 }]);
        assert_eq!(del.y_at(1), 1);
        assert_eq!(del.y_at(2), 1);
        assert_eq!(del.y_at(3), 2);
    }

    #[test]
    fn rejects_disorder() {
        let script = EditScript::new(vec![Edit::Delete { x: 2 }, Edit::Delete { x: 1 }]);
        assert!(script.apply(&s("ab")).is_err());
        assert!(EditScript::parse("Q 1").is_err());
    }
}
