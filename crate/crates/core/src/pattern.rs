//! Sign patterns: `n x n` grids over `{+, -, 0}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, MAX_VERTICES};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Zero,
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    /// `+1`, `-1` or `0`.
    pub fn value(self) -> i8 {
        match self {
            Sign::Zero => 0,
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Zero => Sign::Zero,
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Row-major sign grid.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    n: usize,
    entries: Vec<Sign>,
}

impl SignPattern {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        Ok(SignPattern {
            n,
            entries: vec![Sign::Zero; n * n],
        })
    }

    pub fn from_rows(rows: &[Vec<Sign>]) -> Result<Self> {
        let mut p = SignPattern::zeros(rows.len())?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != p.n {
                return Err(Error::ShapeMismatch {
                    rows: rows.len(),
                    cols: row.len(),
                    n: p.n,
                });
            }
            p.entries[i * p.n..(i + 1) * p.n].copy_from_slice(row);
        }
        Ok(p)
    }

    /// Pattern on the support of `g`, with `signs[e]` for edge id `e`.
    pub fn from_edge_signs(g: &Digraph, signs: &[Sign]) -> Self {
        let edges = g.edges();
        assert_eq!(edges.len(), signs.len(), "one sign per edge");
        let n = g.n();
        let mut entries = vec![Sign::Zero; n * n];
        for (&(i, j), &s) in edges.iter().zip(signs) {
            debug_assert_ne!(s, Sign::Zero);
            entries[i * n + j] = s;
        }
        SignPattern { n, entries }
    }

    /// Pattern on the support of `g` where bit `e` of `negatives` marks edge `e` negative.
    pub fn from_sign_mask(g: &Digraph, negatives: u64) -> Self {
        let signs: Vec<Sign> = (0..g.edge_count())
            .map(|e| {
                if negatives >> e & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect();
        SignPattern::from_edge_signs(g, &signs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Sign {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Sign) {
        self.entries[i * self.n + j] = s;
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|&&s| s != Sign::Zero).count()
    }

    /// Edge `(i, j)` iff entry `(i, j)` is nonzero.
    pub fn support_digraph(&self) -> Digraph {
        let mut masks = vec![0u32; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) != Sign::Zero {
                    masks[i] |= 1 << j;
                }
            }
        }
        Digraph::from_out_masks(self.n, &masks).expect("dimensions already validated")
    }

    /// Irreducible iff the support digraph is strongly connected.
    pub fn is_irreducible(&self) -> bool {
        self.support_digraph().is_strongly_connected()
    }

    /// Signs of the nonzero entries in row-major (edge id) order.
    pub fn edge_signs(&self) -> Vec<Sign> {
        self.entries.iter().copied().filter(|&s| s != Sign::Zero).collect()
    }

    /// Bit `e` set iff the `e`-th nonzero entry (row-major) is negative.
    pub fn sign_mask(&self) -> u64 {
        self.edge_signs()
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Sign::Minus)
            .fold(0, |m, (e, _)| m | 1 << e)
    }

    pub fn transpose(&self) -> SignPattern {
        let mut t = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Permutation similarity: entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> SignPattern {
        let mut t = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(perm[i], perm[j], self.get(i, j));
            }
        }
        t
    }

    /// Signature similarity `D S D` with `D = diag(d)`, `d[i] = ±1`.
    pub fn signature_similar(&self, d: &[i8]) -> SignPattern {
        let mut t = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                let s = self.get(i, j);
                t.set(i, j, if d[i] * d[j] < 0 { s.flipped() } else { s });
            }
        }
        t
    }

    pub fn negated(&self) -> SignPattern {
        SignPattern {
            n: self.n,
            entries: self.entries.iter().map(|s| s.flipped()).collect(),
        }
    }

    /// Parses `n` rows of `n` symbols from `{+, -, 0}` separated by single spaces.
    /// Blank lines are skipped; rows must all have the same width as the row count.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<(usize, Vec<Sign>)> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for (k, tok) in line.split(' ').enumerate() {
                let col = 2 * k + 1;
                let mut chars = tok.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => match Sign::from_symbol(c) {
                        Some(s) => row.push(s),
                        None => {
                            return Err(Error::parse(no + 1, col, format!("unknown symbol `{c}`")))
                        }
                    },
                    (None, _) => return Err(Error::parse(no + 1, col, "expected single space")),
                    _ => return Err(Error::parse(no + 1, col, format!("bad token `{tok}`"))),
                }
            }
            rows.push((no + 1, row));
        }
        let n = rows.len();
        if n == 0 {
            return Err(Error::parse(1, 1, "empty pattern"));
        }
        if n > MAX_VERTICES {
            return Err(Error::parse(1, 1, format!("dimension {n} exceeds {MAX_VERTICES}")));
        }
        for (line, row) in &rows {
            if row.len() != n {
                return Err(Error::parse(
                    *line,
                    2 * row.len().min(n) + 1,
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
        }
        let rows: Vec<Vec<Sign>> = rows.into_iter().map(|(_, r)| r).collect();
        SignPattern::from_rows(&rows)
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).symbol().to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).symbol()).collect())
            .collect();
        write!(f, "SignPattern[{}]", rows.join("/"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let text = "- + 0\n0 0 +\n+ 0 -\n";
        let p = SignPattern::parse(text).unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(p.nonzero_count(), 5);
        assert_eq!(p.to_string(), text);
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = SignPattern::parse("- +\n0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        assert!(SignPattern::parse("- +  0\n0 0 0\n0 0 0\n").is_err());
        assert!(SignPattern::parse("- x\n0 0\n").is_err());
        assert!(SignPattern::parse("").is_err());
    }

    #[test]
    fn support_digraph_edges() {
        assert_eq!(SignPattern::zeros(3).unwrap().support_digraph().edge_count(), 0);
        let diag = SignPattern::parse("- 0 0\n0 - 0\n0 0 -\n").unwrap();
        let g = diag.support_digraph();
        assert_eq!(g.edges(), vec![(0, 0), (1, 1), (2, 2)]);
        assert!(!diag.is_irreducible());
    }

    #[test]
    fn similarity_operations() {
        let p = SignPattern::parse("- +\n- 0\n").unwrap();
        assert_eq!(p.signature_similar(&[1, -1]).to_string(), "- -\n+ 0\n");
        assert_eq!(p.transpose().to_string(), "- -\n+ 0\n");
        assert_eq!(p.permuted(&[1, 0]).to_string(), "0 -\n+ -\n");
        assert_eq!(p.negated().negated(), p);
        assert_eq!(p.sign_mask(), 0b101);
    }
}
