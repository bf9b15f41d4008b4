//! Directed graphs on at most 16 vertices, stored as out-neighbour bitmasks.
//!
//! Vertices are 0-based. Loops are allowed and count as edges. Edge ids follow
//! row-major order of the adjacency matrix, which is also the order used for
//! magnitude variables in [`crate::poly`].

mod canonical;
mod cycles;
mod extremal;
mod iso;

pub use canonical::{canonical_form, canonical_key, CanonicalKey};
pub use cycles::{circumference, simple_cycles, Cycle};
pub use extremal::{extremal_graph, min_edges};
pub use iso::{anti_automorphisms, automorphisms, isomorphisms, Permutation};

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 16;

/// A directed graph with loops, `1 <= n <= 16`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: [u32; MAX_VERTICES],
}

impl Digraph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        Ok(Digraph {
            n,
            out: [0; MAX_VERTICES],
        })
    }

    /// Builds a graph from an edge list, rejecting duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Digraph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EdgeOutOfRange(u, v, n));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            g.out[u] |= 1 << v;
        }
        Ok(g)
    }

    /// Builds a graph from raw out-neighbour masks. Bits at or above `n` are an error.
    pub fn from_out_masks(n: usize, masks: &[u32]) -> Result<Self> {
        let mut g = Digraph::empty(n)?;
        if masks.len() != n {
            return Err(Error::VertexCount(masks.len()));
        }
        for (u, &m) in masks.iter().enumerate() {
            if m >> n != 0 {
                let v = 31 - m.leading_zeros() as usize;
                return Err(Error::EdgeOutOfRange(u, v, n));
            }
            g.out[u] = m;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out[u] >> v & 1 == 1
    }

    /// Inserts an edge; returns `false` if it was already present.
    pub fn insert_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u >= self.n || v >= self.n {
            return Err(Error::EdgeOutOfRange(u, v, self.n));
        }
        let had = self.has_edge(u, v);
        self.out[u] |= 1 << v;
        Ok(!had)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let had = self.has_edge(u, v);
        if had {
            self.out[u] &= !(1 << v);
        }
        had
    }

    pub fn out_mask(&self, u: usize) -> u32 {
        self.out[u]
    }

    pub fn in_mask(&self, v: usize) -> u32 {
        (0..self.n)
            .filter(|&u| self.out[u] >> v & 1 == 1)
            .fold(0, |m, u| m | 1 << u)
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_mask(v).count_ones() as usize
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&v| self.has_loop(v)).count()
    }

    pub fn edge_count(&self) -> usize {
        self.out[..self.n].iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Edges in row-major order; the position of an edge is its edge id.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut m = self.out[u];
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                edges.push((u, v));
                m &= m - 1;
            }
        }
        edges
    }

    /// Row-major index of edge `(u, v)` among the edges of this graph.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if !self.has_edge(u, v) {
            return None;
        }
        let before: usize = self.out[..u].iter().map(|m| m.count_ones() as usize).sum();
        Some(before + (self.out[u] & ((1u32 << v) - 1)).count_ones() as usize)
    }

    /// Same graph with every edge reversed (the digraph of the transpose).
    pub fn reverse(&self) -> Digraph {
        let mut r = Digraph {
            n: self.n,
            out: [0; MAX_VERTICES],
        };
        for (u, v) in self.edges() {
            r.out[v] |= 1 << u;
        }
        r
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Digraph {
        debug_assert_eq!(perm.len(), self.n);
        let mut r = Digraph {
            n: self.n,
            out: [0; MAX_VERTICES],
        };
        for (u, v) in self.edges() {
            r.out[perm[u]] |= 1 << perm[v];
        }
        r
    }

    /// Vertices reachable from `start` (including `start`).
    pub fn reachable_from(&self, start: usize) -> u32 {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                next |= self.out[u];
                f &= f - 1;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Every ordered pair of vertices is joined by a directed path.
    /// A single vertex counts as strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        let full = self.full_mask();
        self.reachable_from(0) == full && self.reverse().reachable_from(0) == full
    }

    /// Renders the edge-list text format: `n` on the first line, then `u v` per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the edge-list text format. Blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (first_no, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing vertex count"))?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::parse(first_no + 1, 1, "vertex count is not an integer"))?;
        let mut g = Digraph::empty(n).map_err(|e| Error::parse(first_no + 1, 1, e.to_string()))?;
        for (no, line) in lines {
            let mut fields = line.split_whitespace();
            let mut endpoint = |which: &str| -> Result<usize> {
                let tok = fields
                    .next()
                    .ok_or_else(|| Error::parse(no + 1, 1, format!("missing {which} endpoint")))?;
                let col = line.find(tok).unwrap_or(0) + 1;
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(no + 1, col, format!("bad vertex `{tok}`")))?;
                if v >= n {
                    return Err(Error::parse(no + 1, col, format!("vertex {v} >= {n}")));
                }
                Ok(v)
            };
            let u = endpoint("source")?;
            let v = endpoint("target")?;
            if fields.next().is_some() {
                return Err(Error::parse(no + 1, 1, "expected exactly two fields"));
            }
            if !g.insert_edge(u, v)? {
                return Err(Error::parse(no + 1, 1, format!("duplicate edge {u} {v}")));
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph({}; {:?})", self.n, self.edges())
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

pub(crate) fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn directed_cycle(n: usize) -> Result<Digraph> {
    Digraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}
