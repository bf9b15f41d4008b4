//! Which principal-minor sizes a digraph can support: a `k x k` principal minor
//! can be nonzero only if some family of vertex-disjoint cycles covers exactly
//! `k` vertices.

use crate::digraph::{bits, simple_cycles, Cycle, Digraph};

/// Minor sizes realizable by disjoint cycle packings, with one witness each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSupport {
    n: usize,
    /// bit `k` set iff size `k` is achievable (`1 <= k <= n`)
    sizes: u32,
    witnesses: Vec<Option<Vec<Cycle>>>,
}

impl MinorSupport {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, k: usize) -> bool {
        k <= self.n && self.sizes >> k & 1 == 1
    }

    pub fn achievable(&self) -> Vec<usize> {
        bits(self.sizes).collect()
    }

    pub fn missing(&self) -> Vec<usize> {
        (1..=self.n).filter(|&k| !self.contains(k)).collect()
    }

    pub fn is_full(&self) -> bool {
        self.sizes == ((1u32 << (self.n + 1)) - 2)
    }

    /// A family of pairwise disjoint cycles with total length `k`.
    pub fn witness(&self, k: usize) -> Option<&[Cycle]> {
        self.witnesses.get(k)?.as_deref()
    }
}

/// Exact search over the reachable vertex masks of disjoint packings.
///
/// A packing is determined up to its vertex set by the cycles it uses, and its
/// total length is the popcount of that set, so it suffices to close the set of
/// masks `{0}` under "add a cycle disjoint from the mask".
pub fn achievable_minor_sizes(g: &Digraph) -> MinorSupport {
    let cycles = simple_cycles(g);
    support_from_cycles(g.n(), &cycles)
}

pub(crate) fn support_from_cycles(n: usize, cycles: &[Cycle]) -> MinorSupport {
    let masks: Vec<u32> = cycles.iter().map(Cycle::vertex_mask).collect();
    const UNSEEN: (u32, usize) = (u32::MAX, usize::MAX);
    let mut parent = vec![UNSEEN; 1 << n];
    let mut states = vec![0u32];
    let mut i = 0;
    while i < states.len() {
        let s = states[i];
        i += 1;
        for (c, &m) in masks.iter().enumerate() {
            if s & m == 0 {
                let t = s | m;
                if t != 0 && parent[t as usize] == UNSEEN {
                    parent[t as usize] = (s, c);
                    states.push(t);
                }
            }
        }
    }
    let mut sizes = 0u32;
    let mut witnesses = vec![None; n + 1];
    for &s in &states[1..] {
        let k = s.count_ones() as usize;
        if sizes >> k & 1 == 0 {
            sizes |= 1 << k;
            let mut family = Vec::new();
            let mut cur = s;
            while cur != 0 {
                let (prev, c) = parent[cur as usize];
                family.push(cycles[c].clone());
                cur = prev;
            }
            family.reverse();
            witnesses[k] = Some(family);
        }
    }
    MinorSupport { n, sizes, witnesses }
}

/// True iff every size `1..=n` is achievable.
pub fn has_full_minor_support(g: &Digraph) -> bool {
    achievable_minor_sizes(g).is_full()
}
