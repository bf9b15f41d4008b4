use std::collections::BTreeMap;

use crate::digraph::{canonical_key, circumference, min_edges, CanonicalKey, Digraph};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::minors::has_full_minor_support;

pub const MAX_ENUM_VERTICES: usize = 7;
pub const MAX_ENUM_EDGES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// Keep only digraphs whose cycles realize every minor size `1..=n`.
    pub require_full_support: bool,
    /// Cap on canonical labellings computed; `None` is unbounded.
    pub budget: Option<usize>,
    pub exec: Exec,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            require_full_support: true,
            budget: None,
            exec: Exec::Parallel,
        }
    }
}

/// Isomorphism classes of candidate digraphs, sorted by canonical key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub n: usize,
    pub m: usize,
    pub digraphs: Vec<Digraph>,
    pub keys: Vec<CanonicalKey>,
    /// Canonical labellings computed.
    pub nodes: usize,
    /// The budget ran out; `digraphs` may be incomplete.
    pub truncated: bool,
}

fn check_domain(n: usize, m: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUM_VERTICES {
        return Err(Error::Unsupported(format!("enumeration needs 1 <= n <= {MAX_ENUM_VERTICES}, got {n}")));
    }
    if m > MAX_ENUM_EDGES {
        return Err(Error::Unsupported(format!("enumeration needs m <= {MAX_ENUM_EDGES}, got {m}")));
    }
    Ok(())
}

struct Budget {
    cap: Option<usize>,
    used: usize,
    truncated: bool,
}

impl Budget {
    /// Reserves `k` labellings; false once the cap would be exceeded.
    fn take(&mut self, k: usize) -> bool {
        if self.cap.is_some_and(|cap| self.used + k > cap) {
            self.truncated = true;
            return false;
        }
        self.used += k;
        true
    }
}

/// Loopless digraphs grouped by edge count, one representative per
/// isomorphism class, for every count up to `max_edges`. A partial graph is
/// kept only while its sources and sinks can still be fixed by the remaining edges.
fn loopless_levels(n: usize, max_edges: usize, exec: Exec, budget: &mut Budget) -> Vec<Vec<(CanonicalKey, Digraph)>> {
    let empty = Digraph::empty(n).expect("valid vertex count");
    let mut levels = vec![vec![(canonical_key(&empty), empty)]];
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    for j in 1..=max_edges {
        let parents = &levels[j - 1];
        let remaining = max_edges - j;
        let work = parents.len() * pairs.len();
        if !budget.take(work) {
            break;
        }
        let children = exec::map(exec, parents, |(_, g)| {
            pairs
                .iter()
                .filter(|&&(u, v)| !g.has_edge(u, v))
                .filter_map(|&(u, v)| {
                    let mut h = *g;
                    h.insert_edge(u, v).expect("in range");
                    let no_out = (0..n).filter(|&x| h.out_degree(x) == 0).count();
                    let no_in = (0..n).filter(|&x| h.in_degree(x) == 0).count();
                    (no_out <= remaining && no_in <= remaining).then(|| (canonical_key(&h), h))
                })
                .collect::<Vec<_>>()
        });
        let mut level: BTreeMap<CanonicalKey, Digraph> = BTreeMap::new();
        for (k, h) in children.into_iter().flatten() {
            level.entry(k).or_insert(h);
        }
        levels.push(level.into_iter().collect());
    }
    levels
}

/// Loop subsets of size `loops` on `n` vertices, as bitmasks in increasing order.
fn loop_sets(n: usize, loops: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |s| s.count_ones() as usize == loops)
}

/// Strongly connected digraphs on `n` vertices with exactly `m` edges (loops
/// count), one per isomorphism class, ordered by canonical key.
///
/// With `require_full_support` only digraphs admitting disjoint cycle families
/// of every size `1..=n` are kept; those need a loop, and their loopless part
/// of circumference `k` has at least `min_edges(n, k)` edges.
pub fn enumerate_candidates(n: usize, m: usize, opts: EnumOptions) -> Result<Enumeration> {
    check_domain(n, m)?;
    let mut budget = Budget {
        cap: opts.budget,
        used: 0,
        truncated: false,
    };
    let mut found: BTreeMap<CanonicalKey, Digraph> = BTreeMap::new();
    if n == 1 {
        if m == 1 {
            let g = Digraph::from_edges(1, [(0, 0)])?;
            found.insert(canonical_key(&g), g);
        } else if m == 0 && !opts.require_full_support {
            let g = Digraph::empty(1)?;
            found.insert(canonical_key(&g), g);
        }
    } else if m >= n {
        let min_loops = usize::from(opts.require_full_support);
        let max_loopless = m.saturating_sub(min_loops).min(n * (n - 1));
        let levels = loopless_levels(n, max_loopless, opts.exec, &mut budget);
        for (edges, level) in levels.iter().enumerate().skip(n) {
            let loops = m - edges;
            if loops > n || loops < min_loops {
                continue;
            }
            let bases: Vec<&Digraph> = level
                .iter()
                .map(|(_, g)| g)
                .filter(|g| g.is_strongly_connected())
                .filter(|g| !opts.require_full_support || edges >= min_edges(n, circumference(g)).unwrap_or(0))
                .collect();
            let per_base = loop_sets(n, loops).count();
            if !budget.take(bases.len() * per_base) {
                break;
            }
            let children = exec::map(opts.exec, &bases, |g| {
                loop_sets(n, loops)
                    .filter_map(|s| {
                        let mut h = **g;
                        for v in crate::digraph::bits(s) {
                            h.insert_edge(v, v).expect("in range");
                        }
                        (!opts.require_full_support || has_full_minor_support(&h)).then(|| (canonical_key(&h), h))
                    })
                    .collect::<Vec<_>>()
            });
            for (k, h) in children.into_iter().flatten() {
                found.entry(k).or_insert(h);
            }
        }
    }
    let (keys, digraphs) = found.into_iter().unzip();
    Ok(Enumeration {
        n,
        m,
        digraphs,
        keys,
        nodes: budget.used,
        truncated: budget.truncated,
    })
}
