use std::fmt;

use super::Digraph;

/// Encoding of a digraph that is identical for exactly the graphs isomorphic to it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CanonicalKey(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        f.write_str(")")
    }
}

/// Canonical key of `g`: the lexicographically smallest adjacency encoding over
/// all vertex orders compatible with degree refinement.
pub fn canonical_key(g: &Digraph) -> CanonicalKey {
    canonical_form(g).0
}

/// Canonical key together with a labelling `perm` (old vertex -> new vertex)
/// such that `g.permuted(&perm)` is the canonical representative.
pub fn canonical_form(g: &Digraph) -> (CanonicalKey, Vec<usize>) {
    let n = g.n();
    let mut search = Labeler {
        g,
        best: None,
        best_order: Vec::new(),
    };
    let cells = refine(g, vec![(0..n).collect()]);
    search.search(cells);
    let bits = search.best.expect("at least one leaf");
    let mut bytes = Vec::with_capacity(1 + bits.len().div_ceil(8));
    bytes.push(n as u8);
    for chunk in bits.chunks(8) {
        bytes.push(chunk.iter().fold(0u8, |b, &x| b << 1 | x as u8) << (8 - chunk.len()));
    }
    let mut perm = vec![0; n];
    for (pos, &v) in search.best_order.iter().enumerate() {
        perm[v] = pos;
    }
    (CanonicalKey(bytes), perm)
}

/// Adjacency bits in an order where each prefix only depends on the first
/// `p` positions: loop at `p`, then `(q, p)` and `(p, q)` for `q < p`.
fn encode(g: &Digraph, order: &[usize]) -> Vec<bool> {
    let mut out = Vec::with_capacity(order.len() * order.len());
    for (p, &vp) in order.iter().enumerate() {
        out.push(g.has_edge(vp, vp));
        for &vq in &order[..p] {
            out.push(g.has_edge(vq, vp));
            out.push(g.has_edge(vp, vq));
        }
    }
    out
}

struct Labeler<'a> {
    g: &'a Digraph,
    best: Option<Vec<bool>>,
    best_order: Vec<usize>,
}

impl Labeler<'_> {
    fn search(&mut self, cells: Vec<Vec<usize>>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let enc = encode(self.g, &order);
            if self.best.as_ref().is_none_or(|b| enc < *b) {
                self.best = Some(enc);
                self.best_order = order;
            }
            return;
        };
        let cell = &cells[target];
        let mut tried: Vec<usize> = Vec::new();
        for &v in cell {
            // swapping twins is an automorphism fixing the partition: same subtree
            if tried.iter().any(|&w| twins(self.g, v, w)) {
                continue;
            }
            tried.push(v);
            let mut next = cells.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
            next.splice(target..=target, [vec![v], rest]);
            self.search(refine(self.g, next));
        }
    }
}

fn twins(g: &Digraph, v: usize, w: usize) -> bool {
    if g.has_loop(v) != g.has_loop(w) || g.has_edge(v, w) != g.has_edge(w, v) {
        return false;
    }
    (0..g.n())
        .filter(|&x| x != v && x != w)
        .all(|x| g.has_edge(v, x) == g.has_edge(w, x) && g.has_edge(x, v) == g.has_edge(x, w))
}

/// Splits cells by (loop, out-neighbour counts per cell, in-neighbour counts per
/// cell) until stable. Sub-cells are ordered by signature, so the result depends
/// only on the isomorphism type of `(g, cells)`.
fn refine(g: &Digraph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut ins = vec![0u32; n];
    for (u, v) in g.edges() {
        ins[v] |= 1 << u;
    }
    loop {
        let masks: Vec<u32> = cells
            .iter()
            .map(|c| c.iter().fold(0, |m, &v| m | 1 << v))
            .collect();
        let mut next = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = Vec::with_capacity(1 + 2 * masks.len());
                    sig.push(g.has_loop(v) as u32);
                    sig.extend(masks.iter().map(|m| (g.out_mask(v) & m).count_ones()));
                    sig.extend(masks.iter().map(|m| (ins[v] & m).count_ones()));
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
            if next.last().map(Vec::len) != Some(cell.len()) {
                changed = true;
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}
