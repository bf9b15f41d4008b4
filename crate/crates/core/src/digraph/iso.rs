use super::Digraph;

/// Vertex map `v -> perm[v]`.
pub type Permutation = Vec<usize>;

/// All bijections `p` with `g.permuted(&p) == h`, in lexicographic order.
pub fn isomorphisms(g: &Digraph, h: &Digraph) -> Vec<Permutation> {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return Vec::new();
    }
    let profile = |x: &Digraph, v: usize| (x.out_degree(v), x.in_degree(v), x.has_loop(v));
    let gp: Vec<_> = (0..n).map(|v| profile(g, v)).collect();
    let hp: Vec<_> = (0..n).map(|v| profile(h, v)).collect();
    let mut found = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = 0u32;
    extend(g, h, &gp, &hp, 0, &mut map, &mut used, &mut found);
    found
}

#[allow(clippy::too_many_arguments)]
fn extend<P: PartialEq>(
    g: &Digraph,
    h: &Digraph,
    gp: &[P],
    hp: &[P],
    v: usize,
    map: &mut Vec<usize>,
    used: &mut u32,
    found: &mut Vec<Permutation>,
) {
    let n = g.n();
    if v == n {
        found.push(map.clone());
        return;
    }
    for t in 0..n {
        if *used >> t & 1 == 1 || gp[v] != hp[t] {
            continue;
        }
        let consistent = (0..v).all(|u| {
            g.has_edge(u, v) == h.has_edge(map[u], t) && g.has_edge(v, u) == h.has_edge(t, map[u])
        });
        if !consistent {
            continue;
        }
        map[v] = t;
        *used |= 1 << t;
        extend(g, h, gp, hp, v + 1, map, used, found);
        *used &= !(1 << t);
        map[v] = usize::MAX;
    }
}

pub fn automorphisms(g: &Digraph) -> Vec<Permutation> {
    isomorphisms(g, g)
}

/// Relabelings `p` with `g.reverse().permuted(&p) == g`: these realize
/// transposition of a sign pattern on the same support.
pub fn anti_automorphisms(g: &Digraph) -> Vec<Permutation> {
    isomorphisms(&g.reverse(), g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::directed_cycle;

    #[test]
    fn cycle_automorphisms_are_rotations() {
        let g = directed_cycle(5).unwrap();
        let auts = automorphisms(&g);
        assert_eq!(auts.len(), 5);
        for p in &auts {
            assert_eq!(g.permuted(p), g);
        }
        // the reversed cycle is again a 5-cycle: reflections
        assert_eq!(anti_automorphisms(&g).len(), 5);
    }

    #[test]
    fn non_isomorphic_graphs_have_no_maps() {
        let a = directed_cycle(3).unwrap();
        let b = Digraph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert!(isomorphisms(&a, &b).is_empty());
    }
}
