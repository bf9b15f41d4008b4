//! Sign assignments on a fixed support, up to the spectrum-preserving
//! equivalences that keep the support: permutation similarity by an
//! automorphism, signature similarity `DAD`, and transposition composed with
//! an anti-automorphism. Negation is deliberately excluded since it flips stability.

use crate::digraph::{anti_automorphisms, automorphisms, Digraph};
use crate::error::{Error, Result};
use crate::pattern::SignPattern;

/// Largest edge count accepted by [`sign_classes`].
pub const MAX_SIGNED_EDGES: usize = 12;

/// One equivalence class of sign assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignClass {
    /// Smallest negative-edge mask in the orbit (bit `e` = edge `e` negative).
    pub representative_mask: u64,
    pub representative: SignPattern,
    pub orbit_size: usize,
}

/// Action of one group element on edge ids: `new[map[e]] = old[e] ^ flip[e]`.
#[derive(Debug, Clone)]
struct EdgeAction {
    map: Vec<usize>,
    flip: u64,
}

impl EdgeAction {
    fn apply(&self, mask: u64) -> u64 {
        let mut out = 0;
        for (e, &t) in self.map.iter().enumerate() {
            out |= (mask >> e & 1) << t;
        }
        out ^ self.flip
    }
}

fn generators(g: &Digraph) -> Vec<EdgeAction> {
    let edges = g.edges();
    let id = |u: usize, v: usize| g.edge_id(u, v).expect("edge maps onto support");
    let mut gens = Vec::new();
    for v in 0..g.n() {
        let flip = edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| (a == v) != (b == v))
            .fold(0u64, |m, (e, _)| m | 1 << e);
        if flip != 0 {
            gens.push(EdgeAction {
                map: (0..edges.len()).collect(),
                flip,
            });
        }
    }
    for p in automorphisms(g) {
        gens.push(EdgeAction {
            map: edges.iter().map(|&(u, v)| id(p[u], p[v])).collect(),
            flip: 0,
        });
    }
    for p in anti_automorphisms(g) {
        gens.push(EdgeAction {
            map: edges.iter().map(|&(u, v)| id(p[v], p[u])).collect(),
            flip: 0,
        });
    }
    gens
}

/// All sign classes on the support of `g`, ordered by representative mask.
pub fn sign_classes(g: &Digraph) -> Result<Vec<SignClass>> {
    let m = g.edge_count();
    if m > MAX_SIGNED_EDGES {
        return Err(Error::EdgeBudget {
            edges: m,
            max: MAX_SIGNED_EDGES,
        });
    }
    let gens = generators(g);
    let total = 1usize << m;
    let mut seen = vec![false; total];
    let mut classes = Vec::new();
    let mut queue = Vec::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.clear();
        queue.push(start as u64);
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for gen in &gens {
                let y = gen.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        classes.push(SignClass {
            representative_mask: start as u64,
            representative: SignPattern::from_sign_mask(g, start as u64),
            orbit_size: queue.len(),
        });
    }
    Ok(classes)
}

/// Class representatives of all `2^|E|` sign assignments on the support of `g`.
pub fn sign_assignments(g: &Digraph) -> Result<Vec<SignPattern>> {
    Ok(sign_classes(g)?.into_iter().map(|c| c.representative).collect())
}

/// Representative of the class containing `p`.
pub fn class_representative(p: &SignPattern) -> Result<SignPattern> {
    let g = p.support_digraph();
    let mask = p.sign_mask();
    let gens = generators(&g);
    if g.edge_count() > MAX_SIGNED_EDGES {
        return Err(Error::EdgeBudget {
            edges: g.edge_count(),
            max: MAX_SIGNED_EDGES,
        });
    }
    let mut seen = std::collections::HashSet::from([mask]);
    let mut queue = vec![mask];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for gen in &gens {
            let y = gen.apply(x);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    let min = *seen.iter().min().unwrap();
    Ok(SignPattern::from_sign_mask(&g, min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Sign;

    #[test]
    fn two_cycle_has_two_classes() {
        let g = Digraph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        let classes = sign_classes(&g).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes.iter().map(|c| c.orbit_size).sum::<usize>(), 4);
        let reps: Vec<String> = classes.iter().map(|c| c.representative.to_string()).collect();
        assert_eq!(reps, vec!["0 +\n+ 0\n", "0 -\n+ 0\n"]);
    }

    #[test]
    fn loop_sign_is_invariant() {
        let g = Digraph::from_edges(1, [(0, 0)]).unwrap();
        assert_eq!(sign_assignments(&g).unwrap().len(), 2);
    }

    #[test]
    fn edge_budget() {
        let g = Digraph::from_edges(4, (0..4).flat_map(|u| (0..4).map(move |v| (u, v)))).unwrap();
        assert!(matches!(sign_classes(&g), Err(Error::EdgeBudget { edges: 16, .. })));
    }

    #[test]
    fn representative_is_stable_under_similarity() {
        let p = SignPattern::parse("- + 0\n0 - +\n- + 0\n").unwrap();
        let rep = class_representative(&p).unwrap();
        let q = p.signature_similar(&[1, -1, -1]);
        assert_eq!(class_representative(&q).unwrap(), rep);
        assert_eq!(rep.get(0, 0), Sign::Minus);
    }
}
