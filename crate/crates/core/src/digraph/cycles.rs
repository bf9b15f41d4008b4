use super::{bits, Digraph};

/// A simple directed cycle, stored with its smallest vertex first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Wraps a vertex sequence, rotating it so the smallest id comes first.
    /// Caller guarantees the sequence is a cycle of some host graph.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        if let Some(pos) = vertices
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| v)
            .map(|(i, _)| i)
        {
            vertices.rotate_left(pos);
        }
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn vertex_mask(&self) -> u32 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Edges traversed, starting at the first vertex.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    pub fn is_cycle_of(&self, g: &Digraph) -> bool {
        let mask = self.vertex_mask();
        !self.is_empty()
            && mask.count_ones() as usize == self.len()
            && self.edges().all(|(u, v)| g.has_edge(u, v))
    }
}

/// All simple cycles of `g`, loops included, each reported once.
///
/// Johnson's blocking scheme: cycles are rooted at their smallest vertex `s` and
/// searched in the subgraph induced by vertices `>= s`. Output order is by root,
/// then by DFS order.
pub fn simple_cycles(g: &Digraph) -> Vec<Cycle> {
    let n = g.n();
    let mut out = Vec::new();
    let mut search = Search {
        g,
        root: 0,
        allowed: 0,
        blocked: 0,
        bmap: vec![0; n],
        stack: Vec::with_capacity(n),
        out: &mut out,
    };
    for s in 0..n {
        if g.has_loop(s) {
            search.out.push(Cycle { vertices: vec![s] });
        }
        search.root = s;
        search.allowed = g.full_mask() & !((1u32 << s) - 1);
        search.blocked = 0;
        search.bmap.iter_mut().for_each(|b| *b = 0);
        search.circuit(s);
    }
    out
}

struct Search<'a> {
    g: &'a Digraph,
    root: usize,
    allowed: u32,
    blocked: u32,
    bmap: Vec<u32>,
    stack: Vec<usize>,
    out: &'a mut Vec<Cycle>,
}

impl Search<'_> {
    fn circuit(&mut self, v: usize) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked |= 1 << v;
        let succ = self.g.out_mask(v) & self.allowed & !(1 << v);
        for w in bits(succ) {
            if w == self.root {
                self.out.push(Cycle {
                    vertices: self.stack.clone(),
                });
                found = true;
            } else if self.blocked >> w & 1 == 0 && self.circuit(w) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for w in bits(succ) {
                self.bmap[w] |= 1 << v;
            }
        }
        self.stack.pop();
        found
    }

    fn unblock(&mut self, u: usize) {
        self.blocked &= !(1 << u);
        let pending = std::mem::take(&mut self.bmap[u]);
        for w in bits(pending) {
            if self.blocked >> w & 1 == 1 {
                self.unblock(w);
            }
        }
    }
}

/// Length of the longest cycle; 0 for an acyclic graph.
pub fn circumference(g: &Digraph) -> usize {
    simple_cycles(g).iter().map(Cycle::len).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::directed_cycle;

    fn lengths(g: &Digraph) -> Vec<usize> {
        let mut l: Vec<_> = simple_cycles(g).iter().map(Cycle::len).collect();
        l.sort();
        l
    }

    #[test]
    fn triangle_has_one_cycle() {
        let g = directed_cycle(3).unwrap();
        let cycles = simple_cycles(&g);
        assert_eq!(cycles, vec![Cycle::new(vec![0, 1, 2])]);
    }

    #[test]
    fn two_cycle_plus_loop() {
        let g = Digraph::from_edges(2, [(0, 1), (1, 0), (0, 0)]).unwrap();
        assert_eq!(lengths(&g), vec![1, 2]);
    }

    #[test]
    fn correct_minors_example_cycle_lengths() {
        // loop at 1; 1->2->3->4->1; back edge 3->2 (1-based labels)
        let g = Digraph::from_edges(4, [(0, 0), (0, 1), (1, 2), (2, 3), (2, 1), (3, 0)]).unwrap();
        assert_eq!(lengths(&g), vec![1, 2, 4]);
    }

    #[test]
    fn circumference_values() {
        assert_eq!(circumference(&directed_cycle(7).unwrap()), 7);
        assert_eq!(circumference(&Digraph::from_edges(1, [(0, 0)]).unwrap()), 1);
        assert_eq!(
            circumference(&Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap()),
            0
        );
    }

    #[test]
    fn complete_graph_cycle_count() {
        // K4 with loops: 4 loops + C(4,2) 2-cycles + 4*2 3-cycles + 3! 4-cycles
        let g = Digraph::from_edges(4, (0..4).flat_map(|u| (0..4).map(move |v| (u, v)))).unwrap();
        let cycles = simple_cycles(&g);
        assert_eq!(cycles.len(), 4 + 6 + 8 + 6);
        assert!(cycles.iter().all(|c| c.is_cycle_of(&g)));
    }

    #[test]
    fn cycles_start_at_smallest_vertex() {
        let g = Digraph::from_edges(3, [(2, 1), (1, 0), (0, 2)]).unwrap();
        let cycles = simple_cycles(&g);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices(), &[0, 2, 1]);
    }
}
