use super::Digraph;
use crate::error::{Error, Result};

fn check_domain(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::CircumferenceDomain { n, k });
    }
    Ok(())
}

/// Fewest edges of a strongly connected digraph on `n` vertices with
/// circumference `k` (loops not counted).
///
/// `k = 2` gives `2(n - 1)`. Otherwise write `n = a(k - 1) + b` with
/// `0 <= b < k - 1`: the bound is `ka - 1` for `b = 0`, `ka` for `b = 1`
/// and `ka + b` for `b > 1`.
pub fn min_edges(n: usize, k: usize) -> Result<usize> {
    check_domain(n, k)?;
    if k == 2 {
        return Ok(2 * (n - 1));
    }
    let (a, b) = (n / (k - 1), n % (k - 1));
    Ok(match b {
        0 => k * a - 1,
        1 => k * a,
        _ => k * a + b,
    })
}

/// A graph attaining [`min_edges`]: the bidirected path for `k = 2`, otherwise
/// a chain of `k`-cycles where each cycle shares its last vertex with the next,
/// closed by a `(k - 1)`-cycle (when `b = 0`) or a `b`-cycle (when `b > 1`).
pub fn extremal_graph(n: usize, k: usize) -> Result<Digraph> {
    check_domain(n, k)?;
    let mut edges = Vec::new();
    if k == 2 {
        for i in 0..n - 1 {
            edges.push((i, i + 1));
            edges.push((i + 1, i));
        }
        return Digraph::from_edges(n, edges);
    }
    let mut push_cycle = |vs: &[usize]| {
        for i in 0..vs.len() {
            edges.push((vs[i], vs[(i + 1) % vs.len()]));
        }
    };
    let first: Vec<usize> = (0..k).collect();
    push_cycle(&first);
    let mut shared = k - 1;
    let mut next = k;
    while n - next >= k - 1 {
        let cycle: Vec<usize> = std::iter::once(shared).chain(next..next + k - 1).collect();
        push_cycle(&cycle);
        shared = next + k - 2;
        next += k - 1;
    }
    if next < n {
        let tail: Vec<usize> = std::iter::once(shared).chain(next..n).collect();
        push_cycle(&tail);
    }
    Digraph::from_edges(n, edges)
}
