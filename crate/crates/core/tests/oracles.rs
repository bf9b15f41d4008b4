//! Property tests against brute-force oracles.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use signpat::digraph::{canonical_key, circumference, simple_cycles};
use signpat::pipeline::{enumerate_candidates, EnumOptions, MAX_ENUM_EDGES};
use signpat::realization::characteristic_polynomial;
use signpat::stability::symbolic_refutations;
use signpat::symbolic::{char_coefficients, minor_sign_feasible};
use signpat::{fixtures, Digraph, Exec, Sign, SignPattern};

fn digraph_strategy(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| (i / n, i % n));
            Digraph::from_edges(n, edges).unwrap()
        })
    })
}

fn pattern_strategy(max_n: usize) -> impl Strategy<Value = SignPattern> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(prop_oneof![Just(Sign::Zero), Just(Sign::Plus), Just(Sign::Minus)], n * n)
            .prop_map(move |cells| SignPattern::from_rows(&cells.chunks(n).map(<[Sign]>::to_vec).collect::<Vec<_>>()).unwrap())
    })
}

/// Every simple cycle as a canonical vertex sequence starting at its minimum vertex.
fn dfs_cycles(g: &Digraph) -> BTreeSet<Vec<usize>> {
    fn walk(g: &Digraph, path: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        for w in 0..g.n() {
            if !g.has_edge(last, w) {
                continue;
            }
            if w == start {
                out.insert(path.clone());
            } else if w > start && !path.contains(&w) {
                path.push(w);
                walk(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..g.n() {
        walk(g, &mut vec![s], &mut out);
    }
    out
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    out
}

fn adjacency_code(g: &Digraph, perm: &[usize]) -> u64 {
    let n = g.n();
    g.edges().iter().fold(0, |acc, &(u, v)| acc | 1 << (perm[u] * n + perm[v]))
}

fn brute_canonical(g: &Digraph, perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| adjacency_code(g, p)).min().unwrap()
}

fn closure_strong(g: &Digraph) -> bool {
    (0..g.n()).all(|s| {
        let mut seen = vec![false; g.n()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for v in 0..g.n() {
                if g.has_edge(u, v) && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&x| x)
    })
}

fn cover_sizes(g: &Digraph) -> BTreeSet<usize> {
    let cycles: Vec<u32> = dfs_cycles(g).iter().map(|c| c.iter().map(|&v| 1u32 << v).sum()).collect();
    let mut reach = BTreeSet::from([0u32]);
    for c in cycles {
        let next: Vec<u32> = reach.iter().filter(|&&m| m & c == 0).map(|&m| m | c).collect();
        reach.extend(next);
    }
    reach.into_iter().filter(|&m| m != 0).map(|m| m.count_ones() as usize).collect()
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn leibniz_det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut total = BigRational::zero();
    for perm in all_permutations(n) {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut term = BigRational::one();
        for (i, &j) in perm.iter().enumerate() {
            term *= &m[i][j];
        }
        if inversions % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    total
}

fn rational_matrix_strategy(max_n: usize) -> impl Strategy<Value = Vec<Vec<BigRational>>> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((-9i64..=9, 1i64..=4), n * n)
            .prop_map(move |v| v.chunks(n).map(|row| row.iter().map(|&(p, q)| rat(p, q)).collect()).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn cycles_match_dfs(g in digraph_strategy(6)) {
        let lib: BTreeSet<Vec<usize>> = simple_cycles(&g).iter().map(|c| c.vertices().to_vec()).collect();
        let oracle = dfs_cycles(&g);
        prop_assert_eq!(&lib, &oracle);
        prop_assert_eq!(circumference(&g), oracle.iter().map(Vec::len).max().unwrap_or(0));
    }

    #[test]
    fn canonical_key_invariant(g in digraph_strategy(6), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        // Fisher-Yates driven by a splitmix step
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let j = (s >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        prop_assert_eq!(canonical_key(&g), canonical_key(&g.permuted(&perm)));
    }

    #[test]
    fn canonical_key_separates_nonisomorphic(a in digraph_strategy(4), b in digraph_strategy(4)) {
        prop_assume!(a.n() == b.n());
        let perms = all_permutations(a.n());
        let same = brute_canonical(&a, &perms) == brute_canonical(&b, &perms);
        prop_assert_eq!(canonical_key(&a) == canonical_key(&b), same);
    }

    #[test]
    fn strong_connectivity_matches_search(g in digraph_strategy(7)) {
        prop_assert_eq!(g.is_strongly_connected(), closure_strong(&g));
    }

    #[test]
    fn minor_support_matches_cycle_packing(g in digraph_strategy(6)) {
        let lib: BTreeSet<usize> = signpat::minors::achievable_minor_sizes(&g).achievable().into_iter().collect();
        prop_assert_eq!(lib, cover_sizes(&g));
    }

    #[test]
    fn char_poly_matches_principal_minors(m in rational_matrix_strategy(4)) {
        let n = m.len();
        let cp = characteristic_polynomial(&m);
        for k in 1..=n {
            let mut sum = BigRational::zero();
            for s in 1u32..1 << n {
                if s.count_ones() as usize != k {
                    continue;
                }
                let idx: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
                let minor: Vec<Vec<BigRational>> = idx.iter().map(|&i| idx.iter().map(|&j| m[i][j].clone()).collect()).collect();
                sum += leibniz_det(&minor);
            }
            if k % 2 == 1 {
                sum = -sum;
            }
            prop_assert_eq!(cp.c(k as isize), sum, "c_{}", k);
        }
    }

    #[test]
    fn char_poly_matches_faddeev_leverrier(m in rational_matrix_strategy(6)) {
        let n = m.len();
        let identity = |c: &BigRational| -> Vec<Vec<BigRational>> {
            (0..n).map(|i| (0..n).map(|j| if i == j { c.clone() } else { BigRational::zero() }).collect()).collect()
        };
        let mul = |a: &Vec<Vec<BigRational>>, b: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
        };
        let cp = characteristic_polynomial(&m);
        let mut mk = identity(&BigRational::zero());
        let mut c = BigRational::one();
        for k in 1..=n {
            let mut next = mul(&m, &mk);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &c;
            }
            mk = next;
            let am = mul(&m, &mk);
            let trace: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
            c = -trace / BigRational::from_integer(BigInt::from(k));
            prop_assert_eq!(cp.c(k as isize), c.clone(), "c_{}", k);
        }
    }

    #[test]
    fn sign_class_invariants(
        p in prop_oneof![pattern_strategy(5), (1..=15usize).prop_map(|i| fixtures::item(i).pattern())],
        perm_seed in any::<u64>(),
        d_bits in any::<u8>(),
    ) {
        let n = p.n();
        let perm = {
            let perms = all_permutations(n);
            perms[(perm_seed % perms.len() as u64) as usize].clone()
        };
        let d: Vec<i8> = (0..n).map(|i| if d_bits >> i & 1 == 1 { -1 } else { 1 }).collect();
        let profile = |q: &SignPattern| {
            let coeffs = char_coefficients(q);
            let mut shape: Vec<(usize, Vec<i64>)> = (1..=n)
                .map(|k| {
                    let mut cs: Vec<i64> = coeffs.get(k).terms().map(|(_, c)| i64::try_from(c).unwrap()).collect();
                    cs.sort_unstable();
                    (k, cs)
                })
                .collect();
            shape.sort();
            let fired: BTreeSet<u8> = if n == 7 {
                symbolic_refutations(q).unwrap().iter().map(|r| r.inequality).collect()
            } else {
                BTreeSet::new()
            };
            (shape, minor_sign_feasible(q), fired)
        };
        let base = profile(&p);
        prop_assert_eq!(&profile(&p.permuted(&perm)), &base);
        prop_assert_eq!(&profile(&p.signature_similar(&d)), &base);
        prop_assert_eq!(&profile(&p.transpose()), &base);
    }

    #[test]
    fn pattern_text_round_trip(p in pattern_strategy(7)) {
        prop_assert_eq!(SignPattern::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn edge_list_round_trip(g in digraph_strategy(7)) {
        prop_assert_eq!(Digraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }
}

#[test]
fn fixture_key_invariant_under_all_relabelings() {
    let g = fixtures::item(5).digraph();
    let key = canonical_key(&g);
    let perms = all_permutations(7);
    assert_eq!(perms.len(), 5040);
    for p in &perms {
        assert_eq!(canonical_key(&g.permuted(p)), key);
    }
}

#[test]
fn enumerator_matches_brute_force() {
    for n in 1..=4usize {
        let perms = all_permutations(n);
        let slots = n * n;
        let mut full: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); slots + 1];
        let mut any: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); slots + 1];
        for mask in 0u64..1 << slots {
            let g = Digraph::from_edges(n, (0..slots).filter(|&b| mask >> b & 1 == 1).map(|b| (b / n, b % n))).unwrap();
            if !closure_strong(&g) {
                continue;
            }
            let code = brute_canonical(&g, &perms);
            let m = g.edge_count();
            any[m].insert(code);
            if cover_sizes(&g).len() == n {
                full[m].insert(code);
            }
        }
        for m in 0..=slots.min(MAX_ENUM_EDGES) {
            for (require, oracle) in [(true, &full[m]), (false, &any[m])] {
                let opts = EnumOptions { require_full_support: require, budget: None, exec: Exec::Sequential };
                let e = enumerate_candidates(n, m, opts).unwrap();
                assert!(!e.truncated);
                let got: BTreeSet<u64> = e.digraphs.iter().map(|g| brute_canonical(g, &perms)).collect();
                assert_eq!(&got, oracle, "n={n} m={m} full={require}");
            }
        }
    }
}

#[test]
fn sequential_and_parallel_enumeration_agree() {
    for (n, m) in [(4, 6), (5, 7), (5, 8)] {
        let run = |exec| enumerate_candidates(n, m, EnumOptions { exec, ..EnumOptions::default() }).unwrap();
        assert_eq!(run(Exec::Sequential).keys, run(Exec::Parallel).keys);
    }
}
