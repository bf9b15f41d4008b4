//! The reproduction battery behind `signpat verify-paper`.
//!
//! Each check becomes one [`ReportItem`]. Long-running checks are reported as
//! skipped unless [`BatteryOptions::long_run`] is set.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::digraph::{circumference, extremal_graph, min_edges, Digraph};
use crate::exec::Exec;
use crate::fixtures;
use crate::minors::achievable_minor_sizes;
use crate::pattern::{Sign, SignPattern};
use crate::pipeline::{candidate_closure_check, verify_fifteen, verify_min_entries, EnumOptions};
use crate::rational_poly::RationalPoly;
use crate::realization::{characteristic_polynomial, SearchOptions};
use crate::report::{ItemStatus, RunReport};
use crate::stability::{coefficient_positivity, expand_factorization, necessary_inequalities, routh_hurwitz, FactorParams, StabilityStatus};
use crate::symbolic::char_coefficients;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatteryOptions {
    pub long_run: bool,
    pub seed: u64,
    pub search: SearchOptions,
    pub exec: Exec,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        BatteryOptions {
            long_run: false,
            seed: crate::realization::DEFAULT_SEED,
            search: SearchOptions::default(),
            exec: Exec::Parallel,
        }
    }
}

fn status(ok: bool) -> ItemStatus {
    if ok {
        ItemStatus::Pass
    } else {
        ItemStatus::Fail
    }
}

/// Runs every check into `report`.
pub fn run_battery(report: &mut RunReport, opts: BatteryOptions) {
    report.run("fifteen-refutations", || fifteen(opts.exec));
    report.run("min-edges-table", || min_edges_table(5));
    report.run("extremal-witnesses", || extremal_witnesses(9));
    report.run("lemma-ineq-sampling", || lemma_sampling(10_000, opts.seed));
    report.run("routh-hurwitz-counterexample", counterexample);
    for n in 2..=4 {
        report.run(&format!("min-entries-n{n}"), || min_entries(n, opts));
    }
    if opts.long_run {
        report.run("min-entries-n5", || min_entries(5, opts));
    } else {
        report.run("min-entries-n5", skipped);
    }
    report.run("symbolic-vs-exact-coefficients", || coefficients_match(1000, opts.seed));
    report.run("minor-support-oracle", || minor_support_oracle(500, opts.seed));
    if opts.long_run {
        report.run("candidate-closure-7-10", || closure(opts.exec, None));
    } else {
        report.run("candidate-closure-7-10", skipped);
    }
}

fn skipped() -> (ItemStatus, String, Value) {
    (ItemStatus::Skipped, "skipped (budget): needs --long-run".into(), Value::Null)
}

fn fifteen(exec: Exec) -> (ItemStatus, String, Value) {
    let reports = match verify_fifteen(exec) {
        Ok(r) => r,
        Err(e) => return (ItemStatus::Fail, e.to_string(), Value::Null),
    };
    let mut mismatches = Vec::new();
    for r in &reports {
        let f = fixtures::item(r.item.unwrap_or(0));
        for v in &r.variants {
            match v.fired.iter().find(|x| x.inequality == f.expected_inequality) {
                None => mismatches.push(format!("item {}: inequality {} did not fire", f.index, f.expected_inequality)),
                Some(x) => {
                    if let Some(d) = f.expected_difference {
                        if x.difference != d {
                            mismatches.push(format!("item {}: difference `{}` != `{d}`", f.index, x.difference));
                        }
                    }
                }
            }
        }
    }
    let summary = if mismatches.is_empty() {
        format!("{}/15 fixtures refuted", reports.len())
    } else {
        mismatches.join("; ")
    };
    let data = serde_json::to_value(&reports).unwrap_or(Value::Null);
    (status(mismatches.is_empty() && reports.len() == 15), summary, data)
}

/// Minimum edge counts of loopless strongly connected digraphs on `n`
/// vertices with circumference exactly `k`, by increasing edge count.
pub fn exhaustive_min_edges(n: usize) -> Vec<Option<usize>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let slots = pairs.len();
    let mut best = vec![None; n + 1];
    for m in n..=slots {
        if (2..=n).all(|k| best[k].is_some()) {
            break;
        }
        // Gosper's hack over m-subsets of the slots
        let mut mask: u64 = (1 << m) - 1;
        while mask < 1 << slots {
            let g = Digraph::from_edges(n, (0..slots).filter(|&b| mask >> b & 1 == 1).map(|b| pairs[b]))
                .expect("distinct edges");
            if g.is_strongly_connected() {
                let k = circumference(&g);
                best[k].get_or_insert(m);
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    best
}

fn min_edges_table(max_n: usize) -> (ItemStatus, String, Value) {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 2..=max_n {
        let brute = exhaustive_min_edges(n);
        for k in 2..=n {
            let formula = min_edges(n, k).ok();
            ok &= formula == brute[k];
            rows.push(json!({"n": n, "k": k, "formula": formula, "brute_force": brute[k]}));
        }
    }
    let spot = min_edges(7, 2).ok() == Some(12) && min_edges(7, 3).ok() == Some(9);
    let summary = format!("e(n,k) verified for 2 <= k <= n <= {max_n}; e(7,2) = 12, e(7,3) = 9: {spot}");
    (status(ok && spot), summary, json!(rows))
}

fn extremal_witnesses(max_n: usize) -> (ItemStatus, String, Value) {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 2..=max_n {
        for k in 2..=n {
            count += 1;
            let ok = match (extremal_graph(n, k), min_edges(n, k)) {
                (Ok(g), Ok(e)) => g.is_strongly_connected() && circumference(&g) == k && g.edge_count() == e,
                _ => false,
            };
            if !ok {
                bad.push(json!([n, k]));
            }
        }
    }
    let summary = format!("{}/{count} extremal digraphs verified", count - bad.len());
    (status(bad.is_empty()), summary, json!({"failures": bad}))
}

fn random_positive(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(1..=1000)), BigInt::from(rng.gen_range(1..=100)))
}

fn lemma_sampling(draws: usize, seed: u64) -> (ItemStatus, String, Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    for _ in 0..draws {
        let a = std::array::from_fn(|_| random_positive(&mut rng));
        let b = std::array::from_fn(|_| random_positive(&mut rng));
        let params = FactorParams::new(a, b).expect("positive parameters");
        let ineq = necessary_inequalities(&expand_factorization(&params)).expect("degree 7");
        if !ineq.iter().all(Signed::is_positive) {
            violations += 1;
        }
    }
    let summary = format!("{violations} violations in {draws} draws (seed {seed})");
    (status(violations == 0), summary, json!({"draws": draws, "violations": violations, "seed": seed}))
}

fn counterexample() -> (ItemStatus, String, Value) {
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    let p = RationalPoly::monic(vec![r(4, 5), r(81, 100), r(101, 100)]);
    let positive = coefficient_positivity(&p);
    let verdict = routh_hurwitz(&p);
    let ok = positive && verdict.status == StabilityStatus::CertifiedUnstable;
    let hurwitz: Vec<String> = verdict.hurwitz.iter().map(crate::rational_poly::format_rational).collect();
    let summary = format!("{p}: positive coefficients {positive}, verdict {:?}", verdict.status);
    (status(ok), summary, json!({"hurwitz": hurwitz}))
}

fn min_entries(n: usize, opts: BatteryOptions) -> (ItemStatus, String, Value) {
    let expected = [0, 1, 3, 5, 6, 8][n];
    match verify_min_entries(n, opts.search, opts.exec) {
        Ok(r) => {
            let ok = r.minimum == Some(expected) && r.verified();
            let summary = format!(
                "m_{n} = {} (expected {expected}), {} inconclusive below",
                r.minimum.map_or("none".into(), |m| m.to_string()),
                r.inconclusive_below.len()
            );
            (status(ok), summary, serde_json::to_value(&r).unwrap_or(Value::Null))
        }
        Err(e) => (ItemStatus::Fail, e.to_string(), Value::Null),
    }
}

/// Random pattern of size `1..=7` with roughly `density` nonzero entries.
pub fn random_pattern(rng: &mut ChaCha8Rng, n: usize, density: f64) -> SignPattern {
    let rows: Vec<Vec<Sign>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(density) {
                        if rng.gen_bool(0.5) {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    } else {
                        Sign::Zero
                    }
                })
                .collect()
        })
        .collect();
    SignPattern::from_rows(&rows).expect("square")
}

fn coefficients_match(samples: usize, seed: u64) -> (ItemStatus, String, Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0ef);
    let mut mismatches = 0;
    for _ in 0..samples {
        let n = rng.gen_range(1..=7);
        let p = random_pattern(&mut rng, n, 0.35);
        let vars = p.support_digraph().edges();
        let values: Vec<BigRational> = vars.iter().map(|_| random_positive(&mut rng)).collect();
        let mut m = vec![vec![BigRational::default(); n]; n];
        for (&(i, j), v) in vars.iter().zip(&values) {
            m[i][j] = if p.get(i, j) == Sign::Minus { -v.clone() } else { v.clone() };
        }
        let exact = characteristic_polynomial(&m);
        let symbolic = char_coefficients(&p);
        if (1..=n).any(|k| symbolic.get(k).evaluate_dense(&values) != exact.c(k as isize)) {
            mismatches += 1;
        }
    }
    let summary = format!("{mismatches} mismatches in {samples} random patterns");
    (status(mismatches == 0), summary, json!({"samples": samples, "mismatches": mismatches}))
}

/// Sizes `k` such that some `k`-subset of vertices has a permutation along edges.
pub fn cycle_cover_sizes(g: &Digraph) -> Vec<usize> {
    fn cover(g: &Digraph, subset: u32, rest: u32, used: u32) -> bool {
        if rest == 0 {
            return true;
        }
        let i = rest.trailing_zeros() as usize;
        let mut targets = g.out_mask(i) & subset & !used;
        while targets != 0 {
            let j = targets.trailing_zeros();
            targets &= targets - 1;
            if cover(g, subset, rest & !(1 << i), used | 1 << j) {
                return true;
            }
        }
        false
    }
    let n = g.n();
    let mut sizes: Vec<usize> = (1u32..1 << n)
        .filter(|&s| cover(g, s, s, 0))
        .map(|s| s.count_ones() as usize)
        .collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
}

fn minor_support_oracle(random: usize, seed: u64) -> (ItemStatus, String, Value) {
    let mut checked = 0;
    let mut mismatches = 0;
    let mut check = |g: &Digraph| {
        checked += 1;
        if achievable_minor_sizes(g).achievable() != cycle_cover_sizes(g) {
            mismatches += 1;
        }
    };
    for n in 1..=4usize {
        for mask in 0u64..1 << (n * n) {
            let g = Digraph::from_edges(n, (0..n * n).filter(|&b| mask >> b & 1 == 1).map(|b| (b / n, b % n)))
                .expect("distinct edges");
            check(&g);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a);
    for _ in 0..random {
        let n = rng.gen_range(1..=7);
        let density = rng.gen_range(0.1..0.6);
        let p = random_pattern(&mut rng, n, density);
        check(&p.support_digraph());
    }
    let summary = format!("{mismatches} mismatches over {checked} digraphs");
    (status(mismatches == 0), summary, json!({"checked": checked, "mismatches": mismatches}))
}

fn closure(exec: Exec, budget: Option<usize>) -> (ItemStatus, String, Value) {
    let opts = EnumOptions {
        require_full_support: true,
        budget,
        exec,
    };
    match candidate_closure_check(opts) {
        Ok(c) if c.truncated => (ItemStatus::Skipped, "skipped (budget): enumeration truncated".into(), json!(c)),
        Ok(c) => {
            let summary = format!(
                "{} candidates, {}/15 fixtures found, {} unmatched",
                c.candidates,
                c.found.iter().filter(|&&b| b).count(),
                c.unmatched.len()
            );
            (status(c.holds()), summary, serde_json::to_value(&c).unwrap_or(Value::Null))
        }
        Err(e) => (ItemStatus::Fail, e.to_string(), Value::Null),
    }
}
