//! Stability certificates checked against floating-point eigenvalues.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use signpat::pipeline::{analyze_pattern, enumerate_candidates, verify_min_entries, EnumOptions, PatternVerdict};
use signpat::realization::{search_stable_realization, SearchOptions};
use signpat::signs::sign_classes;
use signpat::stability::routh_hurwitz;
use signpat::{Exec, RationalPoly, SignPattern, StabilityStatus};

fn max_real_part(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j]);
    m.complex_eigenvalues().iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
}

/// Companion matrix of `t^n + c_1 t^(n-1) + ... + c_n`.
fn companion(c: &[f64]) -> Vec<Vec<f64>> {
    let n = c.len();
    let mut a = vec![vec![0.0; n]; n];
    for (j, &cj) in c.iter().enumerate() {
        a[0][j] = -cj;
    }
    for i in 1..n {
        a[i][i - 1] = 1.0;
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn routh_hurwitz_matches_eigenvalues(c in proptest::collection::vec((-20i64..=40, 1i64..=8), 1..=6)) {
        let tail: Vec<BigRational> = c.iter().map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q))).collect();
        let floats: Vec<f64> = c.iter().map(|&(p, q)| p as f64 / q as f64).collect();
        let re = max_real_part(&companion(&floats));
        prop_assume!(re.abs() > 1e-6);
        let v = routh_hurwitz(&RationalPoly::monic(tail));
        prop_assert_eq!(v.is_stable(), re < 0.0, "max Re = {}, status {:?}", re, v.status);
        if v.status == StabilityStatus::CertifiedUnstable {
            prop_assert!(re > 0.0);
        }
    }
}

fn assert_witness(p: &SignPattern, seed: u64) {
    let opts = SearchOptions { seed, ..SearchOptions::default() };
    let w = search_stable_realization(p, opts).unwrap().unwrap_or_else(|| panic!("no witness for\n{p}"));
    let re = max_real_part(&w.matrix_f64());
    assert!(re < -1e-8, "witness for\n{p} has max Re {re}");
}

#[test]
fn witnesses_have_negative_spectrum() {
    for text in [
        "- +\n- 0\n",
        "- 0 0\n0 - 0\n0 0 -\n",
        "- + 0\n- 0 +\n- 0 0\n",
        "- + 0\n- 0 +\n0 - 0\n",
    ] {
        let p = SignPattern::parse(text).unwrap();
        for seed in [1, 2, 3] {
            assert_witness(&p, seed);
        }
    }
    for n in 2..=4 {
        let r = verify_min_entries(n, SearchOptions::default(), Exec::Parallel).unwrap();
        let w = r.witness.unwrap();
        let p = SignPattern::parse(&(w.pattern.join("\n") + "\n")).unwrap();
        assert!(max_real_part(&w.witness.matrix_f64()) < -1e-8);
        assert_witness(&p, 9);
    }
}

#[test]
fn search_is_deterministic_across_execution_modes() {
    let p = SignPattern::parse("- + 0\n- 0 +\n- 0 0\n").unwrap();
    let run = |exec| search_stable_realization(&p, SearchOptions { exec, ..SearchOptions::default() }).unwrap().unwrap();
    let a = run(Exec::Sequential);
    let b = run(Exec::Parallel);
    assert_eq!(a.matrix, b.matrix);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

/// Random probe of the magnitude grid {1/4, 1/2, 1, 2, 4} for a stable realization.
fn grid_stable(p: &SignPattern, rng: &mut ChaCha8Rng, draws: usize) -> bool {
    const GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
    let n = p.n();
    (0..draws).any(|_| {
        let a: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| f64::from(p.get(i, j).value()) * GRID[rng.gen_range(0..GRID.len())]).collect())
            .collect();
        max_real_part(&a) < -1e-9
    })
}

#[test]
fn small_patterns_agree_with_grid_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0;
    for n in 1..=3usize {
        for m in 0..=n * n {
            let opts = EnumOptions { require_full_support: false, budget: None, exec: Exec::Parallel };
            for g in enumerate_candidates(n, m, opts).unwrap().digraphs {
                for class in sign_classes(&g).unwrap() {
                    let p = &class.representative;
                    let a = analyze_pattern(p, Some(SearchOptions::default())).unwrap();
                    let grid = grid_stable(p, &mut rng, 400);
                    if grid {
                        assert_eq!(a.verdict, PatternVerdict::PotentiallyStable, "grid finds a stable matrix for\n{p}");
                    }
                    if a.verdict == PatternVerdict::NotPotentiallyStable {
                        assert!(!grid, "refuted pattern has a stable grid matrix\n{p}");
                    }
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 50, "{compared}");
}
