//! Stable realizations of sign patterns.
//!
//! [`certify`] computes the exact characteristic polynomial of a rational
//! matrix and applies the Hurwitz criterion. [`search_stable_realization`]
//! looks for such a matrix numerically: entry magnitudes are `exp(x)` for
//! unconstrained `x`, Nelder-Mead maximizes the smallest signed log Hurwitz
//! determinant, and the optimum is rounded to rationals and certified exactly.
//! Failing to find a witness proves nothing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::pattern::{Sign, SignPattern};
use crate::rational_poly::{format_rational, RationalPoly};
use crate::stability::{routh_hurwitz, StabilityVerdict};
use crate::symbolic::char_coefficients;

/// Square matrix of exact rationals, row-major.
pub type RationalMatrix = Vec<Vec<BigRational>>;

/// A rational matrix with the signs of a pattern and all Hurwitz determinants positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationWitness {
    pub matrix: RationalMatrix,
    pub char_poly: RationalPoly,
    pub hurwitz: Vec<BigRational>,
}

#[derive(Serialize)]
struct WitnessJson {
    matrix: Vec<Vec<String>>,
    char_poly: Vec<String>,
    hurwitz: Vec<String>,
}

impl Serialize for RealizationWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WitnessJson {
            matrix: self.matrix.iter().map(|r| r.iter().map(format_rational).collect()).collect(),
            char_poly: self.char_poly.coefficients()[1..].iter().map(format_rational).collect(),
            hurwitz: self.hurwitz.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl RealizationWitness {
    /// Floating-point copy of the matrix.
    pub fn matrix_f64(&self) -> Vec<Vec<f64>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

/// Checks that `matrix` has exactly the signs of `p` (zero where `p` is zero).
pub fn check_conformance(matrix: &[Vec<BigRational>], p: &SignPattern) -> Result<()> {
    let n = p.n();
    let cols = matrix.iter().map(Vec::len).find(|&c| c != n).unwrap_or(n);
    if matrix.len() != n || cols != n {
        return Err(Error::ShapeMismatch { rows: matrix.len(), cols, n });
    }
    for (i, row) in matrix.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let s = if x.is_positive() {
                Sign::Plus
            } else if x.is_negative() {
                Sign::Minus
            } else {
                Sign::Zero
            };
            if s != p.get(i, j) {
                return Err(Error::SignConformance(i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Polynomials in `t` with integer coefficients, ascending powers.
type IntPoly = Vec<BigInt>;

fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(mut a: IntPoly, b: &IntPoly) -> IntPoly {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
    a
}

fn trim(mut a: IntPoly) -> IntPoly {
    while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

/// Exact quotient by a monic divisor; the division must leave no remainder.
fn poly_div_monic(a: IntPoly, d: &IntPoly) -> IntPoly {
    let mut rem = trim(a);
    let dd = d.len() - 1;
    if rem.len() <= dd {
        debug_assert!(rem.iter().all(Zero::is_zero));
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..q.len()).rev() {
        let lead = rem[k + dd].clone();
        if lead.is_zero() {
            continue;
        }
        for (i, di) in d.iter().enumerate() {
            rem[k + i] -= &lead * di;
        }
        q[k] = lead;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    q
}

/// Exact characteristic polynomial `det(tI - A)`.
///
/// The matrix is scaled to integers `B = L A`, `det(sI - B)` is computed by
/// Bareiss elimination over `Z[s]`, and `c_k(A) = c_k(B) / L^k`. Every pivot is
/// a leading principal minor of `sI - B`, hence monic and nonzero.
pub fn characteristic_polynomial(matrix: &[Vec<BigRational>]) -> RationalPoly {
    let n = matrix.len();
    if n == 0 {
        return RationalPoly::monic(Vec::new());
    }
    let l = matrix
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut m: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let b = -(matrix[i][j].numer() * (&l / matrix[i][j].denom()));
                    if i == j {
                        vec![b, BigInt::one()]
                    } else {
                        vec![b]
                    }
                })
                .collect()
        })
        .collect();
    let mut prev: IntPoly = vec![BigInt::one()];
    for k in 0..n - 1 {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = poly_sub(poly_mul(&m[k][k], &m[i][j]), &poly_mul(&m[i][k], &m[k][j]));
                m[i][j] = poly_div_monic(num, &prev);
            }
        }
        prev = trim(m[k][k].clone());
    }
    let det = trim(m[n - 1][n - 1].clone());
    // det is monic of degree n: det[n - k] = c_k(B)
    let mut scale = BigInt::one();
    let tail = (1..=n)
        .map(|k| {
            scale *= &l;
            let ck = det.get(n - k).cloned().unwrap_or_default();
            BigRational::new(ck, scale.clone())
        })
        .collect();
    RationalPoly::monic(tail)
}

/// Exact stability verdict for a matrix conforming to `p`.
pub fn certify(matrix: &[Vec<BigRational>], p: &SignPattern) -> Result<StabilityVerdict> {
    check_conformance(matrix, p)?;
    Ok(routh_hurwitz(&characteristic_polynomial(matrix)))
}

/// Witness for `matrix` if it conforms to `p` and certifies stable.
pub fn witness_from_matrix(matrix: RationalMatrix, p: &SignPattern) -> Result<Option<RealizationWitness>> {
    check_conformance(&matrix, p)?;
    let char_poly = characteristic_polynomial(&matrix);
    let verdict = routh_hurwitz(&char_poly);
    Ok(verdict.is_stable().then_some(RealizationWitness {
        matrix,
        char_poly,
        hurwitz: verdict.hurwitz,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Total Nelder-Mead iterations across all restarts.
    pub budget: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
            exec: Exec::Parallel,
        }
    }
}

pub const DEFAULT_BUDGET: usize = 20_000;
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Restarts run in fixed-size batches so the winner never depends on thread count.
const RESTART_BATCH: usize = 8;
const PENALTY: f64 = 1e-4;
const TARGET: f64 = 0.05;

/// Sum of `coef * prod exp(x_v)` over terms, in log-magnitude coordinates.
#[derive(Debug, Clone)]
struct LogPoly {
    terms: Vec<(f64, Vec<usize>)>,
}

impl LogPoly {
    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, vars)| c * vars.iter().map(|&v| x[v]).sum::<f64>().exp())
            .sum()
    }
}

struct Objective {
    coeffs: Vec<LogPoly>,
}

impl Objective {
    fn new(p: &SignPattern) -> Self {
        let cc = char_coefficients(p);
        let coeffs = cc
            .as_slice()
            .iter()
            .map(|poly| LogPoly {
                terms: poly
                    .terms()
                    .map(|(mono, coef)| {
                        let vars = mono
                            .exponents()
                            .iter()
                            .enumerate()
                            .flat_map(|(v, &e)| std::iter::repeat_n(v, e as usize))
                            .collect();
                        (coef.to_f64().unwrap_or(f64::NAN), vars)
                    })
                    .collect(),
            })
            .collect();
        Objective { coeffs }
    }

    /// Smallest `sign(Δ_k) ln(1 + |Δ_k|)`.
    fn margin(&self, x: &[f64]) -> f64 {
        let c: Vec<f64> = self.coeffs.iter().map(|q| q.eval(x)).collect();
        hurwitz_determinants_f64(&c)
            .into_iter()
            .map(|d| d.signum() * d.abs().ln_1p())
            .fold(f64::INFINITY, f64::min)
            .min(f64::MAX)
    }

    fn value(&self, x: &[f64]) -> f64 {
        let m = self.margin(x);
        if !m.is_finite() {
            return f64::MAX;
        }
        -m + PENALTY * x.iter().map(|v| v * v).sum::<f64>()
    }
}

/// `Δ_1..Δ_n` in floating point from `c_1..c_n`.
pub fn hurwitz_determinants_f64(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    let coef = |k: isize| -> f64 {
        if k == 0 {
            1.0
        } else if k < 0 || k as usize > n {
            0.0
        } else {
            c[k as usize - 1]
        }
    };
    (1..=n)
        .map(|size| {
            let mut m: Vec<Vec<f64>> = (0..size)
                .map(|i| (0..size).map(|j| coef(2 * j as isize - i as isize + 1)).collect())
                .collect();
            det_f64(&mut m)
        })
        .collect()
}

fn det_f64(m: &mut [Vec<f64>]) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&a, &b| m[a][k].abs().total_cmp(&m[b][k].abs()))
            .unwrap_or(k);
        if m[piv][k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        det *= m[k][k];
        for r in k + 1..n {
            let f = m[r][k] / m[k][k];
            for c in k..n {
                m[r][c] -= f * m[k][c];
            }
        }
    }
    det
}

/// Minimizes `f` from `start`; returns the best point after at most `iters` iterations
/// or as soon as `stop` accepts the best value.
fn nelder_mead<F, S>(f: F, start: &[f64], step: f64, iters: usize, stop: S) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
    S: Fn(f64) -> bool,
{
    let d = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = (0..=d)
        .map(|i| {
            let mut x = start.to_vec();
            if i > 0 {
                x[i - 1] += step;
            }
            let fx = f(&x);
            (x, fx)
        })
        .collect();
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
    };
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if stop(simplex[0].1) {
            break;
        }
        let mut centroid = vec![0.0; d];
        for (x, _) in &simplex[..d] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / d as f64;
            }
        }
        let worst = simplex[d].clone();
        let reflected = lerp(&centroid, &worst.0, -1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &worst.0, -2.0);
            let fe = f(&expanded);
            simplex[d] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (reflected, fr);
        } else {
            let (toward, ft) = if fr < worst.1 { (&reflected, fr) } else { (&worst.0, worst.1) };
            let contracted = lerp(&centroid, toward, 0.5);
            let fc = f(&contracted);
            if fc < ft {
                simplex[d] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for (x, fx) in simplex.iter_mut().skip(1) {
                    *x = lerp(&best, x, 0.5);
                    *fx = f(x);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

/// Rational matrix with the signs of `p` and magnitudes `exp(x)` rounded to `1/denominator`.
fn round_to_matrix(p: &SignPattern, vars: &[(usize, usize)], x: &[f64], denominator: i64) -> RationalMatrix {
    let n = p.n();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    let den = BigInt::from(denominator);
    for (&(i, j), &xv) in vars.iter().zip(x) {
        let scaled = (xv.exp() * denominator as f64).round();
        let numer = if scaled.is_finite() && scaled >= 1.0 {
            BigRational::from_float(scaled).map(|r| r.to_integer()).unwrap_or_else(BigInt::one)
        } else {
            BigInt::one()
        };
        let mag = BigRational::new(numer, den.clone());
        m[i][j] = if p.get(i, j) == Sign::Minus { -mag } else { mag };
    }
    m
}

fn try_certify(p: &SignPattern, vars: &[(usize, usize)], x: &[f64]) -> Option<RealizationWitness> {
    [1_000_000, 1_000_000_000]
        .into_iter()
        .find_map(|den| witness_from_matrix(round_to_matrix(p, vars, x, den), p).ok().flatten())
}

fn restart(p: &SignPattern, obj: &Objective, vars: &[(usize, usize)], seed: u64, index: usize, iters: usize) -> Option<RealizationWitness> {
    let d = vars.len();
    let start: Vec<f64> = if index == 0 {
        vec![0.0; d]
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect()
    };
    let (x, _) = nelder_mead(|x| obj.value(x), &start, 1.0, iters, |fx| fx < -TARGET);
    if obj.margin(&x) > 0.0 {
        try_certify(p, vars, &x)
    } else {
        None
    }
}

/// Seeded multi-restart search for a certified stable realization of `p`.
///
/// Returns `Ok(None)` when the budget runs out; that outcome is inconclusive.
/// Reducible patterns are accepted, although stability then splits into blocks.
/// The result depends only on `(p, budget, seed)`: restarts are batched and
/// the lowest-indexed restart that certifies wins.
pub fn search_stable_realization(p: &SignPattern, opts: SearchOptions) -> Result<Option<RealizationWitness>> {
    let vars: Vec<(usize, usize)> = p.support_digraph().edges();
    let d = vars.len();
    if d == 0 {
        return Ok(None);
    }
    let obj = Objective::new(p);
    let per_restart = 200 + 100 * d;
    let restarts = (opts.budget / per_restart).max(1);
    let iters = opts.budget.min(per_restart);
    let mut first = 0;
    while first < restarts {
        let len = RESTART_BATCH.min(restarts - first);
        let found = exec::map_range(opts.exec, len, |i| restart(p, &obj, &vars, opts.seed, first + i, iters));
        if let Some(w) = found.into_iter().flatten().next() {
            return Ok(Some(w));
        }
        first += len;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn int_matrix(rows: &[&[i64]]) -> RationalMatrix {
        rows.iter().map(|r| r.iter().map(|&x| r_int(x)).collect()).collect()
    }

    fn r_int(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn char_poly_of_small_matrices() {
        let m = int_matrix(&[&[1, 2], &[3, 4]]);
        assert_eq!(characteristic_polynomial(&m), RationalPoly::from_integers(&[-5, -2]));
        let m = vec![vec![r(1, 2), r(1, 3)], vec![r(-1, 5), r(0, 1)]];
        // t^2 - t/2 + 1/15
        assert_eq!(characteristic_polynomial(&m), RationalPoly::monic(vec![r(-1, 2), r(1, 15)]));
    }

    #[test]
    fn char_poly_with_zero_leading_entries() {
        // companion matrix of t^3 + 2t^2 + 3t + 4
        let m = int_matrix(&[&[0, 1, 0], &[0, 0, 1], &[-4, -3, -2]]);
        assert_eq!(characteristic_polynomial(&m), RationalPoly::from_integers(&[2, 3, 4]));
    }

    #[test]
    fn certify_negative_identity() {
        let n = 7;
        let m: RationalMatrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { r_int(-1) } else { r_int(0) }).collect())
            .collect();
        let rows: Vec<Vec<Sign>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Sign::Minus } else { Sign::Zero }).collect())
            .collect();
        let p = SignPattern::from_rows(&rows).unwrap();
        assert!(certify(&m, &p).unwrap().is_stable());
    }

    #[test]
    fn conformance_errors() {
        let p = SignPattern::parse("- +\n- 0\n").unwrap();
        let bad = int_matrix(&[&[-1, 1], &[-1, 1]]);
        assert_eq!(certify(&bad, &p), Err(Error::SignConformance(2, 2)));
        let short = int_matrix(&[&[-1, 1]]);
        assert!(matches!(certify(&short, &p), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn witness_json_uses_fraction_strings() {
        let p = SignPattern::parse("- +\n- 0\n").unwrap();
        let m = vec![vec![r(-1, 2), r(1, 1)], vec![r(-3, 1), r(0, 1)]];
        let w = witness_from_matrix(m, &p).unwrap().unwrap();
        let json = serde_json::to_value(&w).unwrap();
        assert_eq!(json["matrix"][0][0], "-1/2");
        assert_eq!(json["char_poly"], serde_json::json!(["1/2", "3/1"]));
        assert_eq!(json["hurwitz"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn search_finds_two_by_two_witness() {
        let p = SignPattern::parse("- +\n- 0\n").unwrap();
        let w = search_stable_realization(&p, SearchOptions::default()).unwrap().unwrap();
        assert!(certify(&w.matrix, &p).unwrap().is_stable());
    }

    #[test]
    fn search_is_deterministic() {
        let p = SignPattern::parse("- + 0\n0 0 +\n- 0 0\n").unwrap();
        let opts = SearchOptions { budget: 3000, seed: 7, exec: Exec::Parallel };
        let a = search_stable_realization(&p, opts).unwrap();
        let b = search_stable_realization(&p, SearchOptions { exec: Exec::Sequential, ..opts }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn float_hurwitz_matches_exact() {
        let c = [4.0, 9.0, 13.0, 13.0, 9.0, 4.0, 1.0];
        let exact = crate::stability::hurwitz_determinants(&RationalPoly::from_integers(&[4, 9, 13, 13, 9, 4, 1]));
        for (a, b) in hurwitz_determinants_f64(&c).iter().zip(&exact) {
            let b = b.to_f64().unwrap();
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
        }
    }
}
