//! Stability tests for monic polynomials and the necessary-condition filters
//! used to refute potential stability symbolically.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::SignPattern;
use crate::poly::SignedPoly;
use crate::rational_poly::RationalPoly;
use crate::symbolic::{char_coefficients, CharCoefficients};

/// `t^2 + c t + d` has both roots in the open left half-plane iff `c > 0` and `d > 0`.
pub fn quadratic_stable(c: &BigRational, d: &BigRational) -> bool {
    c.is_positive() && d.is_positive()
}

/// All of `c_1..c_n` strictly positive. Necessary for stability, never sufficient.
pub fn coefficient_positivity(p: &RationalPoly) -> bool {
    p.coefficients()[1..].iter().all(Signed::is_positive)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityStatus {
    /// Every Hurwitz determinant is positive.
    CertifiedStable,
    /// Some Hurwitz determinant is negative.
    CertifiedUnstable,
    /// No determinant is negative but one vanishes; the polynomial is not stable.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    /// Leading principal minors `Δ_1..Δ_n` of the Hurwitz matrix.
    pub hurwitz: Vec<BigRational>,
    /// 1-based index of the first negative (or, failing that, zero) determinant.
    pub witness_index: Option<usize>,
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        self.status == StabilityStatus::CertifiedStable
    }
}

/// Hurwitz matrix entry `(i, j)` (0-based) is `c_(2j - i + 1)`.
fn hurwitz_matrix(p: &RationalPoly) -> Vec<Vec<BigRational>> {
    let n = p.degree();
    (0..n)
        .map(|i| (0..n).map(|j| p.c(2 * j as isize - i as isize + 1)).collect())
        .collect()
}

/// Exact determinant by Gaussian elimination over the rationals.
pub(crate) fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let factor = &m[r][k] / &pivot;
            for c in k..n {
                let delta = &factor * &m[k][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// `Δ_1..Δ_n` for a monic polynomial.
pub fn hurwitz_determinants(p: &RationalPoly) -> Vec<BigRational> {
    let h = hurwitz_matrix(p);
    (1..=p.degree())
        .map(|k| determinant(h[..k].iter().map(|row| row[..k].to_vec()).collect()))
        .collect()
}

/// Hurwitz criterion in exact arithmetic. A negative determinant certifies
/// instability; otherwise a vanishing one is reported as [`StabilityStatus::Boundary`].
pub fn routh_hurwitz(p: &RationalPoly) -> StabilityVerdict {
    let hurwitz = hurwitz_determinants(p);
    let negative = hurwitz.iter().position(|d| d.is_negative());
    let zero = hurwitz.iter().position(|d| d.is_zero());
    let (status, witness_index) = match (negative, zero) {
        (Some(i), _) => (StabilityStatus::CertifiedUnstable, Some(i + 1)),
        (None, Some(i)) => (StabilityStatus::Boundary, Some(i + 1)),
        (None, None) => (StabilityStatus::CertifiedStable, None),
    };
    StabilityVerdict {
        status,
        hurwitz,
        witness_index,
    }
}

/// Positive parameters of `(t^2+b1 t+a1)(t^2+b2 t+a2)(t^2+b3 t+a3)(t+a4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorParams {
    a: [BigRational; 4],
    b: [BigRational; 3],
}

impl FactorParams {
    pub fn new(a: [BigRational; 4], b: [BigRational; 3]) -> Result<Self> {
        const A: [&str; 4] = ["a1", "a2", "a3", "a4"];
        const B: [&str; 3] = ["b1", "b2", "b3"];
        for (x, name) in a.iter().zip(A) {
            if !x.is_positive() {
                return Err(Error::NonPositiveParameter(name));
            }
        }
        for (x, name) in b.iter().zip(B) {
            if !x.is_positive() {
                return Err(Error::NonPositiveParameter(name));
            }
        }
        Ok(FactorParams { a, b })
    }

    pub fn a(&self) -> &[BigRational; 4] {
        &self.a
    }

    pub fn b(&self) -> &[BigRational; 3] {
        &self.b
    }
}

/// Degree-7 coefficients of the factored form, written out term by term.
pub fn expand_factorization(f: &FactorParams) -> RationalPoly {
    let [a1, a2, a3, a4] = &f.a;
    let [b1, b2, b3] = &f.b;
    let c1 = a4 + b1 + b2 + b3;
    let c2 = a1 + a2 + a3 + a4 * (b1 + b2 + b3) + b1 * b2 + b1 * b3 + b2 * b3;
    let c3 = a1 * a4 + a2 * a4 + a3 * a4 + a2 * b1 + a3 * b1 + a1 * b2 + a3 * b2 + a4 * b1 * b2
        + a1 * b3
        + a2 * b3
        + a4 * b1 * b3
        + a4 * b2 * b3
        + b1 * b2 * b3;
    let c4 = a1 * a2 + a1 * a3 + a2 * a3 + a2 * a4 * b1 + a3 * a4 * b1 + a1 * a4 * b2
        + a3 * a4 * b2
        + a3 * b1 * b2
        + a1 * a4 * b3
        + a2 * a4 * b3
        + a2 * b1 * b3
        + a1 * b2 * b3
        + a4 * b1 * b2 * b3;
    let c5 = a1 * a2 * a4 + a1 * a3 * a4 + a2 * a3 * a4 + a2 * a3 * b1 + a1 * a3 * b2
        + a3 * a4 * b1 * b2
        + a1 * a2 * b3
        + a2 * a4 * b1 * b3
        + a1 * a4 * b2 * b3;
    let c6 = a1 * a2 * a3 + a2 * a3 * a4 * b1 + a1 * a3 * a4 * b2 + a1 * a2 * a4 * b3;
    let c7 = a1 * a2 * a3 * a4;
    RationalPoly::monic(vec![c1, c2, c3, c4, c5, c6, c7])
}

/// The four necessary inequalities for degree 7, as `(i, j)` with
/// `c_i c_j - c_(i+j) > 0`, in their conventional order 1..=4.
pub const NECESSARY_INEQUALITIES: [(usize, usize); 4] = [(2, 4), (1, 2), (1, 6), (2, 5)];

/// `(c2c4 - c6, c1c2 - c3, c1c6 - c7, c2c5 - c7)`; any value `<= 0` refutes stability.
pub fn necessary_inequalities(p: &RationalPoly) -> Result<[BigRational; 4]> {
    if p.degree() != 7 {
        return Err(Error::WrongDegree {
            expected: 7,
            got: p.degree(),
        });
    }
    let c = |k: usize| p.c(k as isize);
    Ok(NECESSARY_INEQUALITIES.map(|(i, j)| c(i) * c(j) - c(i + j)))
}

/// A symbolic proof that a pattern is not potentially stable: the difference
/// `c_i c_j - c_(i+j)` has no positive coefficient, so it is `<= 0` at every
/// positive magnitude assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    /// 1-based index into [`NECESSARY_INEQUALITIES`].
    pub inequality: u8,
    pub difference: SignedPoly,
}

fn check_seven(p: &SignPattern) -> Result<()> {
    if p.n() != 7 {
        return Err(Error::WrongDimension {
            expected: 7,
            got: p.n(),
        });
    }
    Ok(())
}

/// Every necessary inequality that fails identically, in order.
pub fn refutations_from(coeffs: &CharCoefficients) -> Vec<Refutation> {
    NECESSARY_INEQUALITIES
        .iter()
        .enumerate()
        .filter_map(|(idx, &(i, j))| {
            let d = coeffs.product_difference(i, j);
            d.is_nonpositive_everywhere().then_some(Refutation {
                inequality: idx as u8 + 1,
                difference: d,
            })
        })
        .collect()
}

/// All identically failing inequalities of a 7x7 pattern.
pub fn symbolic_refutations(p: &SignPattern) -> Result<Vec<Refutation>> {
    check_seven(p)?;
    Ok(refutations_from(&char_coefficients(p)))
}

/// Preferred refutation: the first inequality whose difference is a nonzero
/// nonpositive polynomial, else the first identically vanishing one.
pub fn preferred_refutation(all: &[Refutation]) -> Option<&Refutation> {
    all.iter()
        .find(|r| !r.difference.is_zero())
        .or_else(|| all.first())
}

/// Symbolic refutation of a 7x7 pattern, or `None` when inconclusive.
pub fn symbolic_refutation(p: &SignPattern) -> Result<Option<Refutation>> {
    let all = symbolic_refutations(p)?;
    Ok(preferred_refutation(&all).cloned())
}

/// Leading Hurwitz determinants of the symbolic characteristic polynomial.
pub fn symbolic_hurwitz_determinants(coeffs: &CharCoefficients) -> Vec<SignedPoly> {
    let n = coeffs.degree();
    let vars = coeffs.vars().clone();
    let c = |k: isize| -> SignedPoly {
        if k == 0 {
            SignedPoly::constant(vars.clone(), 1)
        } else if k < 0 || k as usize > n {
            SignedPoly::zero(vars.clone())
        } else {
            coeffs.get(k as usize).clone()
        }
    };
    let h: Vec<Vec<SignedPoly>> = (0..n)
        .map(|i| (0..n).map(|j| c(2 * j as isize - i as isize + 1)).collect())
        .collect();
    (1..=n)
        .map(|k| {
            let mut memo = HashMap::new();
            laplace(&h, k, 0, (1u32 << k) - 1, &mut memo)
        })
        .collect()
}

/// Determinant of rows `row..k` against the columns in `cols`, by cofactor
/// expansion along the top row with memoization on the column set.
fn laplace(
    h: &[Vec<SignedPoly>],
    k: usize,
    row: usize,
    cols: u32,
    memo: &mut HashMap<u32, SignedPoly>,
) -> SignedPoly {
    let vars = h[0][0].vars().clone();
    if row == k {
        return SignedPoly::constant(vars, 1);
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = SignedPoly::zero(vars);
    let mut pos = 0;
    for j in 0..k {
        if cols >> j & 1 == 0 {
            continue;
        }
        let entry = &h[row][j];
        if !entry.is_zero() {
            let minor = laplace(h, k, row + 1, cols & !(1 << j), memo);
            let term = entry * &minor;
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        pos += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// First Hurwitz determinant with no positive coefficient, for any dimension.
/// Such a determinant is `<= 0` for every realization, so the pattern is not
/// potentially stable.
pub fn hurwitz_refutation(coeffs: &CharCoefficients) -> Option<(usize, SignedPoly)> {
    symbolic_hurwitz_determinants(coeffs)
        .into_iter()
        .enumerate()
        .find(|(_, d)| d.is_nonpositive_everywhere())
        .map(|(k, d)| (k + 1, d))
}
