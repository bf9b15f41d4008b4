//! Symbolic characteristic-polynomial coefficients of a sign pattern.
//!
//! Entry `(i, j)` of a realization is `s_ij * a_ij` with `a_ij > 0`. Expanding
//! `det(tI - A)` over permutations groups terms by their cycle decomposition,
//! so the coefficient `c_k` of `t^(n-k)` is a sum over families `F` of pairwise
//! disjoint cycles covering `k` vertices of `prod_{C in F} (-w(C))`, where
//! `w(C)` is the signed product of the entries along `C`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::digraph::{simple_cycles, Cycle};
use crate::error::{Error, Result};
use crate::pattern::SignPattern;
use crate::poly::{Monomial, SignedPoly, VarTable};

/// `c_1 ..= c_n`; `c[k - 1]` is the coefficient of `t^(n - k)` in `det(tI - A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharCoefficients {
    c: Vec<SignedPoly>,
}

impl CharCoefficients {
    /// `c_k` for `1 <= k <= n`.
    pub fn get(&self, k: usize) -> &SignedPoly {
        &self.c[k - 1]
    }

    pub fn degree(&self) -> usize {
        self.c.len()
    }

    pub fn as_slice(&self) -> &[SignedPoly] {
        &self.c
    }

    pub fn vars(&self) -> &VarTable {
        self.c[0].vars()
    }

    /// `c_i * c_j - c_(i+j)`; requires `i + j <= n`.
    pub fn product_difference(&self, i: usize, j: usize) -> SignedPoly {
        &(self.get(i) * self.get(j)) - self.get(i + j)
    }
}

/// Variable table of a pattern: one magnitude per nonzero entry, row-major.
pub fn pattern_vars(p: &SignPattern) -> VarTable {
    let v: Vec<(usize, usize)> = p.support_digraph().edges();
    Arc::from(v)
}

/// Characteristic coefficients as exact polynomials in the magnitudes.
pub fn char_coefficients(p: &SignPattern) -> CharCoefficients {
    let n = p.n();
    let g = p.support_digraph();
    let vars = pattern_vars(p);
    let cycles = simple_cycles(&g);
    // per cycle: edge ids and the sign of -w(C)
    let info: Vec<(Vec<usize>, i8, u32)> = cycles
        .iter()
        .map(|c| {
            let ids: Vec<usize> = c.edges().map(|(u, v)| g.edge_id(u, v).unwrap()).collect();
            let sign = c.edges().map(|(u, v)| p.get(u, v).value()).product::<i8>();
            (ids, -sign, c.vertex_mask())
        })
        .collect();
    let mut c: Vec<SignedPoly> = (0..n).map(|_| SignedPoly::zero(vars.clone())).collect();
    let mut chosen: Vec<usize> = Vec::new();
    families(&info, 0, 0, 1, &mut chosen, &mut |mask, sign, chosen| {
        let k = mask.count_ones() as usize;
        let mono = Monomial::from_vars(vars.len(), chosen.iter().flat_map(|&ci| info[ci].0.iter().copied()));
        c[k - 1].add_term(mono, BigInt::from(sign));
    });
    CharCoefficients { c }
}

/// Visits every nonempty family of disjoint cycles with index `>= start`.
fn families<F>(info: &[(Vec<usize>, i8, u32)], start: usize, mask: u32, sign: i8, chosen: &mut Vec<usize>, visit: &mut F)
where
    F: FnMut(u32, i8, &[usize]),
{
    for ci in start..info.len() {
        let (_, s, m) = &info[ci];
        if mask & m != 0 {
            continue;
        }
        chosen.push(ci);
        visit(mask | m, sign * s, chosen);
        families(info, ci + 1, mask | m, sign * s, chosen, visit);
        chosen.pop();
    }
}

/// Sum of all `k x k` principal minors, `E_k = (-1)^k c_k`.
pub fn symbolic_minor_sum(p: &SignPattern, k: usize) -> Result<SignedPoly> {
    if k == 0 || k > p.n() {
        return Err(Error::MinorSize { n: p.n(), k });
    }
    let ck = char_coefficients(p).c.swap_remove(k - 1);
    Ok(if k % 2 == 0 { ck } else { -ck })
}

/// Necessary condition for potential stability: every `c_k` has a monomial with
/// positive coefficient. Returns the first `k` that fails, if any.
pub fn first_infeasible_minor(coeffs: &CharCoefficients) -> Option<usize> {
    (1..=coeffs.degree()).find(|&k| !coeffs.get(k).has_positive_coefficient())
}

/// `false` when some `E_k` cannot have sign `(-1)^k` for any positive magnitudes.
pub fn minor_sign_feasible(p: &SignPattern) -> bool {
    first_infeasible_minor(&char_coefficients(p)).is_none()
}

/// The signed weight product of a cycle in `p`.
pub fn cycle_sign(p: &SignPattern, c: &Cycle) -> i8 {
    c.edges().map(|(u, v)| p.get(u, v).value()).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pattern::Sign;
    use num_rational::BigRational;

    #[test]
    fn item_one_coefficients() {
        let p = fixtures::item(1).pattern();
        let c = char_coefficients(&p);
        assert_eq!(c.get(1).to_string(), "+ a11");
        assert_eq!(c.get(2).to_string(), "+ a23*a32");
        assert_eq!(c.get(3).to_string(), "+ a11*a23*a32 + a45*a56*a64");
        assert_eq!(symbolic_minor_sum(&p, 2).unwrap().to_string(), "+ a23*a32");
        assert!(minor_sign_feasible(&p));
    }

    #[test]
    fn item_one_c3_at_two() {
        let p = fixtures::item(1).pattern();
        let c = char_coefficients(&p);
        let twos = vec![BigRational::from_integer(2.into()); c.vars().len()];
        assert_eq!(c.get(3).evaluate_dense(&twos), BigRational::from_integer(16.into()));
    }

    #[test]
    fn small_patterns() {
        let p = SignPattern::parse("-\n").unwrap();
        assert_eq!(symbolic_minor_sum(&p, 1).unwrap().to_string(), "- a11");
        let d = SignPattern::parse("- 0\n0 -\n").unwrap();
        let c = char_coefficients(&d);
        assert_eq!(c.get(1).to_string(), "+ a11 + a22");
        assert_eq!(c.get(2).to_string(), "+ a11*a22");
        assert!(symbolic_minor_sum(&d, 0).is_err());
        assert!(symbolic_minor_sum(&d, 3).is_err());
    }

    #[test]
    fn loopless_cycle_is_infeasible() {
        let mut p = SignPattern::zeros(7).unwrap();
        for i in 0..7 {
            p.set(i, (i + 1) % 7, Sign::Plus);
        }
        let c = char_coefficients(&p);
        assert!(c.get(1).is_zero());
        assert_eq!(first_infeasible_minor(&c), Some(1));
        assert!(!minor_sign_feasible(&p));
    }

    #[test]
    fn forced_negative_e3() {
        // 3-cycle with product +1 gives c_3 = -a12*a23*a31, loops make c_1, c_2 feasible
        let p = SignPattern::parse("- + 0\n0 - +\n+ 0 -\n").unwrap();
        let c = char_coefficients(&p);
        assert!(c.get(1).has_positive_coefficient());
        assert!(c.get(2).has_positive_coefficient());
        assert_eq!(c.get(3).to_string(), "+ a11*a22*a33 - a12*a23*a31");
        let q = SignPattern::parse("0 + 0\n0 0 +\n+ 0 -\n").unwrap();
        let cq = char_coefficients(&q);
        assert_eq!(cq.get(3).to_string(), "- a12*a23*a31");
        assert_eq!(first_infeasible_minor(&cq), Some(2));
        let r = SignPattern::parse("- + 0\n+ - +\n+ 0 0\n").unwrap();
        let cr = char_coefficients(&r);
        assert_eq!(cr.get(3).to_string(), "- a12*a23*a31");
        assert!(cr.get(2).has_positive_coefficient());
        assert!(!minor_sign_feasible(&r));
    }
}
