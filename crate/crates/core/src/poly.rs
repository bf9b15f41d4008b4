//! Sparse multivariate polynomials with integer coefficients over the
//! magnitude variables `a_ij` of a sign pattern.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Variable table: variable id -> matrix position `(row, col)`, 0-based.
pub type VarTable = Arc<[(usize, usize)]>;

/// Exponent vector indexed by variable id.
///
/// Ordered by total degree, then by exponents compared lexicographically in
/// descending order, which is the rendering order of [`SignedPoly`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u8>) -> Self {
        Monomial(exps)
    }

    /// Product of distinct variables.
    pub fn from_vars(nvars: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Monomial::one(nvars);
        for v in vars {
            m.0[v] += 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in positive magnitude variables with exact integer coefficients.
/// No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SignedPoly {
    vars: VarTable,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SignedPoly {
    pub fn zero(vars: VarTable) -> Self {
        SignedPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarTable, c: impl Into<BigInt>) -> Self {
        let mut p = SignedPoly::zero(vars);
        let nv = p.vars.len();
        p.add_term(Monomial::one(nv), c.into());
        p
    }

    pub fn variable(vars: VarTable, id: usize) -> Self {
        let mut p = SignedPoly::zero(vars);
        let nv = p.vars.len();
        p.add_term(Monomial::from_vars(nv, [id]), BigInt::one());
        p
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    /// Adds `coef * mono`, dropping the term if it cancels.
    pub fn add_term(&mut self, mono: Monomial, coef: BigInt) {
        debug_assert_eq!(mono.0.len(), self.vars.len());
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in rendering order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn has_positive_coefficient(&self) -> bool {
        self.terms.values().any(Signed::is_positive)
    }

    /// True when every coefficient is `<= 0` (vacuously for the zero polynomial),
    /// so the value is `<= 0` at every positive assignment.
    pub fn is_nonpositive_everywhere(&self) -> bool {
        !self.has_positive_coefficient()
    }

    fn check_compatible(&self, other: &SignedPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable tables"
        );
    }

    /// Exact value at a positive rational assignment keyed by matrix position.
    pub fn evaluate(&self, assignment: &HashMap<(usize, usize), BigRational>) -> Result<BigRational> {
        let mut values = Vec::with_capacity(self.vars.len());
        for &(i, j) in self.vars.iter() {
            let used = self.terms.keys().any(|m| m.0[values.len()] > 0);
            match assignment.get(&(i, j)) {
                Some(v) if !v.is_positive() => return Err(Error::NonPositiveValue(i + 1, j + 1)),
                Some(v) => values.push(v.clone()),
                None if used => return Err(Error::MissingVariable(i + 1, j + 1)),
                None => values.push(BigRational::one()),
            }
        }
        Ok(self.evaluate_dense(&values))
    }

    /// Exact value with values indexed by variable id.
    pub fn evaluate_dense(&self, values: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (mono, coef) in &self.terms {
            let mut t = BigRational::from_integer(coef.clone());
            for (v, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &values[v];
                }
            }
            total += t;
        }
        total
    }

    /// Floating-point value with values indexed by variable id.
    pub fn evaluate_f64(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(mono, coef)| {
                mono.0
                    .iter()
                    .enumerate()
                    .fold(coef.to_f64().unwrap_or(f64::NAN), |acc, (v, &e)| {
                        acc * values[v].powi(e as i32)
                    })
            })
            .sum()
    }

    /// Name of variable `id`: `a45` style for one-digit indices, `a10_3` otherwise.
    pub fn var_name(&self, id: usize) -> String {
        var_name(self.vars[id])
    }
}

pub fn var_name((i, j): (usize, usize)) -> String {
    if i < 9 && j < 9 {
        format!("a{}{}", i + 1, j + 1)
    } else {
        format!("a{}_{}", i + 1, j + 1)
    }
}

impl fmt::Display for SignedPoly {
    /// `+ a11*a23*a32 - 2*a45^2`; the zero polynomial renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (mono, coef)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(if coef.is_negative() { "- " } else { "+ " })?;
            let mag = coef.abs();
            let factors: Vec<String> = mono
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let name = self.var_name(v);
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPoly({self})")
    }
}

impl Add for &SignedPoly {
    type Output = SignedPoly;
    fn add(self, rhs: &SignedPoly) -> SignedPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SignedPoly {
    type Output = SignedPoly;
    fn sub(self, rhs: &SignedPoly) -> SignedPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &SignedPoly {
    type Output = SignedPoly;
    fn mul(self, rhs: &SignedPoly) -> SignedPoly {
        self.check_compatible(rhs);
        let mut out = SignedPoly::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &SignedPoly {
    type Output = SignedPoly;
    fn neg(self) -> SignedPoly {
        SignedPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for SignedPoly {
            type Output = SignedPoly;
            fn $f(self, rhs: SignedPoly) -> SignedPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for SignedPoly {
    type Output = SignedPoly;
    fn neg(self) -> SignedPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> VarTable {
        vec![(0, 0), (1, 2), (2, 1), (3, 4), (4, 5), (5, 3)].into()
    }

    #[test]
    fn rendering_order_and_signs() {
        let vars = table();
        let x = |i| SignedPoly::variable(vars.clone(), i);
        let c3 = &(&(&x(0) * &x(1)) * &x(2)) + &(&(&x(3) * &x(4)) * &x(5));
        assert_eq!(c3.to_string(), "+ a11*a23*a32 + a45*a56*a64");
        let d = &(&x(0) * &(&x(1) * &x(2))) - &c3;
        assert_eq!(d.to_string(), "- a45*a56*a64");
        assert!(d.is_nonpositive_everywhere());
        let sq = &(&x(0) * &x(0)) * &SignedPoly::constant(vars.clone(), -2);
        assert_eq!((&sq + &x(1)).to_string(), "+ a23 - 2*a11^2");
        assert_eq!(SignedPoly::zero(vars.clone()).to_string(), "0");
        assert_eq!(SignedPoly::constant(vars, 3).to_string(), "+ 3");
    }

    #[test]
    fn cancellation_removes_terms() {
        let vars = table();
        let x = SignedPoly::variable(vars.clone(), 2);
        assert!((&x - &x).is_zero());
        assert!((&x - &x).is_nonpositive_everywhere());
    }

    #[test]
    fn exact_evaluation() {
        let vars = table();
        let a11 = SignedPoly::variable(vars.clone(), 0);
        let mut asg = HashMap::new();
        asg.insert((0, 0), BigRational::new(3.into(), 2.into()));
        assert_eq!(a11.evaluate(&asg).unwrap(), BigRational::new(3.into(), 2.into()));

        let neg = -&(&(&SignedPoly::variable(vars.clone(), 3) * &SignedPoly::variable(vars.clone(), 4))
            * &SignedPoly::variable(vars.clone(), 5));
        let ones: HashMap<_, _> = vars.iter().map(|&p| (p, BigRational::one())).collect();
        assert_eq!(neg.evaluate(&ones).unwrap(), -BigRational::one());

        asg.insert((0, 0), BigRational::zero());
        assert_eq!(a11.evaluate(&asg), Err(Error::NonPositiveValue(1, 1)));
        assert_eq!(
            SignedPoly::variable(vars, 1).evaluate(&HashMap::new()),
            Err(Error::MissingVariable(2, 3))
        );
    }

    #[test]
    fn wide_indices_use_separator() {
        assert_eq!(var_name((9, 2)), "a10_3");
        assert_eq!(var_name((8, 8)), "a99");
    }
}
