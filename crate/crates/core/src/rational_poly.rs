//! Monic univariate polynomials with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `t^n + c_1 t^(n-1) + ... + c_n`, stored as `[1, c_1, ..., c_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    /// Monic polynomial from `c_1..c_n`.
    pub fn monic(tail: Vec<BigRational>) -> Self {
        let mut coeffs = Vec::with_capacity(tail.len() + 1);
        coeffs.push(BigRational::one());
        coeffs.extend(tail);
        RationalPoly { coeffs }
    }

    /// Normalizes `[a_0, a_1, ..., a_n]` (descending powers, `a_0 != 0`) to monic form.
    pub fn from_descending(coeffs: Vec<BigRational>) -> Self {
        let lead = coeffs[0].clone();
        assert!(!lead.is_zero(), "leading coefficient must be nonzero");
        RationalPoly {
            coeffs: coeffs.into_iter().map(|c| c / &lead).collect(),
        }
    }

    pub fn from_f64s(tail: &[f64]) -> Self {
        RationalPoly::monic(
            tail.iter()
                .map(|&x| BigRational::from_float(x).expect("finite coefficient"))
                .collect(),
        )
    }

    pub fn from_integers(tail: &[i64]) -> Self {
        RationalPoly::monic(tail.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_k` for `0 <= k <= n` (`c_0 = 1`); zero outside that range.
    pub fn c(&self, k: isize) -> BigRational {
        if k < 0 || k as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// `[1, c_1, ..., c_n]`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Product of two monic polynomials.
    pub fn mul(&self, other: &RationalPoly) -> RationalPoly {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly { coeffs: out }
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Text form `deg c_1 c_2 ... c_n`, rationals as `p/q`.
    pub fn to_text(&self) -> String {
        let mut s = self.degree().to_string();
        for c in &self.coeffs[1..] {
            s.push(' ');
            s.push_str(&format_rational(c));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut toks = text.split_whitespace();
        let deg_tok = toks.next().ok_or_else(|| Error::parse(1, 1, "missing degree"))?;
        let deg: usize = deg_tok
            .parse()
            .map_err(|_| Error::parse(1, 1, format!("bad degree `{deg_tok}`")))?;
        let tail: Vec<BigRational> = toks
            .enumerate()
            .map(|(k, t)| parse_rational(t).map_err(|m| Error::parse(1, k + 2, m)))
            .collect::<Result<_>>()?;
        if tail.len() != deg {
            return Err(Error::parse(
                1,
                1,
                format!("degree {deg} needs {deg} coefficients, got {}", tail.len()),
            ));
        }
        Ok(RationalPoly::monic(tail))
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `p/q` in lowest terms with `q > 0`; integers keep the `/1`.
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q`, integers and finite decimals like `0.81`.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let bad = || format!("bad rational `{s}`");
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_val: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_val: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = BigRational::new(int_val * &scale + frac_val, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}
