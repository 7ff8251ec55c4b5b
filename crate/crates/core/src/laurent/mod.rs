//! Exact integer Laurent polynomials in one variable `t`, plus the ordinary
//! integer polynomials and Sturm machinery built on the same coefficients.

mod int;
mod intpoly;

pub use int::Int;
pub use intpoly::{IntPoly, Rat};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    /// Exact division requested but remainder was nonzero; upstream bug.
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// Centered polynomial fails `p(1/t) = p(t)`.
    #[error("polynomial is not symmetric under t -> 1/t")]
    NotSymmetric,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Sign behavior of the coefficient list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    Negative,
    Zero,
    Indefinite,
}

impl Definiteness {
    pub fn is_definite(self) -> bool {
        !matches!(self, Definiteness::Indefinite)
    }
}

/// Laurent polynomial over `Z` in canonical trimmed form: the first and last
/// stored coefficients are nonzero, and the zero polynomial is the empty list
/// with `min_exp = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<Int>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(Int::ONE)
    }

    pub fn constant(c: impl Into<Int>) -> LaurentPoly {
        LaurentPoly::new(0, vec![c.into()])
    }

    /// `c * t^exp`.
    pub fn monomial(c: impl Into<Int>, exp: i64) -> LaurentPoly {
        LaurentPoly::new(exp, vec![c.into()])
    }

    /// `t^exp`.
    pub fn t_pow(exp: i64) -> LaurentPoly {
        LaurentPoly::monomial(1, exp)
    }

    /// Coefficients of `t^{min_exp + i}` at index `i`; trims to canonical form.
    pub fn new(min_exp: i64, coeffs: Vec<Int>) -> LaurentPoly {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Int::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_exp += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    /// `max_exp - min_exp`, i.e. the number of roots counted with multiplicity
    /// (zero polynomial gives 0).
    pub fn degree_span(&self) -> u32 {
        if self.is_zero() {
            0
        } else {
            (self.coeffs.len() - 1) as u32
        }
    }

    pub fn coeff(&self, exp: i64) -> Int {
        let idx = exp - self.min_exp;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Int::ZERO
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Int {
        self.coeffs.last().cloned().unwrap_or(Int::ZERO)
    }

    /// Largest coefficient magnitude.
    pub fn height(&self) -> Int {
        self.coeffs
            .iter()
            .map(Int::abs)
            .max()
            .unwrap_or(Int::ZERO)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.max_exp().max(other.max_exp());
        let mut coeffs = vec![Int::ZERO; (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_exp - lo) as usize + i] = c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.min_exp - lo) as usize + i];
            *slot += c;
        }
        LaurentPoly::new(lo, coeffs)
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![Int::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        LaurentPoly::new(self.min_exp + other.min_exp, coeffs)
    }

    pub fn scalar_mul(&self, c: &Int) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `t^shift`.
    pub fn mul_t_pow(&self, shift: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { min_exp: self.min_exp + shift, coeffs: self.coeffs.clone() }
    }

    /// Exact quotient in `Z[t^{±1}]`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return Err(LaurentError::NotDivisible);
        }
        // Long division from the top; exponent bookkeeping is pure shift.
        let mut rem = self.coeffs.clone();
        let dlen = divisor.coeffs.len();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![Int::ZERO; qlen];
        let lead = divisor.coeffs.last().unwrap();
        for qi in (0..qlen).rev() {
            let top = rem[qi + dlen - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.div_exact(lead).ok_or(LaurentError::NotDivisible)?;
            for (di, d) in divisor.coeffs.iter().enumerate() {
                let prod = &q * d;
                rem[qi + di] -= &prod;
            }
            quot[qi] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(LaurentError::NotDivisible);
        }
        Ok(LaurentPoly::new(self.min_exp - divisor.min_exp, quot))
    }

    pub fn is_definite(&self) -> Definiteness {
        if self.is_zero() {
            return Definiteness::Zero;
        }
        let mut sign = 0i8;
        for c in &self.coeffs {
            let s = c.signum();
            if s == 0 {
                continue;
            }
            if sign == 0 {
                sign = s;
            } else if sign != s {
                return Definiteness::Indefinite;
            }
        }
        if sign >= 0 {
            Definiteness::Positive
        } else {
            Definiteness::Negative
        }
    }

    /// The polynomial `p(1/t)`.
    pub fn reciprocal(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly::new(-self.max_exp(), coeffs)
    }

    /// True when the exponent-centered polynomial satisfies `p(1/t) = p(t)`,
    /// i.e. `p(1/t) = t^{-e} p(t)` with a plus sign.
    pub fn is_plus_symmetric(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Express a plus-symmetric polynomial of even degree span as
    /// `t^d g(t + 1/t)` and return `g`.
    ///
    /// Uses the integer recurrence `p_k = x p_{k-1} - p_{k-2}` with
    /// `p_0 = 2`, `p_1 = x` for `t^k + t^{-k}`.
    pub fn to_trace_coords(&self) -> Result<IntPoly, LaurentError> {
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if self.degree_span() % 2 != 0 || !self.is_plus_symmetric() {
            return Err(LaurentError::NotSymmetric);
        }
        let d = (self.degree_span() / 2) as usize;
        // Centered coefficients c_0 .. c_d (c_k multiplies t^k + t^{-k}).
        let center = d;
        let mut g = IntPoly::constant(self.coeffs[center].clone());
        let mut p_prev = IntPoly::constant(Int::from(2)); // p_0
        let mut p_cur = IntPoly::x(); // p_1
        for k in 1..=d {
            let c = &self.coeffs[center + k];
            if !c.is_zero() {
                g = g.add(&p_cur.scalar_mul(c));
            }
            if k < d {
                let next = p_cur.mul_x().sub(&p_prev);
                p_prev = std::mem::replace(&mut p_cur, next);
            }
        }
        Ok(g)
    }

    /// Substitute `x = t + 1/t` into `g` and multiply by `t^d`; inverse of
    /// [`to_trace_coords`] up to the centering shift.
    pub fn from_trace_coords(g: &IntPoly) -> LaurentPoly {
        let x = LaurentPoly::t_pow(1).add(&LaurentPoly::t_pow(-1));
        let mut acc = LaurentPoly::zero();
        for c in g.coeffs().iter().rev() {
            acc = acc.mul(&x);
            acc = acc.add(&LaurentPoly::constant(c.clone()));
        }
        acc.mul_t_pow(g.degree() as i64)
    }

    /// Drop negative exponents by shifting to `min_exp = 0`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_f64();
        }
        if self.min_exp != 0 {
            acc *= t.powi(self.min_exp as i32);
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_f64();
        }
        if self.min_exp != 0 {
            acc *= t.powi(self.min_exp as i32);
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending-exponent form `c0*t^e0 + c1*t^e1 + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*t^{}", c, self.min_exp + i as i64)?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut acc = LaurentPoly::zero();
        let body = s.trim();
        if body == "0" {
            return Ok(acc);
        }
        for term in body.split('+') {
            let term = term.trim();
            let (coeff, exp) = term
                .split_once("*t^")
                .ok_or_else(|| LaurentError::Parse(format!("bad term `{term}`")))?;
            let c: Int = coeff
                .trim()
                .parse()
                .map_err(|e| LaurentError::Parse(format!("bad coefficient `{coeff}`: {e}")))?;
            let e: i64 = exp
                .trim()
                .parse()
                .map_err(|_| LaurentError::Parse(format!("bad exponent `{exp}`")))?;
            acc = acc.add(&LaurentPoly::monomial(c, e));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        terms
            .iter()
            .fold(LaurentPoly::zero(), |acc, &(c, e)| {
                acc.add(&LaurentPoly::monomial(c, e))
            })
    }

    #[test]
    fn ring_basics() {
        // (1 + t)(1 - t) = 1 - t^2
        let a = poly(&[(1, 0), (1, 1)]);
        let b = poly(&[(1, 0), (-1, 1)]);
        assert_eq!(a.mul(&b), poly(&[(1, 0), (-1, 2)]));
        // p + (-p) = 0
        assert!(a.add(&a.neg()).is_zero());
        // t^{-1} (t + t^2) = 1 + t
        let c = poly(&[(1, 1), (1, 2)]);
        assert_eq!(c.mul(&LaurentPoly::t_pow(-1)), poly(&[(1, 0), (1, 1)]));
    }

    #[test]
    fn exact_division() {
        let num = poly(&[(1, 0), (1, 1), (2, 2), (1, 3), (1, 4)]);
        let den = poly(&[(1, 0), (1, 1), (1, 2)]);
        assert_eq!(num.exact_div(&den).unwrap(), poly(&[(1, 0), (1, 2)]));
        assert_eq!(num.exact_div(&LaurentPoly::one()).unwrap(), num);
        let num2 = poly(&[(1, 0), (1, 2), (1, 4)]);
        let q = num2.exact_div(&den).unwrap();
        assert_eq!(q, poly(&[(1, 0), (-1, 1), (1, 2)]));
        assert_eq!(q.mul(&den), num2);
        assert_eq!(
            poly(&[(1, 0), (1, 1)]).exact_div(&poly(&[(1, 0), (2, 1)])),
            Err(LaurentError::NotDivisible)
        );
    }

    #[test]
    fn definiteness_examples() {
        assert_eq!(poly(&[(2, 0), (1, 1), (1, 3)]).is_definite(), Definiteness::Positive);
        assert_eq!(poly(&[(-1, 0), (-2, 2)]).is_definite(), Definiteness::Negative);
        assert_eq!(LaurentPoly::zero().is_definite(), Definiteness::Zero);
        assert_eq!(
            poly(&[(1, 0), (-2, 1), (1, 3)]).is_definite(),
            Definiteness::Indefinite
        );
    }

    #[test]
    fn trace_coords_examples() {
        // t^2 - t + 1 -> x - 1
        let p = poly(&[(1, 0), (-1, 1), (1, 2)]);
        let g = p.to_trace_coords().unwrap();
        assert_eq!(g, IntPoly::new(vec![Int::from(-1), Int::from(1)]));
        // constant
        assert_eq!(
            LaurentPoly::one().to_trace_coords().unwrap(),
            IntPoly::constant(Int::ONE)
        );
        // t^4 - t^3 + t^2 - t + 1 -> x^2 - x - 1
        let p = poly(&[(1, 0), (-1, 1), (1, 2), (-1, 3), (1, 4)]);
        let g = p.to_trace_coords().unwrap();
        assert_eq!(
            g,
            IntPoly::new(vec![Int::from(-1), Int::from(-1), Int::from(1)])
        );
        // multiply-back oracle: p already starts at exponent 0
        let back = LaurentPoly::from_trace_coords(&g);
        assert_eq!(back, p);
    }

    #[test]
    fn non_symmetric_rejected() {
        let p = poly(&[(1, 0), (2, 1), (3, 2)]);
        assert_eq!(p.to_trace_coords(), Err(LaurentError::NotSymmetric));
    }

    #[test]
    fn display_parse_round_trip() {
        let p = poly(&[(-3, -2), (7, 0), (1, 5)]);
        let s = p.to_string();
        assert_eq!(s, "-3*t^-2 + 7*t^0 + 1*t^5");
        assert_eq!(s.parse::<LaurentPoly>().unwrap(), p);
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn json_round_trip() {
        let p = poly(&[(i64::MAX, -1), (1, 3)]).mul(&poly(&[(i64::MAX, 0)]));
        let json = serde_json::to_string(&p).unwrap();
        let q: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(p, q);
    }
}
