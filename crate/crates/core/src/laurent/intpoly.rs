//! Ordinary integer polynomials: primitive pseudo-remainder sequences,
//! square-free decomposition, and Sturm real-root counting over exact
//! rationals.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Int;

/// Small exact rational for interval endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rat {
    pub num: i64,
    pub den: i64,
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        let g = {
            let (mut a, mut b) = (num.unsigned_abs(), den.unsigned_abs());
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            (a.max(1)) as i64
        };
        let (num, den) = (num / g, den / g);
        if den < 0 {
            Rat { num: -num, den: -den }
        } else {
            Rat { num, den }
        }
    }

    pub fn int(v: i64) -> Rat {
        Rat { num: v, den: 1 }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

/// Dense integer polynomial, coefficients from degree 0 upward, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Int) -> IntPoly {
        IntPoly::new(vec![c])
    }

    pub fn x() -> IntPoly {
        IntPoly::new(vec![Int::ZERO, Int::ONE])
    }

    pub fn new(coeffs: Vec<Int>) -> IntPoly {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Int::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or(Int::ZERO)
    }

    pub fn leading(&self) -> Int {
        self.coeffs.last().cloned().unwrap_or(Int::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(&self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
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
        IntPoly::new(coeffs)
    }

    pub fn scalar_mul(&self, c: &Int) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul_x(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Int::ZERO);
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Int::from(i as i64))
                .collect(),
        )
    }

    /// gcd of the coefficients, always nonnegative.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content; leading coefficient keeps its sign.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_exact_scalar(&c).expect("content divides")
    }

    pub fn div_exact_scalar(&self, c: &Int) -> Option<IntPoly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.div_exact(c)?);
        }
        Some(IntPoly { coeffs })
    }

    /// Quotient and remainder of `self / div` over the rationals, valid over
    /// `Z` only when all leading-coefficient divisions are exact (e.g. monic
    /// divisors); returns `None` otherwise.
    pub fn div_rem_exact(&self, div: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.degree() < div.degree() || self.is_zero() {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let dlen = div.coeffs.len();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![Int::ZERO; qlen];
        let lead = div.coeffs.last().unwrap();
        for qi in (0..qlen).rev() {
            let top = rem[qi + dlen - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.div_exact(lead)?;
            for (di, d) in div.coeffs.iter().enumerate() {
                let prod = &q * d;
                rem[qi + di] -= &prod;
            }
            quot[qi] = q;
        }
        Some((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Pseudo-remainder scaled by a positive power of `|lc(div)|`, so the
    /// result is a positive multiple of the true remainder. Sign-safe for
    /// Sturm chains.
    fn pseudo_rem_positive(&self, div: &IntPoly) -> IntPoly {
        assert!(!div.is_zero());
        let dlead = div.leading();
        let dlead_abs = dlead.abs();
        let ddeg = div.degree();
        let mut rem = self.coeffs.clone();
        while rem.len() > ddeg {
            let rdeg = rem.len() - 1;
            let top = rem.last().unwrap().clone();
            if top.is_zero() {
                rem.pop();
                continue;
            }
            // rem <- |lc(div)| * rem - sign * top * x^{rdeg-ddeg} * div
            let sign = Int::from(dlead.signum() as i64);
            let factor = &top * &sign;
            for c in rem.iter_mut() {
                *c *= &dlead_abs;
            }
            let shift = rdeg - ddeg;
            for (di, d) in div.coeffs.iter().enumerate() {
                let prod = &factor * d;
                rem[shift + di] -= &prod;
            }
            while rem.last().is_some_and(Int::is_zero) {
                rem.pop();
            }
        }
        IntPoly::new(rem)
    }

    /// Primitive polynomial gcd over `Z` (nonnegative leading coefficient).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return normalize_sign(other.primitive_part());
        }
        if other.is_zero() {
            return normalize_sign(self.primitive_part());
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem_positive(&b).primitive_part();
            a = std::mem::replace(&mut b, r);
        }
        normalize_sign(a)
    }

    /// Yun square-free decomposition: returns `(factor, multiplicity)` pairs
    /// with pairwise-coprime square-free factors whose weighted product is
    /// `self` up to a rational constant.
    pub fn square_free_decomposition(&self) -> Vec<(IntPoly, u32)> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let f = self.primitive_part();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        if a0.degree() == 0 {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        // Work over Q conceptually; primitive parts keep everything in Z.
        let mut b = f.div_by_factor(&a0);
        let mut c = df.div_by_factor(&a0);
        let mut i = 1u32;
        loop {
            let d = c.sub(&b.derivative());
            if b.degree() == 0 {
                break;
            }
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_by_factor(&g);
            c = d.div_by_factor(&g);
            i += 1;
        }
        out
    }

    /// Exact quotient by a primitive factor that divides `self` over `Q`
    /// (hence over `Z`, by Gauss's lemma). A degree-0 factor is treated as a
    /// unit: the input is returned unchanged.
    fn div_by_factor(&self, factor: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        if factor.degree() == 0 {
            return self.clone();
        }
        // lc(factor)^k * self is divisible by factor with integer quotient;
        // dividing the quotient by lc^k recovers the exact integral result.
        let k = (self.degree() - factor.degree() + 1) as u32;
        let scale = factor.leading().pow(k);
        let scaled = self.scalar_mul(&scale);
        let (q, r) = scaled
            .div_rem_exact(factor)
            .expect("scaled division is exact");
        debug_assert!(r.is_zero(), "factor must divide");
        q.div_exact_scalar(&scale)
            .expect("quotient is integral for primitive factors")
    }

    /// Sign of `p(num/den)` via homogeneous exact evaluation of
    /// `sum c_i num^i den^{n-i}`.
    pub fn sign_at(&self, x: Rat) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let p = Int::from(x.num);
        let q = Int::from(x.den);
        let n = self.coeffs.len() - 1;
        let mut qpow = Int::ONE;
        let mut qpowers = Vec::with_capacity(n + 1);
        qpowers.push(Int::ONE);
        for _ in 0..n {
            qpow = &qpow * &q;
            qpowers.push(qpow.clone());
        }
        let mut acc = Int::ZERO;
        let mut ppow = Int::ONE;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &(&(c * &ppow) * &qpowers[n - i]);
            }
            if i < n {
                ppow = &ppow * &p;
            }
        }
        acc.signum()
    }

    /// Divide out `(den*x - num)^m` where `num/den` is a root of multiplicity
    /// exactly `m`; returns `(deflated, m)`.
    pub fn deflate_rational_root(&self, x: Rat) -> (IntPoly, u32) {
        let lin = IntPoly::new(vec![Int::from(-x.num), Int::from(x.den)]);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() && p.sign_at(x) == 0 && p.degree() >= 1 {
            p = p.div_by_factor(&lin);
            m += 1;
        }
        (p, m)
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    ///
    /// Endpoints that are roots are deflated away first, so the count refers
    /// to the interior of the interval.
    pub fn sturm_count(&self, a: Rat, b: Rat) -> u32 {
        assert!(a < b, "need a < b");
        if self.is_zero() {
            return 0;
        }
        let mut p = self.primitive_part();
        for end in [a, b] {
            if p.sign_at(end) == 0 {
                p = p.deflate_rational_root(end).0;
            }
        }
        if p.degree() == 0 {
            return 0;
        }
        let chain = sturm_chain(&p);
        let va = sign_variations(&chain, a);
        let vb = sign_variations(&chain, b);
        va.saturating_sub(vb) as u32
    }
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    if p.leading().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Sturm chain with primitive-part compression; every step multiplies by
/// positive constants only, so sign variations are those of the classical
/// chain.
fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone(), p.derivative().primitive_part()];
    loop {
        let n = chain.len();
        let (prev, cur) = (&chain[n - 2], &chain[n - 1]);
        if cur.is_zero() {
            chain.pop();
            break;
        }
        if cur.degree() == 0 {
            break;
        }
        let rem = prev.pseudo_rem_positive(cur);
        if rem.is_zero() {
            break;
        }
        chain.push(rem.neg().primitive_part());
    }
    chain
}

fn sign_variations(chain: &[IntPoly], x: Rat) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl fmt::Display for IntPoly {
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
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*x^{i}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    #[test]
    fn sturm_count_examples() {
        // x - 1 on (-2, 2): one root
        assert_eq!(ip(&[-1, 1]).sturm_count(Rat::int(-2), Rat::int(2)), 1);
        // x^2 + 1: none
        assert_eq!(ip(&[1, 0, 1]).sturm_count(Rat::int(-2), Rat::int(2)), 0);
        // x^2 - x - 1: roots (1 ± sqrt 5)/2 ≈ 1.618, -0.618
        assert_eq!(ip(&[-1, -1, 1]).sturm_count(Rat::int(-2), Rat::int(2)), 2);
        assert_eq!(ip(&[-1, -1, 1]).sturm_count(Rat::int(-1), Rat::int(2)), 2);
        assert_eq!(ip(&[-1, -1, 1]).sturm_count(Rat::int(-2), Rat::int(-1)), 0);
    }

    #[test]
    fn sturm_with_root_endpoints() {
        // (x-1)(x+1)x has roots at the endpoints of (-1, 1); only 0 inside.
        let p = ip(&[0, -1, 0, 1]);
        assert_eq!(p.sturm_count(Rat::int(-1), Rat::int(1)), 1);
    }

    #[test]
    fn sturm_handles_repeated_roots() {
        // (x-1)^2 (x+2): distinct roots 1 and -2
        let p = ip(&[-1, 1]).mul(&ip(&[-1, 1])).mul(&ip(&[2, 1]));
        assert_eq!(p.sturm_count(Rat::int(-3), Rat::int(3)), 2);
    }

    #[test]
    fn square_free_decomposition_recovers_multiplicities() {
        // (x-2)^2 (x^2+1)
        let p = ip(&[-2, 1]).mul(&ip(&[-2, 1])).mul(&ip(&[1, 0, 1]));
        let sf = p.square_free_decomposition();
        let mut found2 = false;
        let mut found1 = false;
        for (f, m) in &sf {
            if *m == 2 {
                assert_eq!(f.primitive_part(), ip(&[-2, 1]));
                found2 = true;
            }
            if *m == 1 {
                assert_eq!(f.primitive_part(), ip(&[1, 0, 1]));
                found1 = true;
            }
        }
        assert!(found2 && found1);
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = ip(&[-1, 1]).mul(&ip(&[3, 1]));
        let b = ip(&[-1, 1]).mul(&ip(&[5, 2]));
        assert_eq!(a.gcd(&b), ip(&[-1, 1]));
    }

    #[test]
    fn sign_at_rationals() {
        let p = ip(&[-1, 0, 2]); // 2x^2 - 1, roots ±sqrt(1/2)
        assert_eq!(p.sign_at(Rat::new(1, 2)), -1);
        assert_eq!(p.sign_at(Rat::int(1)), 1);
        assert_eq!(p.sign_at(Rat::new(-3, 4)), 1);
    }

    #[test]
    fn deflation() {
        let p = ip(&[-1, 1]).mul(&ip(&[-1, 1])).mul(&ip(&[1, 1]));
        let (q, m) = p.deflate_rational_root(Rat::int(1));
        assert_eq!(m, 2);
        assert_eq!(q, ip(&[1, 1]));
    }
}
