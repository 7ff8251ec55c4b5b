//! Root extraction for the exact polynomials produced by the Burau modules,
//! classification against the circle arcs and the root-free region, exact
//! on-circle root counting through trace coordinates and Sturm chains,
//! signature-based lower bounds, and the positive-coefficient scan of the
//! right-half-plane polynomials.

mod aberth;

pub use aberth::{aberth_roots, residual, scaled_coeffs, AberthConfig};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::burau::{self, BurauError};
use crate::laurent::{Int, IntPoly, LaurentPoly, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootsError {
    #[error(transparent)]
    Burau(#[from] BurauError),
    #[error("Alexander polynomial is not plus-symmetric; use numeric classification")]
    NotSymmetric,
    #[error("Alexander polynomial is identically zero")]
    ZeroAlexander,
    #[error("closure is not a knot")]
    NotAKnot,
    #[error("word is not positive")]
    NotPositive,
    #[error("operation not applicable to this word")]
    NotApplicable,
}

/// Radius of the root-free disk about the origin, `(3 - sqrt 5)/2`.
pub fn small_disk_radius() -> f64 {
    (3.0 - 5.0f64.sqrt()) / 2.0
}

/// Roots with multiplicity of a polynomial, `sum(multiplicity) = source_degree`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<(Complex64, u32)>,
    pub source_degree: u32,
    /// Residual `|p(z)|` on max-scaled coefficients, one per root entry.
    pub residuals: Vec<f64>,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> u32 {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Iterate roots repeated by multiplicity.
    pub fn iter_with_multiplicity(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat(z).take(m as usize))
    }
}

/// Roots of a nonzero Laurent polynomial (the `t^min_exp` unit is dropped, so
/// 0 is never reported as a root).
pub fn find_roots(p: &LaurentPoly, cfg: &AberthConfig) -> RootSet {
    assert!(!p.is_zero(), "zero polynomial has no root set");
    find_roots_int(&p.to_int_poly(), cfg)
}

pub fn find_roots_int(p: &IntPoly, cfg: &AberthConfig) -> RootSet {
    let source_degree = p.degree() as u32;
    let mut roots = Vec::new();
    let mut residuals = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        let coeffs = scaled_coeffs(&factor);
        for z in aberth_roots(&coeffs, cfg) {
            roots.push((z, mult));
            residuals.push(residual(&coeffs, z));
        }
    }
    RootSet { roots, source_degree, residuals }
}

/// Region flags for a complex point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionTag {
    pub on_circle: bool,
    /// On the right arc `|arg t| < 2π/3` (implies `on_circle`).
    pub arc_right: bool,
    /// On the left arc `|arg t - π| < π/3` (implies `on_circle`).
    pub arc_left: bool,
    /// Strictly inside the root-free region
    /// `|t|^{1/2}|1-t| + |t|² < 1 and |t|^{1/2}|1-t+t²| + |t|³ < 1`.
    pub in_region_t: bool,
    /// Within tolerance of the region boundary; excluded from violation
    /// counts.
    pub near_t_boundary: bool,
    /// `|t| < (3 - sqrt 5)/2`.
    pub in_small_disk: bool,
    pub inside_disk: bool,
    pub outside_disk: bool,
}

impl RegionTag {
    pub fn flags_string(&self) -> String {
        let mut out = Vec::new();
        for (set, name) in [
            (self.on_circle, "circle"),
            (self.arc_right, "arcR"),
            (self.arc_left, "arcL"),
            (self.in_region_t, "T"),
            (self.near_t_boundary, "Tboundary"),
            (self.in_small_disk, "smalldisk"),
            (self.inside_disk, "inside"),
            (self.outside_disk, "outside"),
        ] {
            if set {
                out.push(name);
            }
        }
        out.join("|")
    }
}

/// The two defining margins of the root-free region at `z`: both negative
/// means strictly inside.
pub fn region_t_margins(z: Complex64) -> (f64, f64) {
    let r = z.norm();
    let sqrt_r = r.sqrt();
    let m1 = sqrt_r * (Complex64::new(1.0, 0.0) - z).norm() + r * r - 1.0;
    let m2 = sqrt_r * (Complex64::new(1.0, 0.0) - z + z * z).norm() + r.powi(3) - 1.0;
    (m1, m2)
}

pub fn classify(z: Complex64, tol: f64) -> RegionTag {
    assert!(tol > 0.0);
    let r = z.norm();
    let mut tag = RegionTag::default();
    tag.on_circle = (r - 1.0).abs() < tol;
    if tag.on_circle {
        let theta = z.arg();
        tag.arc_right = theta.abs() < 2.0 * std::f64::consts::PI / 3.0;
        let from_pi = (theta.abs() - std::f64::consts::PI).abs();
        tag.arc_left = from_pi < std::f64::consts::PI / 3.0;
    }
    let (m1, m2) = region_t_margins(z);
    tag.in_region_t = m1 < 0.0 && m2 < 0.0;
    tag.near_t_boundary = m1.abs() < tol || m2.abs() < tol;
    tag.in_small_disk = r < small_disk_radius();
    tag.inside_disk = r < 1.0 - tol;
    tag.outside_disk = r > 1.0 + tol;
    tag
}

/// Multiplicity-weighted exact counts of Alexander roots on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleCounts {
    pub total_on_circle: u64,
    pub on_arc_right: u64,
    pub on_arc_left: u64,
}

/// Exact circle-root counts via trace coordinates: for a plus-symmetric
/// Alexander polynomial, roots `t = e^{iθ}` correspond to real roots
/// `x = 2cos θ` of the trace-coordinate polynomial, with `x ∈ (-1, 2)` for
/// the right arc and `x ∈ (-2, -1)` for the left arc. Counts come from Sturm
/// chains on the square-free factors; `x = ±2` (i.e. `t = ±1`) and `x = -1`
/// (the arc endpoints `ζ₃`, which belong to neither open arc) are deflated
/// and handled separately.
pub fn count_circle_roots_exact(w: &BraidWord) -> Result<CircleCounts, RootsError> {
    let delta = burau::alexander_poly(w)?;
    if delta.is_zero() {
        return Err(RootsError::ZeroAlexander);
    }
    let g = delta
        .to_trace_coords()
        .map_err(|_| RootsError::NotSymmetric)?;
    Ok(count_circle_roots_of_trace_poly(&g))
}

pub fn count_circle_roots_of_trace_poly(g: &IntPoly) -> CircleCounts {
    let mut counts = CircleCounts { total_on_circle: 0, on_arc_right: 0, on_arc_left: 0 };
    for (factor, mult) in g.square_free_decomposition() {
        let mult = mult as u64;
        let mut f = factor;
        // x = 2 <-> t = 1 (on the right arc), each g-root giving a Δ-root of
        // doubled multiplicity.
        let (f2, m2) = f.deflate_rational_root(Rat::int(2));
        f = f2;
        counts.total_on_circle += 2 * mult * m2 as u64;
        counts.on_arc_right += 2 * mult * m2 as u64;
        // x = -2 <-> t = -1 (on the left arc).
        let (f3, m3) = f.deflate_rational_root(Rat::int(-2));
        f = f3;
        counts.total_on_circle += 2 * mult * m3 as u64;
        counts.on_arc_left += 2 * mult * m3 as u64;
        // x = -1 <-> t = ζ₃^{±1}: on the circle, on neither open arc.
        let (f4, m4) = f.deflate_rational_root(Rat::int(-1));
        f = f4;
        counts.total_on_circle += 2 * mult * m4 as u64;
        if f.degree() == 0 {
            continue;
        }
        // Interior roots pair up as conjugates t, t̄.
        let right = f.sturm_count(Rat::int(-1), Rat::int(2)) as u64;
        let left = f.sturm_count(Rat::int(-2), Rat::int(-1)) as u64;
        counts.on_arc_right += 2 * mult * right;
        counts.on_arc_left += 2 * mult * left;
        counts.total_on_circle += 2 * mult * (right + left);
    }
    counts
}

/// Exact multiplicity-weighted count of circle roots `t = e^{iθ}` with
/// `x = 2cos θ` strictly inside the rational interval `(a, b) ⊆ (-2, 2)`,
/// counting conjugate pairs (i.e. both halves of the circle).
pub fn count_circle_roots_in_x_interval(g: &IntPoly, a: Rat, b: Rat) -> u64 {
    let mut total = 0;
    for (factor, mult) in g.square_free_decomposition() {
        total += 2 * mult as u64 * factor.sturm_count(a, b) as u64;
    }
    total
}

/// Lower bound `ceil(((θ₂-θ₁)/2π)|#w| - 2)` (clamped at 0) for the number of
/// Alexander roots on the upper-circle arc from `e^{iθ₁}` to `e^{iθ₂}`,
/// valid for `0 ≤ θ₁ < θ₂ ≤ 2π/3`.
pub fn arc_lower_bound(w: &BraidWord, theta1: f64, theta2: f64) -> Result<u64, RootsError> {
    assert!(
        (0.0..).contains(&theta1) && theta1 < theta2 && theta2 <= 2.0 * std::f64::consts::PI / 3.0 + 1e-12,
        "need 0 <= θ₁ < θ₂ <= 2π/3"
    );
    let delta = burau::alexander_poly(w)?;
    if delta.is_zero() {
        return Err(RootsError::ZeroAlexander);
    }
    let raw = (theta2 - theta1) / (2.0 * std::f64::consts::PI)
        * w.exponent_sum().unsigned_abs() as f64
        - 2.0;
    Ok(raw.ceil().max(0.0) as u64)
}

/// Parity-refined two-thirds bound for the number of roots on the right arc:
/// with `r = (2/3)(deg Δ - 1)`, the bound is the smallest even integer ≥ r
/// when the closure has an odd number of components, and the smallest odd
/// integer ≥ r otherwise.
pub fn two_thirds_bound(w: &BraidWord) -> Result<u64, RootsError> {
    if !w.is_positive() || w.is_generator_power() {
        return Err(RootsError::NotApplicable);
    }
    let deg = (w.exponent_sum() - 2) as u64;
    let mu = w.closure_components() as u64;
    if deg == 0 {
        // unknotted closure (e.g. σ₁σ₂): no roots, bound clamps to zero
        return Ok(0);
    }
    // r = 2(deg-1)/3 as an exact rational with denominator 3.
    let num = 2 * (deg - 1);
    let ceil_with_parity = |parity: u64| -> u64 {
        // smallest n >= num/3 with n ≡ parity (mod 2)
        let mut n = num / 3 + u64::from(num % 3 != 0);
        if n % 2 != parity {
            n += 1;
        }
        n
    };
    Ok(if mu % 2 == 1 { ceil_with_parity(0) } else { ceil_with_parity(1) })
}

/// The right-half-plane polynomials of a positive knot word `w` with
/// `#w = 2m`: `f(t + 1/t) = t^{-m} det(B_t(w) - I)` (monic of degree m) and
/// `h(y) = Re(i^{-m} f(iy)) = sum b_k y^{m-2k}` with `b_0 = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhPolynomials {
    pub f: IntPoly,
    pub h: IntPoly,
    /// `b_k` for `0 ≤ k ≤ m/2`.
    pub b: Vec<Int>,
}

pub fn rh_polynomials(w: &BraidWord) -> Result<RhPolynomials, RootsError> {
    if !w.is_positive() {
        return Err(RootsError::NotPositive);
    }
    if !w.is_knot_closure() {
        return Err(RootsError::NotAKnot);
    }
    let det = burau::burau_of_word(w, burau::Variable::T).det_minus_identity();
    let f = det.to_trace_coords().map_err(|_| RootsError::NotSymmetric)?;
    let m = f.degree();
    // h(y) = sum_k (-1)^k a_{m-2k} y^{m-2k}
    let mut h_coeffs = vec![Int::ZERO; m + 1];
    let mut b = Vec::with_capacity(m / 2 + 1);
    for k in 0..=(m / 2) {
        let deg = m - 2 * k;
        let a = f.coeff(deg);
        let bk = if k % 2 == 0 { a.clone() } else { -a.clone() };
        h_coeffs[deg] = bk.clone();
        b.push(bk);
    }
    Ok(RhPolynomials { f, h: IntPoly::new(h_coeffs), b })
}

/// Histogram with uniform bins over `[lo, hi)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Histogram {
        assert!(bins > 0 && hi > lo);
        Histogram { lo, hi, counts: vec![0; bins] }
    }

    /// Values equal to the upper edge land in the last bin.
    pub fn add(&mut self, x: f64) {
        if x < self.lo || x > self.hi {
            return;
        }
        let idx = ((x - self.lo) / (self.hi - self.lo) * self.counts.len() as f64) as usize;
        let idx = idx.min(self.counts.len() - 1);
        self.counts[idx] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn bin_edges(&self, i: usize) -> (f64, f64) {
        let w = (self.hi - self.lo) / self.counts.len() as f64;
        (self.lo + i as f64 * w, self.lo + (i + 1) as f64 * w)
    }
}

/// Empirical measure data for a root set: angular histogram of circle roots
/// (polar angle over the upper half by default), angular histogram of the
/// radial projection of interior off-circle roots, and the raw root triples.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmpiricalMeasure {
    pub angular: Histogram,
    pub interior_projection: Histogram,
    pub raw: Vec<(f64, f64, u32)>,
}

pub fn empirical_measure(rs: &RootSet, circle_tol: f64, bins: usize) -> EmpiricalMeasure {
    let mut angular = Histogram::new(0.0, std::f64::consts::PI, bins);
    let mut interior_projection = Histogram::new(0.0, std::f64::consts::PI, bins);
    let mut raw = Vec::with_capacity(rs.roots.len());
    for &(z, m) in &rs.roots {
        raw.push((z.re, z.im, m));
        let theta = z.arg().abs();
        if (z.norm() - 1.0).abs() < circle_tol {
            for _ in 0..m {
                angular.add(theta);
            }
        } else if z.norm() < 1.0 - circle_tol {
            // Radial projection onto the circle keeps only the angle.
            for _ in 0..m {
                interior_projection.add(theta);
            }
        }
    }
    EmpiricalMeasure { angular, interior_projection, raw }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn word(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    #[test]
    fn trefoil_roots() {
        let delta = burau::alexander_poly(&word("abab")).unwrap();
        let rs = find_roots(&delta, &AberthConfig::default());
        assert_eq!(rs.total_multiplicity(), 2);
        for (z, m) in &rs.roots {
            assert_eq!(*m, 1);
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.arg().abs() - std::f64::consts::PI / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn multiplicity_detected() {
        // (t - 2)²(2t - 1): multiplicity 2 at t = 2
        let p = ip(&[-2, 1]).mul(&ip(&[-2, 1])).mul(&ip(&[-1, 2]));
        let rs = find_roots_int(&p, &AberthConfig::default());
        assert_eq!(rs.total_multiplicity(), 3);
        let at_two = rs
            .roots
            .iter()
            .find(|(z, _)| (z - Complex64::new(2.0, 0.0)).norm() < 1e-9)
            .expect("root at 2");
        assert_eq!(at_two.1, 2);
    }

    #[test]
    fn density_family_roots_of_minus_one() {
        // σ₁σ₂σ₁σ₂⁵: Δ = (1 + t⁷)/(1 + t), roots are 7th roots of -1 except -1.
        let w = word("aba").concat(&BraidWord::sigma(2).repeat(5));
        let delta = burau::alexander_poly(&w).unwrap();
        let rs = find_roots(&delta, &AberthConfig::default());
        assert_eq!(rs.total_multiplicity(), 6);
        for (z, _) in &rs.roots {
            assert!((z.norm() - 1.0).abs() < 1e-10);
            assert!((z.powi(7) + 1.0).norm() < 1e-9);
            assert!((z + 1.0).norm() > 0.5);
        }
    }

    #[test]
    fn classify_examples() {
        let tag = classify(Complex64::from_polar(1.0, std::f64::consts::PI / 3.0), 1e-6);
        assert!(tag.on_circle && tag.arc_right && !tag.arc_left);
        let tag = classify(Complex64::new(0.0, 0.0), 1e-6);
        assert!(tag.in_region_t && tag.in_small_disk && tag.inside_disk);
        let tag = classify(Complex64::new(-0.5, 0.0), 1e-6);
        assert!(!tag.in_region_t); // 0.7071*1.5 + 0.25 > 1
        let tag = classify(Complex64::from_polar(1.0, std::f64::consts::PI), 1e-6);
        assert!(tag.on_circle && tag.arc_left && !tag.arc_right);
    }

    #[test]
    fn exact_circle_counts_trefoil() {
        let counts = count_circle_roots_exact(&word("abab")).unwrap();
        assert_eq!(
            counts,
            CircleCounts { total_on_circle: 2, on_arc_right: 2, on_arc_left: 0 }
        );
    }

    #[test]
    fn exact_circle_counts_density_family() {
        // σ₁σ₂σ₁σ₂³: Δ = (1+t⁵)/(1+t), whose four roots (5th roots of -1
        // other than -1) are on the circle with x = 2cos θ in (-1, 2).
        let w = word("aba").concat(&BraidWord::sigma(2).repeat(3));
        let counts = count_circle_roots_exact(&w).unwrap();
        assert_eq!(
            counts,
            CircleCounts { total_on_circle: 4, on_arc_right: 4, on_arc_left: 0 }
        );
        // trace poly with both golden-ratio roots in (-1, 2)
        let g = ip(&[-1, -1, 1]);
        let counts = count_circle_roots_of_trace_poly(&g);
        assert_eq!(counts.on_arc_right, 4);
        assert_eq!(counts.on_arc_left, 0);
    }

    #[test]
    fn arc_lower_bound_formula() {
        // #w = 600 over the full arc: ceil(600/3 - 2) = 198
        let w = BraidWord::sigma(1).repeat(300).concat(&BraidWord::sigma(2).repeat(300));
        let b = arc_lower_bound(&w, 0.0, 2.0 * std::f64::consts::PI / 3.0).unwrap();
        assert_eq!(b, 198);
        // tiny arcs clamp to zero
        let b = arc_lower_bound(&word("aabb"), 0.0, 1e-9).unwrap();
        assert_eq!(b, 0);
    }

    #[test]
    fn two_thirds_parity() {
        // knot (μ = 1): deg Δ = 2 for the trefoil, r = 2/3, bound = 2 (even)
        assert_eq!(two_thirds_bound(&word("abab")).unwrap(), 2);
        // two-component closure (odd #w): deg Δ = 1, r = 0, smallest odd ≥ 0
        // is 1 — and t = 1 is indeed a root of Δ = 1 - t on the right arc.
        let w = word("aab");
        assert_eq!(w.closure_components(), 2);
        assert_eq!(two_thirds_bound(&w).unwrap(), 1);
        // larger two-component case: σ₁⁴σ₂⁵σ₁⁴σ₂² has #w = 15, deg Δ = 13,
        // r = 8, smallest odd ≥ 8 is 9
        let w = word("aaaabbbbbaaaabb");
        assert_eq!(w.closure_components(), 2);
        assert_eq!(two_thirds_bound(&w).unwrap(), 9);
        assert_eq!(
            two_thirds_bound(&word("aaa")),
            Err(RootsError::NotApplicable)
        );
    }

    #[test]
    fn rh_trefoil() {
        let rh = rh_polynomials(&word("abab")).unwrap();
        assert_eq!(rh.f, ip(&[-1, 0, 1])); // x² - 1
        assert_eq!(rh.h, ip(&[1, 0, 1])); // y² + 1
        assert_eq!(rh.b, vec![Int::ONE, Int::ONE]);
        assert!(rh.b[0].is_one());
        assert_eq!(rh_polynomials(&word("aaa")), Err(RootsError::NotAKnot));
    }

    #[test]
    fn empirical_measure_unit_roots() {
        // 6th roots of unity: flat angular histogram over the upper half.
        let mut roots = Vec::new();
        for k in 0..6 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 6.0;
            roots.push((Complex64::from_polar(1.0, theta), 1u32));
        }
        let rs = RootSet { roots, source_degree: 6, residuals: vec![0.0; 6] };
        let m = empirical_measure(&rs, 1e-6, 3);
        // angles 0, ±π/3, ±2π/3, π -> |angles| 0,0.33π x2 ,0.66π x2, π
        assert_eq!(m.angular.total(), 6);
        assert!(m.interior_projection.total() == 0);
    }
}
