//! Simultaneous root refinement for integer polynomials via the
//! Aberth-Ehrlich iteration, with compensated-Horner Newton polishing.
//!
//! Callers hand in square-free factors; clustered or repeated roots are
//! handled upstream by exact square-free decomposition.

use num_complex::Complex64;

use crate::laurent::IntPoly;

#[derive(Clone, Copy, Debug)]
pub struct AberthConfig {
    pub max_iters: usize,
    /// Relative step size below which a root is considered converged.
    pub epsilon: f64,
    pub polish_iters: usize,
}

impl Default for AberthConfig {
    fn default() -> Self {
        AberthConfig { max_iters: 400, epsilon: 1e-14, polish_iters: 3 }
    }
}

/// Coefficients scaled into f64 range: each coefficient is divided by
/// 2^shift with shift chosen so the largest magnitude is ~1.
pub fn scaled_coeffs(p: &IntPoly) -> Vec<f64> {
    let max_exp = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64_exp().1)
        .max()
        .unwrap_or(0);
    p.coeffs()
        .iter()
        .map(|c| {
            let (m, e) = c.to_f64_exp();
            let d = e - max_exp;
            if d < -1000 {
                0.0
            } else {
                m * (d as f64).exp2()
            }
        })
        .collect()
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let n = coeffs.len();
    let mut p = Complex64::new(coeffs[n - 1], 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs[..n - 1].iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Error-free transformation Horner: evaluates with roughly doubled working
/// precision by accumulating the rounding residue of each step.
fn horner_compensated(coeffs: &[f64], z: Complex64) -> Complex64 {
    #[inline]
    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }
    #[inline]
    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        (p, f64::mul_add(a, b, -p))
    }
    #[inline]
    fn c_two_prod(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
        let (p1, e1) = two_prod(a.re, b.re);
        let (p2, e2) = two_prod(a.im, b.im);
        let (p3, e3) = two_prod(a.re, b.im);
        let (p4, e4) = two_prod(a.im, b.re);
        let (re, er) = two_sum(p1, -p2);
        let (im, ei) = two_sum(p3, p4);
        (
            Complex64::new(re, im),
            Complex64::new(e1 - e2 + er, e3 + e4 + ei),
        )
    }
    let n = coeffs.len();
    let mut p = Complex64::new(coeffs[n - 1], 0.0);
    let mut err = Complex64::new(0.0, 0.0);
    for &c in coeffs[..n - 1].iter().rev() {
        let (prod, perr) = c_two_prod(p, z);
        let (sre, ere) = two_sum(prod.re, c);
        p = Complex64::new(sre, prod.im);
        err = err * z + perr + Complex64::new(ere, 0.0);
    }
    p + err
}

/// All roots of a square-free polynomial with the given scaled coefficients.
pub fn aberth_roots(coeffs: &[f64], cfg: &AberthConfig) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)];
    }
    // Initial guesses on a circle whose radius interpolates the Cauchy-style
    // bounds, with an angular offset to break symmetry.
    let lead = coeffs[n].abs();
    let tail = coeffs[0].abs();
    let upper = 1.0 + coeffs[..n].iter().map(|c| c.abs()).fold(0.0, f64::max) / lead;
    let lower = if tail > 0.0 {
        tail / (tail + coeffs[1..].iter().map(|c| c.abs()).fold(0.0, f64::max))
    } else {
        upper / 2.0
    };
    let radius = (upper * lower).sqrt().clamp(1e-6, 1e6);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.437;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..cfg.max_iters {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { Complex64::new(1e-12, 0.0) };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > 0.0 {
                        s += 1.0 / d;
                    }
                }
            }
            let denom = 1.0 - newton * s;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[k] -= step;
            let rel = step.norm() / (z[k].norm() + 1.0);
            max_step = max_step.max(rel);
        }
        if max_step < cfg.epsilon {
            break;
        }
    }

    // Newton polish with compensated evaluation.
    for zk in z.iter_mut() {
        for _ in 0..cfg.polish_iters {
            let (_, dp) = horner(coeffs, *zk);
            let p = horner_compensated(coeffs, *zk);
            if dp.norm() == 0.0 || p.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *zk -= step;
            if step.norm() < 1e-16 * (zk.norm() + 1.0) {
                break;
            }
        }
    }
    z
}

/// Residual `|p(z)|` using compensated evaluation on scaled coefficients.
pub fn residual(coeffs: &[f64], z: Complex64) -> f64 {
    horner_compensated(coeffs, z).norm()
}
