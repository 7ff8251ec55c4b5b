//! Monte Carlo estimation of the Lyapunov exponent of the Burau random walk,
//! the potential `chi = max(lambda, log+|t|)`, the discrete bifurcation
//! density it generates, and root-measure comparisons on grid windows.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::burau;
use crate::rng::task_rng;
use crate::roots::{find_roots, AberthConfig};
use crate::spectral::{marching_squares, GridField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LyapunovError {
    #[error("lambda(0) = -infinity by convention")]
    ZeroPoint,
    #[error("step distribution must be finitely supported on positive words with weights summing to 1")]
    BadMeasure,
}

/// Finitely supported step distribution on positive braid words.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MuSpec {
    steps: Vec<(BraidWord, f64)>,
}

impl MuSpec {
    pub fn new(steps: Vec<(BraidWord, f64)>) -> Result<MuSpec, LyapunovError> {
        if steps.is_empty()
            || steps.iter().any(|(w, p)| !w.is_positive() || w.is_empty() || *p <= 0.0)
        {
            return Err(LyapunovError::BadMeasure);
        }
        let total: f64 = steps.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(LyapunovError::BadMeasure);
        }
        Ok(MuSpec { steps })
    }

    /// The uniform measure on the two generators.
    pub fn uniform_generators() -> MuSpec {
        MuSpec {
            steps: vec![
                (BraidWord::sigma(1), 0.5),
                (BraidWord::sigma(2), 0.5),
            ],
        }
    }

    pub fn steps(&self) -> &[(BraidWord, f64)] {
        &self.steps
    }

    fn sample<'a>(&'a self, rng: &mut impl Rng) -> &'a BraidWord {
        let x: f64 = rng.gen();
        let mut acc = 0.0;
        for (w, p) in &self.steps {
            acc += p;
            if x < acc {
                return w;
            }
        }
        &self.steps.last().unwrap().0
    }

    /// A word of exactly `len` letters built from mu-driven steps (truncating
    /// the final step if needed).
    pub fn sample_word(&self, len: usize, rng: &mut impl Rng) -> BraidWord {
        let mut letters = Vec::with_capacity(len);
        while letters.len() < len {
            let step = self.sample(rng);
            for &l in step.letters() {
                if letters.len() == len {
                    break;
                }
                letters.push(l);
            }
        }
        BraidWord::from_letters(letters)
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LyapunovEstimate {
    pub t: Complex64,
    pub lambda_hat: f64,
    pub stderr: f64,
    pub n_walks: usize,
    pub walk_length: usize,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct McParams {
    pub n_walks: usize,
    pub walk_length: usize,
    pub seed: u64,
}

/// How the per-walk growth rate is read off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Estimator {
    /// `(1/n) log ||B_t(w_n)||`: the defining formula.
    FullHorizon,
    /// `(log ||B_t(w_n)|| - log ||B_t(w_{n/2})||) / (n - n/2)`: same limit,
    /// with the O(1/n) additive offset of the full-horizon read cancelled;
    /// used where the target value is exactly zero.
    PrefixDifference,
}

/// Entrywise max norm of the running product, tracked in log scale with
/// renormalization every 16 steps.
fn walk_log_norm(
    t: Complex64,
    mu: &MuSpec,
    walk_length: usize,
    rng: &mut impl Rng,
    estimator: Estimator,
) -> f64 {
    let mut m = [
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ];
    let mut acc = 0.0f64;
    let max_entry = |m: &[[Complex64; 2]; 2]| {
        m.iter().flatten().map(|z| z.norm()).fold(0.0f64, f64::max)
    };
    let half = walk_length / 2;
    let mut log_half = 0.0f64;
    let mut step = 0usize;
    'outer: loop {
        let w = mu.sample(rng);
        for &l in w.letters() {
            m = burau::mat_mul(&m, &burau::generator_at(l, t));
            step += 1;
            if step % 16 == 0 {
                let s = max_entry(&m);
                if s > 0.0 {
                    for z in m.iter_mut().flatten() {
                        *z /= s;
                    }
                    acc += s.ln();
                }
            }
            if step == half {
                log_half = acc + max_entry(&m).ln();
            }
            if step == walk_length {
                break 'outer;
            }
        }
    }
    let log_full = acc + max_entry(&m).ln();
    match estimator {
        Estimator::FullHorizon => log_full / walk_length as f64,
        Estimator::PrefixDifference => (log_full - log_half) / (walk_length - half) as f64,
    }
}

pub fn lyapunov_estimate_with(
    t: Complex64,
    mu: &MuSpec,
    params: McParams,
    estimator: Estimator,
) -> Result<LyapunovEstimate, LyapunovError> {
    if t.norm() == 0.0 {
        return Err(LyapunovError::ZeroPoint);
    }
    let values: Vec<f64> = (0..params.n_walks as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(params.seed, i);
            walk_log_norm(t, mu, params.walk_length, &mut rng, estimator)
        })
        .collect();
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
        / (values.len().saturating_sub(1).max(1)) as f64;
    Ok(LyapunovEstimate {
        t,
        lambda_hat: mean,
        stderr: (var / n).sqrt(),
        n_walks: params.n_walks,
        walk_length: params.walk_length,
    })
}

/// Mean of `(1/n) log ||B_t(w_n)||` over independent walks.
pub fn lyapunov_estimate(
    t: Complex64,
    mu: &MuSpec,
    params: McParams,
) -> Result<LyapunovEstimate, LyapunovError> {
    lyapunov_estimate_with(t, mu, params, Estimator::FullHorizon)
}

/// `log+ x = max(0, log x)`.
pub fn log_plus(x: f64) -> f64 {
    x.ln().max(0.0)
}

/// `chi(t) = max(lambda, log+|t|)`.
pub fn chi(t: Complex64, lambda: f64) -> f64 {
    lambda.max(log_plus(t.norm()))
}

/// Sampled Lyapunov/bifurcation data on a rectangle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureGrid {
    pub lambda: GridField,
    pub stderr: GridField,
    pub chi: GridField,
    /// `(1/2π)` times the 5-point discrete Laplacian of chi; the boundary
    /// ring carries NaN (no one-sided stencils).
    pub density: GridField,
    /// Zero-level contour of `lambda - log+|t|`.
    pub zero_locus: Vec<Vec<(f64, f64)>>,
}

impl MeasureGrid {
    /// Total bifurcation mass: density integrated over interior cells.
    pub fn total_mass(&self) -> f64 {
        let cell = self.density.cell_width() * self.density.cell_height();
        self.density
            .values
            .iter()
            .filter(|v| v.is_finite())
            .sum::<f64>()
            * cell
    }
}

pub fn lyapunov_grid(mut field: GridField, mu: &MuSpec, params: McParams) -> MeasureGrid {
    assert!(field.nx >= 8 && field.ny >= 8, "resolution too small");
    let estimates: Vec<(f64, f64)> = {
        let f = &field;
        (0..f.nx * f.ny)
            .into_par_iter()
            .map(|idx| {
                let (ix, iy) = (idx % f.nx, idx / f.nx);
                let (x, y) = f.point(ix, iy);
                let t = Complex64::new(x, y);
                if t.norm() == 0.0 {
                    return (f64::NEG_INFINITY, 0.0);
                }
                let mut p = params;
                p.seed = params.seed.wrapping_add(idx as u64).wrapping_mul(0x9E3779B97F4A7C15);
                match lyapunov_estimate(t, mu, p) {
                    Ok(e) => (e.lambda_hat, e.stderr),
                    Err(_) => (f64::NEG_INFINITY, 0.0),
                }
            })
            .collect()
    };
    let mut lambda = field.clone();
    let mut stderr = field.clone();
    let mut chi_field = field.clone();
    for (idx, (l, s)) in estimates.iter().enumerate() {
        let (ix, iy) = (idx % field.nx, idx / field.nx);
        lambda.values[idx] = *l;
        stderr.values[idx] = *s;
        let (x, y) = field.point(ix, iy);
        chi_field.values[idx] = chi(Complex64::new(x, y), *l);
    }

    let hx = field.cell_width();
    let hy = field.cell_height();
    let mut density = field.clone();
    for v in density.values.iter_mut() {
        *v = f64::NAN;
    }
    for iy in 1..field.ny - 1 {
        for ix in 1..field.nx - 1 {
            let c = chi_field.get(ix, iy);
            let lap = (chi_field.get(ix + 1, iy) - 2.0 * c + chi_field.get(ix - 1, iy))
                / (hx * hx)
                + (chi_field.get(ix, iy + 1) - 2.0 * c + chi_field.get(ix, iy - 1)) / (hy * hy);
            density.set(ix, iy, lap / (2.0 * std::f64::consts::PI));
        }
    }

    // locus lambda = log+|t|
    let mut locus_field = field.clone();
    for iy in 0..field.ny {
        for ix in 0..field.nx {
            let (x, y) = field.point(ix, iy);
            let idx = iy * field.nx + ix;
            locus_field.values[idx] =
                lambda.values[idx] - log_plus(Complex64::new(x, y).norm());
        }
    }
    let zero_locus = marching_squares(&locus_field, 0.0);
    field.values.clear();
    MeasureGrid { lambda, stderr, chi: chi_field, density, zero_locus }
}

/// Rectangle window in the complex plane.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.x0 && z.re <= self.x1 && z.im >= self.y0 && z.im <= self.y1
    }
}

/// Mean over the batch of `(#roots of Δ in the window)/n` for random
/// length-`n` words driven by `mu`.
pub fn root_mass_in_window(
    n: usize,
    batch: usize,
    window: Window,
    mu: &MuSpec,
    seed: u64,
) -> (f64, Vec<f64>) {
    let masses: Vec<f64> = (0..batch as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(seed, i);
            let w = mu.sample_word(n, &mut rng);
            let delta = match burau::alexander_poly(&w) {
                Ok(d) if !d.is_zero() => d,
                _ => return 0.0,
            };
            let roots = find_roots(&delta, &AberthConfig::default());
            let count: u32 = roots
                .roots
                .iter()
                .filter(|(z, _)| window.contains(*z))
                .map(|(_, m)| *m)
                .sum();
            count as f64 / n as f64
        })
        .collect();
    let mean = masses.iter().sum::<f64>() / masses.len().max(1) as f64;
    (mean, masses)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquidistReport {
    /// Cell-binned empirical root measure, normalized over the window.
    pub root_bins: Vec<f64>,
    /// Cell-binned bifurcation density, normalized over the window.
    pub bif_bins: Vec<f64>,
    /// Total variation distance between the two normalized bin vectors.
    pub tv_distance: f64,
    /// Raw (unnormalized) root mass per word length n in the window.
    pub root_mass: f64,
}

/// Compare the empirical root measure of random length-`n` words against the
/// bifurcation density on a compact window, binned on `nx` by `ny` cells.
pub fn equidistribution_compare(
    n: usize,
    batch: usize,
    window: Window,
    nx: usize,
    ny: usize,
    mu: &MuSpec,
    grid: &MeasureGrid,
    seed: u64,
) -> EquidistReport {
    let mut root_bins = vec![0.0f64; nx * ny];
    let bin_of = |z: Complex64| -> Option<usize> {
        if !window.contains(z) {
            return None;
        }
        let fx = (z.re - window.x0) / (window.x1 - window.x0);
        let fy = (z.im - window.y0) / (window.y1 - window.y0);
        let ix = ((fx * nx as f64) as usize).min(nx - 1);
        let iy = ((fy * ny as f64) as usize).min(ny - 1);
        Some(iy * nx + ix)
    };
    let mut total_roots = 0u64;
    let mut in_window = 0u64;
    let per_word: Vec<Vec<usize>> = (0..batch as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(seed, i);
            let w = mu.sample_word(n, &mut rng);
            let mut bins = Vec::new();
            if let Ok(delta) = burau::alexander_poly(&w) {
                if !delta.is_zero() {
                    let roots = find_roots(&delta, &AberthConfig::default());
                    for (z, m) in &roots.roots {
                        if let Some(b) = bin_of(*z) {
                            for _ in 0..*m {
                                bins.push(b);
                            }
                        }
                    }
                }
            }
            bins
        })
        .collect();
    for bins in &per_word {
        for &b in bins {
            root_bins[b] += 1.0;
            in_window += 1;
        }
        total_roots += n as u64;
    }
    let root_mass = in_window as f64 / total_roots.max(1) as f64;

    // Bin the bifurcation density over the same cells by sampling the grid.
    let mut bif_bins = vec![0.0f64; nx * ny];
    let g = &grid.density;
    for iy in 1..g.ny - 1 {
        for ix in 1..g.nx - 1 {
            let (x, y) = g.point(ix, iy);
            let v = g.get(ix, iy);
            if !v.is_finite() {
                continue;
            }
            if let Some(b) = bin_of(Complex64::new(x, y)) {
                bif_bins[b] += v.max(0.0) * g.cell_width() * g.cell_height();
            }
        }
    }

    let norm = |bins: &mut Vec<f64>| {
        let s: f64 = bins.iter().sum();
        if s > 0.0 {
            for b in bins.iter_mut() {
                *b /= s;
            }
        }
    };
    norm(&mut root_bins);
    norm(&mut bif_bins);
    let tv_distance = 0.5
        * root_bins
            .iter()
            .zip(&bif_bins)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>();
    EquidistReport { root_bins, bif_bins, tv_distance, root_mass }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_examples() {
        assert_eq!(chi(Complex64::new(0.5, 0.0), -0.5), 0.0);
        assert!((chi(Complex64::new(2.0, 0.0), 0.1) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn zero_point_rejected() {
        let mu = MuSpec::uniform_generators();
        let params = McParams { n_walks: 4, walk_length: 16, seed: 1 };
        assert_eq!(
            lyapunov_estimate(Complex64::new(0.0, 0.0), &mu, params).unwrap_err(),
            LyapunovError::ZeroPoint
        );
    }

    #[test]
    fn renormalized_walk_matches_direct_log_norm_for_short_walks() {
        let mu = MuSpec::uniform_generators();
        let t = Complex64::new(-0.6, 0.3);
        for i in 0..20u64 {
            let mut rng = task_rng(5, i);
            let streamed = walk_log_norm(t, &mu, 24, &mut rng, Estimator::FullHorizon);
            // regenerate the same word and compute directly
            let mut rng = task_rng(5, i);
            let w = mu.sample_word(24, &mut rng);
            let m = burau::evaluate_streaming(&w, t).unwrap();
            let norm = m.iter().flatten().map(|z| z.norm()).fold(0.0f64, f64::max);
            assert!((streamed - norm.ln() / 24.0).abs() < 1e-9);
        }
    }

    #[test]
    fn lambda_positive_on_left_arc() {
        let mu = MuSpec::uniform_generators();
        let t = Complex64::from_polar(1.0, std::f64::consts::PI * 0.95);
        let params = McParams { n_walks: 200, walk_length: 200, seed: 42 };
        let est = lyapunov_estimate(t, &mu, params).unwrap();
        assert!(est.lambda_hat > 3.0 * est.stderr, "lambda = {}", est.lambda_hat);
    }

    #[test]
    fn lambda_lower_bound_half_log() {
        // lambda(t) > (1/2) log |t| wherever the walk is non-elementary.
        let mu = MuSpec::uniform_generators();
        let params = McParams { n_walks: 100, walk_length: 160, seed: 7 };
        for &t in &[
            Complex64::new(-0.7, 0.2),
            Complex64::new(0.4, 0.5),
            Complex64::new(1.3, -0.4),
        ] {
            let est = lyapunov_estimate(t, &mu, params).unwrap();
            assert!(
                est.lambda_hat >= 0.5 * t.norm().ln() - 3.0 * est.stderr,
                "bound fails at {t}"
            );
        }
    }

    #[test]
    fn harmonic_patch_has_zero_density() {
        // Replacing chi by Re(t) must produce a vanishing Laplacian.
        let mut field = GridField::sample(-1.0, 1.0, -1.0, 1.0, 16, 16);
        field.fill(|x, _| x);
        let hx = field.cell_width();
        let hy = field.cell_height();
        for iy in 1..field.ny - 1 {
            for ix in 1..field.nx - 1 {
                let c = field.get(ix, iy);
                let lap = (field.get(ix + 1, iy) - 2.0 * c + field.get(ix - 1, iy)) / (hx * hx)
                    + (field.get(ix, iy + 1) - 2.0 * c + field.get(ix, iy - 1)) / (hy * hy);
                assert!(lap.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn omega_family_determinant_profile() {
        // det(B_t(Ω^n) - I) = 1 + (-t)^{3n} for odd n: (1/n) log|…| tends to
        // 3 log+|t| off the unit circle.
        for &(r, expected) in &[(0.5f64, 0.0f64), (1.4, 3.0 * 1.4f64.ln())] {
            let t = Complex64::from_polar(r, 0.9);
            let n = 151usize;
            let v = (Complex64::new(1.0, 0.0) + (-t).powu(3 * n as u32)).norm().ln() / n as f64;
            assert!((v - expected).abs() < 0.05, "r = {r}: {v} vs {expected}");
        }
    }

    #[test]
    fn mu_spec_validation() {
        assert!(MuSpec::new(vec![(BraidWord::sigma(1), 0.5)]).is_err());
        assert!(MuSpec::new(vec![("aA".parse().unwrap(), 1.0)]).is_err());
        let ok = MuSpec::new(vec![
            ("ab".parse().unwrap(), 0.25),
            ("a".parse().unwrap(), 0.75),
        ]);
        assert!(ok.is_ok());
    }
}
