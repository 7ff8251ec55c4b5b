//! The spectral-radius function of Burau matrices: stable evaluation from
//! the trace/determinant pair, discriminant sets, level-set grids with
//! marching-squares contours, real-axis structure, and the sup-norm
//! certificates behind the root-free region.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{nielsen_thurston_type, BraidWord, NTType};
use crate::burau::{self, BurauError};
use crate::laurent::LaurentPoly;
use crate::roots::{find_roots, AberthConfig, RootSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error(transparent)]
    Burau(#[from] BurauError),
    #[error("word has negative letters; spectral radius undefined at t = 0")]
    SingularAtZero,
    #[error("scan applies only to positive words whose closure is a knot")]
    NotApplicable,
}

/// Which branch of the eigenvalue formula applied. On the real axis,
/// `ConjugatePair` means a negative discriminant, where the spectral radius
/// collapses to `|t|^{#w/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EigenBranch {
    TwoReal,
    ConjugatePair,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SpectralSample {
    pub t: Complex64,
    pub rho: f64,
    /// `ln(rho)`; finite even when `rho` itself overflows, `-inf` at
    /// vanishing matrices.
    pub log_rho: f64,
    pub eigen_branch: EigenBranch,
}

/// Streaming product of numeric generator matrices with periodic rescaling;
/// returns the reduced matrix and the accumulated log scale.
fn scaled_word_matrix(
    w: &BraidWord,
    t: Complex64,
) -> Result<([[Complex64; 2]; 2], f64), SpectralError> {
    if t.norm() == 0.0 && !w.is_positive() {
        return Err(SpectralError::SingularAtZero);
    }
    let mut m = [
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ];
    let mut log_scale = 0.0f64;
    for (i, &l) in w.letters().iter().enumerate() {
        m = burau::mat_mul(&m, &burau::generator_at(l, t));
        if i % 16 == 15 {
            let max = m
                .iter()
                .flatten()
                .map(|z| z.norm())
                .fold(0.0f64, f64::max);
            if max == 0.0 {
                return Ok((m, f64::NEG_INFINITY));
            }
            if !(0.25..=4.0).contains(&max) {
                for z in m.iter_mut().flatten() {
                    *z /= max;
                }
                log_scale += max.ln();
            }
        }
    }
    Ok((m, log_scale))
}

/// Spectral radius of `B_t(w)` via the quadratic formula on the trace and
/// the exact determinant `(-t)^{#w}`, both carried in log scale so that
/// words of length ~10³ stay finite.
pub fn spectral_radius(w: &BraidWord, t: Complex64) -> Result<SpectralSample, SpectralError> {
    let (m, log_scale) = scaled_word_matrix(w, t)?;
    if log_scale == f64::NEG_INFINITY {
        return Ok(SpectralSample {
            t,
            rho: 0.0,
            log_rho: f64::NEG_INFINITY,
            eigen_branch: EigenBranch::TwoReal,
        });
    }
    let tr = m[0][0] + m[1][1];
    let e = w.exponent_sum();
    // det = (-t)^{#w}: log magnitude e*ln|t|, argument e*arg(-t).
    let (log_det, det_arg) = if t.norm() == 0.0 {
        (if e == 0 { 0.0 } else { f64::NEG_INFINITY }, 0.0)
    } else {
        (e as f64 * t.norm().ln(), e as f64 * (-t).arg())
    };

    // p = tr(B) = tr * exp(log_scale), q = det. Scale by
    // m0 = max(|p|, 2 sqrt|q|) and apply the quadratic formula to p/m0,
    // q/m0².
    let log_p = if tr.norm() == 0.0 { f64::NEG_INFINITY } else { tr.norm().ln() + log_scale };
    let log_m0 = f64::max(log_p, 2f64.ln() + 0.5 * log_det);
    if log_m0 == f64::NEG_INFINITY {
        // Both trace and determinant vanish: nilpotent, rho = 0.
        return Ok(SpectralSample {
            t,
            rho: 0.0,
            log_rho: f64::NEG_INFINITY,
            eigen_branch: EigenBranch::TwoReal,
        });
    }
    let p_hat = if tr.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        (tr / tr.norm()) * (log_p - log_m0).exp()
    };
    let q_hat = if log_det == f64::NEG_INFINITY {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::from_polar((log_det - 2.0 * log_m0).exp(), det_arg)
    };
    let disc = p_hat * p_hat - 4.0 * q_hat;
    let s = disc.sqrt();
    let l1 = (p_hat + s) / 2.0;
    let l2 = (p_hat - s) / 2.0;
    let lam = l1.norm().max(l2.norm());
    let log_rho = if lam == 0.0 { f64::NEG_INFINITY } else { log_m0 + lam.ln() };
    let branch = if t.im == 0.0 && disc.im.abs() <= 1e-14 * (disc.re.abs() + 1.0) && disc.re <= 0.0
    {
        EigenBranch::ConjugatePair
    } else {
        EigenBranch::TwoReal
    };
    Ok(SpectralSample { t, rho: log_rho.exp(), log_rho, eigen_branch: branch })
}

/// The exact discriminant polynomial `tr(B_t(w))² - 4(-t)^{#w}`.
pub fn discriminant_poly(w: &BraidWord) -> LaurentPoly {
    let p = burau::burau_of_word(w, burau::Variable::T).trace();
    let e = w.exponent_sum();
    let det = LaurentPoly::monomial(if e.rem_euclid(2) == 1 { -4 } else { 4 }, e);
    p.mul(&p).sub(&det)
}

/// Roots of the discriminant, or `Degenerate` when it vanishes identically
/// (equal-eigenvalue branch everywhere).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum DiscriminantSet {
    Degenerate,
    Roots(RootSet),
}

pub fn discriminant_set(w: &BraidWord) -> DiscriminantSet {
    let d = discriminant_poly(w);
    if d.is_zero() {
        DiscriminantSet::Degenerate
    } else {
        DiscriminantSet::Roots(find_roots(&d, &AberthConfig::default()))
    }
}

/// Rectangular scalar field sampled on an `nx` by `ny` grid (row-major,
/// y-major index `iy * nx + ix`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridField {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
}

impl GridField {
    pub fn sample(x0: f64, x1: f64, y0: f64, y1: f64, nx: usize, ny: usize) -> GridField {
        assert!(nx >= 2 && ny >= 2 && x1 > x0 && y1 > y0);
        GridField { x0, x1, y0, y1, nx, ny, values: vec![0.0; nx * ny] }
    }

    pub fn point(&self, ix: usize, iy: usize) -> (f64, f64) {
        (
            self.x0 + (self.x1 - self.x0) * ix as f64 / (self.nx - 1) as f64,
            self.y0 + (self.y1 - self.y0) * iy as f64 / (self.ny - 1) as f64,
        )
    }

    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.nx + ix]
    }

    pub fn set(&mut self, ix: usize, iy: usize, v: f64) {
        self.values[iy * self.nx + ix] = v;
    }

    pub fn cell_width(&self) -> f64 {
        (self.x1 - self.x0) / (self.nx - 1) as f64
    }

    pub fn cell_height(&self) -> f64 {
        (self.y1 - self.y0) / (self.ny - 1) as f64
    }

    /// Fill values from a function of the grid point.
    pub fn fill(&mut self, mut f: impl FnMut(f64, f64) -> f64) {
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                let (x, y) = self.point(ix, iy);
                let v = f(x, y);
                self.set(ix, iy, v);
            }
        }
    }
}

/// Marching squares: extract the level-`iso` contour of the field as chained
/// polylines. Cells containing non-finite samples are skipped.
pub fn marching_squares(field: &GridField, iso: f64) -> Vec<Vec<(f64, f64)>> {
    let mut segments: Vec<((f64, f64), (f64, f64))> = Vec::new();
    let interp = |pa: (f64, f64), va: f64, pb: (f64, f64), vb: f64| -> (f64, f64) {
        let denom = vb - va;
        let s = if denom.abs() < 1e-300 { 0.5 } else { ((iso - va) / denom).clamp(0.0, 1.0) };
        (pa.0 + s * (pb.0 - pa.0), pa.1 + s * (pb.1 - pa.1))
    };
    for iy in 0..field.ny - 1 {
        for ix in 0..field.nx - 1 {
            let v = [
                field.get(ix, iy),
                field.get(ix + 1, iy),
                field.get(ix + 1, iy + 1),
                field.get(ix, iy + 1),
            ];
            if v.iter().any(|x| !x.is_finite()) {
                continue;
            }
            let p = [
                field.point(ix, iy),
                field.point(ix + 1, iy),
                field.point(ix + 1, iy + 1),
                field.point(ix, iy + 1),
            ];
            let mut case = 0usize;
            for (bit, &val) in v.iter().enumerate() {
                if val > iso {
                    case |= 1 << bit;
                }
            }
            if case == 0 || case == 15 {
                continue;
            }
            // Edge k joins corner k and corner (k+1)%4.
            let edge = |k: usize| interp(p[k], v[k], p[(k + 1) % 4], v[(k + 1) % 4]);
            let mut emit = |a: usize, b: usize| segments.push((edge(a), edge(b)));
            match case {
                1 | 14 => emit(3, 0),
                2 | 13 => emit(0, 1),
                4 | 11 => emit(1, 2),
                8 | 7 => emit(2, 3),
                3 | 12 => emit(3, 1),
                6 | 9 => emit(0, 2),
                // Ambiguous saddles: resolve by the cell-center average.
                5 | 10 => {
                    let center = v.iter().sum::<f64>() / 4.0;
                    let flip = (center > iso) == (case == 5);
                    if flip {
                        emit(3, 0);
                        emit(1, 2);
                    } else {
                        emit(0, 1);
                        emit(2, 3);
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    chain_segments(segments, field.cell_width().min(field.cell_height()) * 1e-6)
}

fn chain_segments(
    segments: Vec<((f64, f64), (f64, f64))>,
    tol: f64,
) -> Vec<Vec<(f64, f64)>> {
    use std::collections::HashMap;
    let key = |p: (f64, f64)| -> (i64, i64) {
        ((p.0 / tol).round() as i64, (p.1 / tol).round() as i64)
    };
    let mut adjacency: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, seg) in segments.iter().enumerate() {
        adjacency.entry(key(seg.0)).or_default().push(i);
        adjacency.entry(key(seg.1)).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut polylines = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut line = vec![segments[start].0, segments[start].1];
        // Extend forward from the tail, then backward from the head.
        for _pass in 0..2 {
            loop {
                let tail = *line.last().unwrap();
                let Some(cands) = adjacency.get(&key(tail)) else { break };
                let mut extended = false;
                for &i in cands {
                    if used[i] {
                        continue;
                    }
                    let (a, b) = segments[i];
                    let next = if key(a) == key(tail) {
                        b
                    } else if key(b) == key(tail) {
                        a
                    } else {
                        continue;
                    };
                    used[i] = true;
                    line.push(next);
                    extended = true;
                    break;
                }
                if !extended {
                    break;
                }
            }
            line.reverse();
        }
        polylines.push(line);
    }
    polylines
}

/// Level-1 set data for the spectral radius on a rectangle: the sampled
/// `ln(rho)` field and the zero-level contour.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralLevelSet {
    pub field: GridField,
    pub contours: Vec<Vec<(f64, f64)>>,
}

pub fn grid_r_w(w: &BraidWord, mut field: GridField) -> SpectralLevelSet {
    use rayon::prelude::*;
    let rows: Vec<Vec<f64>> = (0..field.ny)
        .into_par_iter()
        .map(|iy| {
            (0..field.nx)
                .map(|ix| {
                    let (x, y) = field.point(ix, iy);
                    match spectral_radius(w, Complex64::new(x, y)) {
                        Ok(s) => s.log_rho,
                        Err(_) => f64::NAN,
                    }
                })
                .collect()
        })
        .collect();
    field.values = rows.into_iter().flatten().collect();
    let contours = marching_squares(&field, 0.0);
    SpectralLevelSet { field, contours }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealAxisScan {
    /// The unique `rho = 1` crossing in `(-1, 0)` for pseudo-Anosov words.
    pub crossing: Option<f64>,
    /// Sampled strict decrease of `rho` on `[-1, 0]`.
    pub monotone_on_negative: bool,
    /// `rho < 1` sampled on `[0, 1)`.
    pub below_one_on_unit_interval: bool,
}

/// Structure of `rho_w` on the real axis for a positive knot word: locates
/// the `rho = 1` crossing by bisection (pseudo-Anosov case) and verifies the
/// monotonicity claims sample-wise.
pub fn real_axis_scan(w: &BraidWord, n_samples: usize) -> Result<RealAxisScan, SpectralError> {
    if !w.is_positive() || !w.is_knot_closure() {
        return Err(SpectralError::NotApplicable);
    }
    let rho_at = |x: f64| spectral_radius(w, Complex64::new(x, 0.0)).map(|s| s.log_rho);

    let mut monotone = true;
    let mut prev = f64::INFINITY;
    for i in 0..=n_samples {
        let x = -1.0 + i as f64 / n_samples as f64;
        let v = rho_at(x)?;
        if v >= prev + 1e-12 {
            monotone = false;
        }
        prev = v;
    }
    let mut below_one = true;
    for i in 0..n_samples {
        let x = i as f64 / n_samples as f64;
        if rho_at(x)? >= -1e-15 && x > 0.0 {
            below_one = false;
        }
    }

    let crossing = if matches!(nielsen_thurston_type(w), NTType::PseudoAnosov { .. }) {
        let mut lo = -1.0 + 1e-9; // log rho > 0 here
        let mut hi = -1e-9; // log rho < 0 here
        if rho_at(lo)? <= 0.0 {
            None
        } else {
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if rho_at(mid)? > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(0.5 * (lo + hi))
        }
    } else {
        None
    };
    Ok(RealAxisScan {
        crossing,
        monotone_on_negative: monotone,
        below_one_on_unit_interval: below_one,
    })
}

/// Sup-norm certificate data at one point of the `u`-coordinate region
/// `|u + u³| + |u|⁴ < 1 and |u + u³ + u⁵| + |u|⁶ < 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormCertificate {
    pub u: Complex64,
    pub in_region: bool,
    /// `max(‖σ₁²‖, ‖σ₁³‖) = 1` exactly (within float tolerance).
    pub generator_powers_unit: bool,
    /// `‖σ₁^a σ₂^b‖ < 1` for a, b in {2, 3}.
    pub mixed_products_contract: bool,
    /// `‖Ω^k‖ = |u|^{3k} < 1` for k = 1..4.
    pub omega_powers_contract: bool,
    /// Row-norm formulas match the direct matrix computation.
    pub formulas_match: bool,
}

impl NormCertificate {
    pub fn all_pass(&self) -> bool {
        !self.in_region
            || (self.generator_powers_unit
                && self.mixed_products_contract
                && self.omega_powers_contract
                && self.formulas_match)
    }
}

/// Membership in the `u`-coordinate region corresponding to the root-free
/// region under `t = -u²`.
pub fn in_u_region(u: Complex64) -> bool {
    let r = u.norm();
    (u + u.powi(3)).norm() + r.powi(4) < 1.0
        && (u + u.powi(3) + u.powi(5)).norm() + r.powi(6) < 1.0
}

fn mat_norm_inf(m: &[[Complex64; 2]; 2]) -> f64 {
    (m[0][0].norm() + m[0][1].norm()).max(m[1][0].norm() + m[1][1].norm())
}

fn u_generator(g: u8, u: Complex64) -> [[Complex64; 2]; 2] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    if g == 1 {
        [[u * u, u], [zero, one]]
    } else {
        [[one, zero], [-u, u * u]]
    }
}

fn u_word(blocks: &[(u8, usize)], u: Complex64) -> [[Complex64; 2]; 2] {
    let mut m = [
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ];
    for &(g, n) in blocks {
        for _ in 0..n {
            m = burau::mat_mul(&m, &u_generator(g, u));
        }
    }
    m
}

pub fn norm_certificate(u: Complex64) -> NormCertificate {
    let in_region = in_u_region(u);
    let tol = 1e-10;
    let norm1 = |blocks: &[(u8, usize)]| mat_norm_inf(&u_word(blocks, u));

    let s1_2 = norm1(&[(1, 2)]);
    let s1_3 = norm1(&[(1, 3)]);
    let s2_2 = norm1(&[(2, 2)]);
    let generator_powers_unit =
        (s1_2 - 1.0).abs() < tol && (s1_3 - 1.0).abs() < tol && (s2_2 - 1.0).abs() < tol;

    let mut mixed_products_contract = true;
    for a in 2..=3 {
        for b in 2..=3 {
            if norm1(&[(1, a), (2, b)]) >= 1.0 - 1e-12 {
                mixed_products_contract = false;
            }
        }
    }

    let mut omega_powers_contract = true;
    for k in 1..=4u32 {
        let norm = norm1(&[(1, 1), (2, 1), (1, 1)].repeat(k as usize));
        let expected = u.norm().powi(3 * k as i32);
        if (norm - expected).abs() > tol * (1.0 + expected) || expected >= 1.0 {
            omega_powers_contract = false;
        }
    }

    // Closed forms for the row norms on the region.
    let f1 = (u + u.powi(3)).norm() + u.norm().powi(4);
    let f2 = (u + u.powi(3) + u.powi(5)).norm() + u.norm().powi(6);
    let formulas_match = (s1_2 - f1.max(1.0)).abs() < tol
        && (s1_3 - f2.max(1.0)).abs() < tol
        && (norm1(&[(1, 2), (2, 2)]) - f1).abs() < tol
        && (norm1(&[(1, 3), (2, 2)]) - f1).abs() < tol
        && (norm1(&[(1, 2), (2, 3)]) - f2).abs() < tol
        && (norm1(&[(1, 3), (2, 3)]) - f2).abs() < tol;

    NormCertificate {
        u,
        in_region,
        generator_powers_unit,
        mixed_products_contract,
        omega_powers_contract,
        formulas_match,
    }
}

/// Evaluate certificates on a batch of sample points.
pub fn norm_certificates(points: &[Complex64]) -> Vec<NormCertificate> {
    points.iter().map(|&u| norm_certificate(u)).collect()
}
