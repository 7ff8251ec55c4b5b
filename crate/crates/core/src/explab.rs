//! Batch experiment harness: reproducible word samplers and the batched
//! computations behind the CLI commands (root clouds, theorem-backed
//! verification sweeps, right-half-plane coefficient scans).

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::burau::{self, Variable};
use crate::rng::task_rng;
use crate::roots::{
    self, classify, count_circle_roots_exact, find_roots, small_disk_radius, AberthConfig,
};
use crate::spectral::spectral_radius;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExplabError {
    #[error("sampler cannot produce a knot closure with these parameters")]
    KnotSamplingFailed,
    #[error("bad configuration: {0}")]
    BadConfig(String),
}

/// Random word sources.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum WordSampler {
    /// Fixed length, letters uniform over {σ₁, σ₂}.
    UniformPositive { len: usize },
    /// Fixed length, letters uniform over {σ₁, σ₁⁻¹, σ₂, σ₂⁻¹}.
    UniformFourGenerator { len: usize },
    /// Positive letters with length drawn from a truncated normal
    /// (minimum 4).
    LengthDistribution { mean: f64, std: f64 },
}

impl WordSampler {
    pub fn sample(&self, rng: &mut impl Rng) -> BraidWord {
        match self {
            WordSampler::UniformPositive { len } => sample_positive(*len, rng),
            WordSampler::UniformFourGenerator { len } => {
                let letters: Vec<i8> = (0..*len)
                    .map(|_| [1i8, -1, 2, -2][rng.gen_range(0..4)])
                    .collect();
                BraidWord::from_letters(letters)
            }
            WordSampler::LengthDistribution { mean, std } => {
                let normal = Normal::new(*mean, *std).expect("valid normal");
                let len = normal.sample(rng).round().max(4.0) as usize;
                sample_positive(len, rng)
            }
        }
    }

    /// Resample until the closure is a knot. Fixed odd lengths can never
    /// close to a knot, so those fail fast.
    pub fn sample_knot(&self, rng: &mut impl Rng) -> Result<BraidWord, ExplabError> {
        if let WordSampler::UniformPositive { len } | WordSampler::UniformFourGenerator { len } =
            self
        {
            if len % 2 == 1 {
                return Err(ExplabError::KnotSamplingFailed);
            }
        }
        for _ in 0..10_000 {
            let mut w = self.sample(rng);
            if let WordSampler::LengthDistribution { .. } = self {
                // force even length for a chance at a 3-cycle
                if w.len() % 2 == 1 {
                    let extra = if rng.gen::<bool>() { 1 } else { 2 };
                    let mut letters = w.letters().to_vec();
                    letters.push(extra);
                    w = BraidWord::from_letters(letters);
                }
            }
            if w.is_knot_closure() {
                return Ok(w);
            }
        }
        Err(ExplabError::KnotSamplingFailed)
    }
}

fn sample_positive(len: usize, rng: &mut impl Rng) -> BraidWord {
    let letters: Vec<i8> = (0..len).map(|_| if rng.gen::<bool>() { 1 } else { 2 }).collect();
    BraidWord::from_letters(letters)
}

/// Per-word record of a root-cloud batch.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WordSummary {
    pub word_id: usize,
    pub word: String,
    pub length: usize,
    pub delta_degree: u32,
    pub n_roots: u32,
    pub n_on_circle: u32,
    pub circle_fraction: f64,
    /// Exact multiplicity-weighted count on the right arc.
    pub on_arc_right_exact: u64,
    pub two_thirds_bound: u64,
    pub bound_sharp: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootRow {
    pub word_id: usize,
    pub re: f64,
    pub im: f64,
    pub multiplicity: u32,
    pub flags: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootCloudResult {
    pub words: Vec<WordSummary>,
    pub roots: Vec<RootRow>,
    pub mean_circle_fraction: f64,
    /// Fraction of words where the two-thirds bound is attained exactly.
    pub sharp_fraction: f64,
}

/// Roots, region flags, and circle statistics for one knot word.
fn word_cloud_entry(
    word_id: usize,
    w: &BraidWord,
    circle_tol: f64,
) -> Result<(WordSummary, Vec<RootRow>), ExplabError> {
    let delta =
        burau::alexander_poly(w).map_err(|e| ExplabError::BadConfig(e.to_string()))?;
    let rs = find_roots(&delta, &AberthConfig::default());
    let mut rows = Vec::with_capacity(rs.roots.len());
    let mut on_circle = 0u32;
    for &(z, m) in &rs.roots {
        let tag = classify(z, circle_tol);
        if tag.on_circle {
            on_circle += m;
        }
        rows.push(RootRow {
            word_id,
            re: z.re,
            im: z.im,
            multiplicity: m,
            flags: tag.flags_string(),
        });
    }
    let exact =
        count_circle_roots_exact(w).map_err(|e| ExplabError::BadConfig(e.to_string()))?;
    let bound =
        roots::two_thirds_bound(w).map_err(|e| ExplabError::BadConfig(e.to_string()))?;
    let n_roots = rs.total_multiplicity();
    let summary = WordSummary {
        word_id,
        word: w.to_string(),
        length: w.len(),
        delta_degree: delta.degree_span(),
        n_roots,
        n_on_circle: on_circle,
        circle_fraction: on_circle as f64 / n_roots.max(1) as f64,
        on_arc_right_exact: exact.on_arc_right,
        two_thirds_bound: bound,
        bound_sharp: exact.on_arc_right == bound,
    };
    Ok((summary, rows))
}

fn assemble_cloud(
    per_word: Vec<Result<(WordSummary, Vec<RootRow>), ExplabError>>,
) -> Result<RootCloudResult, ExplabError> {
    let mut words = Vec::with_capacity(per_word.len());
    let mut roots_rows = Vec::new();
    for r in per_word {
        let (summary, rows) = r?;
        words.push(summary);
        roots_rows.extend(rows);
    }
    let mean_circle_fraction =
        words.iter().map(|w| w.circle_fraction).sum::<f64>() / words.len().max(1) as f64;
    let sharp_fraction =
        words.iter().filter(|w| w.bound_sharp).count() as f64 / words.len().max(1) as f64;
    Ok(RootCloudResult { words, roots: roots_rows, mean_circle_fraction, sharp_fraction })
}

/// Root cloud over a batch of random positive knot words: per-root rows with
/// region flags, per-word circle statistics, and the exact-arc-count
/// comparison against the parity-refined bound.
pub fn root_cloud(
    n_words: usize,
    sampler: &WordSampler,
    seed: u64,
    circle_tol: f64,
) -> Result<RootCloudResult, ExplabError> {
    let per_word: Vec<Result<(WordSummary, Vec<RootRow>), ExplabError>> = (0..n_words as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(seed, i);
            let w = sampler.sample_knot(&mut rng)?;
            word_cloud_entry(i as usize, &w, circle_tol)
        })
        .collect();
    assemble_cloud(per_word)
}

/// Root cloud over an explicit word list; non-knot closures and generator
/// powers are rejected.
pub fn root_cloud_for_words(
    words: &[BraidWord],
    circle_tol: f64,
) -> Result<RootCloudResult, ExplabError> {
    let per_word: Vec<Result<(WordSummary, Vec<RootRow>), ExplabError>> = words
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            if !w.is_knot_closure() {
                return Err(ExplabError::BadConfig(format!(
                    "word {i} (`{w}`) does not close to a knot"
                )));
            }
            word_cloud_entry(i, w, circle_tol)
        })
        .collect();
    assemble_cloud(per_word)
}

/// One theorem-backed verification sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub violations: usize,
    /// Offending words, capped at a handful for reporting.
    pub offenders: Vec<String>,
}

impl SuiteResult {
    fn from_flags(name: &str, results: Vec<(String, bool)>) -> SuiteResult {
        let cases = results.len();
        let offenders: Vec<String> = results
            .iter()
            .filter(|(_, ok)| !ok)
            .take(5)
            .map(|(w, _)| w.clone())
            .collect();
        let violations = results.iter().filter(|(_, ok)| !ok).count();
        SuiteResult { name: name.to_string(), cases, violations, offenders }
    }

    pub fn ok(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }
}

/// Scaling knobs for the verification sweeps.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Entry/trace definiteness sweep size (random mixed words, length ≤ 200).
    pub definite_cases: usize,
    /// Root-free region sweep size (random positive words).
    pub root_free_cases: usize,
    /// Determinant identity sweep size (random mixed words, length ≤ 100).
    pub det_cases: usize,
    /// Words sampled for the circle-arc membership checks of the
    /// spectral radius.
    pub arc_cases: usize,
    /// Positive knots checked for root symmetry and arc bounds.
    pub bound_cases: usize,
}

impl VerifyConfig {
    pub fn ci(seed: u64) -> VerifyConfig {
        VerifyConfig {
            seed,
            definite_cases: 10_000,
            root_free_cases: 1_000,
            det_cases: 1_000,
            arc_cases: 100,
            bound_cases: 100,
        }
    }
}

fn mixed_word(rng: &mut impl Rng, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<i8> = (0..len).map(|_| [1i8, -1, 2, -2][rng.gen_range(0..4)]).collect();
    BraidWord::from_letters(letters)
}

fn positive_non_power_word(rng: &mut impl Rng, min_len: usize, max_len: usize) -> BraidWord {
    loop {
        let len = rng.gen_range(min_len..=max_len);
        let w = sample_positive(len, rng);
        if !w.is_generator_power() {
            return w;
        }
    }
}

/// Run every theorem-backed sweep; any violation names the offending word.
pub fn verify(cfg: &VerifyConfig) -> VerifyReport {
    let mut suites = Vec::new();

    // Entry definiteness and trace definiteness for arbitrary words.
    let definite: Vec<(String, bool)> = (0..cfg.definite_cases as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(cfg.seed, i);
            let w = mixed_word(&mut rng, 200);
            let m = burau::burau_of_word(&w, Variable::MinusT);
            let entries_ok = m
                .entries
                .iter()
                .flatten()
                .all(|p| p.is_definite().is_definite());
            let trace_ok = m.trace().is_definite().is_definite();
            (w.to_string(), entries_ok && trace_ok)
        })
        .collect();
    suites.push(SuiteResult::from_flags("entry-and-trace-definiteness", definite));

    // det B_t(w) = (-t)^{#w} exactly.
    let det: Vec<(String, bool)> = (0..cfg.det_cases as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(cfg.seed.wrapping_add(0x11), i);
            let w = mixed_word(&mut rng, 100);
            (w.to_string(), burau::det_check(&w))
        })
        .collect();
    suites.push(SuiteResult::from_flags("determinant-identity", det));

    // Root-free region and small-disk avoidance for positive words.
    let guard = 1e-6;
    let root_free: Vec<(String, bool)> = (0..cfg.root_free_cases as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(cfg.seed.wrapping_add(0x22), i);
            let w = positive_non_power_word(&mut rng, 4, 120);
            let delta = match burau::alexander_poly(&w) {
                Ok(d) if !d.is_zero() => d,
                _ => return (w.to_string(), true),
            };
            let rs = find_roots(&delta, &AberthConfig::default());
            let ok = rs.roots.iter().all(|(z, _)| {
                let tag = classify(*z, guard);
                let in_t_interior = tag.in_region_t && !tag.near_t_boundary;
                let in_disk = z.norm() < small_disk_radius() - guard;
                !in_t_interior && !in_disk
            });
            (w.to_string(), ok)
        })
        .collect();
    suites.push(SuiteResult::from_flags("root-free-region", root_free));

    // rho = 1 on the right arc; roots in the closed disk sit on rho = 1.
    let arc: Vec<(String, bool)> = (0..cfg.arc_cases as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(cfg.seed.wrapping_add(0x33), i);
            let w = mixed_word(&mut rng, 60);
            let mut ok = true;
            for k in 0..16 {
                let theta = -2.05 + 4.1 * k as f64 / 15.0;
                let t = Complex64::from_polar(1.0, theta);
                match spectral_radius(&w, t) {
                    Ok(s) => {
                        if s.log_rho.abs() > 1e-8 {
                            ok = false;
                        }
                    }
                    Err(_) => ok = false,
                }
            }
            (w.to_string(), ok)
        })
        .collect();
    suites.push(SuiteResult::from_flags("unit-on-right-arc", arc));

    // Root symmetry z -> 1/z and roots landing on the rho = 1 set.
    let sym: Vec<(String, bool)> = (0..cfg.bound_cases as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(cfg.seed.wrapping_add(0x44), i);
            let w = positive_non_power_word(&mut rng, 6, 60);
            let delta = match burau::alexander_poly(&w) {
                Ok(d) if !d.is_zero() => d,
                _ => return (w.to_string(), true),
            };
            let rs = find_roots(&delta, &AberthConfig::default());
            let mut ok = true;
            for (z, _) in &rs.roots {
                if (z.norm() - 1.0).abs() >= 1e-6 {
                    // partner within 1e-6 of 1/z must exist
                    let inv = 1.0 / z;
                    let best = rs
                        .roots
                        .iter()
                        .map(|(y, _)| (y - inv).norm())
                        .fold(f64::INFINITY, f64::min);
                    if best > 1e-6 {
                        ok = false;
                    }
                }
                if z.norm() <= 1.0 + 1e-9 {
                    match spectral_radius(&w, *z) {
                        Ok(s) => {
                            if (s.rho - 1.0).abs() > 1e-6 {
                                ok = false;
                            }
                        }
                        Err(_) => ok = false,
                    }
                }
            }
            (w.to_string(), ok)
        })
        .collect();
    suites.push(SuiteResult::from_flags("root-symmetry-and-level-set", sym));

    // Arc lower bounds and the parity-refined two-thirds bound against
    // exact Sturm counts, for positive knots.
    let bounds: Vec<(String, bool)> = (0..cfg.bound_cases as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(cfg.seed.wrapping_add(0x55), i);
            let w = loop {
                let c = positive_non_power_word(&mut rng, 6, 80);
                if c.is_knot_closure() {
                    break c;
                }
            };
            let Ok(exact) = count_circle_roots_exact(&w) else {
                return (w.to_string(), false);
            };
            let Ok(bound) = roots::two_thirds_bound(&w) else {
                return (w.to_string(), false);
            };
            let mut ok = bound <= exact.on_arc_right;
            if let Ok(full_arc) =
                roots::arc_lower_bound(&w, 0.0, 2.0 * std::f64::consts::PI / 3.0)
            {
                // Upper-half count is half of the multiplicity-weighted
                // right-arc count for knots (no roots at t = 1).
                ok &= full_arc <= exact.on_arc_right / 2;
            }
            (w.to_string(), ok)
        })
        .collect();
    suites.push(SuiteResult::from_flags("arc-lower-bounds", bounds));

    // No real roots in (0, 1) for positive knot closures.
    let conway: Vec<(String, bool)> = (0..cfg.bound_cases as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(cfg.seed.wrapping_add(0x66), i);
            let w = loop {
                let c = positive_non_power_word(&mut rng, 6, 80);
                if c.is_knot_closure() {
                    break c;
                }
            };
            let delta = match burau::alexander_poly(&w) {
                Ok(d) if !d.is_zero() => d,
                _ => return (w.to_string(), true),
            };
            let rs = find_roots(&delta, &AberthConfig::default());
            let ok = rs.roots.iter().all(|(z, _)| {
                !(z.im.abs() < 1e-7 && z.re > 1e-6 && z.re < 1.0 - 1e-6)
            });
            (w.to_string(), ok)
        })
        .collect();
    suites.push(SuiteResult::from_flags("no-unit-interval-roots", conway));

    VerifyReport { suites }
}

/// One row of the right-half-plane coefficient scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RhScanRow {
    pub word: String,
    pub half_length: usize,
    pub min_coefficient: String,
    pub all_positive: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RhScanResult {
    pub rows: Vec<RhScanRow>,
    pub nonpositive_count: usize,
}

/// Scan random positive knot words for nonpositive coefficients of the
/// half-plane polynomial `h`; findings are reported, never asserted.
pub fn rh_scan(n_words: usize, max_len: usize, seed: u64) -> RhScanResult {
    let rows: Vec<RhScanRow> = (0..n_words as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(seed, i);
            let w = loop {
                let len = 2 * rng.gen_range(3..=(max_len / 2).max(3));
                let c = sample_positive(len, &mut rng);
                if c.is_knot_closure() && !c.is_generator_power() {
                    break c;
                }
            };
            let rh = roots::rh_polynomials(&w).expect("positive knot");
            let min = rh.b.iter().min().cloned().unwrap_or_default();
            RhScanRow {
                word: w.to_string(),
                half_length: w.len() / 2,
                all_positive: !min.is_negative() && !min.is_zero(),
                min_coefficient: min.to_string(),
            }
        })
        .collect();
    let nonpositive_count = rows.iter().filter(|r| !r.all_positive).count();
    RhScanResult { rows, nonpositive_count }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samplers_are_deterministic() {
        let s = WordSampler::LengthDistribution { mean: 40.0, std: 10.0 };
        let a = s.sample(&mut task_rng(5, 0));
        let b = s.sample(&mut task_rng(5, 0));
        assert_eq!(a, b);
        let c = s.sample(&mut task_rng(5, 1));
        assert_ne!(a, c);
    }

    #[test]
    fn positive_sampler_emits_positive_words() {
        let s = WordSampler::UniformPositive { len: 10 };
        let w = s.sample(&mut task_rng(1, 0));
        assert_eq!(w.len(), 10);
        assert!(w.is_positive());
    }

    #[test]
    fn four_generator_sampler_uses_inverses() {
        let s = WordSampler::UniformFourGenerator { len: 200 };
        let w = s.sample(&mut task_rng(1, 0));
        assert!(w.letters().iter().any(|&l| l < 0));
    }

    #[test]
    fn knot_sampler_produces_knots() {
        let s = WordSampler::LengthDistribution { mean: 30.0, std: 8.0 };
        for i in 0..20 {
            let w = s.sample_knot(&mut task_rng(2, i)).unwrap();
            assert!(w.is_knot_closure());
        }
        let odd = WordSampler::UniformPositive { len: 9 };
        assert!(odd.sample_knot(&mut task_rng(2, 0)).is_err());
    }

    #[test]
    fn small_verify_sweep_is_clean() {
        let cfg = VerifyConfig {
            seed: 31,
            definite_cases: 150,
            root_free_cases: 40,
            det_cases: 100,
            arc_cases: 10,
            bound_cases: 12,
        };
        let report = verify(&cfg);
        for suite in &report.suites {
            assert_eq!(
                suite.violations, 0,
                "suite {} failed on {:?}",
                suite.name, suite.offenders
            );
        }
    }

    #[test]
    fn small_root_cloud_statistics() {
        let sampler = WordSampler::LengthDistribution { mean: 60.0, std: 15.0 };
        let rc = root_cloud(12, &sampler, 17, 1e-6).unwrap();
        assert_eq!(rc.words.len(), 12);
        for w in &rc.words {
            assert!(w.circle_fraction > 0.5, "very low circle mass for {}", w.word);
            assert!(w.two_thirds_bound <= w.on_arc_right_exact);
        }
        assert!(rc.mean_circle_fraction > 0.6);
    }

    #[test]
    fn rh_scan_reports_positive_coefficients() {
        let scan = rh_scan(15, 40, 23);
        assert_eq!(scan.rows.len(), 15);
        assert_eq!(scan.nonpositive_count, 0);
    }
}
