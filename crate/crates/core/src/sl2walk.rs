//! PSL(2,Z) as the free product Z/2 * Z/3, the Rademacher quasimorphism on
//! reduced words, the signature estimator it induces for braid closures, and
//! the drift / hitting-measure / central-limit experiments for the uniform
//! random walk pushed forward from positive braids.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::laurent::Int;
use crate::rng::task_rng;

/// Letters of reduced words: `a` has order 2, `b` has order 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Syllable {
    A,
    B,
    BInv,
}

/// Reduced word in `a`, `b`, `b⁻¹`: no `aa`, `bb`, `b⁻¹b⁻¹`, `bb⁻¹`, or
/// `b⁻¹b` substrings (powers reduce via `a² = 1`, `b² = b⁻¹`, `b³ = 1`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Psl2Word {
    syllables: Vec<Syllable>,
}

impl Psl2Word {
    pub fn identity() -> Psl2Word {
        Psl2Word::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Append one syllable, reducing at the seam.
    pub fn push(&mut self, s: Syllable) {
        match (self.syllables.last().copied(), s) {
            (Some(Syllable::A), Syllable::A) => {
                self.syllables.pop();
            }
            (Some(Syllable::B), Syllable::B) => {
                *self.syllables.last_mut().unwrap() = Syllable::BInv;
            }
            (Some(Syllable::BInv), Syllable::BInv) => {
                *self.syllables.last_mut().unwrap() = Syllable::B;
            }
            (Some(Syllable::B), Syllable::BInv) | (Some(Syllable::BInv), Syllable::B) => {
                self.syllables.pop();
            }
            _ => self.syllables.push(s),
        }
    }

    /// Concatenate and reduce.
    pub fn mul(&self, other: &Psl2Word) -> Psl2Word {
        let mut out = self.clone();
        for &s in &other.syllables {
            out.push(s);
        }
        out
    }

    /// Append the image of one braid generator (`σ₁ ↦ ba`, `σ₂ ↦ ab`).
    pub fn push_braid_letter(&mut self, letter: i8) {
        match letter {
            1 => {
                self.push(Syllable::B);
                self.push(Syllable::A);
            }
            2 => {
                self.push(Syllable::A);
                self.push(Syllable::B);
            }
            -1 => {
                self.push(Syllable::A);
                self.push(Syllable::BInv);
            }
            -2 => {
                self.push(Syllable::BInv);
                self.push(Syllable::A);
            }
            _ => unreachable!("invalid letter"),
        }
    }

    /// Rademacher function: occurrences of `b` minus occurrences of `b⁻¹`
    /// in the reduced word.
    pub fn rademacher(&self) -> i64 {
        let mut r = 0i64;
        for s in &self.syllables {
            match s {
                Syllable::B => r += 1,
                Syllable::BInv => r -= 1,
                Syllable::A => {}
            }
        }
        r
    }

    /// Rebuild the 2x2 integer matrix (defined up to sign in PSL) from
    /// `a ↦ [[0,1],[-1,0]]`, `b ↦ [[1,-1],[1,0]]`.
    pub fn to_matrix(&self) -> [[Int; 2]; 2] {
        let mut m = [[Int::ONE, Int::ZERO], [Int::ZERO, Int::ONE]];
        for s in &self.syllables {
            let g: [[i64; 2]; 2] = match s {
                Syllable::A => [[0, 1], [-1, 0]],
                Syllable::B => [[1, -1], [1, 0]],
                Syllable::BInv => [[0, 1], [-1, 1]],
            };
            let mut out = [[Int::ZERO, Int::ZERO], [Int::ZERO, Int::ZERO]];
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = &(&m[i][0] * &Int::from(g[0][j])) + &(&m[i][1] * &Int::from(g[1][j]));
                }
            }
            m = out;
        }
        m
    }
}

/// Image of a braid word under `B_{-1}` read in PSL(2,Z).
pub fn braid_image(w: &BraidWord) -> Psl2Word {
    let mut out = Psl2Word::identity();
    for &l in w.letters() {
        out.push_braid_letter(l);
    }
    out
}

pub fn psl2_mul(x: &Psl2Word, y: &Psl2Word) -> Psl2Word {
    x.mul(y)
}

pub fn rademacher(g: &Psl2Word) -> i64 {
    g.rademacher()
}

/// Signature estimate `-(1/3) R(image(w)) - (2/3) #w`; the Murasugi
/// signature of the closure lies within ±7/3 of this value.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SignatureEstimate {
    pub estimate: f64,
    pub error_bound: f64,
}

pub fn signature_estimate(w: &BraidWord) -> SignatureEstimate {
    let r = braid_image(w).rademacher();
    SignatureEstimate {
        estimate: -(r as f64) / 3.0 - 2.0 * w.exponent_sum() as f64 / 3.0,
        error_bound: 7.0 / 3.0,
    }
}

/// Exact drift of the Rademacher function along the uniform walk,
/// `(7 - 3 sqrt 5)/4`.
pub fn exact_drift() -> f64 {
    (7.0 - 3.0 * 5.0f64.sqrt()) / 4.0
}

/// Limit of `|signature|/n` for the uniform walk, `(5 - sqrt 5)/4`.
pub fn signature_drift() -> f64 {
    (5.0 - 5.0f64.sqrt()) / 4.0
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WalkStats {
    pub n_steps: usize,
    /// Mean of `R(w_n)/n`.
    pub mean: f64,
    /// Empirical variance of `R(w_n)/sqrt(n)`.
    pub variance_normalized: f64,
    pub batch: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DriftResult {
    pub stats: WalkStats,
    /// Rademacher value of each sample walk, in task order.
    pub per_sample: Vec<i64>,
}

/// One uniform-walk sample of length `n_steps`; returns the final reduced
/// word.
fn sample_walk(word: &mut Psl2Word, n_steps: usize, rng: &mut impl Rng) {
    word.syllables.clear();
    for _ in 0..n_steps {
        if rng.gen::<bool>() {
            word.push_braid_letter(1);
        } else {
            word.push_braid_letter(2);
        }
    }
}

/// Monte Carlo estimate of the Rademacher drift along the uniform walk on
/// `{σ₁, σ₂}` images.
pub fn drift_experiment(n_steps: usize, n_samples: usize, seed: u64) -> DriftResult {
    assert!(n_steps >= 1 && n_samples >= 1);
    let per_sample: Vec<i64> = (0..n_samples as u64)
        .into_par_iter()
        .map_init(Psl2Word::identity, |word, i| {
            let mut rng = task_rng(seed, i);
            sample_walk(word, n_steps, &mut rng);
            word.rademacher()
        })
        .collect();
    let n = n_steps as f64;
    let mean = per_sample.iter().map(|&r| r as f64 / n).sum::<f64>() / n_samples as f64;
    let mean_r = mean * n;
    let variance_normalized = per_sample
        .iter()
        .map(|&r| {
            let d = r as f64 - mean_r;
            d * d / n
        })
        .sum::<f64>()
        / (n_samples.saturating_sub(1).max(1)) as f64;
    DriftResult {
        stats: WalkStats { n_steps, mean, variance_normalized, batch: n_samples },
        per_sample,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HittingResult {
    pub p_a: f64,
    pub p_b: f64,
    pub p_b_inv: f64,
    /// Samples that produced a nonempty reduced word.
    pub n_used: usize,
    /// Identity words, plus prefix flips when confirmation is on.
    pub n_discarded: usize,
}

/// Empirical first-syllable distribution of `w_n`; with `confirm` set, a
/// sample is kept only when the first syllable is constant over the second
/// half of the trajectory.
pub fn hitting_measure_experiment(
    n_steps: usize,
    n_samples: usize,
    seed: u64,
    confirm: bool,
) -> HittingResult {
    assert!(n_steps >= 2);
    let firsts: Vec<Option<Syllable>> = (0..n_samples as u64)
        .into_par_iter()
        .map_init(Psl2Word::identity, |word, i| {
            let mut rng = task_rng(seed, i);
            word.syllables.clear();
            let mut stable: Option<Syllable> = None;
            let mut flipped = false;
            for step in 0..n_steps {
                if rng.gen::<bool>() {
                    word.push_braid_letter(1);
                } else {
                    word.push_braid_letter(2);
                }
                if confirm && step >= n_steps / 2 {
                    let cur = word.syllables.first().copied();
                    match (stable, cur) {
                        (None, c) => stable = c,
                        (Some(s), Some(c)) if s == c => {}
                        _ => flipped = true,
                    }
                }
            }
            if confirm && flipped {
                return None;
            }
            word.syllables.first().copied()
        })
        .collect();
    let mut counts = [0usize; 3];
    let mut discarded = 0usize;
    for f in &firsts {
        match f {
            Some(Syllable::A) => counts[0] += 1,
            Some(Syllable::B) => counts[1] += 1,
            Some(Syllable::BInv) => counts[2] += 1,
            None => discarded += 1,
        }
    }
    let used = n_samples - discarded;
    let denom = used.max(1) as f64;
    HittingResult {
        p_a: counts[0] as f64 / denom,
        p_b: counts[1] as f64 / denom,
        p_b_inv: counts[2] as f64 / denom,
        n_used: used,
        n_discarded: discarded,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CltRow {
    pub n_steps: usize,
    /// Mean of `|signature estimate| / n` over the group.
    pub mean_abs_normalized: f64,
    pub std_dev: f64,
    pub count: usize,
    /// The per-sample normalized values, for histogramming.
    pub values: Vec<f64>,
}

/// Normalized signature statistics per walk length; `knots_only` restricts
/// to samples whose closure is a knot (resampling within the same stream).
pub fn clt_experiment(
    lengths: &[usize],
    samples_per_length: usize,
    seed: u64,
    knots_only: bool,
) -> Vec<CltRow> {
    lengths
        .iter()
        .enumerate()
        .map(|(li, &n)| {
            let values: Vec<f64> = (0..samples_per_length as u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = task_rng(seed, (li as u64) << 32 | i);
                    let mut word = Psl2Word::identity();
                    loop {
                        word.syllables.clear();
                        let mut perm = [0u8, 1, 2];
                        for _ in 0..n {
                            let letter = if rng.gen::<bool>() { 1i8 } else { 2 };
                            word.push_braid_letter(letter);
                            let idx = (letter - 1) as usize;
                            for p in perm.iter_mut() {
                                if *p == idx as u8 {
                                    *p += 1;
                                } else if *p == idx as u8 + 1 {
                                    *p -= 1;
                                }
                            }
                        }
                        if knots_only {
                            // three-cycle check: no fixed point
                            let knot = perm[0] != 0 && perm[1] != 1 && perm[2] != 2;
                            if !knot {
                                continue;
                            }
                        }
                        let r = word.rademacher();
                        let est = -(r as f64) / 3.0 - 2.0 * n as f64 / 3.0;
                        return est.abs() / n as f64;
                    }
                })
                .collect();
            let count = values.len();
            let mean = values.iter().sum::<f64>() / count as f64;
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                / (count.saturating_sub(1).max(1)) as f64;
            CltRow {
                n_steps: n,
                mean_abs_normalized: mean,
                std_dev: var.sqrt(),
                count,
                values,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::burau;

    fn word(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn z2_z3_relations() {
        let mut w = Psl2Word::identity();
        w.push(Syllable::A);
        w.push(Syllable::A);
        assert!(w.is_identity());
        let mut w = Psl2Word::identity();
        w.push(Syllable::B);
        w.push(Syllable::B);
        assert_eq!(w.syllables(), &[Syllable::BInv]);
        w.push(Syllable::B);
        assert!(w.is_identity());
    }

    #[test]
    fn braid_generator_images() {
        assert_eq!(
            braid_image(&word("a")).syllables(),
            &[Syllable::B, Syllable::A]
        );
        assert_eq!(
            braid_image(&word("b")).syllables(),
            &[Syllable::A, Syllable::B]
        );
        // inverses compose to the identity
        assert!(braid_image(&word("aA")).is_identity());
        assert!(braid_image(&word("bB")).is_identity());
    }

    #[test]
    fn omega_powers_in_kernel() {
        // Ω ↦ a, so Ω⁴ ↦ identity (the kernel of the mod-±I Burau map).
        let omega = braid_image(&BraidWord::omega());
        assert_eq!(omega.syllables(), &[Syllable::A]);
        assert!(braid_image(&BraidWord::omega().repeat(4)).is_identity());
    }

    #[test]
    fn rademacher_values() {
        // (ab)^n has R = n
        for n in 1..8 {
            let w = braid_image(&BraidWord::sigma(2).repeat(n));
            assert_eq!(w.rademacher(), n as i64);
        }
        // (σ₁σ₂σ₁)^n ↦ a^n has R = 0
        for n in 1..8 {
            let w = braid_image(&BraidWord::omega().repeat(n));
            assert_eq!(w.rademacher(), 0);
        }
    }

    #[test]
    fn quasimorphism_defect_bounded_by_three() {
        let mut rng = task_rng(7, 0);
        for _ in 0..2000 {
            let mut x = Psl2Word::identity();
            let mut y = Psl2Word::identity();
            for _ in 0..20 {
                x.push_braid_letter(if rng.gen::<bool>() { 1 } else { 2 });
                y.push_braid_letter(if rng.gen::<bool>() { 1 } else { 2 });
            }
            let d = x.mul(&y).rademacher() - x.rademacher() - y.rademacher();
            assert!(
                d == 0 || d == 3 || d == -3,
                "defect {d} outside {{-3, 0, 3}}"
            );
        }
    }

    #[test]
    fn image_matches_burau_mod_sign() {
        let mut rng = task_rng(11, 0);
        for _ in 0..200 {
            let letters: Vec<i8> = (0..12)
                .map(|_| *[1i8, 2, -1, -2].get(rng.gen_range(0..4)).unwrap())
                .collect();
            let w = BraidWord::from_letters(letters);
            let from_psl = braid_image(&w).to_matrix();
            let direct = crate::braid::burau_minus_one(&w);
            let same = from_psl == direct;
            let neg = (0..2).all(|i| (0..2).all(|j| from_psl[i][j] == -direct[i][j].clone()));
            assert!(same || neg, "images differ beyond sign for {w}");
        }
    }

    #[test]
    fn signature_estimate_of_generator_powers() {
        // σ₂^n: R = n, estimate = -n/3 - 2n/3 = -n
        for n in 1..10 {
            let est = signature_estimate(&BraidWord::sigma(2).repeat(n));
            assert!((est.estimate + n as f64).abs() < 1e-12);
        }
        let est = signature_estimate(&BraidWord::identity());
        assert_eq!(est.estimate, 0.0);
        assert!((est.error_bound - 7.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn drift_experiment_deterministic_across_thread_counts() {
        let a = drift_experiment(200, 64, 99);
        let b = drift_experiment(200, 64, 99);
        assert_eq!(a.per_sample, b.per_sample);
        assert!(a.stats.variance_normalized > 0.0);
    }

    #[test]
    fn swapping_generators_preserves_rademacher() {
        // conj_a invariance: the swapped word has the same Rademacher value.
        let mut rng = task_rng(3, 1);
        for _ in 0..200 {
            let letters: Vec<i8> = (0..30).map(|_| if rng.gen::<bool>() { 1 } else { 2 }).collect();
            let w = BraidWord::from_letters(letters);
            assert_eq!(
                braid_image(&w).rademacher(),
                braid_image(&w.swapped()).rademacher()
            );
        }
    }
}
