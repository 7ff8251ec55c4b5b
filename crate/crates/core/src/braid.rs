//! Words in the 3-strand braid group: combinatorial invariants, left-greedy
//! canonical forms built on the Garside element `Ω = σ₁σ₂σ₁`, cycling and
//! decycling, summit normalization of positive braids, and Nielsen-Thurston
//! classification through the integer Burau matrix at `t = -1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::Int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("operation requires a nonempty factor list")]
    EmptyFactors,
    #[error("operation requires a positive braid word")]
    NotPositive,
    #[error("summit iteration exceeded its termination bound (internal error)")]
    IterationBound,
    #[error("cannot parse braid word: {0}")]
    Parse(String),
}

/// Word in the generators of the 3-strand braid group. Letters are `+1`,
/// `+2` for σ₁, σ₂ and `-1`, `-2` for their inverses; the empty word is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    letters: Vec<i8>,
}

impl BraidWord {
    pub fn identity() -> BraidWord {
        BraidWord { letters: Vec::new() }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = i8>) -> BraidWord {
        let letters: Vec<i8> = letters.into_iter().collect();
        assert!(
            letters.iter().all(|&l| matches!(l, 1 | 2 | -1 | -2)),
            "letters must be ±1 or ±2"
        );
        BraidWord { letters }
    }

    /// σ_i
    pub fn sigma(i: u8) -> BraidWord {
        assert!(i == 1 || i == 2);
        BraidWord { letters: vec![i as i8] }
    }

    /// Ω = σ₁σ₂σ₁
    pub fn omega() -> BraidWord {
        BraidWord { letters: vec![1, 2, 1] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    /// True for σ₁^n or σ₂^n with n ≥ 0 (the words whose Alexander
    /// polynomial degenerates).
    pub fn is_generator_power(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] == w[1]) && self.is_positive()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn repeat(&self, n: usize) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord { letters }
    }

    /// Swap σ₁ ↔ σ₂ in every letter (conjugation by Ω).
    pub fn swapped(&self) -> BraidWord {
        BraidWord {
            letters: self
                .letters
                .iter()
                .map(|&l| l.signum() * (3 - l.abs()))
                .collect(),
        }
    }

    /// Exponent sum `#w`: the image under the homomorphism sending every
    /// generator to 1.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Image in `Sym_3`, acting left-to-right; `perm[i]` is where strand `i`
    /// ends up.
    pub fn permutation(&self) -> [u8; 3] {
        let mut perm = [0u8, 1, 2];
        for &l in &self.letters {
            let i = (l.abs() - 1) as usize;
            for p in perm.iter_mut() {
                if *p == i as u8 {
                    *p += 1;
                } else if *p == i as u8 + 1 {
                    *p -= 1;
                }
            }
        }
        perm
    }

    /// Number of components of the braid closure: cycles of the induced
    /// permutation. 1 means the closure is a knot.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = [false; 3];
        let mut cycles = 0;
        for start in 0..3 {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = perm[cur] as usize;
            }
        }
        cycles
    }

    pub fn is_knot_closure(&self) -> bool {
        self.closure_components() == 1
    }
}

impl fmt::Display for BraidWord {
    /// Text form over `{a, b, A, B}` with `a = σ₁`, `b = σ₂`, `A = σ₁⁻¹`,
    /// `B = σ₂⁻¹`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            let c = match l {
                1 => 'a',
                2 => 'b',
                -1 => 'A',
                -2 => 'B',
                _ => unreachable!(),
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.trim().chars() {
            let l = match c {
                'a' => 1,
                'b' => 2,
                'A' => -1,
                'B' => -2,
                c if c.is_whitespace() => continue,
                _ => return Err(BraidError::Parse(format!("unexpected character `{c}`"))),
            };
            letters.push(l);
        }
        Ok(BraidWord { letters })
    }
}

/// Proper simple factors in the left-greedy form: σ₁, σ₂, σ₁σ₂, σ₂σ₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factor {
    S1,
    S2,
    S12,
    S21,
}

impl Factor {
    pub fn starts_with(self) -> u8 {
        match self {
            Factor::S1 | Factor::S12 => 1,
            Factor::S2 | Factor::S21 => 2,
        }
    }

    pub fn ends_with(self) -> u8 {
        match self {
            Factor::S1 | Factor::S21 => 1,
            Factor::S2 | Factor::S12 => 2,
        }
    }

    pub fn letters(self) -> &'static [i8] {
        match self {
            Factor::S1 => &[1],
            Factor::S2 => &[2],
            Factor::S12 => &[1, 2],
            Factor::S21 => &[2, 1],
        }
    }

    /// Conjugation by Ω: swap σ₁ ↔ σ₂.
    pub fn tau(self) -> Factor {
        match self {
            Factor::S1 => Factor::S2,
            Factor::S2 => Factor::S1,
            Factor::S12 => Factor::S21,
            Factor::S21 => Factor::S12,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Factor::S1 => "s1",
            Factor::S2 => "s2",
            Factor::S12 => "s12",
            Factor::S21 => "s21",
        }
    }
}

/// Left-greedy canonical form `Ω^k w₁ w₂ ⋯ w_n`: consecutive factors are
/// constrained so that each `w_{i+1}` starts with the generator that `w_i`
/// ends with. Two canonical forms represent the same braid iff they are
/// equal fieldwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub omega_power: i64,
    pub factors: Vec<Factor>,
}

impl CanonicalForm {
    pub fn identity() -> CanonicalForm {
        CanonicalForm { omega_power: 0, factors: Vec::new() }
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Exponent sum of the represented braid.
    pub fn exponent_sum(&self) -> i64 {
        3 * self.omega_power
            + self
                .factors
                .iter()
                .map(|f| f.letters().len() as i64)
                .sum::<i64>()
    }

    /// Every adjacent pair obeys the transition rule.
    pub fn transitions_valid(&self) -> bool {
        self.factors
            .windows(2)
            .all(|w| w[1].starts_with() == w[0].ends_with())
    }

    /// Multiply on the right by the generator σ_g, keeping canonical form.
    fn push_positive(&mut self, g: u8) {
        debug_assert!(g == 1 || g == 2);
        match self.factors.last().copied() {
            None => self.factors.push(if g == 1 { Factor::S1 } else { Factor::S2 }),
            Some(last) => {
                let merged = match (last, g) {
                    (Factor::S1, 2) => Some(Factor::S12),
                    (Factor::S2, 1) => Some(Factor::S21),
                    _ => None,
                };
                if let Some(m) = merged {
                    *self.factors.last_mut().unwrap() = m;
                } else if last.ends_with() == g {
                    // e.g. σ₁ then σ₁, or σ₂σ₁ then σ₁: start a new factor
                    self.factors.push(if g == 1 { Factor::S1 } else { Factor::S2 });
                } else {
                    // last is σ_g σ_b and we append σ_g: the factor closes to Ω,
                    // which commutes to the front while swapping the prefix.
                    debug_assert!(matches!(
                        (last, g),
                        (Factor::S12, 1) | (Factor::S21, 2)
                    ));
                    self.factors.pop();
                    self.apply_tau();
                    self.omega_power += 1;
                }
            }
        }
    }

    /// Multiply on the right by σ_g⁻¹ using `σ_g⁻¹ = Ω⁻¹ (Ω σ_g⁻¹)`, where
    /// `Ω σ₁⁻¹ = σ₁σ₂` and `Ω σ₂⁻¹ = σ₂σ₁` are positive.
    fn push_negative(&mut self, g: u8) {
        self.omega_power -= 1;
        self.apply_tau();
        if g == 1 {
            self.push_positive(1);
            self.push_positive(2);
        } else {
            self.push_positive(2);
            self.push_positive(1);
        }
    }

    fn apply_tau(&mut self) {
        for f in self.factors.iter_mut() {
            *f = f.tau();
        }
    }

    /// Conjugate by Ω (swaps σ₁ and σ₂ in all factors, k unchanged).
    pub fn conjugate_by_omega(&self) -> CanonicalForm {
        CanonicalForm {
            omega_power: self.omega_power,
            factors: self.factors.iter().map(|f| f.tau()).collect(),
        }
    }

    /// Expand back to a braid word: Ω^k followed by the factor letters.
    pub fn expand(&self) -> BraidWord {
        let mut letters = Vec::new();
        if self.omega_power >= 0 {
            for _ in 0..self.omega_power {
                letters.extend_from_slice(&[1, 2, 1]);
            }
        } else {
            for _ in 0..(-self.omega_power) {
                letters.extend_from_slice(&[-1, -2, -1]);
            }
        }
        for f in &self.factors {
            letters.extend_from_slice(f.letters());
        }
        BraidWord { letters }
    }

    /// The braid word spelled by the factors only (no Ω part).
    fn factor_word(&self) -> BraidWord {
        let mut letters = Vec::new();
        for f in &self.factors {
            letters.extend_from_slice(f.letters());
        }
        BraidWord { letters }
    }
}

impl fmt::Display for CanonicalForm {
    /// Serialization `k=<int>;factors=<comma-list of s1|s2|s12|s21>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={};factors=", self.omega_power)?;
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", fac.name())?;
        }
        Ok(())
    }
}

impl FromStr for CanonicalForm {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BraidError::Parse(format!("bad canonical form `{s}`"));
        let rest = s.strip_prefix("k=").ok_or_else(bad)?;
        let (k, facs) = rest.split_once(";factors=").ok_or_else(bad)?;
        let omega_power: i64 = k.parse().map_err(|_| bad())?;
        let mut factors = Vec::new();
        if !facs.is_empty() {
            for name in facs.split(',') {
                factors.push(match name {
                    "s1" => Factor::S1,
                    "s2" => Factor::S2,
                    "s12" => Factor::S12,
                    "s21" => Factor::S21,
                    _ => return Err(bad()),
                });
            }
        }
        let cf = CanonicalForm { omega_power, factors };
        if !cf.transitions_valid() {
            return Err(bad());
        }
        Ok(cf)
    }
}

/// Left-greedy canonical form of a braid word, built by right-multiplying an
/// accumulator one generator at a time. Negative letters are allowed and can
/// drive `k` below zero.
pub fn left_greedy_normal_form(w: &BraidWord) -> CanonicalForm {
    let mut cf = CanonicalForm::identity();
    for &l in w.letters() {
        if l > 0 {
            cf.push_positive(l as u8);
        } else {
            cf.push_negative((-l) as u8);
        }
    }
    debug_assert!(cf.transitions_valid());
    cf
}

/// Cycling: conjugate `Ω^k w₁ ⋯ w_n` to `Ω^k (Ω^{-k} w_n Ω^k) w₁ ⋯ w_{n-1}`
/// and renormalize.
pub fn cycle(cf: &CanonicalForm) -> Result<CanonicalForm, BraidError> {
    let n = cf.factors.len();
    if n == 0 {
        return Err(BraidError::EmptyFactors);
    }
    let moved = if cf.omega_power.rem_euclid(2) == 1 {
        cf.factors[n - 1].tau()
    } else {
        cf.factors[n - 1]
    };
    let mut letters: Vec<i8> = moved.letters().to_vec();
    for f in &cf.factors[..n - 1] {
        letters.extend_from_slice(f.letters());
    }
    let inner = left_greedy_normal_form(&BraidWord { letters });
    Ok(CanonicalForm {
        omega_power: cf.omega_power + inner.omega_power,
        factors: inner.factors,
    })
}

/// Decycling: conjugate to `Ω^k w₂ ⋯ w_n (Ω^k w₁ Ω^{-k})` and renormalize.
pub fn decycle(cf: &CanonicalForm) -> Result<CanonicalForm, BraidError> {
    let n = cf.factors.len();
    if n == 0 {
        return Err(BraidError::EmptyFactors);
    }
    let moved = if cf.omega_power.rem_euclid(2) == 1 {
        cf.factors[0].tau()
    } else {
        cf.factors[0]
    };
    let mut letters: Vec<i8> = Vec::new();
    for f in &cf.factors[1..] {
        letters.extend_from_slice(f.letters());
    }
    letters.extend_from_slice(moved.letters());
    let inner = left_greedy_normal_form(&BraidWord { letters });
    Ok(CanonicalForm {
        omega_power: cf.omega_power + inner.omega_power,
        factors: inner.factors,
    })
}

/// `a` is cooler than `b` when it has larger `k`, or equal `k` and fewer
/// factors.
fn cooler(a: &CanonicalForm, b: &CanonicalForm) -> bool {
    a.omega_power > b.omega_power
        || (a.omega_power == b.omega_power && a.factors.len() < b.factors.len())
}

/// Repeated cycling/decycling, accepting only strictly cooler forms, until
/// neither improves. Deterministic order: cycle first, then decycle.
pub fn summit_form(cf: &CanonicalForm) -> Result<CanonicalForm, BraidError> {
    let mut cur = cf.clone();
    // Strictly cooler steps visit distinct (k, n) pairs with
    // n ≤ #w - 3k, so this square bound dominates the chain length.
    let slack = (cf.exponent_sum() - 3 * cf.omega_power).unsigned_abs() as usize;
    let max_iters = (slack + 2) * (slack + 2) + 16;
    for _ in 0..max_iters {
        if cur.factors.is_empty() {
            return Ok(cur);
        }
        let c = cycle(&cur)?;
        if cooler(&c, &cur) {
            cur = c;
            continue;
        }
        let d = decycle(&cur)?;
        if cooler(&d, &cur) {
            cur = d;
            continue;
        }
        return Ok(cur);
    }
    Err(BraidError::IterationBound)
}

/// Conjugacy representative shapes for positive braids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SummitShape {
    /// `Ω^k σ₁^a`, `k ≥ 0`, `a ≥ 0`.
    GeneratorPower { omega_power: i64, exponent: u64 },
    /// `Ω^k σ₁σ₂`, `k ≥ 0`.
    HalfTwistPair { omega_power: i64 },
    /// `Ω^k σ₁^{a₁} σ₂^{a₂} ⋯ σ₁^{a_{ℓ-1}} σ₂^{a_ℓ}` with ℓ even and all
    /// `a_i ≥ 2`.
    AlternatingEven { omega_power: i64, exponents: Vec<u64> },
    /// `Ω^k σ₁^{a₁} σ₂^{a₂} ⋯ σ₂^{a_{ℓ-1}} σ₁^{a_ℓ}` with k odd, ℓ ≥ 3 odd,
    /// and all `a_i ≥ 2`.
    AlternatingOdd { omega_power: i64, exponents: Vec<u64> },
}

impl SummitShape {
    /// Reconstruct the representative as a braid word.
    pub fn to_word(&self) -> BraidWord {
        let (k, blocks): (i64, Vec<(u8, u64)>) = match self {
            SummitShape::GeneratorPower { omega_power, exponent } => {
                (*omega_power, vec![(1, *exponent)])
            }
            SummitShape::HalfTwistPair { omega_power } => {
                (*omega_power, vec![(1, 1), (2, 1)])
            }
            SummitShape::AlternatingEven { omega_power, exponents }
            | SummitShape::AlternatingOdd { omega_power, exponents } => (
                *omega_power,
                exponents
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| (if i % 2 == 0 { 1 } else { 2 }, a))
                    .collect(),
            ),
        };
        let mut letters = Vec::new();
        for _ in 0..k {
            letters.extend_from_slice(&[1, 2, 1]);
        }
        for (g, a) in blocks {
            for _ in 0..a {
                letters.push(g as i8);
            }
        }
        BraidWord { letters }
    }
}

/// Split a positive letter sequence into alternating runs `(generator, len)`.
fn runs(letters: &[i8]) -> Vec<(u8, u64)> {
    let mut out: Vec<(u8, u64)> = Vec::new();
    for &l in letters {
        let g = l as u8;
        match out.last_mut() {
            Some((lg, n)) if *lg == g => *n += 1,
            _ => out.push((g, 1)),
        }
    }
    out
}

/// Conjugate a positive braid into one of the four summit shapes by cycling
/// and decycling to a summit form, then moving whole generator runs around
/// the word (through `Ω^k` when `k` is odd).
pub fn summit_normalize(w: &BraidWord) -> Result<SummitShape, BraidError> {
    if !w.is_positive() {
        return Err(BraidError::NotPositive);
    }
    let cf = left_greedy_normal_form(w);
    debug_assert!(cf.omega_power >= 0, "positive words have k >= 0");
    let mut s = summit_form(&cf)?;
    let k = s.omega_power;

    match s.factors.len() {
        0 => return Ok(SummitShape::GeneratorPower { omega_power: k, exponent: 0 }),
        1 => {
            let f = s.factors[0];
            return Ok(match f {
                Factor::S1 | Factor::S2 => {
                    SummitShape::GeneratorPower { omega_power: k, exponent: 1 }
                }
                Factor::S12 | Factor::S21 => SummitShape::HalfTwistPair { omega_power: k },
            });
        }
        _ => {}
    }

    // Pure power of one generator?
    if s.factors.iter().all(|f| matches!(f, Factor::S1))
        || s.factors.iter().all(|f| matches!(f, Factor::S2))
    {
        return Ok(SummitShape::GeneratorPower {
            omega_power: k,
            exponent: s.factors.len() as u64,
        });
    }

    // Arrange for the factor word to end with σ₁.
    if s.factors.last().unwrap().ends_with() == 2 {
        s = s.conjugate_by_omega();
    }
    let letters = s.factor_word().letters().to_vec();
    let r = runs(&letters);

    if k % 2 == 0 {
        // Move the trailing σ₁ run to the front (Ω^k is central for even k).
        debug_assert_eq!(r.first().map(|x| x.0), Some(1), "summit form starts with σ₁");
        let (tail_gen, tail_len) = *r.last().unwrap();
        debug_assert_eq!(tail_gen, 1);
        let mut exps: Vec<u64> = Vec::new();
        exps.push(r[0].1 + tail_len);
        for &(_, n) in &r[1..r.len() - 1] {
            exps.push(n);
        }
        if exps.len() == 1 {
            return Ok(SummitShape::GeneratorPower { omega_power: k, exponent: exps[0] });
        }
        debug_assert!(exps.len() % 2 == 0 && exps.iter().all(|&a| a >= 2));
        Ok(SummitShape::AlternatingEven { omega_power: k, exponents: exps })
    } else {
        // k odd: pull the leading σ₂ run through Ω^k (becoming σ₁'s) and
        // append it at the end.
        debug_assert_eq!(r.first().map(|x| x.0), Some(2), "summit form starts with σ₂");
        let head_len = r[0].1;
        let mut exps: Vec<u64> = r[1..].iter().map(|&(_, n)| n).collect();
        if exps.is_empty() {
            return Ok(SummitShape::GeneratorPower { omega_power: k, exponent: head_len });
        }
        *exps.last_mut().unwrap() += head_len;
        if exps.len() == 1 {
            return Ok(SummitShape::GeneratorPower { omega_power: k, exponent: exps[0] });
        }
        debug_assert!(exps.len() % 2 == 1 && exps.len() >= 3);
        debug_assert!(exps.iter().all(|&a| a >= 2));
        Ok(SummitShape::AlternatingOdd { omega_power: k, exponents: exps })
    }
}

/// Nielsen-Thurston class of the mapping class induced by a braid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum NTType {
    Periodic,
    Reducible,
    /// `stretch > 1` is the dilatation, the spectral radius of the integer
    /// Burau matrix at `t = -1`.
    PseudoAnosov { stretch: f64 },
}

/// Integer Burau matrix at `t = -1` (an element of SL(2,Z)).
pub fn burau_minus_one(w: &BraidWord) -> [[Int; 2]; 2] {
    // B_{-1}(σ₁) = [[1,1],[0,1]], B_{-1}(σ₂) = [[1,0],[-1,1]]; inverses
    // flip the off-diagonal sign.
    let mut m = [
        [Int::ONE, Int::ZERO],
        [Int::ZERO, Int::ONE],
    ];
    for &l in w.letters() {
        let (a, b, c, d) = (m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone());
        m = match l {
            // right-multiply by [[1,1],[0,1]]
            1 => [[a.clone(), &a + &b], [c.clone(), &c + &d]],
            // right-multiply by [[1,-1],[0,1]]
            -1 => [[a.clone(), &b - &a], [c.clone(), &d - &c]],
            // right-multiply by [[1,0],[-1,1]]
            2 => [[&a - &b, b], [&c - &d, d]],
            // right-multiply by [[1,0],[1,1]]
            -2 => [[&a + &b, b], [&c + &d, d]],
            _ => unreachable!(),
        };
    }
    m
}

/// Classify via the trace of `B_{-1}(w)`: |tr| ≤ 1 or ±I is periodic,
/// tr = ±2 without ±I is reducible, |tr| > 2 is pseudo-Anosov with stretch
/// `(|tr| + sqrt(tr² - 4))/2`.
pub fn nielsen_thurston_type(w: &BraidWord) -> NTType {
    let m = burau_minus_one(w);
    let tr = &m[0][0] + &m[1][1];
    let abs_tr = tr.abs();
    if abs_tr <= Int::ONE {
        return NTType::Periodic;
    }
    if abs_tr == Int::from(2) {
        let s = Int::from(tr.signum() as i64);
        let is_pm_identity = m[0][1].is_zero()
            && m[1][0].is_zero()
            && m[0][0] == s
            && m[1][1] == s;
        return if is_pm_identity { NTType::Periodic } else { NTType::Reducible };
    }
    // Stable for huge traces: |tr|/2 * (1 + sqrt(1 - 4/tr^2)).
    let t = abs_tr.to_f64();
    let stretch = if t > 1e100 {
        t
    } else {
        0.5 * t * (1.0 + (1.0 - 4.0 / (t * t)).sqrt())
    };
    NTType::PseudoAnosov { stretch }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(word("abA").exponent_sum(), 1);
        assert_eq!(BraidWord::identity().exponent_sum(), 0);
        assert_eq!(word("aaabbb").exponent_sum(), 6);
    }

    #[test]
    fn closure_component_examples() {
        assert_eq!(word("ab").closure_components(), 1);
        assert_eq!(word("aaa").closure_components(), 2);
        assert_eq!(BraidWord::identity().closure_components(), 3);
    }

    #[test]
    fn omega_normal_form() {
        // σ₁σ₂σ₁ = Ω
        let cf = left_greedy_normal_form(&word("aba"));
        assert_eq!(cf, CanonicalForm { omega_power: 1, factors: vec![] });
        // σ₂σ₁σ₂ = Ω as well
        let cf = left_greedy_normal_form(&word("bab"));
        assert_eq!(cf.omega_power, 1);
        assert!(cf.factors.is_empty());
        // single generator
        let cf = left_greedy_normal_form(&word("a"));
        assert_eq!(cf, CanonicalForm { omega_power: 0, factors: vec![Factor::S1] });
    }

    #[test]
    fn negative_letters_lower_omega_power() {
        let cf = left_greedy_normal_form(&word("A"));
        assert_eq!(cf.omega_power, -1);
        assert_eq!(cf.factors, vec![Factor::S12]);
        // w w^{-1} = identity
        let w = word("abAbba");
        let cf = left_greedy_normal_form(&w.concat(&w.inverse()));
        assert_eq!(cf, CanonicalForm::identity());
    }

    #[test]
    fn display_round_trip() {
        let cf = left_greedy_normal_form(&word("aabba"));
        let s = cf.to_string();
        let back: CanonicalForm = s.parse().unwrap();
        assert_eq!(back, cf);
    }

    #[test]
    fn cycle_fixed_point_on_single_factor() {
        let cf = CanonicalForm { omega_power: 0, factors: vec![Factor::S1] };
        assert_eq!(cycle(&cf).unwrap(), cf);
        assert_eq!(decycle(&cf).unwrap(), cf);
        assert_eq!(
            cycle(&CanonicalForm::identity()),
            Err(BraidError::EmptyFactors)
        );
    }

    #[test]
    fn summit_of_generator_power_is_itself() {
        let cf = left_greedy_normal_form(&word("aaaa"));
        let s = summit_form(&cf).unwrap();
        assert_eq!(s, cf);
        match summit_normalize(&word("aaaa")).unwrap() {
            SummitShape::GeneratorPower { omega_power: 0, exponent: 4 } => {}
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn summit_normalize_rejects_negative_words() {
        assert_eq!(summit_normalize(&word("aA")), Err(BraidError::NotPositive));
    }

    #[test]
    fn summit_normalize_half_twist_pair() {
        match summit_normalize(&word("ab")).unwrap() {
            SummitShape::HalfTwistPair { omega_power: 0 } => {}
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn summit_normalize_alternating() {
        match summit_normalize(&word("aabbaabb")).unwrap() {
            SummitShape::AlternatingEven { omega_power, exponents } => {
                assert_eq!(omega_power, 0);
                assert_eq!(exponents, vec![2, 2, 2, 2]);
            }
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn nielsen_thurston_examples() {
        assert_eq!(nielsen_thurston_type(&word("ab")), NTType::Periodic);
        assert_eq!(nielsen_thurston_type(&word("aa")), NTType::Reducible);
        match nielsen_thurston_type(&word("aB")) {
            NTType::PseudoAnosov { stretch } => {
                let expected = (3.0 + 5f64.sqrt()) / 2.0;
                assert!((stretch - expected).abs() < 1e-12);
            }
            other => panic!("expected pseudo-Anosov, got {other:?}"),
        }
        // Ω^{2j} is periodic (±I)
        for j in 1..4 {
            let w = BraidWord::omega().repeat(2 * j);
            assert_eq!(nielsen_thurston_type(&w), NTType::Periodic);
        }
    }

    #[test]
    fn permutation_convention() {
        // Left-to-right: (12) then (23) sends strand 0 to 2.
        assert_eq!(word("ab").permutation(), [2, 0, 1]);
    }
}
