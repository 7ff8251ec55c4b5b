//! The reduced Burau representation of the 3-strand braid group over exact
//! Laurent polynomials, in both the `t` and `-t` variable conventions, with
//! the Alexander polynomial, determinant identity, sign-pattern prediction
//! from canonical forms, and complex-point evaluation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{
    left_greedy_normal_form, summit_form, BraidError, BraidWord, CanonicalForm, Factor,
};
use crate::laurent::{Definiteness, Int, LaurentError, LaurentPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BurauError {
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("word has negative letters, so entries have a pole at t = 0")]
    SingularAtZero,
    #[error("operation applies only to positive words that are not a power of one generator")]
    NotApplicable,
}

/// Which variable the entries are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variable {
    /// Entries of `B_t(w)`.
    T,
    /// Entries of `B_{-t}(w)`, i.e. `B` evaluated at the negated variable.
    MinusT,
}

/// 2x2 matrix of Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurauMatrix {
    pub entries: [[LaurentPoly; 2]; 2],
    pub convention: Variable,
}

impl BurauMatrix {
    pub fn identity(convention: Variable) -> BurauMatrix {
        BurauMatrix {
            entries: [
                [LaurentPoly::one(), LaurentPoly::zero()],
                [LaurentPoly::zero(), LaurentPoly::one()],
            ],
            convention,
        }
    }

    fn generator(letter: i8, convention: Variable) -> BurauMatrix {
        // B_t(σ₁) = [[-t, 1], [0, 1]]      B_t(σ₁⁻¹) = [[-1/t, 1/t], [0, 1]]
        // B_t(σ₂) = [[1, 0], [t, -t]]      B_t(σ₂⁻¹) = [[1, 0], [1, -1/t]]
        // The MinusT convention substitutes t -> -t.
        let t = |c: i64, e: i64| match convention {
            Variable::T => LaurentPoly::monomial(c, e),
            Variable::MinusT => LaurentPoly::monomial(if e % 2 != 0 { -c } else { c }, e),
        };
        let one = LaurentPoly::one;
        let zero = LaurentPoly::zero;
        let entries = match letter {
            1 => [[t(-1, 1), one()], [zero(), one()]],
            -1 => [[t(-1, -1), t(1, -1)], [zero(), one()]],
            2 => [[one(), zero()], [t(1, 1), t(-1, 1)]],
            -2 => [[one(), zero()], [one(), t(-1, -1)]],
            _ => unreachable!("invalid letter"),
        };
        BurauMatrix { entries, convention }
    }

    pub fn mul(&self, other: &BurauMatrix) -> BurauMatrix {
        debug_assert_eq!(self.convention, other.convention);
        let mut entries = [
            [LaurentPoly::zero(), LaurentPoly::zero()],
            [LaurentPoly::zero(), LaurentPoly::zero()],
        ];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = self.entries[i][0].mul(&other.entries[0][j]);
                acc = acc.add(&self.entries[i][1].mul(&other.entries[1][j]));
                entries[i][j] = acc;
            }
        }
        BurauMatrix { entries, convention: self.convention }
    }

    pub fn det(&self) -> LaurentPoly {
        self.entries[0][0]
            .mul(&self.entries[1][1])
            .sub(&self.entries[0][1].mul(&self.entries[1][0]))
    }

    pub fn trace(&self) -> LaurentPoly {
        self.entries[0][0].add(&self.entries[1][1])
    }

    /// `det(M - I)` without forming intermediate matrices:
    /// `det(M) - tr(M) + 1`.
    pub fn det_minus_identity(&self) -> LaurentPoly {
        self.det()
            .sub(&self.trace())
            .add(&LaurentPoly::one())
    }

    pub fn sub_identity(&self) -> BurauMatrix {
        let mut m = self.clone();
        m.entries[0][0] = m.entries[0][0].sub(&LaurentPoly::one());
        m.entries[1][1] = m.entries[1][1].sub(&LaurentPoly::one());
        m
    }

    pub fn eval(&self, t: Complex64) -> [[Complex64; 2]; 2] {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = self.entries[i][j].eval_complex(t);
            }
        }
        out
    }
}

/// Product of generator matrices in word order.
pub fn burau_of_word(w: &BraidWord, convention: Variable) -> BurauMatrix {
    let mut m = BurauMatrix::identity(convention);
    for &l in w.letters() {
        m = m.mul(&BurauMatrix::generator(l, convention));
    }
    m
}

/// Check `det(B_t(w)) = (-t)^{#w}` exactly.
pub fn det_check(w: &BraidWord) -> bool {
    let e = w.exponent_sum();
    let expected = LaurentPoly::monomial(if e.rem_euclid(2) == 1 { -1 } else { 1 }, e);
    burau_of_word(w, Variable::T).det() == expected
}

/// Alexander polynomial of the braid closure:
/// `det(B_t(w) - I) / (t² + t + 1)`, normalized so the lowest exponent is 0
/// and the constant term is positive. Identically-zero determinants (powers
/// of one generator) give the zero polynomial.
pub fn alexander_poly(w: &BraidWord) -> Result<LaurentPoly, BurauError> {
    let num = burau_of_word(w, Variable::T).det_minus_identity();
    if num.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let cyclotomic = LaurentPoly::new(0, vec![Int::ONE, Int::ONE, Int::ONE]);
    let delta = num.exact_div(&cyclotomic)?;
    Ok(normalize_alexander(delta))
}

/// Strip `t`-powers and force a positive constant term.
pub fn normalize_alexander(delta: LaurentPoly) -> LaurentPoly {
    if delta.is_zero() {
        return delta;
    }
    let shifted = delta.mul_t_pow(-delta.min_exp());
    if shifted.coeff(0).is_negative() {
        shifted.neg()
    } else {
        shifted
    }
}

/// Degree and monicity of the Alexander polynomial of a positive non-power
/// word (`deg = #w - 2`, monic). The polynomial is only defined up to units
/// `±t^n`, so monic means a leading coefficient of `±1` under our
/// positive-constant-term normalization.
pub fn degree_and_monic_check(w: &BraidWord) -> Result<(u32, bool), BurauError> {
    if !w.is_positive() || w.is_generator_power() {
        return Err(BurauError::NotApplicable);
    }
    let delta = alexander_poly(w)?;
    let monic = delta.leading_coeff().abs().is_one();
    Ok((delta.degree_span(), monic))
}

/// Sign pattern over `{+1, -1}`; a zero entry in the actual matrix is
/// treated as compatible with either sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignMatrix {
    pub signs: [[i8; 2]; 2],
}

impl SignMatrix {
    /// All entries of `m` are definite and each nonzero entry matches the
    /// predicted sign.
    pub fn matches(&self, m: &BurauMatrix) -> bool {
        for i in 0..2 {
            for j in 0..2 {
                match m.entries[i][j].is_definite() {
                    Definiteness::Zero => {}
                    Definiteness::Positive => {
                        if self.signs[i][j] != 1 {
                            return false;
                        }
                    }
                    Definiteness::Negative => {
                        if self.signs[i][j] != -1 {
                            return false;
                        }
                    }
                    Definiteness::Indefinite => return false,
                }
            }
        }
        true
    }
}

/// Predicted sign pattern of `B_{-t}(w)` from the canonical form: with `w₁`
/// starting with σ_i, `w_n` ending with σ_j, `e` and `f` counting σ₁σ₂ and
/// σ₂σ₁ factors, the pattern is
/// `[[0,1],[-1,0]]^k · [[(-1)^e, (-1)^{e+j+1}], [(-1)^{f+j+1}, (-1)^f]]`.
pub fn predict_sign_matrix(cf: &CanonicalForm) -> Result<SignMatrix, BurauError> {
    if cf.factors.is_empty() {
        return Err(BraidError::EmptyFactors.into());
    }
    // The starting generator of w₁ enters only through f ≡ e + i + j (mod 2),
    // so e, f, j, k determine the pattern.
    let j = cf.factors.last().unwrap().ends_with() as i32;
    let e = cf.factors.iter().filter(|f| matches!(f, Factor::S12)).count() as i32;
    let f = cf.factors.iter().filter(|f| matches!(f, Factor::S21)).count() as i32;
    let pow = |x: i32| if x.rem_euclid(2) == 0 { 1i8 } else { -1i8 };
    let mut signs = [
        [pow(e), pow(e + j + 1)],
        [pow(f + j + 1), pow(f)],
    ];
    // Left-multiply by [[0,1],[-1,0]] k times (mod 4).
    for _ in 0..cf.omega_power.rem_euclid(4) {
        signs = [
            [signs[1][0], signs[1][1]],
            [-signs[0][0], -signs[0][1]],
        ];
    }
    Ok(SignMatrix { signs })
}

/// Definiteness report for `B_{-t}(w)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DefinitenessAudit {
    pub entries_definite: bool,
    pub trace_definite: bool,
    /// A conjugate word whose `B_{-t}` entries are all definite of one sign,
    /// when the summit form has at least two factors.
    pub same_sign_conjugate: Option<BraidWord>,
}

/// Check entry/trace definiteness exactly and, when possible, produce a
/// conjugate with all entries of the same sign.
pub fn definiteness_audit(w: &BraidWord) -> DefinitenessAudit {
    let m = burau_of_word(w, Variable::MinusT);
    let entries_definite = m
        .entries
        .iter()
        .flatten()
        .all(|p| p.is_definite().is_definite());
    let trace_definite = m.trace().is_definite().is_definite();
    let same_sign_conjugate = same_sign_conjugate(w);
    DefinitenessAudit { entries_definite, trace_definite, same_sign_conjugate }
}

fn same_sign_conjugate(w: &BraidWord) -> Option<BraidWord> {
    let cf = left_greedy_normal_form(w);
    let mut s = summit_form(&cf).ok()?;
    if s.factors.len() < 2 {
        return None;
    }
    // Arrange for the factor word to end with σ₁; the sign formula then
    // forces all four entries into one sign class.
    if s.factors.last().unwrap().ends_with() == 2 {
        s = s.conjugate_by_omega();
    }
    let candidate = s.expand();
    let m = burau_of_word(&candidate, Variable::MinusT);
    let mut sign = 0i8;
    for p in m.entries.iter().flatten() {
        match p.is_definite() {
            Definiteness::Zero => {}
            Definiteness::Positive => {
                if sign == -1 {
                    return None;
                }
                sign = 1;
            }
            Definiteness::Negative => {
                if sign == 1 {
                    return None;
                }
                sign = -1;
            }
            Definiteness::Indefinite => return None,
        }
    }
    Some(candidate)
}

/// Numeric 2x2 generator matrix at a complex point.
pub fn generator_at(letter: i8, t: Complex64) -> [[Complex64; 2]; 2] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match letter {
        1 => [[-t, one], [zero, one]],
        -1 => [[-1.0 / t, 1.0 / t], [zero, one]],
        2 => [[one, zero], [t, -t]],
        -2 => [[one, zero], [one, -1.0 / t]],
        _ => unreachable!("invalid letter"),
    }
}

pub fn mat_mul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Streaming numeric evaluation: multiply generator matrices directly at `t`
/// without forming exact polynomial entries.
pub fn evaluate_streaming(
    w: &BraidWord,
    t: Complex64,
) -> Result<[[Complex64; 2]; 2], BurauError> {
    if t.norm() == 0.0 && !w.is_positive() {
        return Err(BurauError::SingularAtZero);
    }
    let mut m = [
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ];
    for &l in w.letters() {
        m = mat_mul(&m, &generator_at(l, t));
    }
    Ok(m)
}

/// Evaluate via exact entries then Horner substitution.
pub fn evaluate_exact_then_substitute(
    w: &BraidWord,
    t: Complex64,
) -> Result<[[Complex64; 2]; 2], BurauError> {
    if t.norm() == 0.0 && !w.is_positive() {
        return Err(BurauError::SingularAtZero);
    }
    Ok(burau_of_word(w, Variable::T).eval(t))
}

/// Length threshold above which [`evaluate`] switches from exact-then-
/// substitute to streaming products.
pub const STREAMING_THRESHOLD: usize = 256;

/// Numeric `B_t(w)`; picks the evaluation strategy by word length.
pub fn evaluate(w: &BraidWord, t: Complex64) -> Result<[[Complex64; 2]; 2], BurauError> {
    if w.len() > STREAMING_THRESHOLD {
        evaluate_streaming(w, t)
    } else {
        evaluate_exact_then_substitute(w, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        terms.iter().fold(LaurentPoly::zero(), |acc, &(c, e)| {
            acc.add(&LaurentPoly::monomial(c, e))
        })
    }

    #[test]
    fn generator_matrices() {
        let m = burau_of_word(&word("a"), Variable::T);
        assert_eq!(m.entries[0][0], poly(&[(-1, 1)]));
        assert_eq!(m.entries[0][1], LaurentPoly::one());
        assert_eq!(m.entries[1][0], LaurentPoly::zero());
        assert_eq!(m.entries[1][1], LaurentPoly::one());
    }

    #[test]
    fn minus_t_examples() {
        // B_{-t}(σ₁²σ₂) = [[-t, t + t²], [-t, t]]
        let m = burau_of_word(&word("aab"), Variable::MinusT);
        assert_eq!(m.entries[0][0], poly(&[(-1, 1)]));
        assert_eq!(m.entries[0][1], poly(&[(1, 1), (1, 2)]));
        assert_eq!(m.entries[1][0], poly(&[(-1, 1)]));
        assert_eq!(m.entries[1][1], poly(&[(1, 1)]));
        // B_{-t}(Ω) = [[0, t], [-t², 0]]
        let m = burau_of_word(&BraidWord::omega(), Variable::MinusT);
        assert_eq!(m.entries[0][0], LaurentPoly::zero());
        assert_eq!(m.entries[0][1], poly(&[(1, 1)]));
        assert_eq!(m.entries[1][0], poly(&[(-1, 2)]));
        assert_eq!(m.entries[1][1], LaurentPoly::zero());
    }

    #[test]
    fn det_identity_small() {
        for s in ["ab", "A", "", "aabBAb", "bbbaA"] {
            assert!(det_check(&word(s)), "det identity failed for `{s}`");
        }
        let m = burau_of_word(&word("ab"), Variable::T);
        assert_eq!(m.det(), poly(&[(1, 2)]));
    }

    #[test]
    fn alexander_trefoil() {
        let delta = alexander_poly(&word("abab")).unwrap();
        assert_eq!(delta, poly(&[(1, 0), (-1, 1), (1, 2)]));
    }

    #[test]
    fn alexander_of_generator_powers_vanishes() {
        for n in 1..6 {
            let w = BraidWord::sigma(1).repeat(n);
            assert!(alexander_poly(&w).unwrap().is_zero());
        }
    }

    #[test]
    fn alexander_density_family() {
        // σ₁σ₂σ₁σ₂^n has det(B_t - I) = (1+t+t²)(1 - (-t)^{n+2})/(1+t);
        // for odd n this is the (1 + t^{n+2})/(1 + t) form.
        for n in 1..12i64 {
            let w = word("aba").concat(&BraidWord::sigma(2).repeat(n as usize));
            let delta = alexander_poly(&w).unwrap();
            let numerator = if n % 2 == 1 {
                poly(&[(1, 0), (1, n + 2)])
            } else {
                poly(&[(1, 0), (-1, n + 2)])
            };
            let expected =
                normalize_alexander(numerator.exact_div(&poly(&[(1, 0), (1, 1)])).unwrap());
            assert_eq!(delta, expected, "n = {n}");
        }
    }

    #[test]
    fn degree_and_monic() {
        assert_eq!(degree_and_monic_check(&word("abab")).unwrap(), (2, true));
        assert_eq!(degree_and_monic_check(&word("aabbb")).unwrap(), (3, true));
        assert_eq!(
            degree_and_monic_check(&word("aaaa")),
            Err(BurauError::NotApplicable)
        );
    }

    #[test]
    fn sign_prediction_examples() {
        // σ₁: all-plus pattern; the zero entry is a wildcard.
        let cf = left_greedy_normal_form(&word("a"));
        let p = predict_sign_matrix(&cf).unwrap();
        assert_eq!(p.signs, [[1, 1], [1, 1]]);
        assert!(p.matches(&burau_of_word(&word("a"), Variable::MinusT)));
        // σ₁²σ₂ has pattern [[-,+],[-,+]].
        let cf = left_greedy_normal_form(&word("aab"));
        let p = predict_sign_matrix(&cf).unwrap();
        assert_eq!(p.signs, [[-1, 1], [-1, 1]]);
        assert!(p.matches(&burau_of_word(&word("aab"), Variable::MinusT)));
        // k -> k + 4 leaves the prediction unchanged.
        let w4 = BraidWord::omega().repeat(4).concat(&word("aab"));
        let cf4 = left_greedy_normal_form(&w4);
        assert_eq!(cf4.omega_power, 4);
        assert_eq!(predict_sign_matrix(&cf4).unwrap(), p);
        // Ωσ₁: rotated pattern against [[0, t], [-t³, -t²]].
        let cf = left_greedy_normal_form(&word("abaa"));
        let p = predict_sign_matrix(&cf).unwrap();
        assert!(p.matches(&burau_of_word(&word("abaa"), Variable::MinusT)));
    }

    #[test]
    fn audit_small_example() {
        let audit = definiteness_audit(&word("aab"));
        assert!(audit.entries_definite);
        assert!(audit.trace_definite); // tr = -t + t = 0
    }

    #[test]
    fn omega_even_powers_trace() {
        // tr B_{-t}(Ω^{2ℓ}) = 2(-t)^{3ℓ}
        for l in 1..4i64 {
            let w = BraidWord::omega().repeat(2 * l as usize);
            let tr = burau_of_word(&w, Variable::MinusT).trace();
            let c = if (3 * l) % 2 == 0 { 2 } else { -2 };
            assert_eq!(tr, poly(&[(c, 3 * l)]));
            assert!(tr.is_definite().is_definite());
        }
    }

    #[test]
    fn evaluate_matches_exact() {
        let w = word("aabBAbab");
        let t = Complex64::new(0.3, -0.4);
        let a = evaluate_streaming(&w, t).unwrap();
        let b = evaluate_exact_then_substitute(&w, t).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] - b[i][j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn evaluate_at_minus_one() {
        let m = evaluate(&word("a"), Complex64::new(-1.0, 0.0)).unwrap();
        assert!((m[0][0] - 1.0).norm() < 1e-15);
        assert!((m[0][1] - 1.0).norm() < 1e-15);
        assert!(m[1][0].norm() < 1e-15);
        assert!((m[1][1] - 1.0).norm() < 1e-15);
    }

    #[test]
    fn singular_at_zero() {
        assert_eq!(
            evaluate(&word("aA"), Complex64::new(0.0, 0.0)),
            Err(BurauError::SingularAtZero)
        );
    }
}
