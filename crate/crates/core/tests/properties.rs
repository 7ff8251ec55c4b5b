//! Property tests for the exact arithmetic and the representation layers.

use braidspectra::braid::BraidWord;
use braidspectra::burau::{self, Variable};
use braidspectra::laurent::{Int, IntPoly, LaurentPoly, Rat};
use braidspectra::sl2walk::{braid_image, psl2_mul};
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    (
        -4i64..4,
        proptest::collection::vec(-9i64..10, 0..6),
    )
        .prop_map(|(min_exp, coeffs)| {
            LaurentPoly::new(min_exp, coeffs.into_iter().map(Int::from).collect())
        })
}

fn small_word() -> impl Strategy<Value = BraidWord> {
    proptest::collection::vec(prop_oneof![Just(1i8), Just(-1), Just(2), Just(-2)], 0..24)
        .prop_map(BraidWord::from_letters)
}

proptest! {
    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.sub(&a), LaurentPoly::zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        let prod = a.mul(&b);
        prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn trace_coords_round_trip(g_coeffs in proptest::collection::vec(-9i64..10, 1..7)) {
        let g = IntPoly::new(g_coeffs.into_iter().map(Int::from).collect());
        prop_assume!(!g.is_zero());
        let p = LaurentPoly::from_trace_coords(&g);
        let back = p.to_trace_coords().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn burau_is_a_homomorphism(u in small_word(), v in small_word()) {
        let uv = u.concat(&v);
        let left = burau::burau_of_word(&uv, Variable::T);
        let right = burau::burau_of_word(&u, Variable::T)
            .mul(&burau::burau_of_word(&v, Variable::T));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn determinant_identity(w in small_word()) {
        prop_assert!(burau::det_check(&w));
    }

    #[test]
    fn psl2_mul_is_associative(u in small_word(), v in small_word(), x in small_word()) {
        let (a, b, c) = (braid_image(&u), braid_image(&v), braid_image(&x));
        prop_assert_eq!(psl2_mul(&psl2_mul(&a, &b), &c), psl2_mul(&a, &psl2_mul(&b, &c)));
    }

    #[test]
    fn rademacher_defect(u in small_word(), v in small_word()) {
        let (a, b) = (braid_image(&u), braid_image(&v));
        let d = psl2_mul(&a, &b).rademacher() - a.rademacher() - b.rademacher();
        prop_assert!(d == 0 || d.abs() == 3);
    }
}

/// Sign changes of `g` on a rational grid over `[lo, hi]`, refined until two
/// successive grid resolutions agree. Exact-rational sign evaluation; grid
/// zeros count as roots directly.
fn grid_count(g: &IntPoly, lo: Rat, hi: Rat, base: i64) -> u32 {
    let count_at = |n: i64| -> u32 {
        let mut roots = 0;
        let mut last: i8 = 0;
        for k in 0..=n {
            // x = lo + k (hi - lo)/n with small integer endpoints
            let num = lo.num * (n - k) * hi.den + hi.num * k * lo.den;
            let den = lo.den * hi.den * n;
            let s = g.sign_at(Rat::new(num, den));
            if s == 0 {
                // endpoint roots are outside the open interval
                if k != 0 && k != n {
                    roots += 1;
                }
                last = 0;
                continue;
            }
            if last != 0 && s != last {
                roots += 1;
            }
            last = s;
        }
        roots
    };
    let mut n = base;
    let mut prev = count_at(n);
    for _ in 0..6 {
        n *= 2;
        let cur = count_at(n);
        if cur == prev {
            return cur;
        }
        prev = cur;
    }
    prev
}

#[test]
fn sturm_count_matches_grid_oracle_on_constructed_roots() {
    use braidspectra::rng::task_rng;
    use rand::Rng;
    let mut rng = task_rng(314, 0);
    for _ in 0..100 {
        // Product of distinct rational linear factors and irreducible
        // quadratics: the real-root count is known by construction.
        let n_lin = rng.gen_range(0..5);
        let n_quad = rng.gen_range(0..3);
        let mut used = std::collections::HashSet::new();
        let mut poly = IntPoly::constant(Int::ONE);
        let mut expected_in = 0u32;
        let (lo, hi) = (Rat::int(-3), Rat::int(3));
        for _ in 0..n_lin {
            let (p, q) = loop {
                let p = rng.gen_range(-12i64..13);
                let q = rng.gen_range(1i64..5);
                let r = Rat::new(p, q);
                if used.insert((r.num, r.den)) {
                    break (r.num, r.den);
                }
            };
            // factor q x - p with root p/q
            poly = poly.mul(&IntPoly::new(vec![Int::from(-p), Int::from(q)]));
            let r = Rat::new(p, q);
            if lo < r && r < hi {
                expected_in += 1;
            }
        }
        for _ in 0..n_quad {
            // x² + bx + c with b² < 4c: no real roots
            let b = rng.gen_range(-3i64..4);
            let c = rng.gen_range(b * b / 4 + 1..b * b / 4 + 6);
            poly = poly.mul(&IntPoly::new(vec![Int::from(c), Int::from(b), Int::ONE]));
        }
        if poly.degree() == 0 {
            continue;
        }
        let sturm = poly.sturm_count(lo, hi);
        let grid = grid_count(&poly, lo, hi, 64);
        assert_eq!(sturm, expected_in, "sturm vs construction for {poly}");
        assert_eq!(grid, expected_in, "grid oracle vs construction for {poly}");
    }
}

#[test]
fn streaming_evaluation_matches_exact_substitution() {
    use braidspectra::rng::task_rng;
    use num_complex::Complex64;
    use rand::Rng;
    let mut rng = task_rng(2718, 0);
    for case in 0..100 {
        let len = rng.gen_range(1..=200);
        // Words with inverse letters have entries with poles at t = 0, so
        // the mixed-word half of the corpus keeps |t| away from the pole.
        let (letters, radius): (Vec<i8>, f64) = if case % 2 == 0 {
            (
                (0..len).map(|_| if rng.gen::<bool>() { 1 } else { 2 }).collect(),
                rng.gen_range(0.05..=1.0),
            )
        } else {
            (
                (0..len).map(|_| [1i8, -1, 2, -2][rng.gen_range(0..4)]).collect(),
                rng.gen_range(0.35..=1.0),
            )
        };
        let w = BraidWord::from_letters(letters);
        let t = Complex64::from_polar(radius, rng.gen_range(-3.14..3.14));
        let a = burau::evaluate_streaming(&w, t).unwrap();
        let b = burau::evaluate_exact_then_substitute(&w, t).unwrap();
        // Both paths carry rounding error proportional to the evaluation
        // condition sum |c_i| |t|^{e_i}, which dwarfs the value itself for
        // long alternating words; scale the comparison accordingly.
        let exact = burau::burau_of_word(&w, Variable::T);
        let mut cond = 1.0f64;
        for entry in exact.entries.iter().flatten() {
            let mut s = 0.0f64;
            for (i, c) in entry.coeffs().iter().enumerate() {
                s += c.to_f64().abs() * t.norm().powi((entry.min_exp() + i as i64) as i32);
            }
            cond = cond.max(s);
        }
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (a[i][j] - b[i][j]).norm() <= 1e-10 * cond,
                    "streaming vs exact mismatch at {t} for length {len}"
                );
            }
        }
    }
}
