use num_rational::Ratio;

use super::*;
use crate::lobatto::phi_lgl;
use crate::polycore::{integrate_adaptive, legendre_unchecked};

fn abs_shift_closed_form(theta: f64, n: usize) -> f64 {
    // f'' = 2δ(x - θ) integrated against the φ-form of P_n.
    match n {
        0 => 0.5 * (1.0 + theta * theta),
        // (3/2) ∫ |x - θ| x dx = (3/2)(2/3)(θ³/2 ... ) collapses to (θ³ - 3θ) / 2
        1 => 0.5 * (theta * theta * theta - 3.0 * theta),
        _ => {
            phi_lgl(n + 1, theta).unwrap() / (2.0 * n as f64 + 3.0)
                - phi_lgl(n - 1, theta).unwrap() / (2.0 * n as f64 - 1.0)
        }
    }
}

/// Recurrence-evaluated `P_k` carries O(k ε) error, so coefficient errors
/// scale with `k` and `max |f|` rather than with `|a_k|`.
fn rounding_tol(k: usize, max_f: f64) -> f64 {
    1e-15 * (k as f64 + 1.0) * max_f
}

#[test]
fn abs_shift_examples() {
    let s = legendre_coeffs(&FunctionSpec::abs_shift(0.0).unwrap(), 4).unwrap();
    let expect = [0.5, 0.0, 0.625, 0.0, -0.1875];
    for (a, e) in s.coeffs().iter().zip(expect) {
        assert!((a - e).abs() < 1e-15, "{a} vs {e}");
    }
    let t = legendre_coeffs(&FunctionSpec::trunc_pow2(0.0).unwrap(), 0).unwrap();
    assert!((t.coeffs()[0] - 1.0 / 6.0).abs() < 1e-16);
}

#[test]
fn abs_shift_matches_closed_form() {
    for &theta in &[-0.9, -0.6, -0.3, 0.0, 0.2, 0.5, 0.9] {
        let f = FunctionSpec::abs_shift(theta).unwrap();
        let s = legendre_coeffs(&f, 300).unwrap();
        for (k, &a) in s.coeffs().iter().enumerate() {
            let e = abs_shift_closed_form(theta, k);
            let tol = rounding_tol(k, 1.0 + theta.abs());
            assert!((a - e).abs() < tol, "theta={theta} k={k} {a} vs {e}");
        }
    }
}

#[test]
fn odd_coefficients_vanish_at_zero() {
    let s = legendre_coeffs(&FunctionSpec::abs_shift(0.0).unwrap(), 200).unwrap();
    for k in (1..=200).step_by(2) {
        assert!(s.coeffs()[k].abs() < 1e-14);
    }
}

type Q = Ratio<i128>;

/// Exact `(k + ½) ∫ f P_k` at θ = ½ via monomial Legendre coefficients.
fn exact_half(kind: FunctionKind, max: usize) -> Vec<f64> {
    let mut p: Vec<Vec<Q>> = vec![vec![Q::from_integer(1)], vec![Q::from_integer(0), Q::from_integer(1)]];
    for k in 1..max {
        let mut next = vec![Q::from_integer(0); k + 2];
        for (i, c) in p[k].iter().enumerate() {
            next[i + 1] += *c * Q::from_integer(2 * k as i128 + 1) / Q::from_integer(k as i128 + 1);
        }
        for (i, c) in p[k - 1].iter().enumerate() {
            next[i] -= *c * Q::from_integer(k as i128) / Q::from_integer(k as i128 + 1);
        }
        p.push(next);
    }
    let half = Q::new(1, 2);
    let pow = |x: Q, e: usize| (0..e).fold(Q::from_integer(1), |acc, _| acc * x);
    // ∫_lo^hi x^j dx
    let mono = |j: usize, lo: Q, hi: Q| (pow(hi, j + 1) - pow(lo, j + 1)) / Q::from_integer(j as i128 + 1);
    let one = Q::from_integer(1);
    let moment = |j: usize| -> Q {
        match kind {
            // |x - ½| = (x - ½) on [½,1], (½ - x) on [-1,½]
            FunctionKind::AbsShift => {
                (mono(j + 1, half, one) - half * mono(j, half, one))
                    - (mono(j + 1, -one, half) - half * mono(j, -one, half))
            }
            // (x - ½)² on [½, 1]
            _ => mono(j + 2, half, one) - mono(j + 1, half, one) + mono(j, half, one) / Q::from_integer(4),
        }
    };
    p.iter()
        .take(max + 1)
        .enumerate()
        .map(|(k, c)| {
            let integral = c.iter().enumerate().fold(Q::from_integer(0), |acc, (j, cj)| acc + *cj * moment(j));
            let a = integral * Q::new(2 * k as i128 + 1, 2);
            *a.numer() as f64 / *a.denom() as f64
        })
        .collect()
}

#[test]
fn exact_rational_oracle() {
    for kind in [FunctionKind::AbsShift, FunctionKind::TruncPow2] {
        let f = match kind {
            FunctionKind::AbsShift => FunctionSpec::abs_shift(0.5).unwrap(),
            _ => FunctionSpec::trunc_pow2(0.5).unwrap(),
        };
        let exact = exact_half(kind, 18);
        let s = legendre_coeffs(&f, 18).unwrap();
        for (k, (a, e)) in s.coeffs().iter().zip(&exact).enumerate() {
            assert!((a - e).abs() <= rounding_tol(k, 1.5), "{kind:?} k={k} {a} vs {e}");
        }
    }
}

#[test]
fn trunc_pow2_against_adaptive() {
    for &theta in &[0.2, 0.4, 0.8, -0.7] {
        let f = FunctionSpec::trunc_pow2(theta).unwrap();
        let s = legendre_coeffs(&f, 40).unwrap();
        assert!((s.coeffs()[0] - (1.0 - theta).powi(3) / 6.0).abs() < 1e-15);
        for k in 0..=40 {
            let q = integrate_adaptive(|x| (x - theta).powi(2) * legendre_unchecked(k, x), theta, 1.0, 1e-15).unwrap();
            let e = (k as f64 + 0.5) * q;
            let tol = rounding_tol(k, (1.0 - theta).powi(2));
            assert!((s.coeffs()[k] - e).abs() < tol, "theta={theta} k={k} {} vs {e}", s.coeffs()[k]);
        }
    }
}

#[test]
fn runge_coefficients() {
    let f = FunctionSpec::runge(5.0).unwrap();
    assert!((f.rho_max().unwrap() - 1.219_803_902_718_557).abs() < 1e-12);
    assert!((FunctionSpec::runge(6.0).unwrap().rho_max().unwrap() - 1.180_460_421_716_37).abs() < 1e-12);
    let s = legendre_coeffs(&f, 80).unwrap();
    for k in 0..=30 {
        let q = integrate_adaptive(|x| f.eval(x) * legendre_unchecked(k, x), -1.0, 1.0, 1e-15).unwrap();
        assert!((s.coeffs()[k] - (k as f64 + 0.5) * q).abs() < 1e-13, "k={k}");
    }
    // f is even, so the decay shows on even k: |a_{k+2}/a_k| → ρ⁻².
    let pts: Vec<(f64, f64)> = (20..=60).step_by(2).map(|k| (k as f64, s.coeffs()[k].abs().ln())).collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let slope = pts.iter().map(|p| (p.0 - sx / m) * (p.1 - sy / m)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - sx / m).powi(2)).sum::<f64>();
    let ratio = slope.exp();
    let target = 1.0 / f.rho_max().unwrap();
    assert!((ratio / target - 1.0).abs() < 0.02, "ratio={ratio} target={target}");
    for k in (1..=80).step_by(2) {
        assert!(s.coeffs()[k].abs() < 1e-14);
    }
}

#[test]
fn custom_functions() {
    let f = FunctionSpec::custom(|x| x * x * x, vec![2.0, 3.0, 6.0, 6.0], None).unwrap();
    assert_eq!(f.m(), 3);
    let s = legendre_coeffs(&f, 6).unwrap();
    // x³ = (3/5) P_1 + (2/5) P_3
    let expect = [0.0, 0.6, 0.0, 0.4, 0.0, 0.0, 0.0];
    for (a, e) in s.coeffs().iter().zip(expect) {
        assert!((a - e).abs() < 1e-14);
    }
    let g = FunctionSpec::custom(|x| (x - 0.1).abs(), vec![2.0, 2.0], Some(0.1)).unwrap();
    let a = legendre_coeffs(&g, 30).unwrap();
    let b = legendre_coeffs(&FunctionSpec::abs_shift(0.1).unwrap(), 30).unwrap();
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        assert!((x - y).abs() < 1e-13);
    }
    // a kink the quadrature is not told about cannot reach 1e-13
    let h = FunctionSpec::custom(|x| (x - 0.1234).abs(), vec![2.0, 2.0], None).unwrap();
    assert!(matches!(legendre_coeffs(&h, 10), Err(Error::Quadrature { .. })));
    assert!(FunctionSpec::custom(|x| x, vec![], None).is_err());
    assert!(FunctionSpec::abs_shift(1.0).is_err());
    assert!(FunctionSpec::trunc_pow2(-1.0).is_err());
    assert!(FunctionSpec::runge(0.0).is_err());
}

#[test]
fn projection_eval_examples() {
    let one = LegendreSeries::new(vec![1.0, 0.0, 0.0]).unwrap();
    assert_eq!(projection_eval(&one, -0.4).unwrap(), 1.0);
    let x = LegendreSeries::new(vec![0.0, 1.0]).unwrap();
    assert_eq!(projection_eval(&x, 0.3).unwrap(), 0.3);
    assert!(projection_eval(&x, 1.5).is_err());
    let s = legendre_coeffs(&FunctionSpec::abs_shift(0.0).unwrap(), 50).unwrap();
    assert!((s.eval(0.7).unwrap() - 0.7).abs() < 0.02);

    // agrees with term-by-term evaluation
    let s = legendre_coeffs(&FunctionSpec::trunc_pow2(0.3).unwrap(), 60).unwrap();
    for i in 0..20 {
        let x = -1.0 + i as f64 * 0.1;
        let direct: f64 = s.coeffs().iter().enumerate().map(|(k, a)| a * legendre_unchecked(k, x)).sum();
        assert!((s.eval(x).unwrap() - direct).abs() < 1e-14);
    }
}

#[test]
fn parseval_partial_sums_grow() {
    let s = legendre_coeffs(&FunctionSpec::abs_shift(0.3).unwrap(), 400).unwrap();
    let mut last = 0.0;
    for n in 0..=400 {
        let e = s.truncated(n).energy();
        assert!(e >= last);
        last = e;
    }
    // ∫|x - θ|² = ((1 - θ)³ + (1 + θ)³) / 3
    let full = (0.7f64.powi(3) + 1.3f64.powi(3)) / 3.0;
    assert!(last < full && full - last < 1e-7);
}

#[test]
fn l2_error_two_routes_agree() {
    let f = FunctionSpec::abs_shift(0.5).unwrap();
    for n in [2usize, 10, 50, 200] {
        let parseval = l2_error(&f, n, 8192).unwrap().value;
        let quad = l2_error_quadrature(&f, n).unwrap();
        assert!((parseval - quad).abs() < 1e-8, "n={n} {parseval} vs {quad}");
    }
    let g = FunctionSpec::trunc_pow2(0.5).unwrap();
    for n in [3usize, 40, 200] {
        let parseval = l2_error(&g, n, 8192).unwrap().value;
        let quad = l2_error_quadrature(&g, n).unwrap();
        assert!((parseval - quad).abs() < 1e-8, "n={n}");
    }
    let r = FunctionSpec::runge(5.0).unwrap();
    for n in [4usize, 30] {
        let parseval = l2_error(&r, n, 400).unwrap().value;
        let quad = l2_error_quadrature(&r, n).unwrap();
        assert!((parseval - quad).abs() < 1e-8, "n={n}");
    }
    assert_eq!(l2_error(&f, 0, 0).unwrap().value, 0.0);
    assert!(l2_error(&f, 10, 39).is_err());
    assert_eq!(default_reference_degree(10), 210);
    assert_eq!(default_reference_degree(100), 400);
}

#[test]
fn l2_truncation_warning() {
    // m = 1 tails decay slowly; the last term is far above 1e-15 of the tail
    let e = l2_error(&FunctionSpec::abs_shift(0.5).unwrap(), 10, 210).unwrap();
    assert!(e.truncation_warning());
    let r = l2_error(&FunctionSpec::runge(5.0).unwrap(), 10, 400).unwrap();
    assert!(!r.truncation_warning());
}

#[test]
fn linf_error_examples() {
    let e = linf_error(&FunctionSpec::abs_shift(0.0).unwrap(), 0, 10001).unwrap();
    assert!((e.value - 0.5).abs() < 1e-15);
    assert!(e.location == -1.0 || e.location == 0.0 || e.location == 1.0);
    assert!(linf_error(&FunctionSpec::abs_shift(0.0).unwrap(), 0, 10000).is_err());

    let e = linf_error(&FunctionSpec::abs_shift(0.2).unwrap(), 100, 10001).unwrap();
    assert!((e.location - 0.2).abs() < 0.01, "{e:?}");
    let e = linf_error(&FunctionSpec::trunc_pow2(0.5).unwrap(), 100, 10001).unwrap();
    assert!((e.location - 0.5).abs() < 0.01, "{e:?}");

    // against a brute-force uniform grid
    let f = FunctionSpec::runge(5.0).unwrap();
    let s = legendre_coeffs(&f, 20).unwrap();
    let brute = (0..=200_000)
        .map(|i| -1.0 + i as f64 * 1e-5)
        .map(|x| (f.eval(x) - s.eval_unchecked(x)).abs())
        .fold(0.0, f64::max);
    let e = linf_error(&f, 20, 10001).unwrap();
    assert!(e.value >= brute * (1.0 - 1e-9) && e.value <= brute * (1.0 + 1e-6), "{} vs {brute}", e.value);
}

#[test]
fn chebyshev_grid_shape() {
    let g = chebyshev_grid(5, None);
    assert_eq!(g[0], -1.0);
    assert_eq!(g[2], 0.0);
    assert_eq!(g[4], 1.0);
    let g = chebyshev_grid(5, Some(0.3));
    assert_eq!(g.len(), 6);
    assert!(g.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(chebyshev_grid(5, Some(0.0)).len(), 5);
}

#[test]
fn variations() {
    assert_eq!(total_variation(&FunctionSpec::abs_shift(0.2).unwrap(), 1).unwrap(), 2.0);
    assert_eq!(total_variation(&FunctionSpec::trunc_pow2(0.2).unwrap(), 2).unwrap(), 2.0);
    assert_eq!(total_variation(&FunctionSpec::abs_shift(0.6).unwrap(), 0).unwrap(), 2.0);
    assert!(matches!(
        total_variation(&FunctionSpec::abs_shift(0.6).unwrap(), 2),
        Err(Error::UnsupportedOrder { order: 2, max: 1 })
    ));
    // V_0 of (x - θ)₊² is its rise (1 - θ)²; V_1 is 2(1 - θ)
    let t = FunctionSpec::trunc_pow2(0.4).unwrap();
    assert!((total_variation(&t, 0).unwrap() - 0.36).abs() < 1e-15);
    assert!((total_variation(&t, 1).unwrap() - 1.2).abs() < 1e-15);
    // the Runge function rises from 1/(1+a²) to 1 and falls back
    let r = FunctionSpec::runge(5.0).unwrap();
    assert!((total_variation(&r, 0).unwrap() - 2.0 * (1.0 - 1.0 / 26.0)).abs() < 1e-15);
    assert!(total_variation(&r, 1).is_err());
}

#[test]
fn derivatives_by_finite_difference() {
    let h = 1e-6;
    for f in [
        FunctionSpec::abs_shift(0.3).unwrap(),
        FunctionSpec::trunc_pow2(-0.2).unwrap(),
        FunctionSpec::runge(5.0).unwrap(),
    ] {
        for i in 0..40 {
            let x = -0.975 + i as f64 * 0.05;
            let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
            assert!((fd - f.derivative(x).unwrap()).abs() < 1e-6, "{f:?} x={x}");
        }
    }
    let r = FunctionSpec::runge(5.0).unwrap();
    let z = num_complex::Complex64::new(0.3, 0.0);
    assert!((r.eval_complex(z).unwrap().re - r.eval(0.3)).abs() < 1e-15);
    assert!(FunctionSpec::abs_shift(0.1).unwrap().eval_complex(z).is_none());
}
