use std::f64::consts::PI;

use super::*;
use crate::coefficients::{
    legendre_coeffs, linf_error, weighted_linf_error_of, FunctionSpec, LegendreSeries,
};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Perimeter through the arithmetic-geometric mean, exact to rounding.
fn agm_perimeter(a: f64, b: f64) -> f64 {
    let (mut x, mut y) = (a, b);
    let mut sum = 0.5 * (a * a - b * b);
    let mut pow = 0.5;
    for _ in 0..40 {
        let c = 0.5 * (x - y);
        let (nx, ny) = (0.5 * (x + y), (x * y).sqrt());
        x = nx;
        y = ny;
        pow *= 2.0;
        sum += pow * c * c;
    }
    2.0 * PI * (a * a - sum) / x
}

#[test]
fn coefficient_bound_examples() {
    assert!(close(coeff_bound_new(2, 1, 2.0).unwrap(), 4.0 / ((2.0 * PI).sqrt() * 1.5), 1e-15));
    assert!(close(coeff_bound_new(2, 1, 2.0).unwrap(), 1.063_846_08, 1e-8));
    assert!(close(coeff_bound_new(1, 0, 2.0).unwrap(), 1.595_769_12, 1e-8));
    assert!(close(coeff_bound_new(1, 0, 2.0).unwrap(), crate::lobatto::phi_lgl_bound_simple(1), 1e-15));
    assert_eq!(coeff_bound_new(1, 1, 2.0), Err(Error::Validity { n: 1, min: 2 }));
    assert!(coeff_bound_new(5, 1, 0.0).is_err());

    assert!(close(coeff_bound_old(2, 1, 2.0).unwrap(), 4.0 / (PI.sqrt() * 1.5), 1e-15));
    assert!(close(coeff_bound_old(2, 1, 2.0).unwrap(), 1.504_51, 1e-5));

    assert!(close(coeff_bound_xiang(2, 1, 2.0).unwrap(), 0.625, 1e-14));
    assert!(coeff_bound_xiang(1, 1, 2.0).is_err());
}

#[test]
fn new_bound_beats_old() {
    for &theta in &[0.0, 0.3, -0.3, 0.9, -0.9] {
        let f = FunctionSpec::abs_shift(theta).unwrap();
        let v_bar = f.weighted_variation().unwrap();
        for n in 2..=300 {
            assert!(coeff_bound_new(n, 1, 2.0).unwrap() <= coeff_bound_old(n, 1, v_bar).unwrap());
        }
    }
    // the old bound blows up towards the endpoints, the new one is θ-free
    let near = FunctionSpec::abs_shift(0.999_999).unwrap().weighted_variation().unwrap();
    assert!(coeff_bound_old(10, 1, near).unwrap() > 20.0 * coeff_bound_new(10, 1, 2.0).unwrap());
}

#[test]
fn asymptotic_agreement() {
    for m in 0..=2 {
        let r = coeff_bound_xiang(10_000, m, 2.0).unwrap() / coeff_bound_new(10_000, m, 2.0).unwrap();
        assert!((r - 1.0).abs() < 0.01, "m={m} r={r}");
        let l = l2_error_bound_liu(10_000, m, 2.0).unwrap() / l2_error_bound(10_000, m, 2.0).unwrap();
        assert!((l - 1.0).abs() < 0.01, "m={m} l={l}");
        // for m = 0 the two coincide identically (Γ(n)/Γ(n+1) = 1/n)
        for n in m + 1..=100 {
            let liu = l2_error_bound_liu(n, m, 2.0).unwrap();
            assert!(liu <= l2_error_bound(n, m, 2.0).unwrap() * (1.0 + 1e-14), "m={m} n={n}");
        }
    }
}

#[test]
fn error_bound_examples() {
    assert!(close(l2_error_bound(10, 1, 2.0).unwrap(), 2.0 / ((1.5 * PI).sqrt() * 27.0), 1e-15));
    assert!(close(l2_error_bound(10, 1, 2.0).unwrap(), 0.034_122_9, 1e-7));
    assert!(close(l2_error_bound(1, 0, 1.0).unwrap(), 0.797_884_6, 1e-7));
    assert!(close(l2_error_bound_liu(2, 1, 2.0).unwrap(), 0.376_126, 1e-6));
    assert!(l2_error_bound_liu(10, 1, 2.0).unwrap() <= l2_error_bound(10, 1, 2.0).unwrap());

    assert!(close(linf_error_bound(10, 1, 2.0).unwrap(), 8.0 / (18.0 * PI).sqrt(), 1e-15));
    assert!(close(linf_error_bound(10, 1, 2.0).unwrap(), 1.063_85, 1e-5));
    assert!(close(linf_error_bound(10, 2, 2.0).unwrap(), 0.0560, 1e-3));
    assert!(linf_error_bound(10, 0, 2.0).is_err());
    assert!(linf_error_bound(2, 2, 2.0).is_err());

    assert!(close(weighted_linf_bound(10, 1, 2.0).unwrap(), 4.0 / (9.5 * PI), 1e-15));
    assert!(close(weighted_linf_bound(10, 1, 2.0).unwrap(), 0.134_025, 1e-6));
    assert!(close(interior_linf_bound(10, 1, 2.0, 0.2).unwrap(), 0.135_400, 1e-6));
    assert_eq!(interior_linf_bound(10, 1, 2.0, 0.0).unwrap(), weighted_linf_bound(10, 1, 2.0).unwrap());
    assert!(interior_linf_bound(10, 1, 2.0, 1.0).is_err());
    assert!(weighted_linf_bound(1, 2, 2.0).is_err());
    assert!(weighted_linf_bound(2, 2, 2.0).is_ok());
}

#[test]
fn log_space_products_are_continuous() {
    for m in 0..=4 {
        let direct: f64 = (1..=m).fold(1.0, |acc, k| acc / (1001.0 - k as f64 + 0.5));
        let via = inverse_half_product(1001, m);
        assert!((via / direct - 1.0).abs() < 1e-13);
    }
    assert!(coeff_bound_new(1_000_000, 3, 2.0).unwrap() > 0.0);
}

#[test]
fn bernstein_margin_positive() {
    assert!(close(bernstein_margin(10, 0.0).unwrap(), 1.387_712_298e-4, 1e-12));
    assert!(close(bernstein_margin(1, 0.0).unwrap(), 0.651_470_015_870_56, 1e-12));
    assert!(bernstein_margin(3, 1.0).is_err());
    let mut state = 0x2545_f491_4f6c_dd1du64;
    for _ in 0..10_000 {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let n = (state % 501) as usize;
        let x = ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0;
        if x.abs() < 1.0 {
            assert!(bernstein_margin(n, x).unwrap() > 0.0, "n={n} x={x}");
        }
    }
}

#[test]
fn ellipse_geometry_examples() {
    let e = ellipse_geometry(2.0, None).unwrap();
    assert_eq!(e.semi_major(), 1.25);
    assert_eq!(e.semi_minor(), 0.75);
    assert_eq!(e.dist(), 0.25);
    // Ramanujan's second approximation, good to about 1e-5 here
    let (a, b) = (1.25f64, 0.75f64);
    let h = ((a - b) / (a + b)).powi(2);
    let ramanujan = PI * (a + b) * (1.0 + 3.0 * h / (10.0 + (4.0 - 3.0 * h).sqrt()));
    assert!(close(e.length(), ramanujan, 1e-4));
    assert!(close(e.length(), 6.381_74, 1e-4));
    for &rho in &[1.0001, 1.05, 1.2, 2.0, 5.0] {
        let e = ellipse_geometry(rho, None).unwrap();
        let exact = agm_perimeter(e.semi_major(), e.semi_minor());
        assert!((e.length() / exact - 1.0).abs() < 1e-12, "rho={rho}");
        assert!(e.length() >= 2.0 * PI * e.semi_minor() && e.length() <= 2.0 * PI * e.semi_major());
        assert!(e.dist() > 0.0);
    }
    assert!(close(ellipse_length(1.0).unwrap(), 4.0, 1e-12));
    assert!(close(ellipse_length(1.0 + 1e-8).unwrap(), 4.0, 1e-7));
    assert!(ellipse_geometry(1.0, None).is_err());
    assert!(ellipse_geometry(2.0, None).unwrap().max_modulus().is_err());
}

#[test]
fn max_modulus_of_runge() {
    let f = FunctionSpec::runge(5.0).unwrap();
    // |1 + a²z²| is smallest on the imaginary axis, z = i b
    for &rho in &[1.05, 1.1, 1.2] {
        let b = 0.5 * (rho - 1.0 / rho);
        let e = ellipse_geometry(rho, Some(&f)).unwrap();
        assert!(close(e.max_modulus().unwrap(), 1.0 / (1.0 - 25.0 * b * b), 1e-9), "rho={rho}");
    }
    let rho_max = f.rho_max().unwrap();
    assert!(matches!(ellipse_geometry(rho_max, Some(&f)), Err(Error::Analyticity { .. })));
    assert!(matches!(ellipse_geometry(1.5, Some(&f)), Err(Error::Analyticity { .. })));
    assert!(ellipse_geometry(1.5, Some(&FunctionSpec::abs_shift(0.0).unwrap())).is_err());
}

fn unit_spec() -> EllipseSpec {
    ellipse_geometry(2.0, None).unwrap().with_max_modulus(1.0).unwrap()
}

#[test]
fn analytic_bound_examples() {
    let e = unit_spec();
    let d = 2.0 * e.length() / (PI * 3f64.sqrt());
    assert!(close(d, 2.345_70, 1e-4));
    assert_eq!(analytic_coeff_bound(0, &e).unwrap(), 0.5 * d);
    assert!(close(analytic_coeff_bound(1, &e).unwrap(), 1.172_85, 1e-4));
    assert!(close(analytic_linf_bound(0, &e).unwrap(), 2.0 * d, 1e-14));
    assert!(close(analytic_linf_bound(0, &e).unwrap(), 4.691_40, 2e-4));
    assert!(close(analytic_l2_bound(0, &e).unwrap(), d / 3f64.sqrt(), 1e-15));
    assert!(close(analytic_l2_bound(0, &e).unwrap(), 1.354_29, 1e-4));
    for n in 0..60 {
        let r = analytic_l2_bound(n + 1, &e).unwrap() / analytic_l2_bound(n, &e).unwrap();
        assert!(close(r, 0.5, 1e-14));
    }
    for n in 2..100 {
        assert!(analytic_linf_bound(n + 1, &e).unwrap() < analytic_linf_bound(n, &e).unwrap());
    }
    assert!(analytic_coeff_bound(3, &ellipse_geometry(2.0, None).unwrap()).is_err());
}

#[test]
fn analytic_bounds_dominate_runge() {
    let f = FunctionSpec::runge(5.0).unwrap();
    let e = ellipse_geometry(1.2, Some(&f)).unwrap();
    let s = legendre_coeffs(&f, 400).unwrap();
    for k in 0..=60 {
        assert!(s.coeffs()[k].abs() <= analytic_coeff_bound(k, &e).unwrap(), "k={k}");
    }
    for n in 0..=60 {
        let l2 = s.tail_energy(n + 1).sqrt();
        assert!(l2 <= analytic_l2_bound(n, &e).unwrap(), "n={n}");
        let linf = linf_error(&f, n, 10001).unwrap().value;
        assert!(linf <= analytic_linf_bound(n, &e).unwrap(), "n={n}");
    }
}

#[test]
fn lgl_bound_shapes() {
    let e = unit_spec();
    for n in 1..50 {
        let a = lgl_interp_bound(n + 1, &e, 1.0).unwrap() / lgl_interp_bound(n, &e, 1.0).unwrap();
        assert!(close(a, 0.5, 1e-14));
        let b = lgl_diff_bound(n + 1, &e, 1.0).unwrap() / lgl_diff_bound(n, &e, 1.0).unwrap();
        let nf = n as f64;
        assert!(close(b, ((nf + 1.0) / nf).powf(1.5) / 2.0, 1e-14));
    }
    assert!(close(lgl_interp_bound(3, &e, 2.0).unwrap(), 2.0 * lgl_interp_bound(3, &e, 1.0).unwrap(), 1e-15));
    assert!(lgl_interp_bound(0, &e, 1.0).is_err());
    assert!(lgl_diff_bound(3, &e, 0.0).is_err());
}

#[test]
fn pointwise_sanity() {
    let s = legendre_coeffs(&FunctionSpec::abs_shift(0.0).unwrap(), 50).unwrap();
    let err = (s.eval(0.7).unwrap() - 0.7).abs();
    assert!(err < 0.02 && err <= interior_linf_bound(50, 1, 2.0, 0.7).unwrap());
}

#[test]
fn domination_sweep() {
    for f in [FunctionSpec::abs_shift(0.5).unwrap(), FunctionSpec::trunc_pow2(0.5).unwrap()] {
        let (m, v) = (f.m(), f.top_variation());
        let reference = legendre_coeffs(&f, 8192).unwrap();
        for n in m + 1..=200 {
            let a = reference.coeffs()[n].abs();
            assert!(a <= coeff_bound_new(n, m, v).unwrap(), "{f:?} n={n}");
            let l2 = reference.tail_energy(n + 1).sqrt();
            assert!(l2 <= l2_error_bound(n, m, v).unwrap(), "{f:?} n={n}");
        }
        for n in (m..=200).step_by(7) {
            let fn_ = LegendreSeries::new(reference.coeffs()[..=n].to_vec()).unwrap();
            let w = weighted_linf_error_of(&f, &fn_, 10001).value;
            assert!(w <= weighted_linf_bound(n, m, v).unwrap(), "{f:?} n={n}");
        }
    }
}

#[test]
fn sharpness_witness() {
    let s = legendre_coeffs(&FunctionSpec::abs_shift(0.3).unwrap(), 300).unwrap();
    let best = (50..=300)
        .map(|n| s.coeffs()[n].abs() / coeff_bound_new(n, 1, 2.0).unwrap())
        .fold(0.0, f64::max);
    assert!(best >= 0.2, "best={best}");
}

#[test]
fn report_csv() {
    let r = BoundReport::new("t", vec![2, 3], vec![0.5, 0.25], vec![1.0, 1.0]).unwrap();
    assert_eq!(r.to_csv(), "n,measured,bound,ratio\n2,0.5,1,2\n3,0.25,1,4\n");
    assert!(r.violations().is_empty());
    assert_eq!(r.max_ratio(), 4.0);
    let bad = BoundReport::new("t", vec![2], vec![2.0], vec![1.0]).unwrap();
    assert_eq!(bad.violations(), vec![2]);
    assert!(BoundReport::new("t", vec![2], vec![], vec![1.0]).is_err());
}
