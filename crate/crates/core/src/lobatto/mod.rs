//! Legendre-Gauss-Lobatto polynomials `φ_n = P_{n+1} - P_{n-1}` (with
//! `φ_0 = P_1`) and their Gegenbauer generalisation.
//!
//! The exact maximum of `|φ_n|` on `[-1, 1]` sits at the zero of `P_n` closest
//! to the origin, so [`phi_lgl_max`] needs one Newton-refined root rather than
//! a grid search. The companion bounds are the simple `4/√(2πn)` and the
//! sharper gamma-ratio form.

mod ellipse;
mod ggl;

use std::f64::consts::PI;

use crate::error::{check_unit_interval, Error, Result};
use crate::polycore::{
    gauss_legendre, legendre_root, legendre_with_deriv, log_gamma_ratio, NodeKind, NodeSet, Scalar,
};

pub use ellipse::{
    ellipse_min_scan, phi1_modulus_closed_form, phi2_modulus_closed_form, phi_lgl_complex,
    phi_lgl_complex_scaled, EllipseMin, EllipsePoint, ScaledComplex, DEFAULT_ELLIPSE_GRID,
};
pub(crate) use ellipse::golden_section;
pub use ggl::{
    durand_bound, gegenbauer_zeros, ggl_grid_max, ggl_local_maxima, ggl_max_bound, phi_ggl,
    phi_ggl_deriv_check, phi_ggl_two_term, weighted_gegenbauer_max_bound, GglParams,
};

/// `(P_{n-1}, P_n, P_{n+1})` at `x`, `P_{-1} = 0`.
pub(crate) fn legendre_triple<T: Scalar>(n: usize, x: T) -> (T, T, T) {
    let mut prev = T::zero();
    let mut cur = T::one();
    for k in 0..n {
        let kf = k as f64;
        let next = (x * cur * (2.0 * kf + 1.0) - prev * kf) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    let nf = n as f64;
    let next = (x * cur * (2.0 * nf + 1.0) - prev * nf) / (nf + 1.0);
    (prev, cur, next)
}

/// `φ_n^LGL(x)` without domain checks; also used for complex `x`.
pub fn phi_lgl_unchecked<T: Scalar>(n: usize, x: T) -> T {
    if n == 0 {
        return x;
    }
    let (below, _, above) = legendre_triple(n, x);
    above - below
}

/// `φ_n^LGL(x)` on `[-1, 1]`.
pub fn phi_lgl(n: usize, x: f64) -> Result<f64> {
    check_unit_interval("x", x)?;
    Ok(phi_lgl_unchecked(n, x))
}

/// The derivative of `φ_n^LGL`, `(2n + 1) P_n(x)`.
pub fn phi_lgl_deriv_check(n: usize, x: f64) -> Result<f64> {
    check_unit_interval("x", x)?;
    Ok((2 * n + 1) as f64 * legendre_with_deriv(n, x).0)
}

/// Zeros of `P_n`, ascending.
pub fn legendre_zeros(n: usize) -> Result<Vec<f64>> {
    Ok(gauss_legendre(n)?.points().to_vec())
}

/// The `n + 1` Legendre-Gauss-Lobatto points: `±1` and the zeros of `P_n'`.
///
/// Interior points are found by safeguarded Newton on `P_n'`, each bracketed
/// by two consecutive zeros of `P_n`. Weights are the Lobatto quadrature
/// weights `2 / (n (n+1) P_n(x_j)²)`.
pub fn lgl_points(n: usize) -> Result<NodeSet> {
    if n == 0 {
        return Err(Error::Parameter("LGL points need degree n >= 1".into()));
    }
    let zeros = legendre_zeros(n)?;
    let nf = n as f64;
    let mut points = vec![0.0; n + 1];
    points[0] = -1.0;
    points[n] = 1.0;
    // interior point j (1..n-1) lies in (zeros[j-1], zeros[j]); solve the upper half and mirror.
    for j in n.div_ceil(2)..n {
        let (lo, hi) = (zeros[j - 1], zeros[j]);
        let x = if 2 * j == n {
            0.0
        } else {
            safeguarded_newton_deriv(n, lo, hi)?
        };
        points[j] = x;
        points[n - j] = -x;
    }
    let weights = points
        .iter()
        .map(|&x| {
            let p = legendre_with_deriv(n, x).0;
            2.0 / (nf * (nf + 1.0) * p * p)
        })
        .collect();
    Ok(NodeSet::new(points, weights, NodeKind::GaussLobatto))
}

// Zero of P_n' in (lo, hi), where P_n' changes sign exactly once.
fn safeguarded_newton_deriv(n: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
    let nn = (n * (n + 1)) as f64;
    let sign_lo = legendre_with_deriv(n, lo).1.signum();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let (p, dp) = legendre_with_deriv(n, x);
        if dp == 0.0 {
            return Ok(x);
        }
        if dp.signum() == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        // Legendre ODE: (1 - x²) P'' = 2x P' - n(n+1) P
        let d2 = (2.0 * x * dp - nn * p) / (1.0 - x * x);
        let mut next = x - dp / d2;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= 1e-15 || hi - lo <= 4.0 * f64::EPSILON {
            return Ok(x);
        }
    }
    Err(Error::RootFinding(format!(
        "zero of P_{n}' in ({lo}, {hi})"
    )))
}

/// The maximum of `|φ_n^LGL|` on `[-1, 1]` and the two explicit bounds on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiMax {
    pub value: f64,
    pub location: f64,
    /// `4 / √(2πn)`
    pub bound_simple: f64,
    /// The gamma-ratio bound; equal to `value` for odd `n`.
    pub bound_sharp: f64,
}

impl PhiMax {
    /// `value · √(2πn) / 4`, which increases towards one.
    pub fn scaled(&self, n: usize) -> f64 {
        self.value * (2.0 * PI * n as f64).sqrt() / 4.0
    }
}

/// `4 / √(2πn)`.
pub fn phi_lgl_bound_simple(n: usize) -> f64 {
    4.0 / (2.0 * PI * n as f64).sqrt()
}

/// The gamma-ratio bound on `max |φ_n^LGL|`, odd and even branches.
pub fn phi_lgl_bound_sharp(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Validity { n, min: 1 });
    }
    let nf = n as f64;
    let lead = (2.0 * nf + 1.0) / PI.sqrt();
    Ok(if n % 2 == 1 {
        lead * log_gamma_ratio(nf / 2.0, (nf + 1.0) / 2.0)?.exp() / (nf + 1.0)
    } else {
        lead * log_gamma_ratio((nf + 1.0) / 2.0, (nf + 2.0) / 2.0)?.exp() / (nf * (nf + 1.0)).sqrt()
    })
}

/// Exact `max |φ_n^LGL|`, attained at the zero of `P_n` nearest the origin.
pub fn phi_lgl_max(n: usize) -> Result<PhiMax> {
    if n == 0 {
        return Err(Error::Validity { n, min: 1 });
    }
    let (root, _) = legendre_root(n, (n - 1) / 2)?;
    let location = root.abs();
    Ok(PhiMax {
        value: phi_lgl_unchecked(n, location).abs(),
        location,
        bound_simple: phi_lgl_bound_simple(n),
        bound_sharp: phi_lgl_bound_sharp(n)?,
    })
}

/// `n(n+1)/(2n+1)² φ_n(x)² + (1 - x²) P_n(x)²`, strictly decreasing on `[0, 1]`.
pub fn psi_eval(n: usize, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "[0, 1]",
        });
    }
    if n == 0 {
        return Err(Error::Validity { n, min: 1 });
    }
    let nf = n as f64;
    let phi = phi_lgl_unchecked(n, x);
    let p = legendre_with_deriv(n, x).0;
    Ok(nf * (nf + 1.0) / (2.0 * nf + 1.0).powi(2) * phi * phi + (1.0 - x * x) * p * p)
}

/// `|φ_n(x_k)|` at the nonnegative zeros of `P_n`, ordered from the largest zero down.
pub fn lgl_local_maxima(n: usize) -> Result<Vec<f64>> {
    let zeros = legendre_zeros(n)?;
    Ok(zeros
        .iter()
        .rev()
        .take_while(|&&x| x >= 0.0)
        .map(|&x| phi_lgl_unchecked(n, x).abs())
        .collect())
}
