//! Closed-form bounds on Legendre coefficients and projection errors, and the
//! Bernstein-ellipse geometry needed by the bounds for analytic functions.
//!
//! Every evaluator checks the degree threshold of the result it encodes and
//! returns [`Error::Validity`] below it.

mod ellipse;
mod report;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::polycore::{legendre_unchecked, log_gamma_ratio};

pub use ellipse::{ellipse_geometry, ellipse_length, max_modulus_on_ellipse, EllipseSpec};
pub use report::BoundReport;

/// Above this degree the products below are accumulated as sums of logs.
const LOG_PRODUCT_ABOVE: usize = 1000;

/// `∏_{k=1}^{m} 1 / (n - k + ½)`; requires `n ≥ m`.
fn inverse_half_product(n: usize, m: usize) -> f64 {
    let terms = (1..=m).map(|k| n as f64 - k as f64 + 0.5);
    if n > LOG_PRODUCT_ABOVE {
        (-terms.map(f64::ln).sum::<f64>()).exp()
    } else {
        terms.fold(1.0, |acc, t| acc / t)
    }
}

fn check_degree(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::Validity { n, min })
    } else {
        Ok(())
    }
}

fn check_variation(v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("total variation must be positive, got {v}")))
    }
}

/// `|a_n| ≤ 2V / √(2π(n-m)) · ∏_{k=1}^{m} 1/(n-k+½)` for `n ≥ m + 1`.
pub fn coeff_bound_new(n: usize, m: usize, v: f64) -> Result<f64> {
    check_degree(n, m + 1)?;
    check_variation(v)?;
    Ok(2.0 * v / (2.0 * PI * (n - m) as f64).sqrt() * inverse_half_product(n, m))
}

/// The older bound in terms of the weighted seminorm `V̄`.
pub fn coeff_bound_old(n: usize, m: usize, v_bar: f64) -> Result<f64> {
    check_degree(n, m + 1)?;
    check_variation(v_bar)?;
    let d = (2 * (n - m) - 1) as f64;
    Ok(2.0 * v_bar / (PI * d).sqrt() * inverse_half_product(n, m))
}

/// Gamma-ratio form `V/(2^m √π) · (n+½) Γ((n-m)/2) / ((n+m+1) Γ((n+m+1)/2))`.
pub fn coeff_bound_xiang(n: usize, m: usize, v: f64) -> Result<f64> {
    check_degree(n, m + 1)?;
    check_variation(v)?;
    let (nf, mf) = (n as f64, m as f64);
    let ratio = log_gamma_ratio(0.5 * (nf - mf), 0.5 * (nf + mf + 1.0))?.exp();
    Ok(v / (2f64.powi(m as i32) * PI.sqrt()) * (nf + 0.5) / (nf + mf + 1.0) * ratio)
}

/// `‖f - f_n‖₂ ≤ V / (√(π(m+½)) (n-m)^{m+½})`.
pub fn l2_error_bound(n: usize, m: usize, v: f64) -> Result<f64> {
    check_degree(n, m + 1)?;
    check_variation(v)?;
    let e = m as f64 + 0.5;
    Ok(v / ((PI * e).sqrt() * ((n - m) as f64).powf(e)))
}

/// `V / √(π(m+½)) · √(Γ(n-m) / Γ(n+m+1))`.
pub fn l2_error_bound_liu(n: usize, m: usize, v: f64) -> Result<f64> {
    check_degree(n, m + 1)?;
    check_variation(v)?;
    let ratio = log_gamma_ratio((n - m) as f64, (n + m + 1) as f64)?;
    Ok(v / (PI * (m as f64 + 0.5)).sqrt() * (0.5 * ratio).exp())
}

/// Uniform error bound; needs `m ≥ 1` and `n ≥ m + 1`.
pub fn linf_error_bound(n: usize, m: usize, v: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Validity { n: m, min: 1 });
    }
    check_degree(n, m + 1)?;
    check_variation(v)?;
    if m == 1 {
        return Ok(4.0 * v / (2.0 * PI * (n - 1) as f64).sqrt());
    }
    let lead = 2.0 * v / (m - 1) as f64 / (2.0 * PI * (n + 1 - m) as f64).sqrt();
    Ok(lead * inverse_half_product(n, m - 1))
}

/// Bound on `(1 - x²)^{1/4} |f(x) - f_n(x)|`; needs `m ≥ 1`, `n ≥ m`.
pub fn weighted_linf_bound(n: usize, m: usize, v: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Validity { n: m, min: 1 });
    }
    check_degree(n, m)?;
    check_variation(v)?;
    Ok(2.0 * v / (m as f64 * PI) * inverse_half_product(n, m))
}

/// The weighted bound unwound at an interior point `τ`.
pub fn interior_linf_bound(n: usize, m: usize, v: f64, tau: f64) -> Result<f64> {
    if tau.is_nan() || tau.abs() >= 1.0 {
        return Err(Error::Domain {
            what: "tau",
            value: tau,
            domain: "(-1, 1)",
        });
    }
    Ok(weighted_linf_bound(n, m, v)? / (1.0 - tau * tau).powf(0.25))
}

/// `√(2/π) (n+½)^{-1/2} - (1-x²)^{1/4} |P_n(x)|`, which is positive on `(-1, 1)`.
pub fn bernstein_margin(n: usize, x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() >= 1.0 {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "(-1, 1)",
        });
    }
    let bound = (2.0 / PI).sqrt() / (n as f64 + 0.5).sqrt();
    Ok(bound - (1.0 - x * x).powf(0.25) * legendre_unchecked(n, x).abs())
}

/// `D(ρ) = 2 M L / (π √(ρ² - 1))`.
fn analytic_constant(e: &EllipseSpec) -> Result<f64> {
    let m = e.max_modulus()?;
    Ok(2.0 * m * e.length() / (PI * (e.rho() * e.rho() - 1.0).sqrt()))
}

/// `|a_0| ≤ D/2`, `|a_k| ≤ D √k ρ^{-k}`.
pub fn analytic_coeff_bound(k: usize, e: &EllipseSpec) -> Result<f64> {
    let d = analytic_constant(e)?;
    if k == 0 {
        return Ok(0.5 * d);
    }
    let kf = k as f64;
    Ok(d * kf.sqrt() * (-kf * e.rho().ln()).exp())
}

/// `D ρ^{-n} [(n+1)^{½}/(ρ-1) + (n+1)^{-½}/(ρ-1)²]`.
pub fn analytic_linf_bound(n: usize, e: &EllipseSpec) -> Result<f64> {
    let d = analytic_constant(e)?;
    let (r, s) = (e.rho(), (n as f64 + 1.0).sqrt());
    Ok(d * (-(n as f64) * r.ln()).exp() * (s / (r - 1.0) + 1.0 / (s * (r - 1.0).powi(2))))
}

/// `D / (ρ^n √(ρ² - 1))`.
pub fn analytic_l2_bound(n: usize, e: &EllipseSpec) -> Result<f64> {
    let d = analytic_constant(e)?;
    let r = e.rho();
    Ok(d * (-(n as f64) * r.ln()).exp() / (r * r - 1.0).sqrt())
}

fn lgl_prefactor(n: usize, e: &EllipseSpec, k: f64) -> Result<f64> {
    check_degree(n, 1)?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Parameter(format!("constant K must be positive, got {k}")));
    }
    Ok(k * 2f64.sqrt() * e.max_modulus()? * e.length() / e.dist())
}

/// Interpolation error at LGL points: `K √2 M L / (d π √(ρ²-1)) ρ^{-n}`.
pub fn lgl_interp_bound(n: usize, e: &EllipseSpec, k: f64) -> Result<f64> {
    let r = e.rho();
    Ok(lgl_prefactor(n, e, k)? / (PI * (r * r - 1.0).sqrt()) * (-(n as f64) * r.ln()).exp())
}

/// Spectral differentiation error: `K √2 M L / (d √(π(ρ²-1))) n^{3/2} ρ^{-n}`.
pub fn lgl_diff_bound(n: usize, e: &EllipseSpec, k: f64) -> Result<f64> {
    let r = e.rho();
    let nf = n as f64;
    Ok(lgl_prefactor(n, e, k)? / (PI * (r * r - 1.0)).sqrt() * nf.powf(1.5) * (-nf * r.ln()).exp())
}

#[cfg(test)]
mod tests;
