//! Gegenbauer-Gauss-Lobatto functions
//! `φ_n^GGL = -4λ(n+λ)/(n(n+2λ)) · ω_{λ+1} C_{n-1}^{λ+1}`, `ω_λ = (1-x²)^{λ-1/2}`.

use std::f64::consts::FRAC_PI_2;

use super::Error;
use crate::error::{check_unit_interval, Result};
use crate::polycore::{gegenbauer_unchecked, ln_gamma, log_gamma_ratio};

/// The Gegenbauer parameter, `λ > -1/2` and `λ != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GglParams {
    lambda: f64,
}

impl GglParams {
    pub fn new(lambda: f64) -> Result<Self> {
        crate::polycore::gegenbauer_all(0, lambda, 0.0)?;
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `λ = 1/2`, where `φ_n^GGL` coincides with `φ_n^LGL`.
    pub fn is_lgl(&self) -> bool {
        self.lambda == 0.5
    }

    fn weight(&self, shift: f64, x: f64) -> f64 {
        (1.0 - x * x).powf(self.lambda + shift - 0.5)
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Validity { n, min: 1 })
    } else {
        Ok(())
    }
}

/// `φ_n^GGL(x)` via the single weighted `C_{n-1}^{λ+1}` form, finite on all of `[-1, 1]`.
pub fn phi_ggl(n: usize, params: GglParams, x: f64) -> Result<f64> {
    check_degree(n)?;
    check_unit_interval("x", x)?;
    Ok(phi_ggl_raw(n, params, x))
}

pub(crate) fn phi_ggl_raw(n: usize, params: GglParams, x: f64) -> f64 {
    let lambda = params.lambda;
    let nf = n as f64;
    let scale = -4.0 * lambda * (nf + lambda) / (nf * (nf + 2.0 * lambda));
    scale * params.weight(1.0, x) * gegenbauer_unchecked(n - 1, lambda + 1.0, x)
}

/// `φ_n^GGL(x)` via the two-term difference of weighted `C^λ`; infinite at `±1` when `λ < 1/2`.
pub fn phi_ggl_two_term(n: usize, params: GglParams, x: f64) -> Result<f64> {
    check_degree(n)?;
    check_unit_interval("x", x)?;
    let lambda = params.lambda;
    let nf = n as f64;
    let w = params.weight(0.0, x);
    let upper = (nf + 1.0) / (nf + 2.0 * lambda) * gegenbauer_unchecked(n + 1, lambda, x);
    let lower = (nf + 2.0 * lambda - 1.0) / nf * gegenbauer_unchecked(n - 1, lambda, x);
    Ok(w * (upper - lower))
}

/// The derivative of `φ_n^GGL`, `2(n+λ) ω_λ(x) C_n^λ(x)`.
pub fn phi_ggl_deriv_check(n: usize, params: GglParams, x: f64) -> Result<f64> {
    check_degree(n)?;
    check_unit_interval("x", x)?;
    if params.lambda < 0.5 && x.abs() == 1.0 {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "(-1, 1) for lambda < 1/2",
        });
    }
    let lambda = params.lambda;
    Ok(2.0 * (n as f64 + lambda) * params.weight(0.0, x) * gegenbauer_unchecked(n, lambda, x))
}

/// The gamma-ratio bound `B_n^λ` on `max |φ_n^GGL|`, for `λ > 0`.
pub fn ggl_max_bound(n: usize, params: GglParams) -> Result<f64> {
    check_degree(n)?;
    let lambda = params.lambda;
    if lambda <= 0.0 {
        return Err(Error::Parameter(format!(
            "the GGL maximum bound needs lambda > 0, got {lambda}"
        )));
    }
    let nf = n as f64;
    let ln_gamma_lambda = ln_gamma(lambda)?;
    Ok(if n % 2 == 1 {
        let ratio = log_gamma_ratio((nf + 1.0) / 2.0 + lambda, (nf + 1.0) / 2.0)? - ln_gamma_lambda;
        4.0 * (nf + lambda) / (nf * (nf + 2.0 * lambda)) * ratio.exp()
    } else {
        let ratio = log_gamma_ratio(nf / 2.0 + lambda, (nf + 2.0) / 2.0)? - ln_gamma_lambda;
        2.0 * (nf + lambda) / (nf * (nf + 2.0 * lambda)).sqrt() * ratio.exp()
    })
}

fn check_lambda_ge_one(lambda: f64) -> Result<()> {
    if lambda >= 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "weighted Gegenbauer bounds need lambda >= 1, got {lambda}"
        )))
    }
}

/// Bound on `max |ω_λ C_n^λ|` for `λ >= 1`; improves on [`durand_bound`] for odd `n`.
pub fn weighted_gegenbauer_max_bound(n: usize, lambda: f64) -> Result<f64> {
    check_lambda_ge_one(lambda)?;
    let nf = n as f64;
    if n % 2 == 0 {
        return durand_bound(n, lambda);
    }
    let ratio = log_gamma_ratio((nf - 1.0) / 2.0 + lambda, (nf + 1.0) / 2.0)? - ln_gamma(lambda)?;
    Ok(((nf + 2.0 * lambda - 1.0) / (nf + 1.0)).sqrt() * ratio.exp())
}

/// Durand's bound `Γ(n/2 + λ) / (Γ(λ) Γ(n/2 + 1))` on `max |ω_λ C_n^λ|`, `λ >= 1`.
pub fn durand_bound(n: usize, lambda: f64) -> Result<f64> {
    check_lambda_ge_one(lambda)?;
    let nf = n as f64;
    Ok((log_gamma_ratio(nf / 2.0 + lambda, nf / 2.0 + 1.0)? - ln_gamma(lambda)?).exp())
}

/// Zeros of `C_n^λ` in `(-1, 1)`, ascending.
///
/// Sign changes are located on a fine grid in `θ = arccos x` (the zeros are
/// roughly equispaced in `θ`) and then bisected to full precision.
pub fn gegenbauer_zeros(n: usize, lambda: f64) -> Result<Vec<f64>> {
    crate::polycore::gegenbauer_all(0, lambda, 0.0)?;
    let c = |x: f64| gegenbauer_unchecked(n, lambda, x);
    let samples = 40 * n + 40;
    let step = FRAC_PI_2 / samples as f64;
    let mut positive = Vec::with_capacity(n / 2);
    let mut prev_x = 1.0;
    let mut prev_v = c(1.0);
    for j in 1..samples {
        let x = (j as f64 * step).cos();
        let v = c(x);
        if v == 0.0 {
            positive.push(x);
        } else if v.signum() != prev_v.signum() && prev_v != 0.0 {
            positive.push(bisect(&c, x, prev_x));
        }
        prev_x = x;
        prev_v = v;
    }
    if positive.len() != n / 2 {
        return Err(Error::RootFinding(format!(
            "found {} of {} positive zeros of C_{n}^{lambda}",
            positive.len(),
            n / 2
        )));
    }
    let mut zeros: Vec<f64> = positive.iter().map(|x| -x).collect();
    if n % 2 == 1 {
        zeros.push(0.0);
    }
    zeros.extend(positive.iter().rev());
    Ok(zeros)
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let sign_lo = f(lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if v.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `|φ_n^GGL(x_k)|` at the nonnegative zeros of `C_n^λ`, from the largest zero down.
pub fn ggl_local_maxima(n: usize, params: GglParams) -> Result<Vec<f64>> {
    check_degree(n)?;
    let zeros = gegenbauer_zeros(n, params.lambda)?;
    Ok(zeros
        .iter()
        .rev()
        .take_while(|&&x| x >= 0.0)
        .map(|&x| phi_ggl_raw(n, params, x).abs())
        .collect())
}

/// Maximum of `|φ_n^GGL|` over a uniform grid of `grid` points on `[0, 1]`
/// (the function is even), with its location.
pub fn ggl_grid_max(n: usize, params: GglParams, grid: usize) -> Result<(f64, f64)> {
    check_degree(n)?;
    if grid < 2 {
        return Err(Error::Parameter("grid needs at least two points".into()));
    }
    let mut best = (0.0, 0.0);
    for i in 0..grid {
        let x = i as f64 / (grid - 1) as f64;
        let v = phi_ggl_raw(n, params, x).abs();
        if v > best.0 {
            best = (v, x);
        }
    }
    Ok(best)
}
