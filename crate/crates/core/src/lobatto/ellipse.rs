//! `φ_n^LGL` on the Bernstein ellipse `z = (ρ e^{iθ} + ρ^{-1} e^{-iθ}) / 2`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::phi_lgl_unchecked;
use crate::error::{Error, Result};

pub const DEFAULT_ELLIPSE_GRID: usize = 2048;

const RESCALE_ABOVE: f64 = 1e200;
const GOLDEN_TOL: f64 = 1e-10;

/// A point on `E_ρ` for the angle `θ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipsePoint {
    rho: f64,
    theta: f64,
    z: Complex64,
}

impl EllipsePoint {
    pub fn new(rho: f64, theta: f64) -> Result<Self> {
        if !(rho > 1.0 && rho.is_finite()) {
            return Err(Error::Parameter(format!(
                "Bernstein ellipse needs rho > 1, got {rho}"
            )));
        }
        Ok(Self::build(rho, theta))
    }

    /// The collapsed ellipse `ρ = 1`, i.e. the point `cos θ` on the interval.
    pub fn degenerate(theta: f64) -> Self {
        Self::build(1.0, theta)
    }

    fn build(rho: f64, theta: f64) -> Self {
        let theta = theta.rem_euclid(TAU);
        let (s, c) = theta.sin_cos();
        let z = Complex64::new(0.5 * (rho + rho.recip()) * c, 0.5 * (rho - rho.recip()) * s);
        Self { rho, theta, z }
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }
}

/// `φ_n^LGL(z)` by the real recurrence run in complex arithmetic.
pub fn phi_lgl_complex(n: usize, p: EllipsePoint) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Validity { n, min: 1 });
    }
    Ok(phi_lgl_unchecked(n, p.z))
}

/// A complex value `mantissa · e^{log_scale}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    pub log_scale: f64,
}

impl ScaledComplex {
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.norm().ln() + self.log_scale
    }

    /// The unscaled value; overflows to infinity when it is not representable.
    pub fn value(&self) -> Complex64 {
        self.mantissa * self.log_scale.exp()
    }
}

/// `φ_n^LGL(z)` with the recurrence renormalised whenever it grows past 1e200,
/// for degrees where `ρ^n` overflows.
pub fn phi_lgl_complex_scaled(n: usize, p: EllipsePoint) -> Result<ScaledComplex> {
    if n == 0 {
        return Err(Error::Validity { n, min: 1 });
    }
    let z = p.z;
    let mut log_scale = 0.0;
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let kf = k as f64;
        let next = (z * cur * (2.0 * kf + 1.0) - prev * kf) / (kf + 1.0);
        prev = cur;
        cur = next;
        let size = cur.norm();
        if size > RESCALE_ABOVE {
            prev /= size;
            cur /= size;
            log_scale += size.ln();
        }
    }
    let nf = n as f64;
    let next = (z * cur * (2.0 * nf + 1.0) - prev * nf) / (nf + 1.0);
    Ok(ScaledComplex {
        mantissa: next - prev,
        log_scale,
    })
}

/// Result of scanning `|φ_n^LGL|` around the ellipse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseMin {
    /// Minimising angle in `[0, 2π)`.
    pub theta_star: f64,
    pub min_value: f64,
    /// `|φ_n(z(0))|`, equal to `|φ_n(z(π))|`.
    pub endpoint_min: f64,
}

impl EllipseMin {
    /// Distance from `theta_star` to the nearer of `0` and `π`, on the circle.
    pub fn distance_to_real_axis(&self) -> f64 {
        let t = self.theta_star.rem_euclid(PI);
        t.min(PI - t)
    }
}

fn ln_abs_phi(n: usize, rho: f64, theta: f64) -> f64 {
    let p = EllipsePoint::build(rho, theta);
    if (n as f64) * rho.ln() < 300.0 {
        phi_lgl_unchecked(n, p.z).norm().ln()
    } else {
        phi_lgl_complex_scaled(n, p).map(|s| s.ln_abs()).unwrap_or(f64::NAN)
    }
}

/// Minimum of `|φ_n^LGL(z(θ))|` over a uniform `θ` grid, refined by golden
/// section on the two cells adjacent to the grid minimiser.
pub fn ellipse_min_scan(n: usize, rho: f64, grid_size: usize) -> Result<EllipseMin> {
    if n == 0 {
        return Err(Error::Validity { n, min: 1 });
    }
    EllipsePoint::new(rho, 0.0)?;
    if grid_size < 64 {
        return Err(Error::Parameter(format!(
            "ellipse scan needs grid_size >= 64, got {grid_size}"
        )));
    }
    let h = TAU / grid_size as f64;
    let f = |theta: f64| ln_abs_phi(n, rho, theta);
    let (mut best_i, mut best_v) = (0, f64::INFINITY);
    for i in 0..grid_size {
        let v = f(i as f64 * h);
        if v < best_v {
            best_i = i;
            best_v = v;
        }
    }
    let centre = best_i as f64 * h;
    let (theta, value) = golden_section(&f, centre - h, centre + h, GOLDEN_TOL);
    let (theta, value) = if value < best_v { (theta, value) } else { (centre, best_v) };

    let endpoint = f(0.0);
    debug_assert!((endpoint - f(PI)).abs() <= 1e-10, "|phi_n| must be even on the ellipse");
    Ok(EllipseMin {
        theta_star: theta.rem_euclid(TAU),
        min_value: value.exp(),
        endpoint_min: endpoint.exp(),
    })
}

/// Minimise a unimodal `f` on `[a, b]` to width `tol`; returns `(argmin, min)`.
pub(crate) fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Closed form of `|φ_1^LGL(z(θ))|`.
pub fn phi1_modulus_closed_form(rho: f64, theta: f64) -> f64 {
    let s = rho * rho + (rho * rho).recip();
    3.0 / 8.0 * (s - 2.0 * (2.0 * theta).cos())
}

/// Closed form of `|φ_2^LGL(z(θ))|`.
pub fn phi2_modulus_closed_form(rho: f64, theta: f64) -> f64 {
    let s = rho * rho + (rho * rho).recip();
    let c = (2.0 * theta).cos();
    5.0 / 16.0 * ((s * s - 4.0 * c * c) * (s - 2.0 * c)).sqrt()
}
