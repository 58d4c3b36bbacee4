use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::coefficients::FunctionSpec;
use crate::error::{Error, Result};
use crate::lobatto::golden_section;
use crate::polycore::integrate_adaptive;

const MODULUS_GRID: usize = 4096;
const MODULUS_TOL: f64 = 1e-10;

/// Geometry of the Bernstein ellipse `E_ρ`, optionally with the maximum
/// modulus `M(ρ)` of a function on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseSpec {
    rho: f64,
    semi_major: f64,
    semi_minor: f64,
    length: f64,
    dist: f64,
    max_modulus: Option<f64>,
}

impl EllipseSpec {
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn semi_major(&self) -> f64 {
        self.semi_major
    }

    pub fn semi_minor(&self) -> f64 {
        self.semi_minor
    }

    /// Circumference `L(E_ρ)`.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Distance from `[-1, 1]` to the ellipse, `(ρ + ρ⁻¹)/2 - 1`.
    pub fn dist(&self) -> f64 {
        self.dist
    }

    /// `M(ρ)`, or a parameter error when no function was attached.
    pub fn max_modulus(&self) -> Result<f64> {
        self.max_modulus
            .ok_or_else(|| Error::Parameter("ellipse has no max modulus attached".into()))
    }

    /// Attach a caller-supplied `M(ρ)`.
    pub fn with_max_modulus(mut self, m: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::Parameter(format!("max modulus must be positive, got {m}")));
        }
        self.max_modulus = Some(m);
        Ok(self)
    }
}

/// Arc length of `E_ρ` by adaptive quadrature of `√(a² sin²θ + b² cos²θ)`.
/// `ρ = 1` is allowed and gives the doubly traversed interval, length 4.
pub fn ellipse_length(rho: f64) -> Result<f64> {
    if !(rho >= 1.0 && rho.is_finite()) {
        return Err(Error::Parameter(format!("ellipse needs rho >= 1, got {rho}")));
    }
    let a = 0.5 * (rho + rho.recip());
    let b = 0.5 * (rho - rho.recip());
    let speed = |t: f64| {
        let (s, c) = t.sin_cos();
        (a * a * s * s + b * b * c * c).sqrt()
    };
    let quarter = integrate_adaptive(speed, 0.0, FRAC_PI_2, 1e-13 * a)?;
    Ok(4.0 * quarter)
}

fn ellipse_z(rho: f64, theta: f64) -> Complex64 {
    let (s, c) = theta.sin_cos();
    Complex64::new(0.5 * (rho + rho.recip()) * c, 0.5 * (rho - rho.recip()) * s)
}

/// `max_θ |f(z(θ))|`: a 4096-point scan refined by golden section.
pub fn max_modulus_on_ellipse(f: &FunctionSpec, rho: f64) -> Result<f64> {
    if !(rho > 1.0 && rho.is_finite()) {
        return Err(Error::Parameter(format!("ellipse needs rho > 1, got {rho}")));
    }
    if let Some(rho_max) = f.rho_max() {
        if rho >= rho_max {
            return Err(Error::Analyticity { rho, rho_max });
        }
    }
    let modulus = |theta: f64| -> Option<f64> { f.eval_complex(ellipse_z(rho, theta)).map(|w| w.norm()) };
    if modulus(0.0).is_none() {
        return Err(Error::Parameter(format!(
            "{} has no analytic continuation",
            f.kind().name()
        )));
    }
    let h = TAU / MODULUS_GRID as f64;
    let (mut best_t, mut best) = (0.0, f64::NEG_INFINITY);
    for i in 0..MODULUS_GRID {
        let t = i as f64 * h;
        let v = modulus(t).unwrap_or(f64::NAN);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    let neg = |t: f64| -modulus(t).unwrap_or(f64::NAN);
    let (_, refined) = golden_section(&neg, best_t - h, best_t + h, MODULUS_TOL);
    Ok(best.max(-refined))
}

/// Geometry of `E_ρ`, with `M(ρ)` computed when a function is given.
pub fn ellipse_geometry(rho: f64, f: Option<&FunctionSpec>) -> Result<EllipseSpec> {
    if !(rho > 1.0 && rho.is_finite()) {
        return Err(Error::Parameter(format!("ellipse needs rho > 1, got {rho}")));
    }
    let semi_major = 0.5 * (rho + rho.recip());
    let max_modulus = match f {
        Some(f) => Some(max_modulus_on_ellipse(f, rho)?),
        None => None,
    };
    Ok(EllipseSpec {
        rho,
        semi_major,
        semi_minor: 0.5 * (rho - rho.recip()),
        length: ellipse_length(rho)?,
        dist: semi_major - 1.0,
        max_modulus,
    })
}
