use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which test function a [`FunctionSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    /// `|x - θ|`
    AbsShift,
    /// `(x - θ)₊²`
    TruncPow2,
    /// `1 / (1 + (a x)²)`
    Runge,
    /// A caller-supplied evaluator with declared smoothness data.
    Custom,
}

impl FunctionKind {
    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::AbsShift => "abs_shift",
            FunctionKind::TruncPow2 => "trunc_pow2",
            FunctionKind::Runge => "runge",
            FunctionKind::Custom => "custom",
        }
    }
}

pub type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A test function together with the smoothness data the bounds consume.
///
/// `variations[k]` is the total variation of the `k`-th derivative on
/// `[-1, 1]`, registered analytically; nothing here is estimated from samples.
#[derive(Clone)]
pub struct FunctionSpec {
    kind: FunctionKind,
    theta: Option<f64>,
    a: Option<f64>,
    m: usize,
    variations: Vec<f64>,
    weighted_variation: Option<f64>,
    rho_max: Option<f64>,
    custom: Option<Evaluator>,
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSpec")
            .field("kind", &self.kind)
            .field("theta", &self.theta)
            .field("a", &self.a)
            .field("m", &self.m)
            .field("variations", &self.variations)
            .field("rho_max", &self.rho_max)
            .finish()
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "theta",
            value: theta,
            domain: "(-1, 1)",
        })
    }
}

impl FunctionSpec {
    /// `|x - θ|`: m = 1, V_1 = 2.
    pub fn abs_shift(theta: f64) -> Result<Self> {
        check_theta(theta)?;
        Ok(Self {
            kind: FunctionKind::AbsShift,
            theta: Some(theta),
            a: None,
            m: 1,
            variations: vec![2.0, 2.0],
            weighted_variation: Some(2.0 * (1.0 - theta * theta).powf(-0.25)),
            rho_max: None,
            custom: None,
        })
    }

    /// `(x - θ)₊²`: m = 2, V_2 = 2.
    pub fn trunc_pow2(theta: f64) -> Result<Self> {
        check_theta(theta)?;
        let r = 1.0 - theta;
        Ok(Self {
            kind: FunctionKind::TruncPow2,
            theta: Some(theta),
            a: None,
            m: 2,
            variations: vec![r * r, 2.0 * r, 2.0],
            weighted_variation: Some(2.0 * (1.0 - theta * theta).powf(-0.25)),
            rho_max: None,
            custom: None,
        })
    }

    /// `1 / (1 + (a x)²)`, analytic inside the ellipse with `ρ = (1 + √(a² + 1)) / a`.
    pub fn runge(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Parameter(format!("runge parameter a = {a} must be positive")));
        }
        let floor = 1.0 / (1.0 + a * a);
        Ok(Self {
            kind: FunctionKind::Runge,
            theta: None,
            a: Some(a),
            m: 0,
            variations: vec![2.0 * (1.0 - floor)],
            weighted_variation: None,
            rho_max: Some((1.0 + (a * a + 1.0).sqrt()) / a),
            custom: None,
        })
    }

    /// A caller-supplied function. `variations` lists V_0..V_m; `theta`, if
    /// given, is a point where the function may be non-smooth and where
    /// quadrature splits the interval.
    pub fn custom<F>(f: F, variations: Vec<f64>, theta: Option<f64>) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if variations.is_empty() {
            return Err(Error::Parameter("custom function needs at least V_0".into()));
        }
        if variations.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Parameter("variations must be finite and nonnegative".into()));
        }
        if let Some(t) = theta {
            check_theta(t)?;
        }
        Ok(Self {
            kind: FunctionKind::Custom,
            theta,
            a: None,
            m: variations.len() - 1,
            variations,
            weighted_variation: None,
            rho_max: None,
            custom: Some(Arc::new(f)),
        })
    }

    /// Attach the weighted seminorm used by the older coefficient bound.
    pub fn with_weighted_variation(mut self, v: f64) -> Self {
        self.weighted_variation = Some(v);
        self
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn theta(&self) -> Option<f64> {
        self.theta
    }

    pub fn a(&self) -> Option<f64> {
        self.a
    }

    /// Highest derivative order with registered bounded variation.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn variations(&self) -> &[f64] {
        &self.variations
    }

    /// V_m for the registered m.
    pub fn top_variation(&self) -> f64 {
        self.variations[self.m]
    }

    pub fn weighted_variation(&self) -> Option<f64> {
        self.weighted_variation
    }

    pub fn rho_max(&self) -> Option<f64> {
        self.rho_max
    }

    /// True when the function is a polynomial on each side of θ.
    pub fn is_piecewise_polynomial(&self) -> bool {
        matches!(self.kind, FunctionKind::AbsShift | FunctionKind::TruncPow2)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            FunctionKind::AbsShift => (x - self.theta.unwrap_or(0.0)).abs(),
            FunctionKind::TruncPow2 => {
                let d = (x - self.theta.unwrap_or(0.0)).max(0.0);
                d * d
            }
            FunctionKind::Runge => {
                let ax = self.a.unwrap_or(1.0) * x;
                1.0 / (1.0 + ax * ax)
            }
            FunctionKind::Custom => (self.custom.as_ref().expect("custom evaluator"))(x),
        }
    }

    /// First derivative for the registered kinds (one-sided choice at θ is
    /// arbitrary); `None` for custom functions.
    pub fn derivative(&self, x: f64) -> Option<f64> {
        match self.kind {
            FunctionKind::AbsShift => Some((x - self.theta?).signum()),
            FunctionKind::TruncPow2 => Some(2.0 * (x - self.theta?).max(0.0)),
            FunctionKind::Runge => {
                let a2 = self.a? * self.a?;
                let q = 1.0 + a2 * x * x;
                Some(-2.0 * a2 * x / (q * q))
            }
            FunctionKind::Custom => None,
        }
    }

    /// Analytic continuation, where one exists.
    pub fn eval_complex(&self, z: Complex64) -> Option<Complex64> {
        match self.kind {
            FunctionKind::Runge => {
                let az = z * self.a?;
                Some((az * az + 1.0).inv())
            }
            _ => None,
        }
    }
}
