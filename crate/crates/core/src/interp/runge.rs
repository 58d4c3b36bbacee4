use rayon::prelude::*;

use super::{barycentric_weights, diff_matrix};
use crate::bounds::{ellipse_geometry, lgl_diff_bound, lgl_interp_bound, BoundReport};
use crate::coefficients::{chebyshev_grid, FunctionSpec};
use crate::error::{Error, Result};
use crate::lobatto::lgl_points;

/// Errors at or below this level are rounding noise and excluded from fits.
pub const FIT_FLOOR: f64 = 1e-13;
/// Number of trailing admissible degrees used in a rate fit.
pub const FIT_WINDOW: usize = 20;

const ERROR_GRID: usize = 10_001;
/// The bounds need an ellipse strictly inside the analyticity region.
const RHO_FRACTION: f64 = 0.999;

/// A Runge convergence run: errors against the LGL bound, and the geometric
/// rate fitted to the errors.
#[derive(Debug, Clone, PartialEq)]
pub struct RungeExperiment {
    pub report: BoundReport,
    pub fitted_rho: f64,
    /// Smallest constant `K` making the bound hold at every degree.
    pub fitted_k: f64,
    pub rho_max: f64,
}

/// How a geometric rate `e_n ≈ C n^power ρ^{-n}` is fitted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    /// Algebraic factor removed before the fit.
    pub power: f64,
    /// Errors at or below `floor · n^floor_power` are excluded.
    pub floor: f64,
    pub floor_power: f64,
    /// Number of trailing admissible degrees used.
    pub window: usize,
}

impl RateFit {
    /// Interpolation errors: plain geometric decay, fixed rounding floor.
    pub const INTERP: RateFit = RateFit {
        power: 0.0,
        floor: FIT_FLOOR,
        floor_power: 0.0,
        window: FIT_WINDOW,
    };

    /// Differentiation errors: `n^{3/2}` removed, and the floor grows like the
    /// `n²` rounding amplification of the differentiation matrix.
    pub const DIFF: RateFit = RateFit {
        power: 1.5,
        floor: FIT_FLOOR,
        floor_power: 2.0,
        window: FIT_WINDOW,
    };

    /// Least-squares slope of `ln e_n - power ln n` against `n`; returns `ρ`.
    pub fn fit(&self, degrees: &[usize], errors: &[f64]) -> Result<f64> {
        let usable: Vec<(f64, f64)> = degrees
            .iter()
            .zip(errors)
            .map(|(&n, &e)| (n as f64, e))
            .filter(|&(n, e)| e.is_finite() && e > self.floor * n.powf(self.floor_power))
            .map(|(n, e)| (n, e.ln() - self.power * n.ln()))
            .collect();
        let tail = &usable[usable.len().saturating_sub(self.window)..];
        if tail.len() < 3 {
            return Err(Error::DegenerateFit(format!(
                "{} degrees above the rounding floor, need at least 3",
                tail.len()
            )));
        }
        let k = tail.len() as f64;
        let mx = tail.iter().map(|p| p.0).sum::<f64>() / k;
        let my = tail.iter().map(|p| p.1).sum::<f64>() / k;
        let sxx: f64 = tail.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = tail.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        if sxx == 0.0 {
            return Err(Error::DegenerateFit("all usable samples share one degree".into()));
        }
        Ok((-sxy / sxx).exp())
    }
}

fn check_degrees(degrees: &[usize]) -> Result<()> {
    if degrees.is_empty() {
        return Err(Error::Parameter("no degrees requested".into()));
    }
    if let Some(&n) = degrees.iter().find(|&&n| n == 0) {
        return Err(Error::Validity { n, min: 1 });
    }
    Ok(())
}

fn interp_error(f: &FunctionSpec, n: usize, grid: &[f64]) -> Result<f64> {
    let nodes = lgl_points(n)?;
    let b = barycentric_weights(nodes.points())?;
    let values: Vec<f64> = nodes.points().iter().map(|&x| f.eval(x)).collect();
    Ok(grid
        .iter()
        .map(|&x| (f.eval(x) - b.eval_unchecked(&values, x)).abs())
        .fold(0.0, f64::max))
}

fn diff_error(f: &FunctionSpec, n: usize) -> Result<f64> {
    let nodes = lgl_points(n)?;
    let b = barycentric_weights(nodes.points())?;
    let values: Vec<f64> = nodes.points().iter().map(|&x| f.eval(x)).collect();
    let d = diff_matrix(&b).apply(&values)?;
    Ok(nodes
        .points()
        .iter()
        .zip(&d)
        .map(|(&x, dv)| (f.derivative(x).expect("registered derivative") - dv).abs())
        .fold(0.0, f64::max))
}

fn finish(
    label: String,
    degrees: &[usize],
    measured: Vec<f64>,
    bound: Vec<f64>,
    fit: RateFit,
    rho_max: f64,
) -> Result<RungeExperiment> {
    let fitted_rho = fit.fit(degrees, &measured)?;
    let fitted_k = measured
        .iter()
        .zip(&bound)
        .map(|(m, b)| m / b)
        .fold(0.0, f64::max);
    Ok(RungeExperiment {
        report: BoundReport::new(label, degrees.to_vec(), measured, bound)?,
        fitted_rho,
        fitted_k,
        rho_max,
    })
}

/// Max interpolation error of `1/(1 + (ax)²)` at LGL points on a 10001-point
/// Chebyshev grid, for each degree.
pub fn runge_interp_experiment(a: f64, degrees: &[usize]) -> Result<RungeExperiment> {
    check_degrees(degrees)?;
    let f = FunctionSpec::runge(a)?;
    let rho_max = f.rho_max().expect("runge has a radius");
    let e = ellipse_geometry(RHO_FRACTION * rho_max, Some(&f))?;
    let grid = chebyshev_grid(ERROR_GRID, None);
    let measured = degrees
        .par_iter()
        .map(|&n| interp_error(&f, n, &grid))
        .collect::<Result<Vec<f64>>>()?;
    let bound = degrees
        .iter()
        .map(|&n| lgl_interp_bound(n, &e, 1.0))
        .collect::<Result<Vec<f64>>>()?;
    finish(format!("interp-runge a={a}"), degrees, measured, bound, RateFit::INTERP, rho_max)
}

/// Max nodal error of the spectral derivative of `1/(1 + (ax)²)`; the rate is
/// fitted after removing the `n^{3/2}` factor.
pub fn runge_diff_experiment(a: f64, degrees: &[usize]) -> Result<RungeExperiment> {
    check_degrees(degrees)?;
    let f = FunctionSpec::runge(a)?;
    let rho_max = f.rho_max().expect("runge has a radius");
    let e = ellipse_geometry(RHO_FRACTION * rho_max, Some(&f))?;
    let measured = degrees
        .par_iter()
        .map(|&n| diff_error(&f, n))
        .collect::<Result<Vec<f64>>>()?;
    let bound = degrees
        .iter()
        .map(|&n| lgl_diff_bound(n, &e, 1.0))
        .collect::<Result<Vec<f64>>>()?;
    finish(format!("diff-runge a={a}"), degrees, measured, bound, RateFit::DIFF, rho_max)
}
