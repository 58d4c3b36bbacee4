//! Test functions with registered smoothness data, their Legendre
//! coefficients, and measured projection errors.
//!
//! Coefficients `a_k = (k + ½) ∫ f P_k` are computed by Gauss quadrature. For
//! the piecewise-polynomial kinds the interval is split at θ and the rule is
//! exact; smooth and custom functions double the node count until successive
//! coefficient vectors agree.

mod function;

use rayon::prelude::*;

use crate::error::{check_unit_interval, Error, Result};
use crate::polycore::{gauss_legendre, integrate_adaptive};

pub use function::{Evaluator, FunctionKind, FunctionSpec};

const ADAPTIVE_TOL: f64 = 1e-13;
const MAX_NODES: usize = 1 << 14;
const NODE_CHUNK: usize = 256;

/// Legendre coefficients `a_0..a_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreSeries {
    coeffs: Vec<f64>,
}

impl LegendreSeries {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parameter("a series needs at least a_0".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parameter("series coefficients must be finite".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The degree-`n` truncation (the projection `f_n`).
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=n.min(self.degree())].to_vec(),
        }
    }

    /// `Σ a_k P_k(x)` in one recurrence sweep.
    pub fn eval(&self, x: f64) -> Result<f64> {
        check_unit_interval("x", x)?;
        Ok(self.eval_unchecked(x))
    }

    pub fn eval_unchecked(&self, x: f64) -> f64 {
        let mut sum = self.coeffs[0];
        let (mut p0, mut p1) = (1.0, x);
        for (k, &a) in self.coeffs.iter().enumerate().skip(1) {
            sum += a * p1;
            let kf = k as f64;
            let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
            p0 = p1;
            p1 = p2;
        }
        sum
    }

    /// `Σ_{k=0}^{N} a_k² / (k + ½)`, i.e. `‖f_N‖²`.
    pub fn energy(&self) -> f64 {
        self.tail_energy(0)
    }

    /// `Σ_{k=n}^{N} a_k² / (k + ½)`.
    pub fn tail_energy(&self, n: usize) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(n)
            .rev()
            .map(|(k, a)| a * a / (k as f64 + 0.5))
            .sum()
    }
}

/// `projection_eval` under its own name; see [`LegendreSeries::eval`].
pub fn projection_eval(s: &LegendreSeries, x: f64) -> Result<f64> {
    s.eval(x)
}

fn gauss_nodes_for(f: &FunctionSpec, q: usize) -> Result<Vec<(f64, f64)>> {
    let rule = gauss_legendre(q)?;
    Ok(match f.theta() {
        Some(t) => rule.mapped(-1.0, t).chain(rule.mapped(t, 1.0)).collect(),
        None => rule.mapped(-1.0, 1.0).collect(),
    })
}

/// `(k + ½) Σ_j w_j f(x_j) P_k(x_j)` for all `k ≤ n`.
fn project(f: &FunctionSpec, nodes: &[(f64, f64)], n: usize) -> Vec<f64> {
    let alpha: Vec<f64> = (0..=n).map(|k| (2 * k + 1) as f64 / (k + 1) as f64).collect();
    let beta: Vec<f64> = (0..=n).map(|k| k as f64 / (k + 1) as f64).collect();
    let partials: Vec<Vec<f64>> = nodes
        .par_chunks(NODE_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n + 1];
            for &(x, w) in chunk {
                let wf = w * f.eval(x);
                let (mut p0, mut p1) = (1.0, x);
                acc[0] += wf;
                for k in 1..=n {
                    acc[k] += wf * p1;
                    let p2 = alpha[k] * x * p1 - beta[k] * p0;
                    p0 = p1;
                    p1 = p2;
                }
            }
            acc
        })
        .collect();
    let mut out = vec![0.0; n + 1];
    for part in &partials {
        for (o, p) in out.iter_mut().zip(part) {
            *o += p;
        }
    }
    for (k, o) in out.iter_mut().enumerate() {
        *o *= k as f64 + 0.5;
    }
    out
}

/// Node count per piece that integrates `f P_k` exactly for `k ≤ n` when `f`
/// is quadratic or lower on each piece.
fn exact_node_count(n: usize) -> usize {
    (n + 3).div_ceil(2) + 2
}

/// Legendre coefficients `a_0..a_n` of `f`.
pub fn legendre_coeffs(f: &FunctionSpec, n: usize) -> Result<LegendreSeries> {
    if f.is_piecewise_polynomial() {
        let nodes = gauss_nodes_for(f, exact_node_count(n))?;
        return LegendreSeries::new(project(f, &nodes, n));
    }
    let mut q = (n + 2).max(32);
    let mut prev = project(f, &gauss_nodes_for(f, q)?, n);
    loop {
        q *= 2;
        let next = project(f, &gauss_nodes_for(f, q)?, n);
        let change = prev
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if change <= ADAPTIVE_TOL {
            return LegendreSeries::new(next);
        }
        if q >= MAX_NODES || !change.is_finite() {
            return Err(Error::Quadrature {
                achieved: change,
                tolerance: ADAPTIVE_TOL,
            });
        }
        prev = next;
    }
}

/// Reference degree used for Parseval tails when the caller does not choose one.
pub fn default_reference_degree(n: usize) -> usize {
    (4 * n).max(n + 200)
}

/// Measured `‖f - f_n‖₂` from the Parseval tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L2Error {
    pub value: f64,
    /// Share of the tail energy carried by the last retained term.
    pub last_term_share: f64,
}

impl L2Error {
    /// True when the last retained term still carries more than 1e-15 of the
    /// tail, i.e. the reference degree may be too small.
    pub fn truncation_warning(&self) -> bool {
        self.last_term_share > 1e-15
    }
}

fn l2_from_series(s: &LegendreSeries, n: usize) -> L2Error {
    let n_ref = s.degree();
    if n >= n_ref {
        return L2Error {
            value: 0.0,
            last_term_share: 0.0,
        };
    }
    let tail = s.tail_energy(n + 1);
    let last = s.coeffs()[n_ref].powi(2) / (n_ref as f64 + 0.5);
    L2Error {
        value: tail.sqrt(),
        last_term_share: if tail > 0.0 { last / tail } else { 0.0 },
    }
}

/// `√(Σ_{k=n+1}^{N_ref} a_k² / (k + ½))`.
pub fn l2_error(f: &FunctionSpec, n: usize, n_ref: usize) -> Result<L2Error> {
    if n_ref < 4 * n {
        return Err(Error::Parameter(format!(
            "reference degree {n_ref} is below 4n = {}",
            4 * n
        )));
    }
    let s = legendre_coeffs(f, n_ref)?;
    Ok(l2_from_series(&s, n))
}

/// L² errors for several degrees from one reference series.
pub fn l2_errors(f: &FunctionSpec, degrees: &[usize], n_ref: usize) -> Result<Vec<L2Error>> {
    let top = degrees.iter().copied().max().unwrap_or(0);
    if n_ref < 4 * top {
        return Err(Error::Parameter(format!(
            "reference degree {n_ref} is below 4n = {}",
            4 * top
        )));
    }
    let s = legendre_coeffs(f, n_ref)?;
    Ok(degrees.iter().map(|&n| l2_from_series(&s, n)).collect())
}

/// `‖f - f_n‖₂` by direct quadrature of the squared residual; an independent
/// route for cross-checking [`l2_error`].
pub fn l2_error_quadrature(f: &FunctionSpec, n: usize) -> Result<f64> {
    let s = legendre_coeffs(f, n)?;
    let residual = |x: f64| {
        let r = f.eval(x) - s.eval_unchecked(x);
        r * r
    };
    let value = if f.is_piecewise_polynomial() {
        let nodes = gauss_nodes_for(f, n + 4)?;
        nodes.iter().map(|&(x, w)| w * residual(x)).sum::<f64>()
    } else {
        let cuts: Vec<f64> = match f.theta() {
            Some(t) => vec![-1.0, t, 1.0],
            None => vec![-1.0, 1.0],
        };
        let mut total = 0.0;
        for w in cuts.windows(2) {
            total += integrate_adaptive(residual, w[0], w[1], 1e-16)?;
        }
        total
    };
    Ok(value.max(0.0).sqrt())
}

/// Measured `max |f - f_n|` and where it occurs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinfError {
    pub value: f64,
    pub location: f64,
}

/// Chebyshev-distributed grid `-cos(π i / (size - 1))` with an optional extra point.
pub(crate) fn chebyshev_grid(size: usize, extra: Option<f64>) -> Vec<f64> {
    let mut xs: Vec<f64> = (0..size)
        .map(|i| -(std::f64::consts::PI * i as f64 / (size - 1) as f64).cos())
        .collect();
    xs[0] = -1.0;
    xs[size - 1] = 1.0;
    if size % 2 == 1 {
        xs[size / 2] = 0.0;
    }
    if let Some(t) = extra {
        if let Err(i) = xs.binary_search_by(|x| x.total_cmp(&t)) {
            xs.insert(i, t);
        }
    }
    xs
}

/// Index of the largest value (first on ties).
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Vertex of the parabola through three points, if it lies strictly between
/// the outer two.
pub(crate) fn parabolic_vertex(x: [f64; 3], y: [f64; 3]) -> Option<f64> {
    let d1 = (y[1] - y[0]) / (x[1] - x[0]);
    let d2 = (y[2] - y[1]) / (x[2] - x[1]);
    let curv = (d2 - d1) / (x[2] - x[0]);
    if curv >= 0.0 {
        return None;
    }
    let v = 0.5 * (x[0] + x[1]) - d1 / (2.0 * curv);
    (v > x[0] && v < x[2]).then_some(v)
}

/// `max |f - f_n|` over a Chebyshev grid of `grid` points (θ added), refined by
/// a parabola through the argmax and its neighbours.
pub fn linf_error(f: &FunctionSpec, n: usize, grid: usize) -> Result<LinfError> {
    if grid < 10001 {
        return Err(Error::Parameter(format!("grid = {grid} must be at least 10001")));
    }
    let s = legendre_coeffs(f, n)?;
    Ok(linf_error_of(f, &s, grid))
}

pub(crate) fn linf_error_of(f: &FunctionSpec, s: &LegendreSeries, grid: usize) -> LinfError {
    grid_max(f, s, grid, |_| 1.0)
}

/// `max (1 - x²)^{1/4} |f - f_n|` on the same grid as [`linf_error`].
pub fn weighted_linf_error(f: &FunctionSpec, n: usize, grid: usize) -> Result<LinfError> {
    if grid < 10001 {
        return Err(Error::Parameter(format!("grid = {grid} must be at least 10001")));
    }
    let s = legendre_coeffs(f, n)?;
    Ok(weighted_linf_error_of(f, &s, grid))
}

pub(crate) fn weighted_linf_error_of(f: &FunctionSpec, s: &LegendreSeries, grid: usize) -> LinfError {
    grid_max(f, s, grid, |x| (1.0 - x * x).max(0.0).powf(0.25))
}

fn grid_max<W: Fn(f64) -> f64 + Sync>(f: &FunctionSpec, s: &LegendreSeries, grid: usize, weight: W) -> LinfError {
    let xs = chebyshev_grid(grid, f.theta());
    let err = |x: f64| weight(x) * (f.eval(x) - s.eval_unchecked(x)).abs();
    let errs: Vec<f64> = xs.par_iter().map(|&x| err(x)).collect();
    let i = argmax(&errs);
    let mut best = LinfError {
        value: errs[i],
        location: xs[i],
    };
    if i > 0 && i + 1 < xs.len() && Some(xs[i]) != f.theta() {
        if let Some(v) = parabolic_vertex([xs[i - 1], xs[i], xs[i + 1]], [errs[i - 1], errs[i], errs[i + 1]]) {
            let e = err(v);
            if e > best.value {
                best = LinfError { value: e, location: v };
            }
        }
    }
    best
}

/// The registered total variation `V_order`.
pub fn total_variation(f: &FunctionSpec, order: usize) -> Result<f64> {
    f.variations()
        .get(order)
        .copied()
        .ok_or(Error::UnsupportedOrder {
            order,
            max: f.m(),
        })
}

#[cfg(test)]
mod tests;
