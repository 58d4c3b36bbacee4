//! The tables behind the CLI: each function runs one sweep and returns it as a
//! [`CsvTable`]. Rows come out in a fixed order, so the rendered bytes only
//! depend on the arguments.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::bounds::{
    coeff_bound_new, coeff_bound_old, interior_linf_bound, l2_error_bound, l2_error_bound_liu,
    linf_error_bound,
};
use crate::coefficients::{l2_errors, legendre_coeffs, linf_error_of, FunctionSpec, LegendreSeries};
use crate::csv::{Cell, CsvTable};
use crate::error::{Error, Result};
use crate::interp::{runge_diff_experiment, runge_interp_experiment, RungeExperiment};
use crate::lobatto::{
    ellipse_min_scan, ggl_grid_max, ggl_max_bound, phi_lgl_max, phi_lgl_unchecked, GglParams,
};

/// Smallest reference degree used for Parseval tails.
pub const MIN_REFERENCE_DEGREE: usize = 8192;

fn check_range(n_min: usize, n_max: usize, min: usize) -> Result<()> {
    if n_min < min {
        return Err(Error::Validity { n: n_min, min });
    }
    if n_max < n_min {
        return Err(Error::Parameter(format!("n-max = {n_max} is below n-min = {n_min}")));
    }
    Ok(())
}

fn theta_of(f: &FunctionSpec) -> Result<f64> {
    f.theta()
        .ok_or_else(|| Error::Parameter(format!("{} has no breakpoint", f.kind().name())))
}

/// `n, max, location, bound_simple, bound_sharp, scaled` for `max |φ_n^LGL|`.
pub fn phi_max_table(n_min: usize, n_max: usize) -> Result<CsvTable> {
    check_range(n_min, n_max, 1)?;
    let rows = (n_min..=n_max)
        .into_par_iter()
        .map(phi_lgl_max)
        .collect::<Result<Vec<_>>>()?;
    let mut t = CsvTable::new(&["n", "max", "location", "bound_simple", "bound_sharp", "scaled"]);
    for (n, m) in (n_min..).zip(&rows) {
        t.push(&[
            n.into(),
            m.value.into(),
            m.location.into(),
            m.bound_simple.into(),
            m.bound_sharp.into(),
            m.scaled(n).into(),
        ]);
    }
    Ok(t)
}

/// `x, phi, scaled` with `scaled = |φ_n(x)| √(2πn) / 4`, on a uniform grid
/// that also contains the two maximisers.
pub fn phi_scaled_table(n: usize, grid: usize) -> Result<CsvTable> {
    if grid < 2 {
        return Err(Error::Parameter(format!("grid = {grid} needs at least 2 points")));
    }
    let top = phi_lgl_max(n)?;
    let mut xs: Vec<f64> = (0..grid)
        .map(|i| -1.0 + 2.0 * i as f64 / (grid - 1) as f64)
        .collect();
    for x in [-top.location, top.location] {
        // IEEE order, so an odd-degree maximiser at ±0 is not inserted twice.
        if let Err(i) = xs.binary_search_by(|p| p.partial_cmp(&x).expect("finite grid")) {
            xs.insert(i, x);
        }
    }
    let scale = (2.0 * PI * n as f64).sqrt() / 4.0;
    let mut t = CsvTable::new(&["x", "phi", "scaled"]);
    for x in xs {
        let phi = phi_lgl_unchecked(n, x);
        t.push(&[x.into(), phi.into(), (phi.abs() * scale).into()]);
    }
    Ok(t)
}

/// Exact coefficients against the new and old bounds:
/// `theta, n, a_n, bound_new, bound_old, ratio` with `ratio = |a_n| / bound_new`.
pub fn coeff_bounds_table(fs: &[FunctionSpec], n_min: usize, n_max: usize) -> Result<CsvTable> {
    let mut t = CsvTable::new(&["theta", "n", "a_n", "bound_new", "bound_old", "ratio"]);
    for f in fs {
        let (m, v) = (f.m(), f.top_variation());
        check_range(n_min, n_max, m + 1)?;
        let theta = theta_of(f)?;
        let v_bar = f.weighted_variation().ok_or_else(|| {
            Error::Parameter(format!("{} has no weighted variation", f.kind().name()))
        })?;
        let s = legendre_coeffs(f, n_max)?;
        for n in n_min..=n_max {
            let a = s.coeffs()[n];
            let new = coeff_bound_new(n, m, v)?;
            t.push(&[
                theta.into(),
                n.into(),
                a.into(),
                new.into(),
                coeff_bound_old(n, m, v_bar)?.into(),
                (a.abs() / new).into(),
            ]);
        }
    }
    Ok(t)
}

fn reference_degree(n_max: usize) -> usize {
    MIN_REFERENCE_DEGREE.max(4 * n_max)
}

/// Parseval L² errors against both L² bounds:
/// `theta, n, l2_error, bound, bound_liu, ratio, last_term_share`.
pub fn l2_bounds_table(fs: &[FunctionSpec], n_min: usize, n_max: usize) -> Result<CsvTable> {
    let mut t = CsvTable::new(&["theta", "n", "l2_error", "bound", "bound_liu", "ratio", "last_term_share"]);
    for f in fs {
        let (m, v) = (f.m(), f.top_variation());
        check_range(n_min, n_max, m + 1)?;
        let theta = theta_of(f)?;
        let degrees: Vec<usize> = (n_min..=n_max).collect();
        let errors = l2_errors(f, &degrees, reference_degree(n_max))?;
        for (&n, e) in degrees.iter().zip(&errors) {
            let bound = l2_error_bound(n, m, v)?;
            t.push(&[
                theta.into(),
                n.into(),
                e.value.into(),
                bound.into(),
                l2_error_bound_liu(n, m, v)?.into(),
                (bound / e.value).into(),
                e.last_term_share.into(),
            ]);
        }
    }
    Ok(t)
}

/// One row of an L∞ sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinfRow {
    pub n: usize,
    pub error: f64,
    pub location: f64,
    pub bound: f64,
    /// The weighted bound unwound at the breakpoint.
    pub interior_bound: f64,
}

/// Max errors of the projections of `f` on a Chebyshev grid, `n ∈ [n_min, n_max]`.
pub fn linf_sweep(f: &FunctionSpec, n_min: usize, n_max: usize, grid: usize) -> Result<Vec<LinfRow>> {
    let (m, v) = (f.m(), f.top_variation());
    check_range(n_min, n_max, m + 1)?;
    if grid < 10001 {
        return Err(Error::Parameter(format!("grid = {grid} must be at least 10001")));
    }
    let tau = theta_of(f)?;
    let full = legendre_coeffs(f, n_max)?;
    (n_min..=n_max)
        .map(|n| {
            let s = LegendreSeries::new(full.coeffs()[..=n].to_vec())?;
            let e = linf_error_of(f, &s, grid);
            Ok(LinfRow {
                n,
                error: e.value,
                location: e.location,
                bound: linf_error_bound(n, m, v)?,
                interior_bound: interior_linf_bound(n, m, v, tau)?,
            })
        })
        .collect()
}

/// `theta, n, linf_error, location, bound, interior_bound, ratio` with
/// `ratio = interior_bound / linf_error`.
pub fn linf_bounds_table(fs: &[FunctionSpec], n_min: usize, n_max: usize, grid: usize) -> Result<CsvTable> {
    let mut t = CsvTable::new(&["theta", "n", "linf_error", "location", "bound", "interior_bound", "ratio"]);
    for f in fs {
        let theta = theta_of(f)?;
        for r in linf_sweep(f, n_min, n_max, grid)? {
            t.push(&[
                theta.into(),
                r.n.into(),
                r.error.into(),
                r.location.into(),
                r.bound.into(),
                r.interior_bound.into(),
                (r.interior_bound / r.error).into(),
            ]);
        }
    }
    Ok(t)
}

/// `lambda, n, grid_max, location, bound, ratio` with `ratio = grid_max / bound`.
pub fn ggl_max_table(lambdas: &[f64], n_min: usize, n_max: usize, grid: usize) -> Result<CsvTable> {
    check_range(n_min, n_max, 1)?;
    let mut t = CsvTable::new(&["lambda", "n", "grid_max", "location", "bound", "ratio"]);
    for &lambda in lambdas {
        let p = GglParams::new(lambda)?;
        let rows = (n_min..=n_max)
            .into_par_iter()
            .map(|n| Ok((ggl_grid_max(n, p, grid)?, ggl_max_bound(n, p)?)))
            .collect::<Result<Vec<_>>>()?;
        for (n, ((max, at), bound)) in (n_min..).zip(rows) {
            t.push(&[lambda.into(), n.into(), max.into(), at.into(), bound.into(), (max / bound).into()]);
        }
    }
    Ok(t)
}

/// `n, rho, theta_star, min_value, endpoint_min, distance` for the minimum of
/// `|φ_n^LGL|` on each ellipse.
pub fn ellipse_min_table(degrees: &[usize], rhos: &[f64], grid: usize) -> Result<CsvTable> {
    let mut t = CsvTable::new(&["n", "rho", "theta_star", "min_value", "endpoint_min", "distance"]);
    for &n in degrees {
        for &rho in rhos {
            let m = ellipse_min_scan(n, rho, grid)?;
            t.push(&[
                n.into(),
                rho.into(),
                m.theta_star.into(),
                m.min_value.into(),
                m.endpoint_min.into(),
                m.distance_to_real_axis().into(),
            ]);
        }
    }
    Ok(t)
}

/// Which Runge experiment to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RungeMode {
    Interp,
    Diff,
}

/// Runs the experiment for each `a`; the table has `a, n, error, bound, ratio`.
pub fn runge_table(mode: RungeMode, a_values: &[f64], n_min: usize, n_max: usize) -> Result<(CsvTable, Vec<RungeExperiment>)> {
    check_range(n_min, n_max, 1)?;
    let degrees: Vec<usize> = (n_min..=n_max).collect();
    let mut t = CsvTable::new(&["a", "n", "error", "bound", "ratio"]);
    let mut runs = Vec::with_capacity(a_values.len());
    for &a in a_values {
        let run = match mode {
            RungeMode::Interp => runge_interp_experiment(a, &degrees)?,
            RungeMode::Diff => runge_diff_experiment(a, &degrees)?,
        };
        let r = &run.report;
        for i in 0..r.len() {
            t.push(&[
                Cell::from(a),
                r.degrees[i].into(),
                r.measured[i].into(),
                r.bound[i].into(),
                r.ratio[i].into(),
            ]);
        }
        runs.push(run);
    }
    Ok((t, runs))
}
