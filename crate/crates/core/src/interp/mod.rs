//! Barycentric interpolation and spectral differentiation at arbitrary
//! distinct nodes, plus the Runge-function convergence experiments at LGL
//! points.

mod runge;

use crate::error::{check_unit_interval, Error, Result};

pub use runge::{
    runge_diff_experiment, runge_interp_experiment, RateFit, RungeExperiment, FIT_FLOOR,
    FIT_WINDOW,
};

/// Evaluations this close to a node return the node value.
const NODE_GUARD: f64 = 1e-14;

const RESCALE_BITS: i32 = 512;
const RESCALE_HI: f64 = 1.340_780_792_994_259_7e154; // 2^512
const RESCALE_LO: f64 = 7.458_340_731_200_207e-155; // 2^-512

/// Sorted distinct nodes with barycentric weights scaled so `max |w_j| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricSet {
    points: Vec<f64>,
    weights: Vec<f64>,
}

/// `w_j ∝ 1 / ∏_{k≠j} (x_j - x_k)`. Each factor is doubled, which keeps the
/// products near unit size for nodes filling `[-1, 1]` (capacity ½).
pub fn barycentric_weights(points: &[f64]) -> Result<BarycentricSet> {
    if points.len() < 2 {
        return Err(Error::Parameter("interpolation needs at least two points".into()));
    }
    for &x in points {
        check_unit_interval("interpolation point", x)?;
    }
    for (i, w) in points.windows(2).enumerate() {
        if w[1] == w[0] {
            return Err(Error::DuplicatePoint { index: i + 1, x: w[1] });
        }
        if w[1] < w[0] {
            return Err(Error::Parameter(format!(
                "interpolation points must be sorted (index {} is out of order)",
                i + 1
            )));
        }
    }
    // Each product is carried as mantissa · 2^exponent; partial products of
    // the small factors near an endpoint would otherwise underflow for large n.
    let products: Vec<(f64, i32)> = points
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let (mut acc, mut exp) = (1.0f64, 0i32);
            for (k, &xk) in points.iter().enumerate() {
                if k == j {
                    continue;
                }
                acc *= 2.0 * (xj - xk);
                let a = acc.abs();
                if a > RESCALE_HI {
                    acc *= RESCALE_LO;
                    exp += RESCALE_BITS;
                } else if a < RESCALE_LO {
                    acc *= RESCALE_HI;
                    exp -= RESCALE_BITS;
                }
            }
            (acc, exp)
        })
        .collect();
    let min_exp = products.iter().map(|p| p.1).min().expect("nonempty");
    let mut weights: Vec<f64> = products
        .iter()
        .map(|&(acc, exp)| (2.0f64).powi(min_exp - exp) / acc)
        .collect();
    let scale = weights.iter().fold(0.0f64, |m, w| m.max(w.abs()));
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::Parameter("barycentric weights over- or underflowed".into()));
    }
    for w in &mut weights {
        *w /= scale;
    }
    Ok(BarycentricSet {
        points: points.to_vec(),
        weights,
    })
}

impl BarycentricSet {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Second-form barycentric interpolant of `values` at `x`.
    pub fn eval(&self, values: &[f64], x: f64) -> Result<f64> {
        self.check_values(values)?;
        check_unit_interval("x", x)?;
        Ok(self.eval_unchecked(values, x))
    }

    pub(crate) fn eval_unchecked(&self, values: &[f64], x: f64) -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for ((&xj, &wj), &vj) in self.points.iter().zip(&self.weights).zip(values) {
            let d = x - xj;
            if d.abs() <= NODE_GUARD {
                return vj;
            }
            let t = wj / d;
            num += t * vj;
            den += t;
        }
        num / den
    }

    fn check_values(&self, values: &[f64]) -> Result<()> {
        if values.len() == self.len() {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "expected {} node values, got {}",
                self.len(),
                values.len()
            )))
        }
    }
}

/// Spectral differentiation matrix on the nodes of a [`BarycentricSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiffMatrix {
    size: usize,
    entries: Vec<f64>,
}

/// `D_jk = (w_k / w_j) / (x_j - x_k)` off the diagonal; each diagonal entry is
/// minus the sum of the rest of its row.
pub fn diff_matrix(b: &BarycentricSet) -> DiffMatrix {
    let size = b.len();
    let (x, w) = (b.points(), b.weights());
    let mut entries = vec![0.0; size * size];
    for j in 0..size {
        let row = &mut entries[j * size..(j + 1) * size];
        let mut sum = 0.0;
        for k in 0..size {
            if k != j {
                row[k] = (w[k] / w[j]) / (x[j] - x[k]);
                sum += row[k];
            }
        }
        row[j] = -sum;
    }
    DiffMatrix { size, entries }
}

impl DiffMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.entries[j * self.size + k]
    }

    pub fn row(&self, j: usize) -> &[f64] {
        &self.entries[j * self.size..(j + 1) * self.size]
    }

    /// `D v`.
    pub fn apply(&self, values: &[f64]) -> Result<Vec<f64>> {
        if values.len() != self.size {
            return Err(Error::Parameter(format!(
                "expected {} node values, got {}",
                self.size,
                values.len()
            )));
        }
        Ok((0..self.size)
            .map(|j| self.row(j).iter().zip(values).map(|(d, v)| d * v).sum())
            .collect())
    }
}
