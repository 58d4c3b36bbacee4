use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 20;

/// How a [`NodeSet`] was produced, and therefore which invariants its weights obey.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Gauss,
    GaussLobatto,
    Barycentric,
}

/// Sorted nodes in `[-1, 1]` together with their weights.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    points: Vec<f64>,
    weights: Vec<f64>,
    kind: NodeKind,
}

impl NodeSet {
    pub(crate) fn new(points: Vec<f64>, weights: Vec<f64>, kind: NodeKind) -> Self {
        debug_assert_eq!(points.len(), weights.len());
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        Self { points, weights, kind }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `Σ w_j f(x_j)`; only meaningful for quadrature kinds.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Nodes and weights affinely mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.points
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

/// Legendre recurrence ratios `(2k+1)/(k+1)` and `k/(k+1)`, tabulated once per
/// degree so root searches avoid a division per step.
struct RecurrenceTable {
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

impl RecurrenceTable {
    fn new(n: usize) -> Self {
        let alpha = (0..n).map(|k| (2 * k + 1) as f64 / (k + 1) as f64).collect();
        let beta = (0..n).map(|k| k as f64 / (k + 1) as f64).collect();
        Self { alpha, beta }
    }

    /// `(P_{n-1}(x), P_n(x))`.
    fn pair(&self, x: f64) -> (f64, f64) {
        let (mut prev, mut cur) = (0.0, 1.0);
        for (a, b) in self.alpha.iter().zip(&self.beta) {
            let next = a * x * cur - b * prev;
            prev = cur;
            cur = next;
        }
        (prev, cur)
    }

    fn root(&self, i: usize) -> Result<(f64, f64)> {
        let n = self.alpha.len();
        debug_assert!(i < n);
        let nf = n as f64;
        if n % 2 == 1 && i == n / 2 {
            let (p_prev, _) = self.pair(0.0);
            // P_n'(0) = n P_{n-1}(0) for odd n.
            return Ok((0.0, nf * p_prev));
        }
        // Tricomi's first-order correction to the Chebyshev-angle guess.
        let shrink = 1.0 - (nf - 1.0) / (8.0 * nf * nf * nf);
        let mut x = shrink * (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut last_step = f64::INFINITY;
        for _ in 0..NEWTON_MAX_ITER {
            let (p_prev, p) = self.pair(x);
            let dp = nf * (x * p - p_prev) / (x * x - 1.0);
            let step = p / dp;
            x -= step;
            last_step = step.abs();
            if last_step <= NEWTON_TOL {
                break;
            }
        }
        // Rounding can stall the last step just above the target.
        if last_step > 1e-13 {
            return Err(Error::RootFinding(format!(
                "root {i} of P_{n}: last Newton step {last_step:e}"
            )));
        }
        let (p_prev, p) = self.pair(x);
        let dp = nf * (x * p - p_prev) / (x * x - 1.0);
        Ok((x, dp))
    }
}

/// Root `i` (counting from the largest, `i = 0`) of `P_n`, with `P_n'` there.
pub(crate) fn legendre_root(n: usize, i: usize) -> Result<(f64, f64)> {
    RecurrenceTable::new(n).root(i)
}

/// The `n`-point Gauss-Legendre rule on `[-1, 1]`.
///
/// Nodes are Newton-refined zeros of `P_n` started from Chebyshev-angle
/// guesses; the positive half is computed and mirrored so the rule is exactly
/// symmetric. Weights are `2 / ((1 - x²) P_n'(x)²)`.
pub fn gauss_legendre(n: usize) -> Result<NodeSet> {
    if n == 0 {
        return Err(Error::Parameter("Gauss-Legendre rule needs n >= 1".into()));
    }
    let table = RecurrenceTable::new(n);
    let mut points = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let (x, dp) = table.root(i)?;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        points[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        points[i] = -x;
        weights[i] = w;
    }
    Ok(NodeSet::new(points, weights, NodeKind::Gauss))
}

fn fixed_rules() -> &'static (NodeSet, NodeSet) {
    static RULES: OnceLock<(NodeSet, NodeSet)> = OnceLock::new();
    RULES.get_or_init(|| {
        (
            gauss_legendre(10).expect("10-point rule"),
            gauss_legendre(21).expect("21-point rule"),
        )
    })
}

const MAX_DEPTH: usize = 48;

/// Globally adaptive Gauss-Legendre quadrature of `f` over `[a, b]`.
///
/// Each panel is integrated with a 10- and a 21-point rule; panels whose
/// difference exceeds their share of `abs_tol` are bisected.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (coarse, fine) = fixed_rules();
    let panel = |lo: f64, hi: f64| -> (f64, f64) {
        let g1: f64 = coarse.mapped(lo, hi).map(|(x, w)| w * f(x)).sum();
        let g2: f64 = fine.mapped(lo, hi).map(|(x, w)| w * f(x)).sum();
        (g2, (g2 - g1).abs())
    };
    let width = (b - a).abs();
    let mut total = 0.0;
    let mut worst = 0.0f64;
    let mut stack = vec![(a, b, 0usize)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let (value, err) = panel(lo, hi);
        let share = abs_tol * ((hi - lo).abs() / width).max(1e-3);
        if err <= share || depth >= MAX_DEPTH {
            if err > share {
                worst = worst.max(err);
            }
            total += value;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    if worst > abs_tol {
        return Err(Error::Quadrature {
            achieved: worst,
            tolerance: abs_tol,
        });
    }
    Ok(total)
}
