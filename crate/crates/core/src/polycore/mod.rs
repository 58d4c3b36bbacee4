//! Evaluation kernels shared by every other module: Legendre and Gegenbauer
//! recurrences, Gauss-Legendre rules, adaptive quadrature and log-gamma ratios.
//!
//! Polynomials are always evaluated by upward three-term recurrence. The
//! checked entry points reject arguments outside `[-1, 1]`; the `_unchecked`
//! variants are generic over [`Scalar`] so the same recurrence runs in complex
//! arithmetic on the Bernstein ellipse.

mod gamma;
mod gegenbauer;
mod legendre;
mod quadrature;

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

pub use gamma::{ln_gamma, log_gamma_ratio};
pub use gegenbauer::{gegenbauer, gegenbauer_all, gegenbauer_all_unchecked, gegenbauer_unchecked};
pub use legendre::{
    legendre, legendre_all, legendre_all_unchecked, legendre_deriv, legendre_pair,
    legendre_unchecked, legendre_with_deriv,
};
pub use quadrature::{gauss_legendre, integrate_adaptive, NodeKind, NodeSet};

pub(crate) use quadrature::legendre_root;

/// Field operations needed by the recurrences (real or complex).
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
}
