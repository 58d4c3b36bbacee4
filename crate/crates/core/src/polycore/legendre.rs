use super::Scalar;
use crate::error::{check_unit_interval, Result};

/// `P_0(x), ..., P_n(x)` by the three-term recurrence.
pub fn legendre_all(n: usize, x: f64) -> Result<Vec<f64>> {
    check_unit_interval("x", x)?;
    Ok(legendre_all_unchecked(n, x))
}

pub fn legendre_all_unchecked<T: Scalar>(n: usize, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::one());
    if n == 0 {
        return out;
    }
    out.push(x);
    for k in 1..n {
        let kf = k as f64;
        let next = (x * out[k] * (2.0 * kf + 1.0) - out[k - 1] * kf) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// `P_n(x)` alone.
pub fn legendre(n: usize, x: f64) -> Result<f64> {
    check_unit_interval("x", x)?;
    Ok(legendre_unchecked(n, x))
}

pub fn legendre_unchecked<T: Scalar>(n: usize, x: T) -> T {
    legendre_pair(n, x).1
}

/// `(P_{n-1}(x), P_n(x))`, with `P_{-1} = 0`.
pub fn legendre_pair<T: Scalar>(n: usize, x: T) -> (T, T) {
    let mut prev = T::zero();
    let mut cur = T::one();
    for k in 0..n {
        let kf = k as f64;
        let next = (x * cur * (2.0 * kf + 1.0) - prev * kf) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// `P_n'(x)`, valid on the closed interval including the endpoints.
pub fn legendre_deriv(n: usize, x: f64) -> Result<f64> {
    check_unit_interval("x", x)?;
    Ok(legendre_with_deriv(n, x).1)
}

/// `(P_n(x), P_n'(x))` using `P'_{k+1} = P'_{k-1} + (2k+1) P_k`.
pub fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (0.0, 1.0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    for k in 0..n {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        let d_next = d_prev + (2.0 * kf + 1.0) * p;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d)
}
