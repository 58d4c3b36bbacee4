use super::Scalar;
use crate::error::{check_unit_interval, Error, Result};

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > -0.5 && lambda != 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "Gegenbauer parameter lambda = {lambda} must satisfy lambda > -1/2 and lambda != 0"
        )))
    }
}

/// `C_0^λ(x), ..., C_n^λ(x)` by the recurrence
/// `(k+1) C_{k+1} = 2(k+λ) x C_k - (k+2λ-1) C_{k-1}`.
pub fn gegenbauer_all(n: usize, lambda: f64, x: f64) -> Result<Vec<f64>> {
    check_lambda(lambda)?;
    check_unit_interval("x", x)?;
    Ok(gegenbauer_all_unchecked(n, lambda, x))
}

pub fn gegenbauer_all_unchecked<T: Scalar>(n: usize, lambda: f64, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::one());
    if n == 0 {
        return out;
    }
    out.push(x * (2.0 * lambda));
    for k in 1..n {
        let kf = k as f64;
        let next = (x * out[k] * (2.0 * (kf + lambda)) - out[k - 1] * (kf + 2.0 * lambda - 1.0))
            / (kf + 1.0);
        out.push(next);
    }
    out
}

/// `C_n^λ(x)` alone.
pub fn gegenbauer(n: usize, lambda: f64, x: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_unit_interval("x", x)?;
    Ok(gegenbauer_unchecked(n, lambda, x))
}

pub fn gegenbauer_unchecked<T: Scalar>(n: usize, lambda: f64, x: T) -> T {
    let mut prev = T::zero();
    let mut cur = T::one();
    for k in 0..n {
        let kf = k as f64;
        let next = (x * cur * (2.0 * (kf + lambda)) - prev * (kf + 2.0 * lambda - 1.0)) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::legendre_all;

    #[test]
    fn first_terms() {
        assert_eq!(*gegenbauer_all(1, 1.0, 0.5).unwrap().last().unwrap(), 1.0);
        assert_eq!(gegenbauer_all(0, 0.7, -0.3).unwrap(), vec![1.0]);
        // C_2^1(x) = 4x^2 - 1
        assert!((gegenbauer(2, 1.0, 0.3).unwrap() - (4.0 * 0.09 - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn half_is_legendre() {
        let c = gegenbauer_all(5, 0.5, 0.37).unwrap();
        let p = legendre_all(5, 0.37).unwrap();
        for (a, b) in c.iter().zip(&p) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_lambda() {
        assert!(gegenbauer_all(3, 0.0, 0.1).is_err());
        assert!(gegenbauer_all(3, -0.5, 0.1).is_err());
        assert!(gegenbauer_all(3, -0.7, 0.1).is_err());
        assert!(gegenbauer_all(3, -0.3, 0.1).is_ok());
    }

    #[test]
    fn value_at_one() {
        // C_n^λ(1) = Γ(n+2λ) / (n! Γ(2λ))
        let lambda = 1.5;
        for n in 0..20usize {
            let mut expect = 1.0;
            for j in 0..n {
                expect *= (j as f64 + 2.0 * lambda) / (j as f64 + 1.0);
            }
            let got = gegenbauer(n, lambda, 1.0).unwrap();
            assert!((got - expect).abs() < 1e-12 * expect, "n={n}");
        }
    }
}
