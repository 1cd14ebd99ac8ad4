//! Bisection root finding for monotone scalar functions.

use thiserror::Error;

use crate::scalar::{num, wide, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("interval [{lo}, {hi}] does not bracket a root: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NotBracketing {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("|f| <= {tol} not reached within {max_iter} iterations (best residual {best})")]
    NoConvergence {
        tol: f64,
        max_iter: usize,
        best: f64,
    },
}

/// A bracketed root located by [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root<T> {
    pub t: T,
    pub residual: T,
    pub iterations: usize,
}

/// Bisects `f` over `[lo, hi]` until `|f(t)| <= tol`.
///
/// The interval must bracket a sign change unless an endpoint already meets
/// the tolerance.
pub fn bisect<T: Scalar>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    tol: T,
    max_iter: usize,
) -> Result<Root<T>, SolveError> {
    let mut lo = lo;
    let mut hi = hi;
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.abs() <= tol {
        return Ok(Root {
            t: lo,
            residual: f_lo,
            iterations: 0,
        });
    }
    if f_hi.abs() <= tol {
        return Ok(Root {
            t: hi,
            residual: f_hi,
            iterations: 0,
        });
    }
    if (f_lo > T::zero()) == (f_hi > T::zero()) {
        return Err(SolveError::NotBracketing {
            lo: wide(lo),
            hi: wide(hi),
            f_lo: wide(f_lo),
            f_hi: wide(f_hi),
        });
    }
    let lo_positive = f_lo > T::zero();
    let mut best = f_lo.abs().min(f_hi.abs());
    for i in 1..=max_iter {
        let mid = (lo + hi) * num(0.5);
        let f_mid = f(mid);
        if f_mid.abs() <= tol {
            return Ok(Root {
                t: mid,
                residual: f_mid,
                iterations: i,
            });
        }
        best = best.min(f_mid.abs());
        if (f_mid > T::zero()) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(SolveError::NoConvergence {
        tol: wide(tol),
        max_iter,
        best: wide(best),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt2() {
        let root = bisect(|t: f64| t * t - 2.0, 0.0, 2.0, 1e-12, 200).unwrap();
        assert!((root.t - 2f64.sqrt()).abs() < 1e-11);
        assert!(root.iterations <= 200);
    }

    #[test]
    fn endpoint_roots_return_immediately() {
        let root = bisect(|t: f64| t, 0.0, 1.0, 1e-9, 200).unwrap();
        assert_eq!(root.t, 0.0);
        assert_eq!(root.iterations, 0);
    }

    #[test]
    fn rejects_non_bracketing_interval() {
        let err = bisect(|t: f64| t * t + 1.0, -1.0, 1.0, 1e-9, 200).unwrap_err();
        assert!(matches!(err, SolveError::NotBracketing { .. }));
    }

    #[test]
    fn reports_no_convergence_when_budget_too_small() {
        let err = bisect(|t: f64| t - 0.3333333333, 0.0, 1.0, 1e-15, 3).unwrap_err();
        assert!(matches!(err, SolveError::NoConvergence { .. }));
    }
}
