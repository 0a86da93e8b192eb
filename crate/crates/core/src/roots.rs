//! Bracketed root finding for monotone scalar equations.
//!
//! Every equation solved in this crate has the form `f(u) = target` with `f`
//! strictly increasing on a known interval, so a bisection phase followed by
//! a bracket-safeguarded Newton polish always converges without a starting
//! guess.

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

#[derive(Clone, Copy, Debug)]
pub struct MonotoneSolver<T> {
    /// Absolute tolerance on `|f(u) - target|`.
    pub f_tol: T,
    /// Bisection stops once the bracket is narrower than this.
    pub bisect_width: T,
    pub max_iter: usize,
}

impl<T: Real> Default for MonotoneSolver<T> {
    fn default() -> Self {
        Self {
            f_tol: lit(1e-14),
            bisect_width: lit(1e-6),
            max_iter: 200,
        }
    }
}

impl<T: Real> MonotoneSolver<T> {
    /// Solves `f(u) = target` on `[lo, hi]` where `eval(u) = (f(u), f'(u))`
    /// is increasing. The bracket must satisfy `f(lo) <= target <= f(hi)`.
    pub fn solve<F>(&self, eval: F, target: T, lo: T, hi: T) -> Result<T>
    where
        F: Fn(T) -> (T, T),
    {
        let g = |u: T| {
            let (v, d) = eval(u);
            (v - target, d)
        };
        let (mut lo, mut hi) = (lo, hi);
        let (g_lo, _) = g(lo);
        let (g_hi, _) = g(hi);
        if g_lo.abs() <= self.f_tol {
            return Ok(lo);
        }
        if g_hi.abs() <= self.f_tol {
            return Ok(hi);
        }
        if g_lo > T::zero() || g_hi < T::zero() {
            return Err(Error::NotBracketed {
                lo: to_f64(lo),
                hi: to_f64(hi),
                f_lo: to_f64(g_lo + target),
                f_hi: to_f64(g_hi + target),
            });
        }

        let half = lit::<T>(0.5);
        let mut iter = 0;
        while hi - lo > self.bisect_width && iter < self.max_iter {
            let mid = half * (lo + hi);
            let (gm, _) = g(mid);
            if gm.abs() <= self.f_tol {
                return Ok(mid);
            }
            if gm < T::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
            iter += 1;
        }

        let mut u = half * (lo + hi);
        while iter < self.max_iter {
            let (gu, du) = g(u);
            if gu.abs() <= self.f_tol {
                return Ok(u);
            }
            if gu < T::zero() {
                lo = u;
            } else {
                hi = u;
            }
            let newton = u - gu / du;
            let next = if du > T::zero() && newton > lo && newton < hi {
                newton
            } else {
                half * (lo + hi)
            };
            if next == u || hi - lo <= T::epsilon() * (T::one() + u.abs()) {
                return Ok(next);
            }
            u = next;
            iter += 1;
        }
        Ok(u)
    }
}
