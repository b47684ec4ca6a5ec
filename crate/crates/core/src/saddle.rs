//! Saddle point of the Laplace transform: the root `h` of `L'(h) + r = 0`
//! and the resulting estimates
//!
//! ```text
//! P(V² < r)        ≈ exp(L(h) + hr) / (τ √(2π)),   τ² = h² L''(h),
//! d/dr P(V² < r)   ≈ h P(V² < r),
//! ```
//!
//! both with relative error of order `1/τ²`. That scale is reported as an
//! indicator only; no certified constant is attached to it.

use crate::error::{Error, Result};
use crate::estimate::{Method, ProbEstimate};
use crate::laplace::{LaplaceEval, Spectrum};
use crate::scalar::Real;

/// Iteration cap for the safeguarded Newton solver.
const MAX_ITERATIONS: usize = 200;
/// Geometric factor for the initial bracket and its widening.
const BRACKET_FACTOR: f64 = 64.0;
/// Target `|L'(h) + r| <= RESIDUAL_TOL * r` in double precision.
pub const RESIDUAL_TOL: f64 = 1e-12;

/// Relative residual target for scalar `T`: [`RESIDUAL_TOL`], or `4096 ε`
/// when that is larger (single precision).
pub fn residual_tol<T: Real>() -> T {
    T::lit(RESIDUAL_TOL).max(T::lit(4096.0) * T::epsilon())
}

/// The root `h` with the transform and derived quantities at it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaddleSolution<T> {
    pub r: T,
    pub h: T,
    /// `√(2h)`.
    pub gamma: T,
    pub l: T,
    pub dl: T,
    pub d2l: T,
    /// `h² L''(h)`.
    pub tau2: T,
    /// `L + hr - ½ ln(2π τ²)`.
    pub log_p: T,
    /// `ln h`, the log ratio of density to probability.
    pub log_density_factor: T,
    /// `|L'(h) + r|`.
    pub residual: T,
    pub iterations: usize,
}

impl<T: Real> SaddleSolution<T> {
    fn from_eval(r: T, e: &LaplaceEval<T>, iterations: usize) -> Self {
        let tau2 = e.tau2();
        let two_pi = T::lit(2.0) * T::PI();
        Self {
            r,
            h: e.h,
            gamma: (T::lit(2.0) * e.h).sqrt(),
            l: e.l,
            dl: e.dl,
            d2l: e.d2l,
            tau2,
            log_p: e.l + e.h * r - T::lit(0.5) * (two_pi * tau2).ln(),
            log_density_factor: e.h.ln(),
            residual: (e.dl + r).abs(),
            iterations,
        }
    }

    /// `L(h) + hr`, the infimum of `L(u) + ur` over `u > 0`.
    pub fn legendre_value(&self) -> T {
        self.l + self.h * self.r
    }
}

/// Solve `L'(h) + r = 0` starting from the spectrum's own seed.
pub fn solve_saddle<T: Real, S: Spectrum<T> + ?Sized>(r: T, spectrum: &S) -> Result<SaddleSolution<T>> {
    let seed = if r > T::zero() { spectrum.saddle_seed(r) } else { T::one() };
    solve_saddle_from(r, spectrum, seed)
}

/// Solve `L'(h) + r = 0` from an explicit starting point.
///
/// Newton steps are taken in `ln h`; a step leaving the current sign bracket
/// is replaced by bisection of the bracket in `ln h`.
pub fn solve_saddle_from<T: Real, S: Spectrum<T> + ?Sized>(
    r: T,
    spectrum: &S,
    seed: T,
) -> Result<SaddleSolution<T>> {
    let trace = spectrum.trace();
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::domain("solve_saddle", format!("r must be positive, got {r}")));
    }
    if r >= trace {
        return Err(Error::domain(
            "solve_saddle",
            format!("r = {r} must lie below E V² = {trace}"),
        ));
    }
    if !(seed > T::zero()) || !seed.is_finite() {
        return Err(Error::domain("solve_saddle", format!("seed must be positive, got {seed}")));
    }
    let tol = residual_tol::<T>() * r;
    let factor = T::lit(BRACKET_FACTOR);
    let f = |h: T| -> Result<(T, LaplaceEval<T>)> {
        let e = spectrum.laplace(h)?;
        Ok((e.dl + r, e))
    };
    let fail = |iterations: usize, lo: T, hi: T| Error::Convergence {
        func: "solve_saddle",
        iterations,
        lo: lo.as_f64(),
        hi: hi.as_f64(),
    };

    // Bracket with f(lo) < 0 < f(hi); f increases with h.
    let mut lo = seed / factor;
    let mut hi = seed * factor;
    let mut iterations = 0;
    let (mut f_lo, mut e_lo) = f(lo)?;
    while f_lo >= T::zero() {
        if f_lo.abs() <= tol {
            return Ok(SaddleSolution::from_eval(r, &e_lo, iterations));
        }
        hi = lo;
        lo = lo / factor;
        iterations += 1;
        if iterations > MAX_ITERATIONS || lo < T::min_positive_value() {
            return Err(fail(iterations, lo, hi));
        }
        (f_lo, e_lo) = f(lo)?;
    }
    let (mut f_hi, mut e_hi) = f(hi)?;
    while f_hi <= T::zero() {
        if f_hi.abs() <= tol {
            return Ok(SaddleSolution::from_eval(r, &e_hi, iterations));
        }
        lo = hi;
        (f_lo, e_lo) = (f_hi, e_hi);
        hi = hi * factor;
        iterations += 1;
        if iterations > MAX_ITERATIONS || !hi.is_finite() {
            return Err(fail(iterations, lo, hi));
        }
        (f_hi, e_hi) = f(hi)?;
    }

    // Start Newton from whichever end is closer in residual.
    let (mut t, mut cur) = if f_lo.abs() < f_hi.abs() { (lo.ln(), e_lo) } else { (hi.ln(), e_hi) };
    let mut t_lo = lo.ln();
    let mut t_hi = hi.ln();
    let mut best = cur;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let res = cur.dl + r;
        if res.abs() < (best.dl + r).abs() {
            best = cur;
        }
        if res.abs() <= tol {
            return Ok(SaddleSolution::from_eval(r, &cur, iterations));
        }
        if res < T::zero() {
            t_lo = t;
        } else {
            t_hi = t;
        }
        let slope = cur.h * cur.d2l;
        let newton = t - res / slope;
        let next = if slope > T::zero() && newton > t_lo && newton < t_hi {
            newton
        } else {
            T::lit(0.5) * (t_lo + t_hi)
        };
        if (next - t).abs() <= T::epsilon() * t.abs().max(T::one()) && t_hi - t_lo <= T::lit(4.0) * T::epsilon() * t.abs().max(T::one()) {
            break;
        }
        t = next;
        cur = f(t.exp())?.1;
    }
    let res = (best.dl + r).abs();
    if res <= tol {
        return Ok(SaddleSolution::from_eval(r, &best, iterations));
    }
    Err(fail(iterations, t_lo.exp(), t_hi.exp()))
}

/// Probability estimate at the saddle; the indicator is `1/τ²`.
pub fn saddle_log_prob<T: Real>(sol: &SaddleSolution<T>) -> ProbEstimate<T> {
    let mut est = ProbEstimate::bare(sol.r, Method::Saddle, sol.log_p, sol.tau2.recip());
    est.log_density = Some(saddle_log_density(sol));
    est.h = Some(sol.h);
    est
}

/// `ln(h P)`, the log density estimate.
pub fn saddle_log_density<T: Real>(sol: &SaddleSolution<T>) -> T {
    sol.log_p + sol.log_density_factor
}
