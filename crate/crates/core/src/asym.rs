//! Closed-form small-ball asymptotics.
//!
//! With `ξ = |ln r|`, `𝒦(r) = ln² r / (8π² r)` and `s̄ = ln ξ + sbar_offset`,
//!
//! ```text
//! ln P(V² < r) ≈ ln c₀ + c₁ ln r + c₂ ln 𝒦 - 𝒦 (1 + ε(r)),
//! ε(r) = Σ_{m=1}^k p_m(s̄) ξ^{-m}.
//! ```
//!
//! The refined form multiplies the probability by `1 + δ(r)` with
//! `δ = ((1+ε_q)(1+ε̃)^{C/2})^{-1/2} - 1`, where `ε̃` and `ε_q` are built from
//! the convolution squares `π̃_m` of the `π` polynomials.
//!
//! The correction polynomials come from the root of `ln(d y)/y = ε`, solved
//! here both numerically and through its double series.
//!
//! All logarithms are natural.

use crate::error::{Error, Result};
use crate::estimate::{Method, ProbEstimate};
use crate::field::FieldParams;
use crate::polyalg::PolyTables;
use crate::scalar::Real;

/// Largest `r` for which the asymptotic law is reported without a warning.
pub const R_MAX: f64 = 0.2;
/// Default number of `ε(r)` terms.
pub const DEFAULT_TERMS: usize = 6;
/// Accepted range of `ε(r)` truncation orders.
pub const MIN_TERMS: usize = 2;
pub const MAX_TERMS: usize = 12;

const LAGRANGE_MAX_ITERATIONS: usize = 200;

/// Both solutions of `ln(d y)/y = ε` on the branch `y > e/d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LagrangeSolution<T> {
    pub d: T,
    pub eps_in: T,
    pub y_series: T,
    pub y_numeric: T,
    pub terms: usize,
}

impl<T: Real> LagrangeSolution<T> {
    pub fn relative_gap(&self) -> T {
        ((self.y_series - self.y_numeric) / self.y_numeric).abs()
    }

    /// `|ln(d y)/y - ε|` at the numeric root.
    pub fn residual(&self) -> T {
        ((self.d * self.y_numeric).ln() / self.y_numeric - self.eps_in).abs()
    }
}

fn check_lagrange_args<T: Real>(func: &'static str, d: T, eps: T) -> Result<()> {
    if !(d > T::zero()) || !d.is_finite() {
        return Err(Error::domain(func, format!("d must be positive, got {d}")));
    }
    let cap = d / T::E();
    if !(eps > T::zero()) || !(eps < cap) {
        return Err(Error::domain(func, format!("need 0 < eps < d/e = {cap}, got {eps}")));
    }
    Ok(())
}

/// Root `y > e/d` of `ln(d y)/y = ε` by safeguarded Newton in `z = ln(d y)`.
///
/// In `z` the equation is `ln z - z = ln(ε/d)`, decreasing for `z > 1`.
pub fn lagrange_numeric<T: Real>(d: T, eps_in: T) -> Result<T> {
    check_lagrange_args("lagrange_numeric", d, eps_in)?;
    let target = (eps_in / d).ln();
    let g = |z: T| z.ln() - z - target;
    let mut lo = T::one();
    // Leading asymptotics z ≈ L + ln L with L = -ln(ε/d) > 1.
    let big_l = -target;
    let mut hi = (big_l + big_l.ln()).max(T::lit(2.0));
    while g(hi) > T::zero() {
        lo = hi;
        hi = hi * T::lit(2.0);
    }
    let mut z = T::lit(0.5) * (lo + hi);
    for _ in 0..LAGRANGE_MAX_ITERATIONS {
        let gz = g(z);
        if gz > T::zero() {
            lo = z;
        } else {
            hi = z;
        }
        let step = gz / (z.recip() - T::one());
        let mut next = z - step;
        if !(next > lo && next < hi) {
            next = T::lit(0.5) * (lo + hi);
        }
        if (next - z).abs() <= T::lit(4.0) * T::epsilon() * z {
            z = next;
            break;
        }
        z = next;
    }
    let y = z.exp() / d;
    let residual = ((d * y).ln() / y - eps_in).abs();
    if residual > T::lit(1e-13) * T::one().max(eps_in) {
        return Err(Error::Convergence {
            func: "lagrange_numeric",
            iterations: LAGRANGE_MAX_ITERATIONS,
            lo: (lo.exp() / d).as_f64(),
            hi: (hi.exp() / d).as_f64(),
        });
    }
    Ok(y)
}

/// `y ≈ (ξ/ε)(1 + Σ_{m=1}^{terms} π_m(s_d) ξ^{-m})` with `ξ = -ln ε` and
/// `s_d = ln(d ξ)`.
pub fn lagrange_series<T: Real>(d: T, eps_in: T, terms: usize) -> Result<T> {
    check_lagrange_args("lagrange_series", d, eps_in)?;
    if !(1..=MAX_TERMS).contains(&terms) {
        return Err(Error::domain("lagrange_series", format!("terms must be in 1..={MAX_TERMS}, got {terms}")));
    }
    let xi = -eps_in.ln();
    if !(xi > T::one()) {
        return Err(Error::domain("lagrange_series", format!("need -ln(eps) > 1, got {xi}")));
    }
    let s_d = (d * xi).ln();
    let tables = PolyTables::shared();
    let inv = xi.recip();
    let mut sum = T::zero();
    let mut pow = T::one();
    for m in 1..=terms {
        pow = pow * inv;
        sum = sum + tables.pi(m).eval(s_d) * pow;
    }
    Ok(xi / eps_in * (T::one() + sum))
}

/// Series and numeric roots side by side.
pub fn lagrange<T: Real>(d: T, eps_in: T, terms: usize) -> Result<LagrangeSolution<T>> {
    Ok(LagrangeSolution {
        d,
        eps_in,
        y_series: lagrange_series(d, eps_in, terms)?,
        y_numeric: lagrange_numeric(d, eps_in)?,
        terms,
    })
}

/// Every ingredient of the expansion at one `r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymExpansion<T> {
    pub r: T,
    /// `|ln r|`.
    pub xi: T,
    pub sbar: T,
    /// `𝒦(r) = ln² r / (8π² r)`.
    pub k_r: T,
    pub eps: T,
    pub eps_tilde: T,
    pub eps_q: T,
    /// Leading term `½(1 - (C+2)s̄)/ξ` of `δ(r)`.
    pub delta_corr: T,
    /// `((1+ε_q)(1+ε̃)^{C/2})^{-1/2} - 1`.
    pub delta_full: T,
    pub terms_k: usize,
    /// Size of the first omitted `ε` term, `(ln ξ)^k / ξ^{k+1}`.
    pub eps_remainder: T,
    /// Leading-law log-probability.
    pub log_p: T,
    pub log_density: T,
}

fn check_r<T: Real>(func: &'static str, r: T) -> Result<()> {
    if !(r > T::zero() && r < T::one()) {
        return Err(Error::domain(func, format!("r must lie in (0, 1), got {r}")));
    }
    Ok(())
}

fn check_terms(func: &'static str, terms_k: usize) -> Result<()> {
    if !(MIN_TERMS..=MAX_TERMS).contains(&terms_k) {
        return Err(Error::domain(
            func,
            format!("terms_k must be in {MIN_TERMS}..={MAX_TERMS}, got {terms_k}"),
        ));
    }
    Ok(())
}

/// `𝒦(r) = ln² r / (8π² r)`.
pub fn k_of_r<T: Real>(r: T) -> T {
    let l = r.ln();
    l * l / (T::lit(8.0) * T::PI() * T::PI() * r)
}

/// `ε`, `ε̃`, `ε_q`, `δ` and the leading-law values at `r`.
pub fn eps_series<T: Real>(r: T, params: &FieldParams<T>, terms_k: usize) -> Result<AsymExpansion<T>> {
    check_r("eps_series", r)?;
    check_terms("eps_series", terms_k)?;
    let k = params.constants();
    let tables = PolyTables::shared();
    let xi = -r.ln();
    let sbar = k.sbar(r);
    let inv = xi.recip();
    let (mut eps, mut eps_tilde, mut eps_q) = (T::zero(), T::zero(), T::zero());
    let mut pow = T::one();
    for m in 1..=terms_k {
        pow = pow * inv;
        let pt = tables.pi_tilde(m).eval(sbar);
        let prev = tables.pi(m - 1).eval(sbar);
        eps = eps + tables.p(m).eval(sbar) * pow;
        eps_tilde = eps_tilde + pt * pow;
        eps_q = eps_q + (pt - prev) * pow;
    }
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let delta_corr = half * (T::one() - (k.big_c + two) * sbar) / xi;
    let delta_full = ((T::one() + eps_q) * (T::one() + eps_tilde).powf(k.big_c * half)).powf(-half) - T::one();
    let k_r = k_of_r(r);
    let log_p = k.ln_c0() + k.c1 * r.ln() + k.c2 * k_r.ln() - k_r * (T::one() + eps);
    let log_density = log_p + k_r.ln() - r.ln();
    let lx = xi.ln().abs();
    let eps_remainder = lx.powi(terms_k as i32) / xi.powi(terms_k as i32 + 1);
    Ok(AsymExpansion {
        r,
        xi,
        sbar,
        k_r,
        eps,
        eps_tilde,
        eps_q,
        delta_corr,
        delta_full,
        terms_k,
        eps_remainder,
        log_p,
        log_density,
    })
}

fn base_estimate<T: Real>(e: &AsymExpansion<T>, method: Method, log_p: T, log_density: T, indicator: T) -> ProbEstimate<T> {
    let mut est = ProbEstimate::bare(e.r, method, log_p, indicator);
    est.log_density = Some(log_density);
    est.k_r = Some(e.k_r);
    est.sbar = Some(e.sbar);
    est.terms_k = Some(e.terms_k);
    est.beyond_cap = e.r > T::lit(R_MAX);
    est
}

/// `ln ξ / ξ`, the relative-error scale of the leading law.
fn leading_indicator<T: Real>(xi: T) -> T {
    (xi.ln() / xi).abs()
}

/// Leading law `ln c₀ + c₁ ln r + c₂ ln 𝒦 - 𝒦(1+ε)`.
pub fn theorem1_log_prob<T: Real>(r: T, params: &FieldParams<T>, terms_k: usize) -> Result<ProbEstimate<T>> {
    let e = eps_series(r, params, terms_k)?;
    Ok(base_estimate(&e, Method::Asymptotic, e.log_p, e.log_density, leading_indicator(e.xi)))
}

/// `ln P + ln(𝒦/r)`.
pub fn theorem1_log_density<T: Real>(r: T, params: &FieldParams<T>, terms_k: usize) -> Result<T> {
    Ok(eps_series(r, params, terms_k)?.log_density)
}

/// `1 + ε(r)`, the predicted value of `8π² r |ln P| / ln² r`.
pub fn corollary1_normalized<T: Real>(r: T, params: &FieldParams<T>, terms_k: usize) -> Result<T> {
    Ok(T::one() + eps_series(r, params, terms_k)?.eps)
}

/// Leading law times `1 + δ(r)`, with `δ` in its full product form.
pub fn proposition1_log_prob<T: Real>(r: T, params: &FieldParams<T>, terms_k: usize) -> Result<ProbEstimate<T>> {
    let e = eps_series(r, params, terms_k)?;
    let log_p = e.log_p + e.delta_full.ln_1p();
    let log_density = e.log_density + (e.delta_full + e.eps_tilde).ln_1p();
    // Remainder O(r/ξ) plus the ε truncation inside the exponent.
    let indicator = r / e.xi + e.k_r * e.eps_remainder;
    Ok(base_estimate(&e, Method::Refined, log_p, log_density, indicator))
}

/// Leading law of the unperturbed field plus `ln C_dist`.
///
/// For `q, τ > 0` every eigenvalue of the perturbed field is larger, so its
/// probability is smaller, while `C_dist > 1`. Saddle evaluations on the two
/// spectra show the log-ratio drifting like `|ln r|/r` rather than settling.
/// Treat this value as the stated law, not as a validated estimate.
pub fn corollary2_log_prob<T: Real>(r: T, params: &FieldParams<T>, terms_k: usize) -> Result<ProbEstimate<T>> {
    let base = theorem1_log_prob(r, &params.unperturbed(), terms_k)?;
    let shift = params.ln_distortion_constant()?;
    Ok(ProbEstimate {
        method: Method::Distorted,
        log_p: base.log_p + shift,
        log_density: base.log_density.map(|d| d + shift),
        ..base
    })
}

/// Number of `ε` terms up to and including the smallest one in magnitude,
/// searched over `MIN_TERMS..=MAX_TERMS`.
pub fn optimal_terms<T: Real>(r: T, params: &FieldParams<T>) -> Result<usize> {
    check_r("optimal_terms", r)?;
    let tables = PolyTables::shared();
    let xi = -r.ln();
    let sbar = params.constants().sbar(r);
    let mut best = MIN_TERMS;
    let mut best_size = T::infinity();
    let mut pow = xi.powi(-(MIN_TERMS as i32 - 1));
    for m in MIN_TERMS..=MAX_TERMS {
        pow = pow / xi;
        let size = (tables.p(m).eval(sbar) * pow).abs();
        if size < best_size {
            best = m;
            best_size = size;
        } else if size > best_size {
            break;
        }
    }
    Ok(best)
}

/// `γ̃` solving `(ln γ̃ + 1 - πB)/(2πγ̃) = r`, via the Lagrange problem with
/// `y = 2πγ̃` and `d = e^{1-πB}/(2π)`.
pub fn gamma_tilde<T: Real>(r: T, params: &FieldParams<T>) -> Result<T> {
    let d = lagrange_d(params);
    Ok(lagrange_numeric(d, r)? / (T::lit(2.0) * T::PI()))
}

/// `d = e^{1-πB}/(2π)` of the field.
pub fn lagrange_d<T: Real>(params: &FieldParams<T>) -> T {
    let k = params.constants();
    let two_pi = T::lit(2.0) * T::PI();
    (T::one() - T::PI() * k.big_b).exp() / two_pi
}

/// `Q(r) = ½(γ̃² r - γ̃/π + D)` and `q(r) = (2γ̃² r - γ̃/π)/8`.
pub fn big_q_small_q<T: Real>(r: T, gamma_t: T, big_d: T) -> (T, T) {
    let inv_pi = T::PI().recip();
    let g2r = gamma_t * gamma_t * r;
    (T::lit(0.5) * (g2r - inv_pi * gamma_t + big_d), (T::lit(2.0) * g2r - inv_pi * gamma_t) / T::lit(8.0))
}

/// `-½ ln(2π γ̃^C q(r)) - Q(r)` at the exact root `γ̃`: the refined law with
/// every series summed.
pub fn refined_exact_root<T: Real>(r: T, params: &FieldParams<T>) -> Result<T> {
    let k = params.constants();
    let g = gamma_tilde(r, params)?;
    let (big_q, small_q) = big_q_small_q(r, g, k.big_d);
    let two_pi = T::lit(2.0) * T::PI();
    Ok(-T::lit(0.5) * (two_pi.ln() + k.big_c * g.ln() + small_q.ln()) - big_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Preset;
    use std::f64::consts::{LN_2, PI};

    fn preset(p: Preset) -> FieldParams<f64> {
        FieldParams::preset(p)
    }

    #[test]
    fn lagrange_numeric_examples() {
        let y = lagrange_numeric(1.0, 0.1).unwrap();
        // Bisection oracle on ln y - 0.1 y over (e, 100).
        let (mut lo, mut hi) = (std::f64::consts::E, 100.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid.ln() - 0.1 * mid > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((y - 0.5 * (lo + hi)).abs() < 1e-10);
        assert!((y - 35.7715).abs() < 1e-4);
        let d = 2.0;
        let near = lagrange_numeric(d, d / (std::f64::consts::E * 1.0001)).unwrap();
        assert!(near > std::f64::consts::E / d && near < 1.1 * std::f64::consts::E / d);
        assert!(lagrange_numeric(1.0, 1.0 / std::f64::consts::E).is_err());
        assert!(lagrange_numeric(1.0, 0.0).is_err());
    }

    #[test]
    fn lagrange_series_examples() {
        let eps: f64 = 1e-3;
        let xi = -eps.ln();
        let one = lagrange_series(1.0, eps, 1).unwrap();
        assert!((one - xi / eps * (1.0 + xi.ln() / xi)).abs() / one < 1e-15);
        let g6 = lagrange(1.0, 1e-6, 8).unwrap().relative_gap();
        let g9 = lagrange(1.0, 1e-9, 8).unwrap().relative_gap();
        assert!(g6 < 1e-6 && g9 < g6);
        assert!(lagrange_series(1.0, 1e-6, 13).is_err());
    }

    #[test]
    fn eps_two_terms_match_closed_form() {
        let p = preset(Preset::Pillow);
        let e = eps_series(1e-5, &p, 2).unwrap();
        let expect = (2.0 * e.sbar - 2.0) / e.xi + e.sbar * e.sbar / (e.xi * e.xi);
        assert!((e.eps - expect).abs() < 1e-15);
        let e1 = eps_series(1e-5, &p, 3).unwrap();
        assert!(((e1.eps_tilde - e.eps_tilde) - (2.0 * e.sbar + e.sbar.powi(2)) / e.xi.powi(3)).abs() < 1e-15);
        assert_eq!(corollary1_normalized(1e-5, &p, 2).unwrap(), 1.0 + e.eps);
    }

    #[test]
    fn consecutive_truncations_differ_by_one_term() {
        let p = preset(Preset::Kiefer);
        let r = 1e-6;
        let tables = PolyTables::shared();
        for k in 2..12 {
            let a = eps_series(r, &p, k).unwrap();
            let b = eps_series(r, &p, k + 1).unwrap();
            let term = tables.p(k + 1).eval(a.sbar) * a.xi.powi(-(k as i32 + 1));
            assert!((b.eps - a.eps - term).abs() <= 1e-15 * a.eps.abs().max(1e-3));
        }
    }

    #[test]
    fn eps_equals_convolution_form() {
        // p_m = π̃_m - 2π_{m-1}: ε = ε̃ - 2 Σ π̄_{m-1} ξ^{-m}.
        let p = FieldParams::<f64>::new(0.4, -0.3).unwrap();
        let tables = PolyTables::shared();
        let e = eps_series(1e-4, &p, 8).unwrap();
        let extra: f64 = (1..=8).map(|m| tables.pi(m - 1).eval(e.sbar) * e.xi.powi(-(m as i32))).sum();
        assert!((e.eps - (e.eps_tilde - 2.0 * extra)).abs() < 1e-14);
    }

    #[test]
    fn preset_closed_forms() {
        let r = 1e-4;
        let k = k_of_r(r);
        let e = eps_series(r, &preset(Preset::Sheet), 6).unwrap();
        let sheet = theorem1_log_prob(r, &preset(Preset::Sheet), 6).unwrap().log_p;
        assert!((sheet - (-k * (1.0 + e.eps) - 0.5 * (PI * k).ln())).abs() < 1e-10);

        let e = eps_series(r, &preset(Preset::Pillow), 6).unwrap();
        let pillow = theorem1_log_prob(r, &preset(Preset::Pillow), 6).unwrap().log_p;
        let expect = r.ln() / 8.0 - 0.625 * (2.0 * k).ln() - 0.5 * PI.ln() - k * (1.0 + e.eps);
        assert!((pillow - expect).abs() < 1e-10);

        let e = eps_series(r, &preset(Preset::Kiefer), 6).unwrap();
        let kiefer = theorem1_log_prob(r, &preset(Preset::Kiefer), 6).unwrap().log_p;
        let expect = -0.25 * LN_2 - 0.5 * (PI * k).ln() - k * (1.0 + e.eps);
        assert!((kiefer - expect).abs() < 1e-10);
    }

    #[test]
    fn density_offset_and_cap_flag() {
        let p = preset(Preset::Pillow);
        let r = 0.05;
        let lp = theorem1_log_prob(r, &p, 4).unwrap();
        let ld = theorem1_log_density(r, &p, 4).unwrap();
        assert!((ld - lp.log_p - (k_of_r(r) / r).ln()).abs() < 1e-13);
        assert!(!lp.beyond_cap);
        assert!(theorem1_log_prob(0.3, &p, 4).unwrap().beyond_cap);
        assert!(theorem1_log_prob(1.5, &p, 4).is_err());
        assert!(theorem1_log_prob(0.1, &p, 1).is_err());
    }

    #[test]
    fn finite_negative_decreasing_at_small_r() {
        for p in Preset::ALL {
            let a = theorem1_log_prob(1e-6, &preset(p), 6).unwrap().log_p;
            let b = theorem1_log_prob(0.9e-6, &preset(p), 6).unwrap().log_p;
            assert!(a.is_finite() && a < 0.0 && b < a);
        }
    }

    #[test]
    fn delta_leading_term_and_sheet_form() {
        let p = FieldParams::<f64>::new(0.3, 0.1).unwrap();
        let mut prev = f64::INFINITY;
        for k in 3..=9 {
            let r = 10f64.powi(-k * 2);
            let e = eps_series(r, &p, 8).unwrap();
            // Gap to the leading term is O((ln ξ / ξ)²).
            let scaled = (e.delta_full - e.delta_corr).abs() / (e.xi.ln() / e.xi).powi(2);
            assert!(scaled < 10.0);
            let gap = (e.delta_full - e.delta_corr).abs();
            assert!(gap < prev);
            prev = gap;
        }
        let e = eps_series(1e-5, &preset(Preset::Sheet), 6).unwrap();
        assert!((e.delta_full - ((1.0 + e.eps_q).powf(-0.5) - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn refined_approaches_base_law() {
        let p = preset(Preset::Pillow);
        let mut prev = f64::INFINITY;
        for k in 2..=8 {
            let r = 10f64.powi(-k);
            let a = theorem1_log_prob(r, &p, 6).unwrap().log_p;
            let b = proposition1_log_prob(r, &p, 6).unwrap().log_p;
            assert!((a - b).abs() < prev);
            prev = (a - b).abs();
        }
    }

    #[test]
    fn series_root_reproduces_bridge() {
        // 2γ̃r from the Lagrange series equals π⁻¹ ξ (1 + Σ π̄_m ξ^{-m}) with
        // π̄ evaluated at the s̄ of the field constants.
        let tables = PolyTables::shared();
        for p in [preset(Preset::Sheet), preset(Preset::Pillow), FieldParams::<f64>::new(1.5, -0.7).unwrap()] {
            let r = 1e-6;
            let d = lagrange_d(&p);
            let y = lagrange_series(d, r, 8).unwrap();
            let lhs = 2.0 * y / (2.0 * PI) * r;
            let e = eps_series(r, &p, 8).unwrap();
            let sum: f64 = (1..=8).map(|m| tables.pi(m).eval(e.sbar) * e.xi.powi(-(m as i32))).sum();
            let rhs = e.xi / PI * (1.0 + sum);
            assert!((lhs - rhs).abs() / rhs < 1e-10);
        }
    }

    #[test]
    fn refined_series_tends_to_exact_root_form() {
        let p = preset(Preset::Pillow);
        let mut prev = f64::INFINITY;
        // Beyond r ~ 1e-8 the absolute gap is swamped by rounding in 𝒦.
        for k in [3, 5, 8] {
            let r = 10f64.powi(-k);
            let series = proposition1_log_prob(r, &p, 10).unwrap().log_p;
            let exact = refined_exact_root(r, &p).unwrap();
            let gap = (series - exact).abs();
            assert!(gap < prev, "r={r} gap={gap}");
            prev = gap;
        }
        assert!(prev < 1e-5);
    }

    #[test]
    fn corollary2_offsets() {
        let base = preset(Preset::Pillow);
        let a = theorem1_log_prob(1e-4, &base, 6).unwrap().log_p;
        assert_eq!(corollary2_log_prob(1e-4, &base, 6).unwrap().log_p, a);
        let pert = FieldParams::perturbed(0.0, 0.0, 0.25, 0.0).unwrap();
        let b = corollary2_log_prob(1e-4, &pert, 6).unwrap().log_p;
        assert!((b - a - 0.5 * (PI / 2.0).ln()).abs() < 1e-10);
    }

    #[test]
    fn optimal_truncation_is_in_range() {
        for p in Preset::ALL {
            for &r in &[0.1, 1e-3, 1e-8] {
                let k = optimal_terms(r, &preset(p)).unwrap();
                assert!((MIN_TERMS..=MAX_TERMS).contains(&k));
            }
        }
    }
}
