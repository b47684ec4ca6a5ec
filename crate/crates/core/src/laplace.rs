//! The log-Laplace transform `L(h) = ln E exp(-h V²) = -½ Σ ln(1 + 2hλ_ij)`
//! and its `h`-derivatives.
//!
//! Two independent evaluation paths are provided.
//!
//! * [`LaplacePath::RowCollapsed`] sums each row of the spectrum in closed
//!   form. For the unperturbed field this is `L(h) = ½ J(π⁻² √(2h))` with
//!   `J(γ) = Σ_i u(γ/(i+b))` and
//!   `u(x) = ln(|Γ(1+δ+ix)|² / Γ²(1+δ))`. Perturbed columns use the
//!   analogous product of four gamma functions.
//! * [`LaplacePath::Direct`] sums `ln(1 + 2hλ_ij)` term by term over the
//!   region where `2hλ_ij > 1/4` and closes every remainder with power series
//!   whose coefficients are Hurwitz zeta sums. No gamma function is involved.
//!
//! Rows far out (small argument) are summed by the same power series on both
//! paths. When too many rows carry a large argument the row-collapsed path
//! switches to Gregory's endpoint formula, with the integral done by
//! Gauss–Legendre panels on geometrically growing intervals.
//!
//! For large `x`, `u(x) = v_δ + (1+2δ) ln x - πx + O(1/x)` with
//! `v_δ = ln 2π - 2 ln Γ(1+δ)`; this drives the growth law of `J`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::axis::Axis;
use crate::error::{Error, Result};
use crate::field::{pi_pow4, FieldParams};
use crate::quad::{forward_differences, integrate, GREGORY};
use crate::scalar::{KahanSum, Real};
use crate::specfun::{digamma, ln_gamma, ln_gamma_real, polygamma};

/// Rows and columns with `c β < SERIES_RATIO` are summed by power series.
const SERIES_RATIO: f64 = 0.25;
/// Panels end once the first-column argument falls below this.
const PANEL_STOP_RATIO: f64 = 1.0 / 16.0;
/// Explicit rows on the row-collapsed path before switching to Gregory.
const EXPLICIT_ROWS_MAX: usize = 2048;
/// Row cap on the direct path; beyond it the double sum is refused.
pub const DIRECT_ROWS_MAX: usize = 200_000;
/// Longest power series in any tail (`0.25^40 ≈ 1e-24`).
const TAIL_TERMS_MAX: u32 = 40;

/// Which evaluation route [`laplace_eval`] takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LaplacePath {
    Direct,
    RowCollapsed,
}

impl fmt::Display for LaplacePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LaplacePath::Direct => "direct",
            LaplacePath::RowCollapsed => "row_collapsed",
        })
    }
}

impl FromStr for LaplacePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(LaplacePath::Direct),
            "row_collapsed" | "collapsed" => Ok(LaplacePath::RowCollapsed),
            other => Err(Error::InvalidParams(format!("unknown path '{other}'"))),
        }
    }
}

/// How the remainder of the row sum was closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailKind {
    /// Power series in Hurwitz zeta sums; exact up to rounding.
    Series,
    /// Gregory endpoint corrections plus Gauss–Legendre integral.
    Gregory,
}

/// `L(h)`, `L'(h)`, `L''(h)` with truncation metadata.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaplaceEval<T> {
    pub h: T,
    pub l: T,
    pub dl: T,
    pub d2l: T,
    pub path: LaplacePath,
    /// Rows summed explicitly.
    pub trunc_n: usize,
    /// Series terms or Gregory differences used for the remainder.
    pub tail_terms: usize,
}

impl<T: Real> LaplaceEval<T> {
    /// `τ² = h² L''(h)`.
    pub fn tau2(&self) -> T {
        self.h * self.h * self.d2l
    }
}

/// `J(γ)`, `J'(γ)`, `J''(γ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JEval<T> {
    pub gamma: T,
    pub j: T,
    pub dj: T,
    pub d2j: T,
    pub trunc_n: usize,
    pub tail: TailKind,
    pub tail_terms: usize,
}

/// `u(x)` and its derivatives for one `δ`.
pub(crate) struct UFunction<T: Real> {
    axis: Axis<T>,
    w: T,
    ln_gamma_w: T,
}

impl<T: Real> UFunction<T> {
    pub fn new(delta: T) -> Result<Self> {
        if !(delta > -T::one()) || !delta.is_finite() {
            return Err(Error::InvalidParams(format!("need delta > -1, got {delta}")));
        }
        let w = T::one() + delta;
        Ok(Self { axis: Axis::new(delta, T::zero()), w, ln_gamma_w: ln_gamma_real(w)? })
    }

    /// `u(x) = -Φ(x²)`; even in `x`.
    pub fn value(&self, x: T) -> T {
        -self.axis.phi(x * x)
    }

    /// `(u, u', u'')` at `x >= 0`.
    pub fn derivs(&self, x: T) -> (T, T, T) {
        let x2 = x * x;
        let two = T::lit(2.0);
        if x2 <= T::lit(SERIES_RATIO) * self.w * self.w {
            let d = self.axis.phi_derivs(x2);
            return (-d.phi, -two * x * d.d1, -two * d.d1 + T::lit(4.0) * x2 * d.h2);
        }
        let z = Complex::new(self.w, x);
        let u = two * (ln_gamma(z).expect("re > 0").re - self.ln_gamma_w);
        let du = -two * digamma(z).expect("re > 0").im;
        let d2u = -two * polygamma(1, z).expect("re > 0").re;
        (u, du, d2u)
    }
}

/// `u(x) = ln(|Γ(1+δ+ix)|² / Γ²(1+δ))`.
pub fn u_func<T: Real>(x: T, delta: T) -> Result<T> {
    Ok(UFunction::new(delta)?.value(x))
}

/// `(u'(x), u''(x))`, i.e. `-2 Im Ψ(1+δ+ix)` and `-2 Re Ψ'(1+δ+ix)`.
pub fn u_derivs<T: Real>(x: T, delta: T) -> Result<(T, T)> {
    let (_, du, d2u) = UFunction::new(delta)?.derivs(x.abs());
    Ok((du * x.signum(), d2u))
}

/// Sums of a row sequence with its remainder, in some basis of three
/// components.
struct RowSums<T> {
    sums: [T; 3],
    explicit_rows: usize,
    tail: TailKind,
    tail_terms: usize,
}

/// `A0 = Σ (-1)^{k+1} x^k C_k / k`, `A1 = Σ (-1)^{k+1} x^{k-1} C_k` and
/// `A2 = Σ_{k>=2} (-1)^k (k-1) x^{k-2} C_k` for `0 <= x <= 1/4`.
fn log_series<T: Real>(x: T, coeff: impl Fn(u32) -> T) -> ([T; 3], usize) {
    let mut a = [T::zero(); 3];
    // x^{k-1} and x^{k-2}
    let mut pow = T::one();
    let mut pow_prev = T::zero();
    let mut used = 0;
    for k in 1..=TAIL_TERMS_MAX {
        let c = coeff(k);
        let kf = T::from_u32(k).unwrap();
        let sign = if k % 2 == 1 { T::one() } else { -T::one() };
        let t = sign * pow * c;
        a[0] = a[0] + t * x / kf;
        a[1] = a[1] + t;
        a[2] = a[2] - sign * (kf - T::one()) * c * pow_prev;
        used = k as usize;
        if k >= 2 && (t.abs() * kf) <= T::epsilon() * T::lit(1e-2) * a[1].abs() {
            break;
        }
        pow_prev = if k == 1 { T::one() } else { pow_prev * x };
        pow = pow * x;
    }
    (a, used)
}

/// `Σ_{i>=a} Φ(κ α_i)` etc. over whole rows, when `κ α_a β_1 <= 1/4`.
fn row_series_tail<T: Real>(rows: &Axis<T>, cols: &Axis<T>, kappa: T, a: usize) -> ([T; 3], usize) {
    let scale = rows.weight(T::from_usize_lossy(a)) * cols.first_weight();
    let x = kappa * scale;
    let (s, used) = if x == T::zero() {
        // Only the k = 1, 2 coefficients survive.
        let c1 = rows.scaled_power_sum_from(1, a) * cols.scaled_power_sum(1);
        let c2 = rows.scaled_power_sum_from(2, a) * cols.scaled_power_sum(2);
        ([T::zero(), c1, c2], 2)
    } else {
        log_series(x, |k| rows.scaled_power_sum_from(k, a) * cols.scaled_power_sum(k))
    };
    ([s[0], scale * s[1], scale * scale * s[2]], used)
}

fn row_load<T: Real>(rows: &Axis<T>, beta1: T, kappa: T, x: T) -> T {
    kappa * rows.weight(x) * beta1
}

/// Row engine shared by the collapsed evaluators. `f(x)` gives the three
/// components at row position `x` (not necessarily an integer); `from_phi`
/// maps the series tail `(ΣΦ, ΣαΦ', Σα²H2)` into the same basis.
fn collapsed_rows<T, F, M>(rows: &Axis<T>, cols: &Axis<T>, kappa: T, f: F, from_phi: M) -> RowSums<T>
where
    T: Real,
    F: Fn(T) -> [T; 3],
    M: Fn([T; 3]) -> [T; 3],
{
    let beta1 = cols.first_weight();
    let big = T::lit(SERIES_RATIO);
    let mut acc = [KahanSum::new(), KahanSum::new(), KahanSum::new()];
    let mut i = 1usize;
    while i <= EXPLICIT_ROWS_MAX && row_load(rows, beta1, kappa, T::from_usize_lossy(i)) > big {
        for (a, v) in acc.iter_mut().zip(f(T::from_usize_lossy(i))) {
            a.add(v);
        }
        i += 1;
    }
    if row_load(rows, beta1, kappa, T::from_usize_lossy(i)) <= big {
        let (tail, used) = row_series_tail(rows, cols, kappa, i);
        for (a, v) in acc.iter_mut().zip(from_phi(tail)) {
            a.add(v);
        }
        return RowSums {
            sums: acc.map(|a| a.value()),
            explicit_rows: i - 1,
            tail: TailKind::Series,
            tail_terms: used,
        };
    }

    // Gregory: Σ_{n>=0} f(a+n) = ∫_a^∞ f + Σ_n g_n Δ^n f(a).
    let a = T::from_usize_lossy(i);
    let values: Vec<[T; 3]> = (0..GREGORY.len()).map(|n| f(a + T::from_usize_lossy(n))).collect();
    for (comp, slot) in acc.iter_mut().enumerate() {
        let column: Vec<T> = values.iter().map(|v| v[comp]).collect();
        let diffs = forward_differences(&column);
        for (g, d) in GREGORY.iter().zip(diffs).rev() {
            slot.add(T::lit(*g) * d);
        }
    }
    for (slot, v) in acc.iter_mut().zip(tail_integral(rows, beta1, kappa, a, &f)) {
        slot.add(v);
    }
    RowSums {
        sums: acc.map(|a| a.value()),
        explicit_rows: i - 1,
        tail: TailKind::Gregory,
        tail_terms: GREGORY.len(),
    }
}

/// `∫_a^∞ f(x) dx` by Gauss–Legendre on `[a, 2a], [2a, 4a], …` until the
/// argument is small, then one panel in `t = X/x`.
fn tail_integral<T, F>(rows: &Axis<T>, beta1: T, kappa: T, a: T, f: &F) -> [T; 3]
where
    T: Real,
    F: Fn(T) -> [T; 3],
{
    let mut acc = [KahanSum::new(), KahanSum::new(), KahanSum::new()];
    let mut lo = a;
    let stop = T::lit(PANEL_STOP_RATIO);
    while row_load(rows, beta1, kappa, lo) > stop {
        let hi = lo * T::lit(2.0);
        for (s, v) in acc.iter_mut().zip(integrate(lo, hi, f)) {
            s.add(v);
        }
        lo = hi;
    }
    let far = |t: T| {
        let x = lo / t;
        let jac = lo / (t * t);
        f(x).map(|v| v * jac)
    };
    for (s, v) in acc.iter_mut().zip(integrate(T::zero(), T::one(), &far)) {
        s.add(v);
    }
    acc.map(|s| s.value())
}

/// Row sums in the `Φ` basis by explicit columns: `(ΣΦ(κα_i), Σα_iΦ', Σα_i²H2)`.
fn direct_rows<T: Real>(rows: &Axis<T>, cols: &Axis<T>, kappa: T) -> Result<RowSums<T>> {
    let beta1 = cols.first_weight();
    let big = T::lit(SERIES_RATIO);
    let mut acc = [KahanSum::new(), KahanSum::new(), KahanSum::new()];
    let mut i = 1usize;
    while row_load(rows, beta1, kappa, T::from_usize_lossy(i)) > big {
        if i > DIRECT_ROWS_MAX {
            return Err(Error::range(
                "laplace_eval",
                format!("direct path needs more than {DIRECT_ROWS_MAX} rows; use the row-collapsed path"),
            ));
        }
        let alpha = rows.weight(T::from_usize_lossy(i));
        let c = kappa * alpha;
        let mut row = [KahanSum::new(), KahanSum::new(), KahanSum::new()];
        let mut j = 1usize;
        loop {
            let beta = cols.weight(T::from_usize_lossy(j));
            let y = c * beta;
            if y <= big {
                let (t, _) = log_series(y, |k| cols.scaled_power_sum_from(k, j));
                row[0].add(t[0]);
                row[1].add(beta * t[1]);
                row[2].add(beta * beta * t[2]);
                break;
            }
            let q = beta / (T::one() + y);
            row[0].add(y.ln_1p());
            row[1].add(q);
            row[2].add(q * q);
            j += 1;
        }
        acc[0].add(row[0].value());
        acc[1].add(alpha * row[1].value());
        acc[2].add(alpha * alpha * row[2].value());
        i += 1;
    }
    let (tail, used) = row_series_tail(rows, cols, kappa, i);
    for (a, v) in acc.iter_mut().zip(tail) {
        a.add(v);
    }
    Ok(RowSums { sums: acc.map(|a| a.value()), explicit_rows: i - 1, tail: TailKind::Series, tail_terms: used })
}

/// `J(γ) = Σ_i u(γ/(i+b))` and its first two derivatives, for the
/// unperturbed field.
pub fn j_eval<T: Real>(gamma: T, params: &FieldParams<T>) -> Result<JEval<T>> {
    params.validate()?;
    if params.is_perturbed() {
        return Err(Error::InvalidParams("J exists only for the unperturbed field".into()));
    }
    if !(gamma > T::zero()) || !gamma.is_finite() {
        return Err(Error::domain("j_eval", format!("gamma must be positive, got {gamma}")));
    }
    let ufn = UFunction::new(params.delta)?;
    let rows = params.row_axis();
    let b = params.b;
    let g = gamma;
    let f = |x: T| {
        let s = x + b;
        let (u, du, d2u) = ufn.derivs(g / s);
        [u, du / s, d2u / (s * s)]
    };
    let two = T::lit(2.0);
    let from_phi = |p: [T; 3]| [-p[0], -two * g * p[1], -two * p[1] + T::lit(4.0) * g * g * p[2]];
    let out = collapsed_rows(&rows, &ufn.axis, g * g, f, from_phi);
    Ok(JEval {
        gamma,
        j: out.sums[0],
        dj: out.sums[1],
        d2j: out.sums[2],
        trunc_n: out.explicit_rows,
        tail: out.tail,
        tail_terms: out.tail_terms,
    })
}

/// Large-`γ` forms of `(J, γJ', γ²J'')` without their `O(1/γ)` remainders:
/// `(-πγ ln γ + B₁πγ - B₂ ln γ - B₃, -πγ ln γ + (B₁-1)πγ - B₂, -πγ + B₂)`.
pub fn lemma1_asymptote<T: Real>(gamma: T, params: &FieldParams<T>) -> (T, T, T) {
    let k = params.constants();
    let pi = T::PI();
    let lg = gamma.ln();
    let j = -pi * gamma * lg + k.b1 * pi * gamma - k.b2 * lg - k.b3;
    let dj = -pi * gamma * lg + (k.b1 - T::one()) * pi * gamma - k.b2;
    let d2j = -pi * gamma + k.b2;
    (j, dj, d2j)
}

/// `L(h)`, `L'(h)`, `L''(h)` along the chosen path.
pub fn laplace_eval<T: Real>(h: T, params: &FieldParams<T>, path: LaplacePath) -> Result<LaplaceEval<T>> {
    params.validate()?;
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::domain("laplace_eval", format!("h must be positive, got {h}")));
    }
    let pi2 = T::PI() * T::PI();
    let pi4 = pi_pow4::<T>();
    let half = T::lit(0.5);
    if path == LaplacePath::RowCollapsed && !params.is_perturbed() {
        // h = γ²/2, L(h) = ½ J(g) with g = π⁻² γ.
        let gamma = (T::lit(2.0) * h).sqrt();
        let g = gamma / pi2;
        let je = j_eval(g, params)?;
        let l = half * je.j;
        let dl = je.dj / (T::lit(2.0) * pi2 * gamma);
        let d2l = half * (je.d2j / (pi4 * gamma * gamma) - je.dj / (pi2 * gamma * gamma * gamma));
        return Ok(LaplaceEval { h, l, dl, d2l, path, trunc_n: je.trunc_n, tail_terms: je.tail_terms });
    }
    let rows = params.row_axis();
    let cols = params.column_axis();
    let kappa = T::lit(2.0) * h / pi4;
    let out = match path {
        LaplacePath::Direct => direct_rows(&rows, &cols, kappa)?,
        LaplacePath::RowCollapsed => {
            let f = |x: T| {
                let alpha = rows.weight(x);
                let d = cols.phi_derivs(kappa * alpha);
                [d.phi, alpha * d.d1, alpha * alpha * d.h2]
            };
            collapsed_rows(&rows, &cols, kappa, f, |p| p)
        }
    };
    let [s0, s1, s2] = out.sums;
    Ok(LaplaceEval {
        h,
        l: -half * s0,
        dl: -s1 / pi4,
        d2l: T::lit(2.0) * s2 / (pi4 * pi4),
        path,
        trunc_n: out.explicit_rows,
        tail_terms: out.tail_terms,
    })
}

/// What the saddle solver needs from a spectrum.
pub trait Spectrum<T: Real>: Sync {
    /// `Σ λ = E V²`.
    fn trace(&self) -> T;

    fn laplace(&self, h: T) -> Result<LaplaceEval<T>>;

    /// Starting point for the saddle search at level `r`.
    fn saddle_seed(&self, r: T) -> T {
        (T::lit(2.0) * r).recip()
    }
}

/// Leading root `γ₀ = |ln r|/(2πr)` of the saddle equation, as `h₀ = γ₀²/2`.
fn field_seed<T: Real>(r: T) -> T {
    if r < T::lit(0.5) {
        let g0 = r.ln().abs() / (T::lit(2.0) * T::PI() * r);
        g0 * g0 * T::lit(0.5)
    } else {
        (T::lit(2.0) * r).recip()
    }
}

impl<T: Real> Spectrum<T> for FieldParams<T> {
    fn trace(&self) -> T {
        FieldParams::trace(self)
    }

    fn laplace(&self, h: T) -> Result<LaplaceEval<T>> {
        laplace_eval(h, self, LaplacePath::RowCollapsed)
    }

    fn saddle_seed(&self, r: T) -> T {
        field_seed(r)
    }
}

/// A field evaluated along a fixed path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathSpectrum<T> {
    pub params: FieldParams<T>,
    pub path: LaplacePath,
}

impl<T: Real> Spectrum<T> for PathSpectrum<T> {
    fn trace(&self) -> T {
        self.params.trace()
    }

    fn laplace(&self, h: T) -> Result<LaplaceEval<T>> {
        laplace_eval(h, &self.params, self.path)
    }

    fn saddle_seed(&self, r: T) -> T {
        field_seed(r)
    }
}

/// An explicit finite list of positive eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSpectrum<T> {
    eigenvalues: Vec<T>,
}

impl<T: Real> FiniteSpectrum<T> {
    pub fn new(eigenvalues: Vec<T>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidParams("spectrum must not be empty".into()));
        }
        if let Some(bad) = eigenvalues.iter().find(|l| !(**l > T::zero()) || !l.is_finite()) {
            return Err(Error::InvalidParams(format!("eigenvalues must be positive and finite, got {bad}")));
        }
        Ok(Self { eigenvalues })
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }
}

impl<T: Real> Spectrum<T> for FiniteSpectrum<T> {
    fn trace(&self) -> T {
        self.eigenvalues.iter().copied().collect::<KahanSum<T>>().value()
    }

    fn laplace(&self, h: T) -> Result<LaplaceEval<T>> {
        if !(h > T::zero()) || !h.is_finite() {
            return Err(Error::domain("laplace_eval", format!("h must be positive, got {h}")));
        }
        let two = T::lit(2.0);
        let mut l = KahanSum::new();
        let mut dl = KahanSum::new();
        let mut d2l = KahanSum::new();
        for &lam in &self.eigenvalues {
            let y = two * h * lam;
            let q = lam / (T::one() + y);
            l.add(-T::lit(0.5) * y.ln_1p());
            dl.add(-q);
            d2l.add(two * q * q);
        }
        Ok(LaplaceEval {
            h,
            l: l.value(),
            dl: dl.value(),
            d2l: d2l.value(),
            path: LaplacePath::Direct,
            trunc_n: self.eigenvalues.len(),
            tail_terms: 0,
        })
    }
}
