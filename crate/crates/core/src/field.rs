//! Field parameterization, eigenvalue spectrum and the closed-form constants
//! of the small-ball expansion.
//!
//! The field is described by its Karhunen–Loève spectrum
//!
//! ```text
//! λ_ij = π⁻⁴ [((i+b)² - q) ((j+δ)² - τ)]⁻¹,   i, j >= 1,
//! ```
//!
//! with `q = τ = 0` for the unperturbed tensor-product field.
//!
//! Validity of a perturbation is checked as `(1+b)² > q` and `(1+δ)² > τ`,
//! which is exactly positivity of every factor. A looser condition
//! `q < 1 + b` admits nonpositive eigenvalues when `b < 0` and is rejected.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::axis::Axis;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::{digamma_real, euler_gamma, ln_gamma, ln_gamma_real};

/// The classical named fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Brownian sheet, `b = δ = -1/2`.
    Sheet,
    /// Brownian pillow, `b = δ = 0`.
    Pillow,
    /// Kiefer field, `b = -1/2`, `δ = 0`.
    Kiefer,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Sheet, Preset::Pillow, Preset::Kiefer];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Sheet => "sheet",
            Preset::Pillow => "pillow",
            Preset::Kiefer => "kiefer",
        }
    }

    /// `(b, δ)`.
    pub fn shifts(self) -> (f64, f64) {
        match self {
            Preset::Sheet => (-0.5, -0.5),
            Preset::Pillow => (0.0, 0.0),
            Preset::Kiefer => (-0.5, 0.0),
        }
    }

    /// Offset of `s̄` relative to `ln|ln r| + 2 C_e - 3 ln π` in closed form.
    pub fn sbar_shift(self) -> f64 {
        let ln2 = std::f64::consts::LN_2;
        match self {
            Preset::Sheet => 3.0 * ln2,
            Preset::Pillow => -ln2,
            Preset::Kiefer => ln2,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sheet" => Ok(Preset::Sheet),
            "pillow" => Ok(Preset::Pillow),
            "kiefer" => Ok(Preset::Kiefer),
            other => Err(Error::InvalidParams(format!(
                "unknown preset '{other}' (expected sheet, pillow or kiefer)"
            ))),
        }
    }
}

/// Shifts `(b, δ)` and optional perturbation `(q, τ)` of the spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldParams<T> {
    pub b: T,
    pub delta: T,
    pub q: T,
    pub tau_pert: T,
}

impl<T: Real> FieldParams<T> {
    /// Unperturbed field; requires `b > -1`, `δ > -1`.
    pub fn new(b: T, delta: T) -> Result<Self> {
        Self::perturbed(b, delta, T::zero(), T::zero())
    }

    pub fn perturbed(b: T, delta: T, q: T, tau_pert: T) -> Result<Self> {
        let p = Self { b, delta, q, tau_pert };
        p.validate()?;
        Ok(p)
    }

    pub fn preset(preset: Preset) -> Self {
        let (b, d) = preset.shifts();
        Self { b: T::lit(b), delta: T::lit(d), q: T::zero(), tau_pert: T::zero() }
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.b, self.delta, self.q, self.tau_pert].iter().all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if !(self.b > -T::one()) || !(self.delta > -T::one()) {
            return Err(Error::InvalidParams(format!(
                "need b > -1 and delta > -1, got b = {}, delta = {}",
                self.b, self.delta
            )));
        }
        let wb = T::one() + self.b;
        let wd = T::one() + self.delta;
        if !(wb * wb > self.q) || !(wd * wd > self.tau_pert) {
            return Err(Error::InvalidParams(format!(
                "need (1+b)^2 > q and (1+delta)^2 > tau, got q = {}, tau = {}",
                self.q, self.tau_pert
            )));
        }
        Ok(())
    }

    pub fn is_perturbed(&self) -> bool {
        self.q != T::zero() || self.tau_pert != T::zero()
    }

    /// The same shifts without perturbation.
    pub fn unperturbed(&self) -> Self {
        Self { q: T::zero(), tau_pert: T::zero(), ..*self }
    }

    pub(crate) fn row_axis(&self) -> Axis<T> {
        Axis::new(self.b, self.q)
    }

    pub(crate) fn column_axis(&self) -> Axis<T> {
        Axis::new(self.delta, self.tau_pert)
    }

    /// `λ_ij`, indices from 1.
    pub fn eigenvalue(&self, i: usize, j: usize) -> T {
        debug_assert!(i >= 1 && j >= 1);
        let x = T::from_usize_lossy(i) + self.b;
        let y = T::from_usize_lossy(j) + self.delta;
        pi_pow4::<T>().recip() / ((x * x - self.q) * (y * y - self.tau_pert))
    }

    /// `E V² = Σ λ_ij`; factorizes into two one-dimensional sums.
    pub fn trace(&self) -> T {
        let rows = self.row_axis().power_sum(1);
        let cols = self.column_axis().power_sum(1);
        rows * cols / pi_pow4::<T>()
    }

    /// `Σ λ_ij²`, the half-variance of `V²`.
    pub fn sum_squares(&self) -> T {
        let rows = self.row_axis().power_sum(2);
        let cols = self.column_axis().power_sum(2);
        rows * cols / (pi_pow4::<T>() * pi_pow4::<T>())
    }

    /// Constants of the expansion. Perturbation is ignored: they belong to the
    /// unperturbed field.
    pub fn constants(&self) -> AsymptoticConstants<T> {
        AsymptoticConstants::new(self.b, self.delta)
    }

    /// Ratio `C_dist` of small-ball probabilities of the perturbed and
    /// unperturbed fields:
    /// `(Γ(1+b+√q) Γ(1+b-√q) Γ(1+δ+√τ) Γ(1+δ-√τ) / (Γ²(1+b) Γ²(1+δ)))^{1/2}`.
    ///
    /// Negative `q` or `τ` give conjugate pairs `1+b ± i√|q|`.
    pub fn distortion_constant(&self) -> Result<T> {
        Ok(self.ln_distortion_constant()?.exp())
    }

    pub fn ln_distortion_constant(&self) -> Result<T> {
        let half_log = |w: T, p: T| -> Result<T> {
            let root = Complex::new(p, T::zero()).sqrt();
            let wc = Complex::new(w, T::zero());
            if !((wc - root).re > T::zero()) {
                return Err(Error::domain(
                    "distortion_constant",
                    format!("gamma argument {} - sqrt({}) is not positive", w, p),
                ));
            }
            let pair = ln_gamma(wc + root)?.re + ln_gamma(wc - root)?.re;
            Ok(pair - T::lit(2.0) * ln_gamma_real(w)?)
        };
        let wb = T::one() + self.b;
        let wd = T::one() + self.delta;
        Ok(T::lit(0.5) * (half_log(wb, self.q)? + half_log(wd, self.tau_pert)?))
    }
}

#[inline]
pub(crate) fn pi_pow4<T: Real>() -> T {
    let p2 = T::PI() * T::PI();
    p2 * p2
}

/// Constants `B₁, B₂, B₃, B, C, D`, the prefactor exponents `c₀, c₁, c₂` and
/// the offset of `s̄ = ln|ln r| + sbar_offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticConstants<T> {
    pub b1: T,
    pub b2: T,
    pub b3: T,
    pub big_b: T,
    pub big_c: T,
    pub big_d: T,
    pub c0: T,
    pub c1: T,
    pub c2: T,
    /// `-Ψ(1+b) - Ψ(1+δ) - ln(2π³)`.
    pub sbar_offset: T,
}

impl<T: Real> AsymptoticConstants<T> {
    pub fn new(b: T, delta: T) -> Self {
        let one = T::one();
        let two = T::lit(2.0);
        let half = T::lit(0.5);
        let pi = T::PI();
        let psi_b = digamma_real(one + b).expect("b > -1");
        let psi_d = digamma_real(one + delta).expect("delta > -1");
        let lg_b = ln_gamma_real(one + b).expect("b > -1");
        let lg_d = ln_gamma_real(one + delta).expect("delta > -1");
        let ln_pi = pi.ln();
        let ln_2pi = (two * pi).ln();

        let b1 = one + psi_b + psi_d;
        let b2 = (one + two * b) * (one + two * delta) * half;
        let b3 = (one + delta + b) * ln_2pi - (one + two * delta) * lg_b - (one + two * b) * lg_d;
        let big_b = (b1 + two * ln_pi) / pi;
        let big_c = b2;
        let big_d = b3 - two * b2 * ln_pi;
        let ln_c0 = -half * (ln_pi + big_c * half * two.ln() + big_d);
        let c0 = ln_c0.exp();
        let c1 = big_c / T::lit(4.0);
        let c2 = -(big_c + two) / T::lit(4.0);
        let sbar_offset = -psi_b - psi_d - (two * pi * pi * pi).ln();
        Self { b1, b2, b3, big_b, big_c, big_d, c0, c1, c2, sbar_offset }
    }

    pub fn ln_c0(&self) -> T {
        self.c0.ln()
    }

    /// The same offset reached through `B`: `1 - πB - ln(2π)`.
    pub fn sbar_offset_via_b(&self) -> T {
        T::one() - T::PI() * self.big_b - (T::lit(2.0) * T::PI()).ln()
    }

    /// `s̄(r) = ln|ln r| + sbar_offset`.
    pub fn sbar(&self, r: T) -> T {
        r.ln().abs().ln() + self.sbar_offset
    }
}

/// `2 C_e - 3 ln π`, the field-independent part of the preset offsets.
pub fn preset_sbar_base<T: Real>() -> T {
    T::lit(2.0) * euler_gamma::<T>() - T::lit(3.0) * T::PI().ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn p(b: f64, d: f64) -> FieldParams<f64> {
        FieldParams::new(b, d).unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        let pi4 = PI.powi(4);
        assert!((p(-0.5, -0.5).eigenvalue(1, 1) - 16.0 / pi4).abs() < 1e-15);
        assert!((p(0.0, 0.0).eigenvalue(2, 3) - 1.0 / (36.0 * pi4)).abs() < 1e-18);
        let pert = FieldParams::perturbed(0.0, 0.0, 0.25, 0.0).unwrap();
        assert!((pert.eigenvalue(1, 1) - 4.0 / (3.0 * pi4)).abs() < 1e-15);
    }

    #[test]
    fn eigenvalue_strictly_decreasing() {
        for params in [p(-0.5, -0.5), p(0.0, 0.0), p(-0.9, 2.0)] {
            for i in 1..30 {
                for j in 1..30 {
                    assert!(params.eigenvalue(i + 1, j) < params.eigenvalue(i, j));
                    assert!(params.eigenvalue(i, j + 1) < params.eigenvalue(i, j));
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        assert!((p(-0.5, -0.5).trace() - 0.25).abs() < 1e-15);
        assert!((p(0.0, 0.0).trace() - 1.0 / 36.0).abs() < 1e-16);
        assert!((p(-0.5, 0.0).trace() - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(FieldParams::new(-1.0, 0.0).is_err());
        assert!(FieldParams::new(0.0, -1.5).is_err());
        assert!(FieldParams::new(f64::NAN, 0.0).is_err());
        // (1+b)^2 = 0.25 <= q = 0.3 < 1+b = 0.5: rejected.
        assert!(FieldParams::perturbed(-0.5, 0.0, 0.3, 0.0).is_err());
        assert!(FieldParams::perturbed(-0.5, 0.0, 0.2, -4.0).is_ok());
    }

    #[test]
    fn preset_parsing() {
        assert_eq!("Sheet".parse::<Preset>().unwrap(), Preset::Sheet);
        assert_eq!("kiefer".parse::<Preset>().unwrap(), Preset::Kiefer);
        assert!("pillowcase".parse::<Preset>().is_err());
    }

    #[test]
    fn constants_for_presets() {
        let sheet = FieldParams::<f64>::preset(Preset::Sheet).constants();
        assert!(sheet.big_c.abs() < 1e-15 && sheet.big_d.abs() < 1e-14);
        assert!((sheet.c0 - 1.0 / PI.sqrt()).abs() < 1e-14);
        assert_eq!(sheet.c1, 0.0);
        assert_eq!(sheet.c2, -0.5);

        let pillow = FieldParams::<f64>::preset(Preset::Pillow).constants();
        assert!((pillow.big_c - 0.5).abs() < 1e-15);
        assert!((pillow.big_d - LN_2).abs() < 1e-14);
        assert!((pillow.c1 - 0.125).abs() < 1e-15);
        assert!((pillow.c2 + 0.625).abs() < 1e-15);
        assert!((pillow.c0 - 2f64.powf(-0.625) / PI.sqrt()).abs() < 1e-14);

        let kiefer = FieldParams::<f64>::preset(Preset::Kiefer).constants();
        assert!(kiefer.big_c.abs() < 1e-15);
        assert!((kiefer.big_d - 0.5 * LN_2).abs() < 1e-14);
        assert!((kiefer.c0 - 2f64.powf(-0.25) / PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn sbar_offsets_match_preset_closed_forms() {
        for preset in Preset::ALL {
            let k = FieldParams::<f64>::preset(preset).constants();
            let shift = k.sbar_offset - preset_sbar_base::<f64>();
            assert!((shift - preset.sbar_shift()).abs() < 1e-12, "{preset}");
            assert!((k.sbar_offset - k.sbar_offset_via_b()).abs() < 1e-12);
        }
    }

    #[test]
    fn distortion_examples() {
        assert!((p(0.3, -0.2).distortion_constant().unwrap() - 1.0).abs() < 1e-15);
        let one = FieldParams::perturbed(0.0, 0.0, 0.25, 0.0).unwrap();
        assert!((one.distortion_constant().unwrap() - (PI / 2.0).sqrt()).abs() < 1e-13);
        let both = FieldParams::perturbed(0.0, 0.0, 0.25, 0.25).unwrap();
        assert!((both.distortion_constant().unwrap() - PI / 2.0).abs() < 1e-13);
        // Negative perturbation: |Γ(1+i)|² / Γ(1)² = π / sinh π.
        let neg = FieldParams::perturbed(0.0, 0.0, -1.0, 0.0).unwrap();
        let expect = (PI / PI.sinh()).sqrt();
        assert!((neg.distortion_constant().unwrap() - expect).abs() < 1e-13);
    }

    #[test]
    fn trace_matches_brute_double_sum() {
        for params in [
            p(-0.5, -0.5),
            p(0.0, 0.0),
            p(0.7, -0.3),
            FieldParams::perturbed(0.0, 0.0, 0.25, 0.25).unwrap(),
            FieldParams::perturbed(-0.5, 1.0, 0.2, -1.0).unwrap(),
        ] {
            // Rows and columns summed to M with the integral tail of each
            // axis; the cross term of the two tails is bounded by 1/M² and
            // folded in the same way.
            let m = 3000usize;
            let mut s = 0.0;
            for i in (1..=m).rev() {
                for j in (1..=m).rev() {
                    s += params.eigenvalue(i, j);
                }
            }
            let tail = |shift: f64| 1.0 / (m as f64 + 0.5 + shift);
            let head = |shift: f64, pert: f64| {
                (1..=m).map(|i| 1.0 / ((i as f64 + shift).powi(2) - pert)).sum::<f64>()
            };
            let hb = head(params.b, params.q);
            let hd = head(params.delta, params.tau_pert);
            let tb = tail(params.b);
            let td = tail(params.delta);
            let total = s + (hb * td + tb * hd + tb * td) / PI.powi(4);
            assert!(((params.trace() - total) / total).abs() < 1e-9, "{params:?}");
        }
    }
}
