//! One axis of a tensor-product spectrum: weights `β_j = ((j+shift)² - pert)^{-1}`
//! for `j >= 1`, their power sums, and the log-product
//! `Φ(c) = Σ_j ln(1 + c β_j)` with its `c`-derivatives.
//!
//! `Φ` collapses to gamma functions: with `w = 1 + shift` and `a² = pert - c`,
//! `Φ(c) = ln Γ(w+√pert) + ln Γ(w-√pert) - ln Γ(w+a) - ln Γ(w-a)`.
//! Near `c = 0` and near `a = 0` the collapse cancels badly, so there the
//! functions switch to power series whose coefficients are power sums or
//! Hurwitz zeta values.

use std::sync::OnceLock;

use num_complex::Complex;

use crate::scalar::Real;
use crate::specfun::{digamma, hurwitz_zeta, hurwitz_zeta_scaled, ln_gamma, polygamma};

/// Series below this ratio of the convergence radius are summed directly.
const SERIES_FRACTION: f64 = 0.25;
/// Number of series coefficients cached per axis.
const SERIES_TERMS: usize = 40;

#[derive(Debug)]
pub(crate) struct Axis<T: Real> {
    shift: T,
    pert: T,
    /// `Z_k / β_1^k` for `k = 1..=SERIES_TERMS` (index `k-1`).
    power_sums: OnceLock<Vec<T>>,
    /// `ζ(2m+2, w)` for `m = 0..SERIES_TERMS` (index `m`).
    zeta_even: OnceLock<Vec<T>>,
    /// `ln Γ(w+√pert) + ln Γ(w-√pert)`.
    phi_offset: OnceLock<T>,
}

impl<T: Real> Clone for Axis<T> {
    fn clone(&self) -> Self {
        Axis::new(self.shift, self.pert)
    }
}

/// `Φ`, `Φ'` and `-Φ''` at one point.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PhiDerivs<T> {
    pub phi: T,
    pub d1: T,
    /// `H2(c) = Σ β_j² / (1 + c β_j)² = -Φ''(c)`.
    pub h2: T,
}

impl<T: Real> Axis<T> {
    pub fn new(shift: T, pert: T) -> Self {
        Self {
            shift,
            pert,
            power_sums: OnceLock::new(),
            zeta_even: OnceLock::new(),
            phi_offset: OnceLock::new(),
        }
    }

    fn w(&self) -> T {
        T::one() + self.shift
    }

    /// `β_j` at a (possibly fractional) index.
    #[inline]
    pub fn weight(&self, j: T) -> T {
        let x = j + self.shift;
        (x * x - self.pert).recip()
    }

    /// `1/β_1`, the radius of convergence of the small-`c` series of `Φ`.
    pub fn first_inverse_weight(&self) -> T {
        let w = self.w();
        w * w - self.pert
    }

    /// `Σ_{j >= start} β_j^k`, `start >= 1`, `k >= 1`.
    pub fn power_sum_from(&self, k: u32, start: usize) -> T {
        self.scaled_power_sum_from(k, start) * self.weight(T::from_usize_lossy(start)).powi(k as i32)
    }

    /// `Σ_{j >= start} (β_j / β_start)^k`; bounded by `ζ(2k, 1)`-like values
    /// and never underflows.
    pub fn scaled_power_sum_from(&self, k: u32, start: usize) -> T {
        debug_assert!(start >= 1 && k >= 1);
        let x0 = T::from_usize_lossy(start) + self.shift;
        if self.pert == T::zero() {
            return hurwitz_zeta_scaled(2 * k, x0);
        }
        let beta0 = self.weight(T::from_usize_lossy(start));
        // Explicit terms until (j+shift)² >= 16 |pert|, then expand
        // ((j+shift)² - pert)^{-k} = Σ_m C(k+m-1, m) pert^m (j+shift)^{-2k-2m}.
        let limit = T::lit(16.0) * self.pert.abs();
        let mut j = start;
        let mut head = Vec::new();
        loop {
            let x = T::from_usize_lossy(j) + self.shift;
            if x * x >= limit {
                break;
            }
            head.push((self.weight(T::from_usize_lossy(j)) / beta0).powi(k as i32));
            j += 1;
        }
        let a = T::from_usize_lossy(j) + self.shift;
        // (β_j/β0)^k = (a^{-2} / β0)^k (a/(j+shift))^{2k} (1 - pert (j+shift)^{-2})^{-k}
        let lead = (a * a * beta0).recip().powi(k as i32);
        let ratio = self.pert / (a * a);
        let mut tail = T::zero();
        let mut binom = T::one();
        let mut pert_pow = T::one();
        for m in 0..200u32 {
            let term = binom * pert_pow * hurwitz_zeta_scaled(2 * k + 2 * m, a);
            tail = tail + term;
            if term.abs() <= T::epsilon() * tail.abs() * T::lit(1e-2) {
                break;
            }
            // C(k+m, m+1) = C(k+m-1, m) (k+m)/(m+1)
            binom = binom * T::from_u32(k + m).unwrap() / T::from_u32(m + 1).unwrap();
            pert_pow = pert_pow * ratio;
        }
        head.iter().rev().fold(lead * tail, |acc, &t| acc + t)
    }

    /// `Z_k = Σ_{j>=1} β_j^k`.
    pub fn power_sum(&self, k: u32) -> T {
        self.scaled_power_sum(k) * self.first_weight().powi(k as i32)
    }

    /// `Z_k / β_1^k`.
    pub fn scaled_power_sum(&self, k: u32) -> T {
        if (k as usize) <= SERIES_TERMS {
            self.scaled_power_sums()[k as usize - 1]
        } else {
            self.scaled_power_sum_from(k, 1)
        }
    }

    pub fn first_weight(&self) -> T {
        self.first_inverse_weight().recip()
    }

    fn scaled_power_sums(&self) -> &[T] {
        self.power_sums
            .get_or_init(|| (1..=SERIES_TERMS as u32).map(|k| self.scaled_power_sum_from(k, 1)).collect())
    }

    fn zeta_even(&self) -> &[T] {
        self.zeta_even.get_or_init(|| {
            let w = self.w();
            (0..SERIES_TERMS as u32).map(|m| hurwitz_zeta(2 * m + 2, w)).collect()
        })
    }

    fn phi_offset(&self) -> T {
        *self.phi_offset.get_or_init(|| {
            let w = Complex::new(self.w(), T::zero());
            let root = Complex::new(self.pert, T::zero()).sqrt();
            (ln_gamma(w + root).expect("validated axis") + ln_gamma(w - root).expect("validated axis")).re
        })
    }

    /// `Φ(c) = Σ_j ln(1 + c β_j)` and its derivatives, for `c >= 0`.
    pub fn phi_derivs(&self, c: T) -> PhiDerivs<T> {
        let radius = self.first_inverse_weight();
        if c <= T::lit(SERIES_FRACTION) * radius {
            return self.phi_small_c(c);
        }
        let w = self.w();
        let big_a = self.pert - c;
        let phi = self.phi_collapsed(c);
        if big_a.abs() <= T::lit(SERIES_FRACTION) * w * w {
            let (d1, h2) = self.h_near_pole_free(big_a);
            return PhiDerivs { phi, d1, h2 };
        }
        let two = T::lit(2.0);
        if big_a < T::zero() {
            // a = i s: the two gamma arguments are conjugate.
            let s = (-big_a).sqrt();
            let z = Complex::new(w, s);
            let h1 = digamma(z).expect("re > 0").im / s;
            let tri = polygamma(1, z).expect("re > 0").re;
            let h2 = tri / (two * big_a) - h1 / (two * big_a);
            return PhiDerivs { phi, d1: h1, h2 };
        }
        let a = Complex::new(big_a, T::zero()).sqrt();
        let wc = Complex::new(w, T::zero());
        let psi_p = digamma(wc + a).expect("re > 0");
        let psi_m = digamma(wc - a).expect("re > 0");
        let tri_p = polygamma(1, wc + a).expect("re > 0");
        let tri_m = polygamma(1, wc - a).expect("re > 0");
        let h1 = (psi_p - psi_m) / (a * two);
        let a2 = a * a;
        let h2 = (tri_p + tri_m) / (a2 * T::lit(4.0)) - h1 / (a2 * two);
        PhiDerivs { phi, d1: h1.re, h2: h2.re }
    }

    /// Value only; cheaper than [`phi_derivs`](Self::phi_derivs).
    pub fn phi(&self, c: T) -> T {
        if c <= T::lit(SERIES_FRACTION) * self.first_inverse_weight() {
            self.phi_small_c(c).phi
        } else {
            self.phi_collapsed(c)
        }
    }

    fn phi_collapsed(&self, c: T) -> T {
        let big_a = self.pert - c;
        if big_a < T::zero() {
            let z = Complex::new(self.w(), (-big_a).sqrt());
            return self.phi_offset() - T::lit(2.0) * ln_gamma(z).expect("re > 0").re;
        }
        let w = Complex::new(self.w(), T::zero());
        let a = Complex::new(big_a, T::zero()).sqrt();
        let lg = ln_gamma(w + a).expect("re > 0").re + ln_gamma(w - a).expect("re > 0").re;
        self.phi_offset() - lg
    }

    /// `Φ = Σ_k (-1)^{k+1} Z_k c^k / k` and term-wise derivatives, summed in
    /// the scaled variable `x = c β_1`.
    fn phi_small_c(&self, c: T) -> PhiDerivs<T> {
        let z = self.scaled_power_sums();
        let beta1 = self.first_weight();
        let x = c * beta1;
        let mut phi = T::zero();
        let mut d1 = T::zero();
        let mut h2 = T::zero();
        // x^{k-1}
        let mut pow = T::one();
        for (idx, &zk) in z.iter().enumerate() {
            let k = T::from_usize_lossy(idx + 1);
            let sign = if idx % 2 == 0 { T::one() } else { -T::one() };
            let t1 = sign * zk * pow;
            phi = phi + t1 * x / k;
            d1 = d1 + t1;
            if idx + 1 < z.len() {
                // -Φ'' = Σ_k (-1)^k (k-1) Z_k c^{k-2}, shifted by one index.
                h2 = h2 + sign * k * z[idx + 1] * pow;
            }
            if t1.abs() <= T::epsilon() * d1.abs() * T::lit(1e-2) && idx >= 2 {
                break;
            }
            pow = pow * x;
        }
        PhiDerivs { phi, d1: d1 * beta1, h2: h2 * beta1 * beta1 }
    }

    /// `H1(A) = Σ_j ((j+shift)² - A)^{-1} = Φ'` and `H2(A) = H1'(A) = -Φ''`
    /// with `A = pert - c`, expanded around `A = 0`:
    /// `H1 = Σ_m ζ(2m+2, w) A^m`. Converges for `|A| < w²`.
    fn h_near_pole_free(&self, big_a: T) -> (T, T) {
        let z = self.zeta_even();
        let mut h1 = T::zero();
        let mut h2 = T::zero();
        let mut pow = T::one();
        for (m, &zm) in z.iter().enumerate() {
            let t = zm * pow;
            h1 = h1 + t;
            if m + 1 < z.len() {
                h2 = h2 + T::from_usize_lossy(m + 1) * z[m + 1] * pow;
            }
            if t.abs() <= T::epsilon() * h1.abs() * T::lit(1e-2) && m >= 2 {
                break;
            }
            pow = pow * big_a;
        }
        (h1, h2)
    }
}
