//! Log-gamma, digamma, polygamma and Hurwitz zeta.
//!
//! All gamma-family functions share one scheme: shift the argument upward
//! with the functional recurrence until `|z|` is large enough, then sum the Stirling/Bernoulli asymptotic series. Every call site in this
//! crate has `re(z) > 0`, so no reflection formula is provided.
//!
//! `ln_gamma` returns the analytic continuation of `ln Γ` from the positive
//! real axis (the usual "log-gamma" branch). Its imaginary part may differ
//! from `arg Γ(z)` by a multiple of `2π`; the real part is `ln |Γ(z)|`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Euler–Mascheroni constant.
pub fn euler_gamma<T: Real>() -> T {
    T::lit(0.577_215_664_901_532_9)
}

/// Argument magnitude above which the asymptotic series is summed. Higher
/// polygamma orders need a larger radius for the same accuracy.
const ASYMPTOTIC_RADIUS: f64 = 10.0;
const POLYGAMMA_RADIUS: f64 = 16.0;

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_24`.
const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn check_right_half<T: Real>(func: &'static str, z: Complex<T>) -> Result<()> {
    if !(z.re > T::zero()) || !z.im.is_finite() || !z.re.is_finite() {
        return Err(Error::domain(
            func,
            format!("requires finite z with re(z) > 0, got {}+{}i", z.re, z.im),
        ));
    }
    Ok(())
}

/// Zeroes the imaginary part for real input so that real arguments give
/// exactly real results.
fn realify<T: Real>(input: Complex<T>, out: Complex<T>) -> Complex<T> {
    if input.im == T::zero() {
        Complex::new(out.re, T::zero())
    } else {
        out
    }
}

/// `ln Γ(z)` for `re(z) > 0`.
pub fn ln_gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    check_right_half("ln_gamma", z)?;
    let radius = T::lit(ASYMPTOTIC_RADIUS);
    let one = Complex::new(T::one(), T::zero());
    let mut w = z;
    let mut shift = Complex::new(T::zero(), T::zero());
    while w.norm() < radius {
        shift = shift + w.ln();
        w = w + one;
    }
    let half = T::lit(0.5);
    let ln_two_pi = (T::PI() + T::PI()).ln();
    let mut series = (w - half) * w.ln() - w + half * ln_two_pi;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        let term = pow * T::lit(b / (two_k * (two_k - 1.0)));
        series = series + term;
        if term.norm() <= T::epsilon() * series.norm() * T::lit(1e-3) {
            break;
        }
        pow = pow * inv2;
    }
    Ok(realify(z, series - shift))
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma_real<T: Real>(x: T) -> Result<T> {
    ln_gamma(Complex::new(x, T::zero())).map(|v| v.re)
}

/// Digamma `Ψ(z) = Γ'(z)/Γ(z)` for `re(z) > 0`.
pub fn digamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    check_right_half("digamma", z)?;
    let radius = T::lit(ASYMPTOTIC_RADIUS);
    let one = Complex::new(T::one(), T::zero());
    let mut w = z;
    let mut shift = Complex::new(T::zero(), T::zero());
    while w.norm() < radius {
        shift = shift + w.inv();
        w = w + one;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = w.ln() - inv * T::lit(0.5);
    let mut pow = inv2;
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        let term = pow * T::lit(b / two_k);
        series = series - term;
        if term.norm() <= T::epsilon() * series.norm() * T::lit(1e-3) {
            break;
        }
        pow = pow * inv2;
    }
    Ok(realify(z, series - shift))
}

/// Digamma on the positive real axis.
pub fn digamma_real<T: Real>(x: T) -> Result<T> {
    digamma(Complex::new(x, T::zero())).map(|v| v.re)
}

/// Highest polygamma order exposed.
pub const MAX_POLYGAMMA_ORDER: u32 = 7;

/// `Ψ^{(order)}(z)` for `1 <= order <= 7` and `re(z) > 0`.
pub fn polygamma<T: Real>(order: u32, z: Complex<T>) -> Result<Complex<T>> {
    if !(1..=MAX_POLYGAMMA_ORDER).contains(&order) {
        return Err(Error::domain(
            "polygamma",
            format!("order must be in 1..={MAX_POLYGAMMA_ORDER}, got {order}"),
        ));
    }
    check_right_half("polygamma", z)?;
    let n = order;
    let n_fact = T::lit(factorial(n));
    // Sign (-1)^{n+1} of the whole asymptotic expansion.
    let sign = if n % 2 == 1 { T::one() } else { -T::one() };
    let radius = T::lit(POLYGAMMA_RADIUS);
    let one = Complex::new(T::one(), T::zero());
    let mut w = z;
    // Psi^{(n)}(z) = Psi^{(n)}(z+1) - (-1)^n n! z^{-(n+1)}
    let mut shift = Complex::new(T::zero(), T::zero());
    while w.norm() < radius {
        shift = shift + w.inv().powu(n + 1);
        w = w + one;
    }
    let shift = shift * (n_fact * sign);

    let inv = w.inv();
    let inv2 = inv * inv;
    let inv_n = inv.powu(n);
    let mut series = inv_n * T::lit(factorial(n - 1)) + inv_n * inv * (n_fact * T::lit(0.5));
    let mut pow = inv_n * inv2;
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let two_k = 2 * (k as u32 + 1);
        // (2k+n-1)!/(2k)!
        let ratio = (two_k + 1..=two_k + n - 1).fold(1.0, |acc, m| acc * m as f64);
        let term = pow * T::lit(b * ratio);
        series = series + term;
        if term.norm() <= T::epsilon() * series.norm() * T::lit(1e-3) {
            break;
        }
        pow = pow * inv2;
    }
    Ok(realify(z, series * sign + shift))
}

/// Hurwitz zeta `ζ(s, a) = Σ_{n>=0} (n+a)^{-s}` for `s ∈ {2, 4, 6, 8}`.
pub fn hurwitz_zeta_even<T: Real>(s: u32, a: T) -> Result<T> {
    if !matches!(s, 2 | 4 | 6 | 8) {
        return Err(Error::domain(
            "hurwitz_zeta_even",
            format!("s must be one of 2, 4, 6, 8, got {s}"),
        ));
    }
    if !(a > T::zero()) || !a.is_finite() {
        return Err(Error::domain("hurwitz_zeta_even", format!("requires a > 0, got {a}")));
    }
    Ok(hurwitz_zeta(s, a))
}

/// Hurwitz zeta for any integer `s >= 2` and `a > 0`; no argument checks.
pub(crate) fn hurwitz_zeta<T: Real>(s: u32, a: T) -> T {
    hurwitz_core(s, a, T::one())
}

/// `a^s ζ(s, a) = Σ_{n>=0} (a/(n+a))^s`, which stays representable when
/// `ζ(s, a)` itself would underflow.
pub(crate) fn hurwitz_zeta_scaled<T: Real>(s: u32, a: T) -> T {
    hurwitz_core(s, a, a)
}

/// `Σ_{n>=0} (base/(n+a))^s`: explicit terms until `n + a >= 16 + s`, then
/// Euler–Maclaurin with the Bernoulli corrections.
fn hurwitz_core<T: Real>(s: u32, a: T, base: T) -> T {
    debug_assert!(s >= 2 && a > T::zero());
    let sf = T::from_u32(s).unwrap();
    let start = T::lit(16.0) + sf;
    let explicit = if a >= start {
        0
    } else {
        (start - a).ceil().to_usize().unwrap_or(0)
    };
    let big_a = a + T::from_usize_lossy(explicit);
    let inv = big_a.recip();
    let inv_s = (base / big_a).powi(s as i32);
    let mut tail = big_a * inv_s / (sf - T::one()) + inv_s * T::lit(0.5);
    // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * A^{-2k+1} * (base/A)^s
    let mut rising = sf;
    let mut pow = inv_s * inv;
    let mut fact = T::lit(2.0);
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = T::lit(b) / fact * rising * pow;
        tail = tail + term;
        if term.abs() <= T::epsilon() * tail.abs() * T::lit(1e-3) {
            break;
        }
        let kk = T::from_usize_lossy(k + 1);
        // advance rising factorial by two factors, factorial by two.
        rising = rising * (sf + T::lit(2.0) * kk - T::one()) * (sf + T::lit(2.0) * kk);
        fact = fact * (T::lit(2.0) * kk + T::one()) * (T::lit(2.0) * kk + T::lit(2.0));
        pow = pow * inv * inv;
    }
    let mut acc = tail;
    for n in (0..explicit).rev() {
        acc = acc + (base / (a + T::from_usize_lossy(n))).powi(s as i32);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn ln_gamma_known_values() {
        assert!(ln_gamma(c(1.0, 0.0)).unwrap().norm() < 4e-15);
        assert!((ln_gamma_real(0.5).unwrap() - 0.5 * PI.ln()).abs() < 1e-14);
        assert!((ln_gamma_real(5.0).unwrap() - 24f64.ln()).abs() < 1e-13);
        assert_eq!(ln_gamma(c(0.3, 0.0)).unwrap().im, 0.0);
    }

    #[test]
    fn ln_gamma_one_plus_i() {
        // |Γ(1+i)|² = π / sinh π.
        let v = ln_gamma(c(1.0, 1.0)).unwrap();
        let expect = (PI / PI.sinh()).ln();
        assert!((2.0 * v.re - expect).abs() < 1e-14);
        // Cross-check with the truncated product Π (1 + 1/j²)^{-1}.
        let mut prod = 0.0;
        for j in 1..2_000_000u64 {
            prod -= (1.0 / (j as f64 * j as f64)).ln_1p();
        }
        // tail Σ_{j>=N} 1/j² ≈ 1/N
        prod -= 1.0 / 2_000_000.0;
        assert!((2.0 * v.re - prod).abs() < 1e-10);
    }

    #[test]
    fn digamma_known_values() {
        let ce = euler_gamma::<f64>();
        assert!((digamma_real(1.0).unwrap() + ce).abs() < 1e-15);
        assert!((digamma_real(0.5).unwrap() + ce + 2.0 * 2f64.ln()).abs() < 1e-14);
        assert!((digamma_real(2.0).unwrap() - (1.0 - ce)).abs() < 4e-15);
    }

    #[test]
    fn polygamma_known_values() {
        let p1 = polygamma(1, c(1.0, 0.0)).unwrap();
        assert!(rel(p1.re, PI * PI / 6.0) < 1e-14);
        let p1h = polygamma(1, c(0.5, 0.0)).unwrap();
        assert!(rel(p1h.re, PI * PI / 2.0) < 1e-14);
        let p3 = polygamma(3, c(1.0, 0.0)).unwrap();
        assert!(rel(p3.re, PI.powi(4) / 15.0) < 1e-14);
        // ψ''(1) = -2 ζ(3)
        let p2 = polygamma(2, c(1.0, 0.0)).unwrap();
        assert!(rel(p2.re, -2.0 * 1.202_056_903_159_594_2) < 1e-14);
    }

    #[test]
    fn polygamma_half_matches_direct_summation() {
        // Σ (k+1/2)^{-2} summed directly with an integral tail.
        let n = 100_000;
        let mut s = 0.0;
        for k in (0..n).rev() {
            s += (k as f64 + 0.5).powi(-2);
        }
        s += 1.0 / (n as f64 + 0.5) + 0.5 * (n as f64 + 0.5).powi(-2);
        let v = polygamma(1, c(0.5, 0.0)).unwrap().re;
        assert!(rel(v, s) < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(ln_gamma(c(0.0, 1.0)).is_err());
        assert!(digamma(c(-0.5, 0.0)).is_err());
        assert!(polygamma(0, c(1.0, 0.0)).is_err());
        assert!(polygamma(8, c(1.0, 0.0)).is_err());
        assert!(hurwitz_zeta_even(3, 1.0).is_err());
        assert!(hurwitz_zeta_even(2, 0.0).is_err());
        assert!(hurwitz_zeta_even(10, 1.0).is_err());
    }

    #[test]
    fn hurwitz_known_values() {
        assert!(rel(hurwitz_zeta_even(2, 1.0).unwrap(), PI * PI / 6.0) < 1e-14);
        assert!(rel(hurwitz_zeta_even(2, 0.5).unwrap(), PI * PI / 2.0) < 1e-14);
        assert!(rel(hurwitz_zeta_even(4, 1.0).unwrap(), PI.powi(4) / 90.0) < 1e-14);
        assert!(rel(hurwitz_zeta_even(8, 1.0).unwrap(), PI.powi(8) / 9450.0) < 1e-14);
        // large s used internally: ζ(40, 1) = 1 + 2^-40 + ...
        let z40 = hurwitz_zeta::<f64>(40, 1.0);
        assert!(rel(z40, 1.0 + 2f64.powi(-40) + 3f64.powi(-40)) < 1e-15);
    }

    #[test]
    fn hurwitz_matches_polygamma() {
        // ψ^{(n)}(a) = (-1)^{n+1} n! ζ(n+1, a)
        for &a in &[0.3, 0.5, 1.0, 2.7, 25.0] {
            for n in [1u32, 3, 5, 7] {
                let z = hurwitz_zeta::<f64>(n + 1, a);
                let p = polygamma(n, c(a, 0.0)).unwrap().re;
                assert!(rel(p, factorial(n) * z) < 1e-13, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn grid_recurrences_and_symmetry() {
        for ir in 0..10 {
            for ii in 0..10 {
                let re = 0.1 + ir as f64 * 0.99;
                let im = -50.0 + ii as f64 * (100.0 / 9.0);
                let z = c(re, im);
                let d0 = digamma(z).unwrap();
                let d1 = digamma(z + 1.0).unwrap();
                assert!((d1 - d0 - z.inv()).norm() <= 1e-12, "z={z}");

                let g0 = ln_gamma(z).unwrap();
                let g1 = ln_gamma(z + 1.0).unwrap();
                // exp(lnΓ(z+1)) = z exp(lnΓ(z)), compared in log space.
                let diff = g1 - g0 - z.ln();
                let wrapped = (diff.im / (2.0 * PI)).round() * 2.0 * PI;
                assert!(diff.re.abs() <= 1e-12 && (diff.im - wrapped).abs() <= 1e-12, "z={z}");

                let gc = ln_gamma(z.conj()).unwrap();
                assert!((gc - g0.conj()).norm() <= 1e-13 * g0.norm().max(1.0));
            }
        }
    }

    #[test]
    fn hurwitz_shift_identity() {
        for s in [2u32, 4, 6, 8] {
            for &a in &[0.05f64, 0.5, 1.0, 3.3, 17.0, 400.0] {
                let lhs = hurwitz_zeta_even(s, a).unwrap();
                let rhs = a.powi(-(s as i32)) + hurwitz_zeta_even(s, a + 1.0).unwrap();
                assert!(rel(lhs, rhs) < 1e-13, "s={s} a={a}");
            }
        }
    }

    #[test]
    fn single_precision_smoke() {
        let v: f32 = digamma_real(1.0f32).unwrap();
        assert!((v + 0.577_215_7).abs() < 1e-6);
        let g: f32 = ln_gamma_real(0.5f32).unwrap();
        assert!((g - 0.572_364_9).abs() < 1e-5);
    }
}
