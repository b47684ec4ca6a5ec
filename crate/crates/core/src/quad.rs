//! Quadrature pieces for summing smooth row sequences to infinity.

use std::sync::OnceLock;

use crate::scalar::Real;

pub(crate) const GL_POINTS: usize = 16;

/// Coefficients of `1/ln(1+x) - 1/x = Σ_n g_n x^n`, so that
/// `Σ_{i>=0} f(a+i) = ∫_a^∞ f + Σ_n g_n Δ^n f(a)`.
pub(crate) const GREGORY: [f64; 9] = [
    1.0 / 2.0,
    -1.0 / 12.0,
    1.0 / 24.0,
    -19.0 / 720.0,
    3.0 / 160.0,
    -863.0 / 60480.0,
    275.0 / 24192.0,
    -33953.0 / 3628800.0,
    8183.0 / 1036800.0,
];

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub(crate) fn gauss_legendre() -> &'static [(f64, f64); GL_POINTS] {
    static NODES: OnceLock<[(f64, f64); GL_POINTS]> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = GL_POINTS;
        let mut out = [(0.0, 0.0); GL_POINTS];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        out
    })
}

/// Gauss–Legendre rule for a vector-valued integrand on `[lo, hi]`.
pub(crate) fn integrate<T: Real, const N: usize, F>(lo: T, hi: T, f: &F) -> [T; N]
where
    F: Fn(T) -> [T; N],
{
    let mid = (lo + hi) * T::lit(0.5);
    let half = (hi - lo) * T::lit(0.5);
    let mut acc = [T::zero(); N];
    for &(x, w) in gauss_legendre() {
        let v = f(mid + half * T::lit(x));
        for (a, vi) in acc.iter_mut().zip(v) {
            *a = *a + T::lit(w) * vi;
        }
    }
    acc.map(|a| a * half)
}

/// Forward differences `Δ^n v_0` for `n = 0..values.len()`.
pub(crate) fn forward_differences<T: Real>(values: &[T]) -> Vec<T> {
    let mut work = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    for len in (1..=values.len()).rev() {
        out.push(work[0]);
        for i in 0..len - 1 {
            work[i] = work[i + 1] - work[i];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_degree_31() {
        let v = integrate(0.0f64, 2.0, &|x: f64| [x.powi(31), x.powi(30)]);
        assert!((v[0] - 2f64.powi(32) / 32.0).abs() / v[0] < 1e-14);
        assert!((v[1] - 2f64.powi(31) / 31.0).abs() / v[1] < 1e-14);
        let wsum: f64 = gauss_legendre().iter().map(|p| p.1).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gregory_tail_sums_inverse_squares() {
        // Σ_{i>=a} (i+1)^{-2} with ∫_a^∞ (x+1)^{-2} dx = 1/(a+1).
        let a = 200.0f64;
        let vals: Vec<f64> = (0..GREGORY.len()).map(|n| (a + n as f64 + 1.0).powi(-2)).collect();
        let d = forward_differences(&vals);
        let corr: f64 = GREGORY.iter().zip(&d).map(|(g, x)| g * x).sum();
        let got = 1.0 / (a + 1.0) + corr;
        let exact: f64 = crate::specfun::hurwitz_zeta(2, a + 1.0);
        assert!((got - exact).abs() / exact < 1e-12, "{got} vs {exact}");
    }
}
