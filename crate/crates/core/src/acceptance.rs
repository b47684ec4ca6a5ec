//! End-to-end acceptance checks, one per criterion.
//!
//! Each check returns a [`CriterionResult`] with a one-line detail string;
//! nothing here panics on a failed comparison.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asym::{corollary1_normalized, lagrange, theorem1_log_prob, MAX_TERMS};
use crate::error::Result;
use crate::field::{preset_sbar_base, AsymptoticConstants, FieldParams, Preset};
use crate::laplace::{j_eval, lemma1_asymptote, laplace_eval, FiniteSpectrum, LaplacePath};
use crate::mc::{McConfig, McSampler, TailMode, DEFAULT_SEED};
use crate::polyalg::{coeff_a, pi_poly_explicit, pi_poly_recursive, PolyTables, RationalPolynomial};
use crate::saddle::{saddle_log_prob, solve_saddle};

/// Criteria that cannot pass with the methods as specified. They are still
/// run and reported.
///
/// 7: the saddle formula is not a probability at `r >= 0.1` for the sheet
/// (`τ² < 1`), far outside the Monte Carlo interval.
/// 10: for `q, τ > 0` every eigenvalue grows, so the perturbed probability is
/// smaller while the distortion constant exceeds one; the saddle log-ratio
/// drifts like `|ln r|/r`.
pub const EXPECTED_FAILURES: &[u8] = &[7, 10];

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: {}", self.id, self.title, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AcceptanceOptions {
    pub mc_samples: usize,
    pub mc_seed: u64,
}

impl Default for AcceptanceOptions {
    fn default() -> Self {
        Self { mc_samples: 1_000_000, mc_seed: DEFAULT_SEED }
    }
}

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "polynomial exactness"),
    (2, "convolution identities"),
    (3, "lagrange inversion"),
    (4, "row-sum asymptote residuals"),
    (5, "dual-path laplace agreement"),
    (6, "saddle on injected spectra"),
    (7, "monte carlo cross-check"),
    (8, "asymptotics vs saddle trend"),
    (9, "preset constants"),
    (10, "distortion constant trend"),
    (11, "sbar offset consistency"),
];

pub fn run_all(opts: &AcceptanceOptions) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, opts).expect("criterion id in range")).collect()
}

/// `None` for an unknown id.
pub fn run_criterion(id: u8, opts: &AcceptanceOptions) -> Option<CriterionResult> {
    let title = CRITERIA.iter().find(|c| c.0 == id)?.1;
    let outcome = match id {
        1 => polynomial_exactness(),
        2 => convolution_identities(),
        3 => lagrange_inversion(),
        4 => row_sum_residuals(),
        5 => dual_path_agreement(),
        6 => injected_spectra(),
        7 => monte_carlo(opts),
        8 => asymptotics_vs_saddle(),
        9 => preset_constants(),
        10 => distortion_trend(),
        11 => sbar_consistency(),
        _ => return None,
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Some(CriterionResult { id, title, passed, detail })
}

type Outcome = Result<(bool, String)>;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// All `(k_1, ..., k_j)` with `Σ m k_m = j` and `Σ k_m = k`.
fn partitions(j: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, j: usize, left_sum: usize, left_count: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m > j {
            if left_sum == 0 && left_count == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for km in 0..=(left_sum / m).min(left_count) {
            cur.push(km);
            rec(m + 1, j, left_sum - m * km, left_count - km, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, j, j, k, &mut Vec::new(), &mut out);
    out
}

/// `a_jl` from the partition-sum representation, for `j, l >= 1`.
fn coeff_a_by_partitions(j: usize, l: usize) -> BigRational {
    let mut total = BigRational::zero();
    for k in 1..=j.min(l) {
        let mut inner = BigRational::zero();
        for ks in partitions(j, k) {
            let mut prod = BigRational::one();
            for (idx, &km) in ks.iter().enumerate() {
                let base = BigInt::from(idx + 2).pow(km as u32);
                prod *= BigRational::new(BigInt::one(), base * factorial(km));
            }
            inner += prod;
        }
        total += inner / BigRational::from_integer(factorial(l - k));
    }
    let sign = if j.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    total * BigRational::new(factorial(j + l) * sign, factorial(j + 1))
}

fn polynomial_exactness() -> Outcome {
    let mut failures = Vec::new();
    for m in 2..=15 {
        let rec = pi_poly_recursive(m);
        let exp = pi_poly_explicit(m)?;
        if rec != exp {
            failures.push(format!("pi_{m} recursion != explicit"));
        }
        if rec.coeff(1) != BigRational::one() {
            failures.push(format!("pi_{m} linear coefficient"));
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        if rec.coeff(m - 1) != rat(sign, m as i64 - 1) {
            failures.push(format!("pi_{m} top coefficient"));
        }
    }
    let mut checked = 0;
    for n in 1..=12usize {
        for j in 0..=n {
            let l = n - j;
            let a = coeff_a(j, l)?;
            let bound = BigRational::new(BigInt::from(4).pow((n - 1) as u32), BigInt::from(j + 1));
            if a.abs() > bound {
                failures.push(format!("|a_{j}{l}| above bound"));
            }
            if j >= 1 && l >= 1 && a != coeff_a_by_partitions(j, l) {
                failures.push(format!("a_{j}{l} partition sum"));
            }
            checked += 1;
        }
    }
    let detail = format!("m=2..15 recursion==explicit, {checked} coefficients bounded and matched; {} mismatches", failures.len());
    Ok((failures.is_empty(), if failures.is_empty() { detail } else { format!("{detail}: {}", failures.join(", ")) }))
}

fn convolution_identities() -> Outcome {
    let t = PolyTables::shared();
    let s = RationalPolynomial::monomial(rat(1, 1), 1);
    let s2 = RationalPolynomial::monomial(rat(1, 1), 2);
    let two_s = s.scale(&rat(2, 1));
    let mut failures = Vec::new();
    if t.pi_tilde(1) != &two_s {
        failures.push("pi~_1".to_string());
    }
    let expect23 = &two_s + &s2;
    if t.pi_tilde(2) != &expect23 || t.pi_tilde(3) != &expect23 {
        failures.push("pi~_2, pi~_3".to_string());
    }
    for m in 3..=12usize {
        let rhs = (t.pi(m) - &t.pi(m - 1).scale(&rat(m as i64 - 1, 1))).scale(&rat(-2, m as i64 - 2));
        if t.pi_tilde(m) != &rhs {
            failures.push(format!("recurrence m={m}"));
        }
    }
    for m in 1..=12usize {
        let rhs = t.pi_tilde(m) - &t.pi(m - 1).scale(&rat(2, 1));
        if t.p(m) != &rhs {
            failures.push(format!("p_{m}"));
        }
    }
    Ok((failures.is_empty(), format!("exact polynomial identities up to m=12; failures: [{}]", failures.join(", "))))
}

fn lagrange_inversion() -> Outcome {
    let mut ok = true;
    let mut worst_residual = 0.0f64;
    let mut final_gaps = Vec::new();
    for d in [0.5, 1.0, 3.0] {
        let mut prev = f64::INFINITY;
        for eps in [1e-3, 1e-6, 1e-9] {
            let sol = lagrange(d, eps, 8)?;
            worst_residual = worst_residual.max(sol.residual());
            let gap = sol.relative_gap();
            ok &= sol.residual() <= 1e-13 && gap < prev;
            prev = gap;
        }
        ok &= prev < 1e-6;
        final_gaps.push(format!("{prev:.2e}"));
    }
    Ok((ok, format!("max residual {worst_residual:.2e}; gaps at eps=1e-9 for d=0.5,1,3: {}", final_gaps.join(", "))))
}

/// The asymptote is accurate beyond double precision, so each residual is
/// compared with the larger of ten times its `γ = 10` value and the rounding
/// floor `16 ε |value| γ` of the scaled difference.
fn row_sum_residuals() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    for (b, delta) in [(-0.5, -0.5), (0.0, 0.0), (-0.5, 0.0)] {
        let p = FieldParams::new(b, delta)?;
        let mut base = [0.0f64; 3];
        for (idx, g) in [10.0, 1e2, 1e3, 1e4].into_iter().enumerate() {
            let e = j_eval(g, &p)?;
            let (a0, a1, a2) = lemma1_asymptote(g, &p);
            let pairs = [(e.j, a0), (g * e.dj, a1), (g * g * e.d2j, a2)];
            for (k, (got, want)) in pairs.into_iter().enumerate() {
                let res = (got - want).abs() * g;
                if idx == 0 {
                    base[k] = res;
                }
                let floor = 16.0 * f64::EPSILON * want.abs() * g;
                let ratio = res / (10.0 * base[k]).max(floor);
                worst = worst.max(ratio);
                ok &= ratio <= 1.0;
            }
        }
    }
    Ok((ok, format!("max residual / max(10 x gamma=10 value, rounding floor): {worst:.3}")))
}

fn dual_path_agreement() -> Outcome {
    let mut worst = [0.0f64; 3];
    for preset in Preset::ALL {
        let p = FieldParams::preset(preset);
        for h in [1.0, 1e2, 1e4, 1e6] {
            let d = laplace_eval(h, &p, LaplacePath::Direct)?;
            let c = laplace_eval(h, &p, LaplacePath::RowCollapsed)?;
            let rel = |a: f64, b: f64| ((a - b) / b).abs();
            worst[0] = worst[0].max(rel(d.l, c.l));
            worst[1] = worst[1].max(rel(d.dl, c.dl));
            worst[2] = worst[2].max(rel(d.d2l, c.d2l));
        }
    }
    let ok = worst[0] <= 1e-8 && worst[1] <= 1e-7 && worst[2] <= 1e-6;
    Ok((ok, format!("max relative gaps L {:.1e}, L' {:.1e}, L'' {:.1e}", worst[0], worst[1], worst[2])))
}

/// `P(λ₁ξ₁² + λ₂ξ₂² < r)` by the periodic trapezoid rule in polar angle.
fn two_eigen_probability(l1: f64, l2: f64, r: f64) -> f64 {
    let n = 4096;
    let mut acc = 0.0;
    for k in 0..n {
        let th = 2.0 * PI * k as f64 / n as f64;
        let a = 0.5 * r * (th.cos().powi(2) / l1 + th.sin().powi(2) / l2);
        acc += -(-a).exp_m1() / (2.0 * a);
    }
    r / (2.0 * PI * (l1 * l2).sqrt()) * acc * (2.0 * PI / n as f64)
}

fn injected_spectra() -> Outcome {
    let mut ok = true;
    let mut worst_h = 0.0f64;
    let pairs = [
        (1.0, 0.5),
        (1.0, 0.1),
        (1.0, 1e-3),
        (1.0, 1e-6),
        (0.3, 0.2),
        (0.3, 1e-2),
        (2.5, 1.0),
        (2.5, 1e-4),
        (1e-3, 5e-4),
        (1e-3, 1e-8),
    ];
    for (lam, r) in pairs {
        let sol = solve_saddle(r, &FiniteSpectrum::new(vec![lam])?)?;
        let expect = 0.5 / r - 0.5 / lam;
        let rel = ((sol.h - expect) / expect).abs();
        worst_h = worst_h.max(rel);
        ok &= rel <= 1e-10;
    }
    let mut worst_ratio = 0.0f64;
    for (l1, l2, r) in [(1.0, 0.5, 0.5), (1.0, 0.5, 0.1), (1.0, 0.5, 1e-2), (1.0, 0.25, 1e-4), (0.8, 0.6, 0.3)] {
        let sol = solve_saddle(r, &FiniteSpectrum::new(vec![l1, l2])?)?;
        let exact = two_eigen_probability(l1, l2, r);
        let rel = (saddle_log_prob(&sol).log_p.exp() / exact - 1.0).abs();
        let scaled = rel * sol.tau2;
        worst_ratio = worst_ratio.max(scaled);
        ok &= scaled <= 3.0;
    }
    Ok((ok, format!("single-eigenvalue max rel h error {worst_h:.1e}; two-eigenvalue max rel error x tau^2 {worst_ratio:.3} (limit 3)")))
}

fn monte_carlo(opts: &AcceptanceOptions) -> Outcome {
    let p = FieldParams::<f64>::preset(Preset::Sheet);
    let cfg = McConfig { samples: opts.mc_samples, trunc: 64, seed: opts.mc_seed, tail_mode: TailMode::MeanShift };
    let draws = McSampler::new(&p, cfg)?.draws();
    let trace = p.trace();
    let sigma = draws.mean_std_error();
    let mean_ok = (draws.mean() - trace).abs() <= 3.0 * sigma;
    let mut inside = true;
    let mut parts = vec![format!("mean {:.5} vs trace {trace} (sigma {sigma:.1e})", draws.mean())];
    for r in [0.1, 0.15, 0.2] {
        let m = draws.estimate(r);
        let (lo, hi) = m.widened_interval();
        let est = saddle_log_prob(&solve_saddle(r, &p)?);
        let ps = est.log_p.exp();
        inside &= ps >= lo && ps <= hi;
        parts.push(format!(
            "r={r}: saddle {ps:.4} (1/tau^2 {:.2}) vs mc [{lo:.4}, {hi:.4}]",
            est.error_indicator
        ));
    }
    Ok((mean_ok && inside, parts.join("; ")))
}

fn max_over_min(v: &[f64]) -> f64 {
    let max = v.iter().cloned().fold(f64::MIN, f64::max);
    let min = v.iter().cloned().fold(f64::MAX, f64::min);
    max / min
}

/// The leading law holds up to a factor `1 + O(ln ξ/ξ)` on the probability,
/// so the log gap is scaled by `ln ξ/ξ`; `ε` is summed to the maximal order.
/// A sequence is bounded when no later value exceeds ten times the first.
/// The spread `max/min` is also reported, although it is meaningless when a
/// remainder changes sign or decays faster than its bound.
fn asymptotics_vs_saddle() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for preset in Preset::ALL {
        let p = FieldParams::preset(preset);
        let (mut gaps, mut residuals) = (Vec::new(), Vec::new());
        for k in 2..=8 {
            let r = 10f64.powi(-k);
            let xi = -r.ln();
            let saddle = saddle_log_prob(&solve_saddle(r, &p)?).log_p;
            let asym = theorem1_log_prob(r, &p, MAX_TERMS)?;
            gaps.push((asym.log_p - saddle).abs() / (xi.ln() / xi));
            let normalized = 8.0 * PI * PI * r / (r.ln() * r.ln()) * saddle.abs();
            residuals.push((normalized - corollary1_normalized(r, &p, 2)?).abs() * xi.powi(3) / xi.ln().powi(2));
        }
        let bounded = |v: &[f64]| v.iter().all(|&x| x <= 10.0 * v[0]);
        ok &= bounded(&gaps) && bounded(&residuals);
        let max = |v: &[f64]| v.iter().cloned().fold(f64::MIN, f64::max);
        parts.push(format!(
            "{preset}: gap first {:.3} max {:.3} spread {:.1}, residual first {:.3} max {:.3} spread {:.1}",
            gaps[0],
            max(&gaps),
            max_over_min(&gaps),
            residuals[0],
            max(&residuals),
            max_over_min(&residuals)
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn preset_constants() -> Outcome {
    let ln_pi = PI.ln();
    // (ln c0, c1, c2, sbar shift) from the closed forms.
    let forms = [
        (Preset::Sheet, -0.5 * ln_pi, 0.0, -0.5, 3.0 * LN_2),
        (Preset::Pillow, -0.625 * LN_2 - 0.5 * ln_pi, 0.125, -0.625, -LN_2),
        (Preset::Kiefer, -0.25 * LN_2 - 0.5 * ln_pi, 0.0, -0.5, LN_2),
    ];
    let base = preset_sbar_base::<f64>();
    let mut worst = 0.0f64;
    for (preset, ln_c0, c1, c2, shift) in forms {
        let k = FieldParams::<f64>::preset(preset).constants();
        for (got, want) in [(k.ln_c0(), ln_c0), (k.c1, c1), (k.c2, c2), (k.sbar_offset, base + shift)] {
            worst = worst.max((got - want).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max absolute deviation {worst:.1e}")))
}

fn distortion_trend() -> Outcome {
    let base = FieldParams::new(0.0, 0.0)?;
    let pert = FieldParams::perturbed(0.0, 0.0, 0.25, 0.25)?;
    let target = (PI / 2.0).ln();
    let (mut errors, mut gaps) = (Vec::new(), Vec::new());
    for k in 2..=6 {
        let r = 10f64.powi(-k);
        let a = saddle_log_prob(&solve_saddle(r, &pert)?).log_p;
        let b = saddle_log_prob(&solve_saddle(r, &base)?).log_p;
        errors.push((a - b - target).abs());
        gaps.push(format!("{:.4}", a - b));
    }
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    let last = *errors.last().expect("non-empty grid");
    let listed: Vec<String> = errors.iter().map(|e| format!("{e:.4}")).collect();
    Ok((monotone && last < 0.05, format!(
            "log-ratio over r=1e-2..1e-6: {} (target {target:.4}); |error|: {}",
            gaps.join(", "),
            listed.join(", ")
        )))
}

fn sbar_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let b = rng.random_range(-0.9..2.0);
        let delta = rng.random_range(-0.9..2.0);
        let k = AsymptoticConstants::<f64>::new(b, delta);
        worst = worst.max((k.sbar_offset - k.sbar_offset_via_b()).abs());
    }
    Ok((worst <= 1e-12, format!("max |digamma form - B form| {worst:.1e} over 5 random fields")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions(3, 2), vec![vec![1, 1, 0]]);
        assert_eq!(partitions(4, 2).len(), 2);
        assert_eq!(coeff_a_by_partitions(1, 1), rat(-1, 2));
    }

    #[test]
    fn quadrature_oracle_single_axis_limit() {
        // Equal eigenvalues give an exponential law: P = 1 - e^{-r/2λ}.
        let p = two_eigen_probability(0.7, 0.7, 0.3);
        let err = (p - (1.0 - (-0.3f64 / 1.4).exp())).abs();
        assert!(err < 1e-12, "{err}");
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion(0, &AcceptanceOptions::default()).is_none());
        assert!(run_criterion(12, &AcceptanceOptions::default()).is_none());
    }
}
