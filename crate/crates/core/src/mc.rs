//! Monte Carlo oracle for `P(V² < r)` from truncated Karhunen–Loève sums.
//!
//! Draws are produced in fixed chunks of [`CHUNK`] samples. Chunk `c` owns
//! its own ChaCha stream `c` under the configured seed, so the sample is the
//! same whatever the thread count or scheduling.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimate::{McSummary, Method, ProbEstimate};
use crate::field::{pi_pow4, FieldParams};
use crate::scalar::{KahanSum, Real};

/// Samples per seeding unit.
pub const CHUNK: usize = 10_000;
pub const DEFAULT_TRUNC: usize = 64;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_SEED: u64 = 20_251_015;
pub const MIN_TRUNC: usize = 8;
/// Fewer hits than this flag the interval as degenerate.
pub const MIN_HITS: usize = 10;
const WILSON_Z: f64 = 1.959_963_984_540_054;

/// How the discarded eigenvalues enter each draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailMode {
    /// Truncated sum only; biased upwards in probability.
    None,
    /// Adds the exact tail expectation to every draw.
    MeanShift,
}

impl TailMode {
    pub fn name(self) -> &'static str {
        match self {
            TailMode::None => "none",
            TailMode::MeanShift => "mean_shift",
        }
    }
}

impl fmt::Display for TailMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TailMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(TailMode::None),
            "mean_shift" | "mean-shift" => Ok(TailMode::MeanShift),
            _ => Err(Error::InvalidParams(format!("unknown tail mode '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McConfig {
    pub samples: usize,
    /// Eigenvalues kept per axis.
    pub trunc: usize,
    pub seed: u64,
    pub tail_mode: TailMode,
}

impl Default for McConfig {
    fn default() -> Self {
        Self { samples: DEFAULT_SAMPLES, trunc: DEFAULT_TRUNC, seed: DEFAULT_SEED, tail_mode: TailMode::MeanShift }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidParams("samples must be at least 1".into()));
        }
        if self.trunc < MIN_TRUNC {
            return Err(Error::InvalidParams(format!("trunc must be at least {MIN_TRUNC}, got {}", self.trunc)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McResult<T> {
    pub r: T,
    pub p_hat: T,
    /// 95% Wilson interval.
    pub ci_low: T,
    pub ci_high: T,
    /// Bound on `|P(sampled sum < r) - P(V² < r)|` caused by truncation.
    pub truncation_bias_bound: T,
    pub samples_used: usize,
    pub hits: usize,
    /// Fewer than [`MIN_HITS`] hits: the interval is driven by the rule of three.
    pub few_hits: bool,
}

impl<T: Real> McResult<T> {
    pub fn summary(&self) -> McSummary<T> {
        McSummary { p_hat: self.p_hat, ci_low: self.ci_low, ci_high: self.ci_high }
    }

    /// Wilson interval widened by the truncation bound on both sides.
    pub fn widened_interval(&self) -> (T, T) {
        (
            (self.ci_low - self.truncation_bias_bound).max(T::zero()),
            (self.ci_high + self.truncation_bias_bound).min(T::one()),
        )
    }

    pub fn to_estimate(&self) -> ProbEstimate<T> {
        let half_width = T::lit(0.5) * (self.ci_high - self.ci_low) + self.truncation_bias_bound;
        let indicator = if self.p_hat > T::zero() { half_width / self.p_hat } else { T::infinity() };
        let mut est = ProbEstimate::bare(self.r, Method::MonteCarlo, self.p_hat.ln(), indicator);
        est.mc = Some(self.summary());
        est
    }
}

/// 95% Wilson score interval for `hits` successes out of `n`.
pub fn wilson_interval<T: Real>(hits: usize, n: usize) -> (T, T) {
    let n_t = T::from_usize_lossy(n);
    let p = T::from_usize_lossy(hits) / n_t;
    let z = T::lit(WILSON_Z);
    let z2 = z * z;
    let denom = T::one() + z2 / n_t;
    let centre = (p + z2 / (T::lit(2.0) * n_t)) / denom;
    let half = z / denom * (p * (T::one() - p) / n_t + z2 / (T::lit(4.0) * n_t * n_t)).sqrt();
    ((centre - half).max(T::zero()).min(p), (centre + half).min(T::one()).max(p))
}

/// Kept eigenvalues and exact moments of the discarded ones.
#[derive(Clone, Debug)]
pub struct McSampler<T> {
    eigen: Vec<T>,
    tail_mean: T,
    tail_variance: T,
    config: McConfig,
}

impl<T: Real> McSampler<T>
where
    StandardNormal: Distribution<T>,
{
    pub fn new(params: &FieldParams<T>, config: McConfig) -> Result<Self> {
        params.validate()?;
        config.validate()?;
        let m = config.trunc;
        let mut eigen = Vec::with_capacity(m * m);
        for i in 1..=m {
            for j in 1..=m {
                eigen.push(params.eigenvalue(i, j));
            }
        }
        // With A_k = Σ_{i<=M} α_i^k, Ā_k = Σ_{i>M} α_i^k and likewise for
        // columns, Σ_tail λ^k = (Ā_k B_k + A_k B̄_k) / π^{4k}.
        let rows = params.row_axis();
        let cols = params.column_axis();
        let tail_sum = |k: u32| {
            let row_tail = rows.power_sum_from(k, m + 1);
            let col_tail = cols.power_sum_from(k, m + 1);
            let row_head = rows.power_sum(k) - row_tail;
            let col_full = cols.power_sum(k);
            (row_tail * col_full + row_head * col_tail) / pi_pow4::<T>().powi(k as i32)
        };
        let tail_mean = tail_sum(1);
        let tail_variance = T::lit(2.0) * tail_sum(2);
        Ok(Self { eigen, tail_mean, tail_variance, config })
    }

    pub fn config(&self) -> McConfig {
        self.config
    }

    /// `Σ_{i or j > M} λ_ij`.
    pub fn tail_mean(&self) -> T {
        self.tail_mean
    }

    /// `2 Σ_{i or j > M} λ_ij²`.
    pub fn tail_variance(&self) -> T {
        self.tail_variance
    }

    /// One draw of the truncated sum, shifted by the tail mean when configured.
    pub fn sample_v2<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let mut acc = T::zero();
        for &l in &self.eigen {
            let z: T = StandardNormal.sample(rng);
            acc = acc + l * z * z;
        }
        match self.config.tail_mode {
            TailMode::None => acc,
            TailMode::MeanShift => acc + self.tail_mean,
        }
    }

    fn chunk(&self, index: usize) -> Vec<T> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(index as u64);
        let len = CHUNK.min(self.config.samples - index * CHUNK);
        (0..len).map(|_| self.sample_v2(&mut rng)).collect()
    }

    /// All configured draws, in chunk order.
    pub fn draws(&self) -> McDraws<T> {
        let chunks = self.config.samples.div_ceil(CHUNK);
        let per_chunk: Vec<Vec<T>> = (0..chunks).into_par_iter().map(|c| self.chunk(c)).collect();
        let values: Vec<T> = per_chunk.into_iter().flatten().collect();
        McDraws::new(values, self.tail_mean, self.tail_variance, self.config.tail_mode)
    }
}

/// A finished sample, sorted for repeated threshold queries.
#[derive(Clone, Debug)]
pub struct McDraws<T> {
    sorted: Vec<T>,
    mean: T,
    variance: T,
    tail_mean: T,
    tail_variance: T,
    tail_mode: TailMode,
}

impl<T: Real> McDraws<T> {
    fn new(values: Vec<T>, tail_mean: T, tail_variance: T, tail_mode: TailMode) -> Self {
        let n = T::from_usize_lossy(values.len());
        let mean = values.iter().copied().collect::<KahanSum<T>>().value() / n;
        let ss = values.iter().map(|&v| (v - mean) * (v - mean)).collect::<KahanSum<T>>().value();
        let variance = if values.len() > 1 { ss / (n - T::one()) } else { T::zero() };
        let mut sorted = values;
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("draws are finite"));
        Self { sorted, mean, variance, tail_mean, tail_variance, tail_mode }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn mean(&self) -> T {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> T {
        self.variance
    }

    /// Standard error of [`Self::mean`].
    pub fn mean_std_error(&self) -> T {
        (self.variance / T::from_usize_lossy(self.len())).sqrt()
    }

    fn count_below(&self, x: T) -> usize {
        self.sorted.partition_point(|&v| v < x)
    }

    /// Wilson upper bound on the mass in `[lo, hi)`.
    fn window_mass(&self, lo: T, hi: T) -> T {
        let hits = self.count_below(hi) - self.count_below(lo);
        wilson_interval::<T>(hits, self.len()).1
    }

    /// Truncation bias bound at `r`, minimized over a geometric grid of
    /// window half-widths `t`.
    ///
    /// Without a shift the discarded part `T >= 0` only lowers the
    /// probability: the gap is at most `P(r - t <= X < r) + E T / t`.
    /// With the mean shift, `|T - E T| >= t` has probability at most
    /// `Var T / t²`, so the gap is at most `P(|X - r| < t) + Var T / t²`.
    fn bias_bound(&self, r: T) -> T {
        let two = T::lit(2.0);
        let mut best = T::one();
        let (scale, steps) = match self.tail_mode {
            TailMode::None => (self.tail_mean, 60),
            TailMode::MeanShift => (self.tail_variance.sqrt(), 60),
        };
        if !(scale > T::zero()) {
            return T::zero();
        }
        let mut t = scale;
        for _ in 0..steps {
            let bound = match self.tail_mode {
                TailMode::None => self.window_mass(r - t, r) + self.tail_mean / t,
                TailMode::MeanShift => self.window_mass(r - t, r + t) + self.tail_variance / (t * t),
            };
            best = best.min(bound);
            t = t * two.sqrt();
        }
        best
    }

    pub fn estimate(&self, r: T) -> McResult<T> {
        let n = self.len();
        let hits = self.count_below(r);
        let (ci_low, ci_high) = wilson_interval(hits, n);
        McResult {
            r,
            p_hat: T::from_usize_lossy(hits) / T::from_usize_lossy(n),
            ci_low,
            ci_high,
            truncation_bias_bound: self.bias_bound(r),
            samples_used: n,
            hits,
            few_hits: hits < MIN_HITS,
        }
    }
}

fn check_r<T: Real>(r: T) -> Result<()> {
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::domain("estimate_prob", format!("r must be positive and finite, got {r}")));
    }
    Ok(())
}

/// One draw with a fresh sampler; prefer [`McSampler`] for repeated use.
pub fn sample_v2<T: Real, R: Rng + ?Sized>(params: &FieldParams<T>, config: McConfig, rng: &mut R) -> Result<T>
where
    StandardNormal: Distribution<T>,
{
    Ok(McSampler::new(params, config)?.sample_v2(rng))
}

pub fn estimate_prob<T: Real>(r: T, params: &FieldParams<T>, config: McConfig) -> Result<McResult<T>>
where
    StandardNormal: Distribution<T>,
{
    Ok(estimate_probs(&[r], params, config)?.remove(0))
}

/// Several thresholds from one shared sample.
pub fn estimate_probs<T: Real>(rs: &[T], params: &FieldParams<T>, config: McConfig) -> Result<Vec<McResult<T>>>
where
    StandardNormal: Distribution<T>,
{
    for &r in rs {
        check_r(r)?;
    }
    let draws = McSampler::new(params, config)?.draws();
    Ok(rs.iter().map(|&r| draws.estimate(r)).collect())
}
