//! Exact combinatorics behind the correction series: Stirling numbers of the
//! first kind, the inversion coefficients `a_{jl}`, and the polynomial
//! families `π_m`, `π̃_m`, `p_m` in one variable `s`.
//!
//! Everything here is exact rational arithmetic. Conversion to floating point
//! happens only in [`Polynomial::eval`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest `n` for which signed Stirling numbers are tabulated in `i64`.
pub const STIRLING_MAX_N: usize = 20;

/// Dense univariate polynomial, `coeffs[k]` multiplying `s^k`. Trailing zero
/// coefficients are always trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

/// Polynomial with exact rational coefficients.
pub type RationalPolynomial = Polynomial<BigRational>;

impl<C: Zero + Clone> Polynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c · s^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `s^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self
    where
        C: Mul<Output = C>,
    {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }
}

impl<C: ToPrimitive> Polynomial<C> {
    /// Horner evaluation in the floating type `T`.
    pub fn eval<T: Real>(&self, s: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| {
            acc * s + T::from_f64(c.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(T::nan)
        })
    }
}

impl<C: Zero + Clone + Add<Output = C>> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<C: Zero + Clone + Sub<Output = C>> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<C: Zero + Clone + Mul<Output = C>> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<C: Zero + Clone + Neg<Output = C>> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "s")?,
                (1, false) => write!(f, "{mag}*s")?,
                (_, true) => write!(f, "s^{k}")?,
                (_, false) => write!(f, "{mag}*s^{k}")?,
            }
        }
        Ok(())
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Signed Stirling numbers of the first kind `s(n, k)` for `0 <= k <= n <= max_n`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    max_n: usize,
    rows: Vec<Vec<i64>>,
}

impl StirlingTable {
    /// Builds the table by `s(n+1, k) = s(n, k-1) - n s(n, k)`.
    pub fn new(max_n: usize) -> Result<Self> {
        if max_n > STIRLING_MAX_N {
            return Err(Error::range(
                "StirlingTable::new",
                format!("max_n = {max_n} exceeds the 64-bit cap {STIRLING_MAX_N}"),
            ));
        }
        let mut rows: Vec<Vec<i64>> = vec![vec![1]];
        for n in 0..max_n {
            let prev = &rows[n];
            let mut next = vec![0i64; n + 2];
            for (k, slot) in next.iter_mut().enumerate() {
                let left = if k >= 1 { prev[k - 1] } else { 0 };
                let here = prev.get(k).copied().unwrap_or(0);
                *slot = left
                    .checked_sub((n as i64).checked_mul(here).expect("stirling overflow"))
                    .expect("stirling overflow");
            }
            rows.push(next);
        }
        Ok(Self { max_n, rows })
    }

    /// Table shared across the process, covering `n <= STIRLING_MAX_N`.
    pub fn shared() -> &'static StirlingTable {
        static TABLE: OnceLock<StirlingTable> = OnceLock::new();
        TABLE.get_or_init(|| StirlingTable::new(STIRLING_MAX_N).expect("cap is valid"))
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn get(&self, n: usize, k: usize) -> Result<i64> {
        if n > self.max_n {
            return Err(Error::range(
                "stirling_first",
                format!("n = {n} exceeds table size {}", self.max_n),
            ));
        }
        Ok(if k > n { 0 } else { self.rows[n][k] })
    }
}

/// Signed Stirling number of the first kind, `0 <= n <= 20`.
pub fn stirling_first(n: usize, k: usize) -> Result<i64> {
    StirlingTable::shared().get(n, k)
}

fn factorial_big(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `a_{jl} = s(j+l, l) / (j+1)!`.
pub fn coeff_a(j: usize, l: usize) -> Result<BigRational> {
    let s = stirling_first(j + l, l).map_err(|_| {
        Error::range(
            "coeff_a",
            format!("j + l = {} exceeds the Stirling cap {STIRLING_MAX_N}", j + l),
        )
    })?;
    Ok(BigRational::new(BigInt::from(s), factorial_big(j + 1)))
}

/// `π_m` from the recursion `π_{k+1} = π_k - (k-1)/(2k) Σ_{l=1}^{k} π_l π_{k+1-l}`.
pub fn pi_poly_recursive(m: usize) -> RationalPolynomial {
    pi_sequence(m).pop().expect("non-empty")
}

/// `π_0, ..., π_m` by the recursion.
fn pi_sequence(m: usize) -> Vec<RationalPolynomial> {
    let mut pis = vec![
        RationalPolynomial::constant(rat_int(1)),
        RationalPolynomial::monomial(rat_int(1), 1),
    ];
    for k in 1..m {
        let conv = (1..=k).fold(RationalPolynomial::zero(), |acc, l| &acc + &(&pis[l] * &pis[k + 1 - l]));
        let factor = rat(k as i64 - 1, 2 * k as i64);
        let next = &pis[k] - &conv.scale(&factor);
        pis.push(next);
    }
    pis.truncate(m + 1);
    pis
}

/// `π_m(s) = Σ_{k=1}^{m-1} a_{k-1, m-k} s^k` for `m >= 2`.
pub fn pi_poly_explicit(m: usize) -> Result<RationalPolynomial> {
    if m < 2 {
        return Err(Error::domain("pi_poly_explicit", format!("requires m >= 2, got {m}")));
    }
    let mut coeffs = vec![rat_int(0); m];
    for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
        *slot = coeff_a(k - 1, m - k)?;
    }
    Ok(RationalPolynomial::new(coeffs))
}

/// Convolution square `π̃_m = Σ_{l=0}^{m} π_l π_{m-l}`.
pub fn pi_tilde(m: usize) -> RationalPolynomial {
    let pis = pi_sequence(m.max(1));
    convolve(&pis, m)
}

fn convolve(pis: &[RationalPolynomial], m: usize) -> RationalPolynomial {
    (0..=m).fold(RationalPolynomial::zero(), |acc, l| &acc + &(&pis[l] * &pis[m - l]))
}

/// Coefficient polynomials of the correction series:
/// `p_1 = 2s - 2`, `p_2 = s²`, `p_m = -(2/(m-2)) (π_m - π_{m-1})` for `m >= 3`.
pub fn p_poly(m: usize) -> Result<RationalPolynomial> {
    if m == 0 {
        return Err(Error::domain("p_poly", "requires m >= 1"));
    }
    let pis = pi_sequence(m.max(2));
    Ok(p_from(&pis, m))
}

fn p_from(pis: &[RationalPolynomial], m: usize) -> RationalPolynomial {
    match m {
        1 => RationalPolynomial::new(vec![rat_int(-2), rat_int(2)]),
        2 => RationalPolynomial::monomial(rat_int(1), 2),
        _ => (&pis[m] - &pis[m - 1]).scale(&rat(-2, m as i64 - 2)),
    }
}

/// Precomputed `π_m`, `π̃_m`, `p_m` for `m <= max_m`.
#[derive(Clone, Debug)]
pub struct PolyTables {
    pi: Vec<RationalPolynomial>,
    pi_tilde: Vec<RationalPolynomial>,
    p: Vec<RationalPolynomial>,
}

/// Highest index held by [`PolyTables::shared`].
pub const SHARED_TABLE_MAX_M: usize = 16;

impl PolyTables {
    pub fn new(max_m: usize) -> Self {
        let pi = pi_sequence(max_m.max(2));
        let pi_tilde = (0..=max_m).map(|m| convolve(&pi, m)).collect();
        // p_0 is unused; store the zero polynomial to keep indices aligned.
        let p = (0..=max_m)
            .map(|m| if m == 0 { RationalPolynomial::zero() } else { p_from(&pi, m) })
            .collect();
        Self { pi, pi_tilde, p }
    }

    pub fn shared() -> &'static PolyTables {
        static TABLES: OnceLock<PolyTables> = OnceLock::new();
        TABLES.get_or_init(|| PolyTables::new(SHARED_TABLE_MAX_M))
    }

    pub fn max_m(&self) -> usize {
        self.pi_tilde.len() - 1
    }

    pub fn pi(&self, m: usize) -> &RationalPolynomial {
        &self.pi[m]
    }

    pub fn pi_tilde(&self, m: usize) -> &RationalPolynomial {
        &self.pi_tilde[m]
    }

    /// `p_m` for `m >= 1`.
    pub fn p(&self, m: usize) -> &RationalPolynomial {
        &self.p[m]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[(i64, i64)]) -> RationalPolynomial {
        RationalPolynomial::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    /// Coefficient of t^n / n! in (1/k!) ln^k(1+t), by truncated power-series
    /// arithmetic independent of the recurrence.
    fn stirling_by_series(n: usize, k: usize) -> BigRational {
        let ln1p: Vec<BigRational> = (0..=n)
            .map(|i| if i == 0 { rat_int(0) } else { rat(if i % 2 == 1 { 1 } else { -1 }, i as i64) })
            .collect();
        let mut pow = vec![rat_int(0); n + 1];
        pow[0] = rat_int(1);
        for _ in 0..k {
            let mut next = vec![rat_int(0); n + 1];
            for i in 0..=n {
                for j in 0..=n - i {
                    next[i + j] = &next[i + j] + &pow[i] * &ln1p[j];
                }
            }
            pow = next;
        }
        &pow[n] * BigRational::from_integer(factorial_big(n)) / BigRational::from_integer(factorial_big(k))
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_first(3, 3).unwrap(), 1);
        assert_eq!(stirling_first(3, 1).unwrap(), 2);
        assert_eq!(stirling_first(4, 2).unwrap(), 11);
        assert_eq!(stirling_first(0, 0).unwrap(), 1);
        assert_eq!(stirling_first(5, 0).unwrap(), 0);
        assert!(stirling_first(21, 3).is_err());
        assert!(StirlingTable::new(21).is_err());
    }

    #[test]
    fn stirling_matches_series_expansion() {
        for n in 0..=12 {
            for k in 0..=n {
                let expect = stirling_by_series(n, k);
                assert_eq!(rat_int(stirling_first(n, k).unwrap()), expect, "s({n},{k})");
            }
        }
        // s(20, 1) = -19!
        assert_eq!(stirling_first(20, 1).unwrap(), -121_645_100_408_832_000);
    }

    #[test]
    fn coeff_a_examples() {
        assert_eq!(coeff_a(0, 3).unwrap(), rat_int(1));
        assert_eq!(coeff_a(2, 0).unwrap(), rat_int(0));
        assert_eq!(coeff_a(3, 1).unwrap(), rat(-1, 4));
        assert!(coeff_a(15, 6).is_err());
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi_poly_recursive(0), poly(&[(1, 1)]));
        assert_eq!(pi_poly_recursive(1), poly(&[(0, 1), (1, 1)]));
        assert_eq!(pi_poly_recursive(2), poly(&[(0, 1), (1, 1)]));
        assert_eq!(pi_poly_recursive(4), poly(&[(0, 1), (1, 1), (-3, 2), (1, 3)]));
        assert_eq!(pi_poly_recursive(5), poly(&[(0, 1), (1, 1), (-3, 1), (11, 6), (-1, 4)]));
        assert_eq!(pi_poly_explicit(3).unwrap(), poly(&[(0, 1), (1, 1), (-1, 2)]));
        assert_eq!(pi_poly_explicit(2).unwrap(), poly(&[(0, 1), (1, 1)]));
        assert_eq!(pi_poly_explicit(5).unwrap().coeff(3), rat(11, 6));
        assert!(pi_poly_explicit(1).is_err());
    }

    #[test]
    fn pi_tilde_and_p_examples() {
        assert_eq!(pi_tilde(1), poly(&[(0, 1), (2, 1)]));
        assert_eq!(pi_tilde(2), poly(&[(0, 1), (2, 1), (1, 1)]));
        assert_eq!(pi_tilde(3), poly(&[(0, 1), (2, 1), (1, 1)]));
        assert_eq!(p_poly(1).unwrap(), poly(&[(-2, 1), (2, 1)]));
        assert_eq!(p_poly(2).unwrap(), poly(&[(0, 1), (0, 1), (1, 1)]));
        assert_eq!(p_poly(3).unwrap(), poly(&[(0, 1), (0, 1), (1, 1)]));
        assert!(p_poly(0).is_err());
    }

    #[test]
    fn tables_agree_with_free_functions() {
        let t = PolyTables::shared();
        for m in 1..=12 {
            assert_eq!(t.pi(m), &pi_poly_recursive(m));
            assert_eq!(t.pi_tilde(m), &pi_tilde(m));
            assert_eq!(t.p(m), &p_poly(m).unwrap());
        }
    }

    #[test]
    fn evaluation_and_display() {
        let p4 = pi_poly_recursive(4);
        let s = 1.5f64;
        assert!((p4.eval(s) - (s - 1.5 * s * s + s * s * s / 3.0)).abs() < 1e-15);
        assert_eq!(p4.to_string(), "s - 3/2*s^2 + 1/3*s^3");
        assert_eq!(RationalPolynomial::zero().eval(2.0f32), 0.0);
    }
}
