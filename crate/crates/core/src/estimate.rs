//! A log-probability together with how it was obtained.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Origin of a [`ProbEstimate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Leading asymptotic law with the `ε(r)` series.
    Asymptotic,
    /// The asymptotic law times the `1 + δ(r)` correction.
    Refined,
    /// The asymptotic law of the unperturbed field shifted by `ln C_dist`.
    Distorted,
    /// Saddle point of the Laplace transform.
    Saddle,
    /// Monte Carlo frequency.
    MonteCarlo,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Asymptotic => "asym",
            Method::Refined => "prop1",
            Method::Distorted => "cor2",
            Method::Saddle => "saddle",
            Method::MonteCarlo => "mc",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Method::Asymptotic, Method::Refined, Method::Distorted, Method::Saddle, Method::MonteCarlo]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown method '{s}'")))
    }
}

/// Monte Carlo frequency and its 95% Wilson interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McSummary<T> {
    pub p_hat: T,
    pub ci_low: T,
    pub ci_high: T,
}

/// `ln P(V² < r)` with metadata; fields that do not apply are `None`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbEstimate<T> {
    pub r: T,
    pub method: Method,
    pub log_p: T,
    /// Log of the density `d/dr P(V² < r)`.
    pub log_density: Option<T>,
    /// Relative-error scale of `exp(log_p)`; an indicator, not a bound.
    pub error_indicator: T,
    /// `ln² r / (8π² r)`.
    pub k_r: Option<T>,
    pub sbar: Option<T>,
    pub terms_k: Option<usize>,
    /// Saddle point.
    pub h: Option<T>,
    pub mc: Option<McSummary<T>>,
    /// Set when `r` lies above the range where the asymptotic law is
    /// meaningful.
    pub beyond_cap: bool,
}

impl<T: Copy> ProbEstimate<T> {
    pub(crate) fn bare(r: T, method: Method, log_p: T, error_indicator: T) -> Self {
        Self {
            r,
            method,
            log_p,
            log_density: None,
            error_indicator,
            k_r: None,
            sbar: None,
            terms_k: None,
            h: None,
            mc: None,
            beyond_cap: false,
        }
    }
}
