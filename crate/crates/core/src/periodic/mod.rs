//! Periodic points, numerical preperiodicity and equidistribution samples.

mod one_d;
mod plane;
mod preper;

use num_complex::Complex64;
use thiserror::Error;

pub use one_d::{periodic_points_1d, AberthConfig, MAX_1D_DEGREE};
pub use plane::{
    periodic_points_endo2, periodic_points_henon, periodic_points_plane, NewtonConfig, PlaneSolutions, MAX_ENDO_ROOTS, MAX_HENON_PERIOD,
};
pub use preper::{preperiodicity_endo, preperiodicity_poly, PreperConfig, PreperVerdict};

/// Width of the band around modulus 1 treated as neutral.
pub const NEUTRAL_BAND: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PeriodicError {
    #[error("degree {degree}^{period} exceeds the cap of {cap} roots")]
    CapExceeded { degree: usize, period: usize, cap: usize },
    #[error("period {period} exceeds the cap of {cap}")]
    PeriodCap { period: usize, cap: usize },
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("polynomial degree must be at least 2")]
    LowDegree,
    #[error("root finder did not converge after {sweeps} sweeps ({unconverged} roots left)")]
    NoConvergence { sweeps: usize, unconverged: usize },
    #[error("search radius {given} is below the trapping radius {needed}")]
    SearchRadius { given: f64, needed: f64 },
    #[error("empty selection")]
    EmptySelection,
    #[error("map is not regular")]
    NotRegular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stability {
    Repelling,
    Saddle,
    Attracting,
    Neutral,
}

impl Stability {
    /// Class from multiplier moduli; moduli within [`NEUTRAL_BAND`] of 1
    /// count as neutral.
    pub fn classify(multipliers: &[Complex64]) -> Stability {
        let mut above = 0;
        let mut below = 0;
        for m in multipliers {
            let r = m.norm();
            if r > 1.0 + NEUTRAL_BAND {
                above += 1;
            } else if r < 1.0 - NEUTRAL_BAND {
                below += 1;
            }
        }
        let n = multipliers.len();
        if above == n {
            Stability::Repelling
        } else if below == n {
            Stability::Attracting
        } else if above + below == n {
            Stability::Saddle
        } else {
            Stability::Neutral
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Repelling => "repelling",
            Stability::Saddle => "saddle",
            Stability::Attracting => "attracting",
            Stability::Neutral => "neutral",
        }
    }

    pub fn parse(s: &str) -> Option<Stability> {
        match s {
            "repelling" => Some(Stability::Repelling),
            "saddle" => Some(Stability::Saddle),
            "attracting" => Some(Stability::Attracting),
            "neutral" => Some(Stability::Neutral),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicPoint<L> {
    pub location: L,
    /// Exact (minimal) period.
    pub period: usize,
    /// Eigenvalues of the derivative of the `n`-th iterate used in the
    /// search, larger modulus first.
    pub multipliers: Vec<Complex64>,
    pub stability: Stability,
    /// Max-norm residual `|F^n(location) - location|`.
    pub residual: f64,
    /// Number of coalesced roots (1 unless the root is a cluster).
    pub multiplicity: usize,
}

/// A finite point cloud with weights summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureSample<L> {
    pub points: Vec<L>,
    pub weights: Vec<f64>,
    /// Number of points before normalization.
    pub raw_count: usize,
}

impl<L: Clone> MeasureSample<L> {
    pub fn uniform(points: Vec<L>) -> Result<Self, PeriodicError> {
        if points.is_empty() {
            return Err(PeriodicError::EmptySelection);
        }
        let n = points.len();
        Ok(Self {
            weights: vec![1.0 / n as f64; n],
            raw_count: n,
            points,
        })
    }
}

/// Uniform sample over the points of the given class.
pub fn equi_sample<L: Clone>(
    points: &[PeriodicPoint<L>],
    filter: Stability,
) -> Result<MeasureSample<L>, PeriodicError> {
    let chosen = points
        .iter()
        .filter(|p| p.stability == filter)
        .map(|p| p.location.clone())
        .collect();
    MeasureSample::uniform(chosen)
}

/// Star discrepancy of the angular distribution of a weighted sample
/// against normalized arc length, with angles measured from the positive
/// real axis in `[0, 1)`.
pub fn angular_discrepancy(sample: &MeasureSample<Complex64>) -> f64 {
    let mut pairs: Vec<(f64, f64)> = sample
        .points
        .iter()
        .zip(&sample.weights)
        .map(|(z, &w)| (z.arg().rem_euclid(std::f64::consts::TAU) / std::f64::consts::TAU, w))
        .map(|(a, w)| (if a >= 1.0 { 0.0 } else { a }, w))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    let mut cum = 0.0;
    let mut worst: f64 = 0.0;
    for (a, w) in pairs {
        worst = worst.max(a - cum / total);
        cum += w;
        worst = worst.max(cum / total - a);
    }
    worst
}
