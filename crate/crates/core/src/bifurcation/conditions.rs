use num_complex::Complex64;

use super::BifError;
use crate::ext::ExtComplex;
use crate::green::{EscapeConfig, PolyGreen};
use crate::periodic::{preperiodicity_poly, PreperConfig, PreperVerdict};
use crate::poly::Poly;
use crate::systems::MarkedPair;

/// Default recurrence exponent for [`pr_margin`].
pub const DEFAULT_PR_EXPONENT: f64 = 0.6;

/// `d/dt P_t^n(a(t))` at `t0`, by the forward recurrence
/// `g'_{k+1} = P_z(g_k) g'_k + P_t(g_k)`.
///
/// Fails with [`BifError::Overflow`] once the orbit or its derivative leaves
/// the `f64` range; [`param_log_derivative`] continues in extended range.
pub fn param_derivative(pair: &MarkedPair, t0: Complex64, n: usize) -> Result<Complex64, BifError> {
    let p = pair.poly_at(t0);
    let dz = p.derivative();
    let dt = pair.dt_poly_at(t0);
    let mut g = pair.marked_at(t0);
    let mut dg = pair.marked_derivative_at(t0);
    for k in 0..n {
        dg = dz.eval(g) * dg + dt.eval(g);
        g = p.eval(g);
        if !(g.is_finite() && dg.is_finite()) {
            return Err(BifError::Overflow { step: k + 1 });
        }
    }
    Ok(dg)
}

/// `ln |d/dt P_t^n(a(t))|` at `t0`, computed in extended exponent range.
pub fn param_log_derivative(pair: &MarkedPair, t0: Complex64, n: usize) -> f64 {
    let p = pair.poly_at(t0);
    let dz = p.derivative();
    let dt = pair.dt_poly_at(t0);
    let mut g = ExtComplex::new(pair.marked_at(t0));
    let mut dg = ExtComplex::new(pair.marked_derivative_at(t0));
    for _ in 0..n {
        dg = dz.eval(g) * dg + dt.eval(g);
        g = p.eval(g);
    }
    crate::ext::Scalar::ln_abs(dg)
}

/// Why a critical point was or was not used by [`ce_estimate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CritStatus {
    /// Included, with its exponent.
    Included(f64),
    Escaping,
    /// Its orbit lands on or converges to an attracting cycle.
    AttractingBasin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CeEstimate {
    /// Minimum exponent over included critical points; `None` when every
    /// critical point was excluded (the condition holds vacuously), `-inf`
    /// when an orbit hits a critical point.
    pub exponent: Option<f64>,
    pub critical_points: Vec<(Complex64, CritStatus)>,
    pub horizon: usize,
}

/// Finite-horizon Collet–Eckmann exponent
/// `min_c (1/n) ln |(P^n)'(P^N(c))|` over critical points `c` that neither
/// escape nor lie in an attracting basin.
pub fn ce_estimate(poly: &Poly, big_n: usize, n: usize) -> Result<CeEstimate, BifError> {
    if n == 0 {
        return Err(BifError::EmptyRange);
    }
    let green = PolyGreen::new(poly.clone())?;
    let dpoly = poly.derivative();
    let cfg = PreperConfig {
        horizon: 200,
        tol: 1e-10,
        escape: EscapeConfig::default(),
    };
    let mut out = Vec::new();
    let mut exponent: Option<f64> = None;
    for c in dpoly.roots() {
        let status = match preperiodicity_poly(&green, c, &cfg)? {
            PreperVerdict::Escaping => CritStatus::Escaping,
            PreperVerdict::Attracted { .. } => CritStatus::AttractingBasin,
            PreperVerdict::Preperiodic { tail, period } if cycle_modulus(poly, &dpoly, c, tail, period) < 1.0 => {
                CritStatus::AttractingBasin
            }
            _ => {
                let mut g = c;
                for _ in 0..big_n {
                    g = poly.eval(g);
                }
                let mut sum = 0.0;
                for _ in 0..n {
                    sum += dpoly.eval(g).norm().ln();
                    g = poly.eval(g);
                }
                let e = sum / n as f64;
                exponent = Some(exponent.map_or(e, |m: f64| m.min(e)));
                CritStatus::Included(e)
            }
        };
        out.push((c, status));
    }
    Ok(CeEstimate {
        exponent,
        critical_points: out,
        horizon: n,
    })
}

fn cycle_modulus(poly: &Poly, dpoly: &Poly, c: Complex64, tail: usize, period: usize) -> f64 {
    let mut g = c;
    for _ in 0..tail {
        g = poly.eval(g);
    }
    let mut m = 1.0;
    for _ in 0..period {
        m *= dpoly.eval(g).norm();
        g = poly.eval(g);
    }
    m
}

/// `min_{N <= n <= horizon, c in Crit} |P^n(a) - c| n^s`.
pub fn pr_margin(poly: &Poly, a: Complex64, s: f64, big_n: usize, horizon: usize) -> Result<f64, BifError> {
    if !(s > 0.5) {
        return Err(BifError::BadExponent(s));
    }
    if big_n > horizon {
        return Err(BifError::EmptyRange);
    }
    let crit = poly.derivative().roots();
    let mut g = a;
    let mut margin = f64::INFINITY;
    for n in 0..=horizon {
        if n >= big_n {
            for c in &crit {
                margin = margin.min((g - c).norm() * (n as f64).powf(s));
            }
        }
        g = poly.eval(g);
    }
    Ok(margin)
}

/// All three finite-horizon estimators for the marked orbit of a pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub ce_exponent_estimate: Option<f64>,
    /// `(1/n) ln |d/dt P_t^n(a(t))|`.
    pub parce_exponent_estimate: f64,
    pub pr_margin: f64,
    pub horizon: usize,
}

pub fn condition_report(
    pair: &MarkedPair,
    t0: Complex64,
    big_n: usize,
    horizon: usize,
    s: f64,
) -> Result<ConditionReport, BifError> {
    if horizon == 0 {
        return Err(BifError::EmptyRange);
    }
    let p = pair.poly_at(t0);
    let ce = ce_estimate(&p, big_n, horizon)?;
    Ok(ConditionReport {
        ce_exponent_estimate: ce.exponent,
        parce_exponent_estimate: param_log_derivative(pair, t0, horizon) / horizon as f64,
        pr_margin: pr_margin(&p, pair.marked_at(t0), s, big_n.min(horizon), horizon)?,
        horizon,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrerepellingVerdict {
    Transverse,
    NonTransverse,
    NonRepelling,
    /// `P^k(a)` is not periodic of period `p` within tolerance.
    NotPeriodic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrerepellingReport {
    pub verdict: PrerepellingVerdict,
    pub landing: Complex64,
    pub multiplier: Complex64,
    /// `|d/dt (P_t^k(a(t)) - x(t))|` at `t0`; zero unless the landing is a
    /// repelling cycle.
    pub derivative_gap: f64,
}

impl PrerepellingReport {
    pub fn is_transverse(&self) -> bool {
        self.verdict == PrerepellingVerdict::Transverse
    }
}

/// Checks that `P_{t0}^k(a(t0))` lies on a repelling `p`-cycle and that the
/// marked orbit crosses the continuation `x(t)` of that cycle with nonzero
/// relative speed. The cycle moves with speed
/// `x'(t0) = (d/dt P_t^p)(x0) / (1 - (P^p)'(x0))`.
pub fn transverse_prerepelling_check(
    pair: &MarkedPair,
    t0: Complex64,
    k: usize,
    p: usize,
    tol: f64,
) -> Result<PrerepellingReport, BifError> {
    if p == 0 {
        return Err(BifError::ZeroCycle);
    }
    if pair.degenerates_at(t0) {
        return Err(BifError::Degenerate);
    }
    let poly = pair.poly_at(t0);
    let dz = poly.derivative();
    let dt = pair.dt_poly_at(t0);
    let mut x0 = pair.marked_at(t0);
    for _ in 0..k {
        x0 = poly.eval(x0);
    }
    // orbit of x0 with its t-derivative at fixed start, and the multiplier
    let (mut g, mut dg, mut lambda) = (x0, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    for _ in 0..p {
        dg = dz.eval(g) * dg + dt.eval(g);
        lambda *= dz.eval(g);
        g = poly.eval(g);
    }
    let mut report = PrerepellingReport {
        verdict: PrerepellingVerdict::NotPeriodic,
        landing: x0,
        multiplier: lambda,
        derivative_gap: 0.0,
    };
    if !((g - x0).norm() <= 1e-9 * (1.0 + x0.norm())) {
        return Ok(report);
    }
    if lambda.norm() <= 1.0 {
        report.verdict = PrerepellingVerdict::NonRepelling;
        return Ok(report);
    }
    let cycle_speed = dg / (1.0 - lambda);
    let marked_speed = param_derivative(pair, t0, k)?;
    report.derivative_gap = (marked_speed - cycle_speed).norm();
    report.verdict = if report.derivative_gap > tol {
        PrerepellingVerdict::Transverse
    } else {
        PrerepellingVerdict::NonTransverse
    };
    Ok(report)
}
