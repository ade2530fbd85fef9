//! Escape-rate Green functions with explicit error bounds.
//!
//! Every system here has an escape region `V` (a max-norm bidisk complement
//! or a sector of it) on which one step multiplies the dominant coordinate's
//! log-modulus `L` by the degree `D` up to an additive offset `e` lying in an
//! interval `[mid - half, mid + half]` that shrinks as `L` grows. Once the
//! orbit is in `V` at depth `n`,
//!
//! ```text
//! G = D^-n (L_n + sum_{j >= 0} D^-(j+1) e_{n+j})
//! ```
//!
//! so `D^-n (L_n + mid / (D - 1))` is within `D^-n half / (D - 1)` of `G`.
//! That tail shrinks by at least `D` per extra step. Orbits that never reach
//! `V` within the iteration cap get value 0 and a bound from the growth rate
//! of the map on large bidisks.

use num_complex::Complex64;
use thiserror::Error;

use crate::ext::{ExtComplex, Scalar, WIDE_THRESHOLD};
use crate::poly::Poly;
use crate::systems::{escape_radius, DegreeDFamilyParam, HenonMap, Point2, RegularEndo, SystemError};

/// Relative allowance for floating-point rounding added to every bound.
pub const ROUNDOFF: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GreenError {
    #[error("endomorphism is not regular: its top homogeneous parts share a root")]
    NotRegular,
    #[error("could not certify a lower bound for the top homogeneous part")]
    Uncertified,
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("critical index {index} out of range 1..={count}")]
    CriticalIndex { index: usize, count: usize },
    #[error("invalid escape configuration: {0}")]
    Config(&'static str),
    #[error("non-finite starting point")]
    NonFinite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeConfig {
    /// Radius of the escape test; raised to the map's own bound when smaller.
    pub escape_radius: f64,
    pub max_iters: usize,
    /// Iteration stops once the tail bound is below this.
    pub target_error: f64,
}

impl Default for EscapeConfig {
    fn default() -> Self {
        Self {
            escape_radius: 2.0,
            max_iters: 500,
            target_error: 1e-9,
        }
    }
}

impl EscapeConfig {
    pub fn validate(&self) -> Result<(), GreenError> {
        if !(self.escape_radius > 1.0 && self.escape_radius.is_finite()) {
            return Err(GreenError::Config("escape_radius must be a finite number above 1"));
        }
        if !(self.target_error > 0.0) {
            return Err(GreenError::Config("target_error must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenEstimate {
    pub value: f64,
    /// Bound on `|value - G|`, including a rounding allowance.
    pub error_bound: f64,
    pub iterations_used: usize,
    pub escaped: bool,
    /// The truncation part of `error_bound` (no rounding allowance).
    pub tail_bound: f64,
}

impl GreenEstimate {
    pub const ZERO: GreenEstimate = GreenEstimate {
        value: 0.0,
        error_bound: 0.0,
        iterations_used: 0,
        escaped: false,
        tail_bound: 0.0,
    };

    /// `s * self` for a positive scale.
    pub fn scaled(&self, s: f64) -> GreenEstimate {
        GreenEstimate {
            value: self.value * s,
            error_bound: self.error_bound * s,
            tail_bound: self.tail_bound * s,
            ..*self
        }
    }

    /// Componentwise max of values and of bounds.
    pub fn max(&self, other: &GreenEstimate) -> GreenEstimate {
        GreenEstimate {
            value: self.value.max(other.value),
            error_bound: self.error_bound.max(other.error_bound),
            iterations_used: self.iterations_used.max(other.iterations_used),
            escaped: self.escaped || other.escaped,
            tail_bound: self.tail_bound.max(other.tail_bound),
        }
    }
}

/// One row of an escape trace, recorded at every depth after the orbit
/// enters the escape region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceStep {
    pub depth: usize,
    /// Log-modulus of the dominant coordinate.
    pub ln_norm: f64,
    pub value: f64,
    /// Natural log of the tail bound at this depth.
    pub ln_tail_bound: f64,
}

/// Additive offset `e` of one step: `e` lies within `exp(ln_half)` of `mid`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Offset {
    mid: f64,
    ln_half: f64,
}

/// Offset when the top part has modulus in `[lo, hi]` on the unit sphere and
/// the remainder is at most `low * r^(D-1)`, evaluated at radius `e^ln_r`.
fn offset(lo: f64, hi: f64, low: f64, ln_r: f64) -> Offset {
    if low == 0.0 {
        let half = 0.5 * (hi.ln() - lo.ln());
        return Offset {
            mid: 0.5 * (hi.ln() + lo.ln()),
            ln_half: if half > 0.0 { half.ln() } else { f64::NEG_INFINITY },
        };
    }
    let ln_eps = low.ln() - ln_r;
    let eps = ln_eps.exp();
    let mid = 0.5 * (hi.ln() + (eps / hi).ln_1p() + lo.ln() + (-eps / lo).ln_1p());
    let ln_half = if hi == lo {
        // ln1p(t) - ln1p(-t) <= 3t for t <= 1/2
        1.5f64.ln() + ln_eps - lo.ln()
    } else {
        (0.5 * (hi.ln() - lo.ln()) + 0.5 * eps / hi + eps / lo).ln()
    };
    Offset { mid, ln_half }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// What the escape engine needs from a system.
trait EscapeDynamics {
    fn degree(&self) -> f64;
    /// Radius the escape test actually uses.
    fn radius(&self) -> f64;
    fn offset(&self, ln_r: f64) -> Offset;
    /// Upper bound on `ln max(||F(u)||, R) - D ln max(||u||, R)`.
    fn growth_excess(&self) -> f64;
    fn step<S: Scalar>(&self, z: [S; 2]) -> [S; 2];
    /// Log-modulus of the dominant coordinate when the state lies in the
    /// escape sector (radius aside).
    fn sector(&self, lx: f64, ly: f64) -> Option<f64>;
}

struct Run<'t> {
    extra_depths: Option<usize>,
    trace: Option<&'t mut Vec<TraceStep>>,
}

fn escape<M: EscapeDynamics>(m: &M, start: [Complex64; 2], cfg: &EscapeConfig, mut run: Run<'_>) -> GreenEstimate {
    let ln_r = m.radius().ln();
    let d = m.degree();
    let ln_d = d.ln();
    let ln_dm1 = (d - 1.0).ln();
    let mut z = start;
    let mut wide: Option<[ExtComplex; 2]> = None;
    let mut first_escape: Option<usize> = None;
    let mut n = 0usize;
    loop {
        let (lx, ly) = match wide {
            Some(w) => (w[0].ln_abs(), w[1].ln_abs()),
            None => (z[0].norm().ln(), z[1].norm().ln()),
        };
        let scale = -(n as f64) * ln_d;
        match m.sector(lx, ly).filter(|&l| l >= ln_r) {
            Some(l) => {
                let first = *first_escape.get_or_insert(n);
                let off = m.offset(l);
                let value = ((l + off.mid / (d - 1.0)).max(0.0).ln() + scale).exp();
                let ln_tail = scale + off.ln_half - ln_dm1;
                let tail = ln_tail.exp();
                if let Some(t) = run.trace.as_deref_mut() {
                    t.push(TraceStep {
                        depth: n,
                        ln_norm: l,
                        value,
                        ln_tail_bound: ln_tail,
                    });
                }
                let done = match run.extra_depths {
                    Some(k) => n >= first + k,
                    None => tail <= cfg.target_error,
                };
                if done || n >= cfg.max_iters {
                    return GreenEstimate {
                        value,
                        error_bound: tail + ROUNDOFF * (value + 1.0),
                        iterations_used: n,
                        escaped: true,
                        tail_bound: tail,
                    };
                }
            }
            None if n >= cfg.max_iters => {
                let ln_norm = lx.max(ly).max(ln_r);
                let tail = (scale.exp() * (ln_norm + m.growth_excess() / (d - 1.0))).max(0.0);
                return GreenEstimate {
                    value: 0.0,
                    error_bound: tail + ROUNDOFF,
                    iterations_used: n,
                    escaped: false,
                    tail_bound: tail,
                };
            }
            None => {}
        }
        match wide {
            Some(w) => wide = Some(m.step(w)),
            None => {
                let next = m.step(z);
                let big = next[0].norm().max(next[1].norm());
                if big.is_finite() && big <= WIDE_THRESHOLD {
                    z = next;
                } else {
                    let w = [ExtComplex::new(z[0]), ExtComplex::new(z[1])];
                    wide = Some(m.step(w));
                }
            }
        }
        n += 1;
    }
}

struct PolyDynamics<'a> {
    poly: &'a Poly,
    lead: f64,
    low: f64,
    radius: f64,
}

impl EscapeDynamics for PolyDynamics<'_> {
    fn degree(&self) -> f64 {
        self.poly.degree() as f64
    }

    fn radius(&self) -> f64 {
        self.radius
    }

    fn offset(&self, ln_r: f64) -> Offset {
        offset(self.lead, self.lead, self.low, ln_r)
    }

    fn growth_excess(&self) -> f64 {
        (self.lead + self.low / self.radius).ln().max(0.0)
    }

    fn step<S: Scalar>(&self, z: [S; 2]) -> [S; 2] {
        [self.poly.eval(z[0]), z[1]]
    }

    fn sector(&self, lx: f64, _ly: f64) -> Option<f64> {
        Some(lx)
    }
}

struct EndoDynamics<'a> {
    h: &'a RegularEndo,
    lo: f64,
    hi: f64,
    low: f64,
    radius: f64,
}

impl EscapeDynamics for EndoDynamics<'_> {
    fn degree(&self) -> f64 {
        self.h.degree() as f64
    }

    fn radius(&self) -> f64 {
        self.radius
    }

    fn offset(&self, ln_r: f64) -> Offset {
        offset(self.lo, self.hi, self.low, ln_r)
    }

    fn growth_excess(&self) -> f64 {
        (self.hi + self.low / self.radius).ln().max(0.0)
    }

    fn step<S: Scalar>(&self, z: [S; 2]) -> [S; 2] {
        let (x, y) = self.h.eval_generic(z[0], z[1]);
        [x, y]
    }

    fn sector(&self, lx: f64, ly: f64) -> Option<f64> {
        Some(lx.max(ly))
    }
}

/// Forward or backward Hénon dynamics; `factors` lists `(degree, lead, low)`
/// in application order.
struct HenonDynamics<'a> {
    f: &'a HenonMap,
    factors: &'a [(usize, f64, f64)],
    forward: bool,
    radius: f64,
}

impl EscapeDynamics for HenonDynamics<'_> {
    fn degree(&self) -> f64 {
        self.f.degree() as f64
    }

    fn radius(&self) -> f64 {
        self.radius
    }

    fn offset(&self, ln_r: f64) -> Offset {
        let mut weight = 1.0;
        let mut mid = 0.0;
        let mut ln_half = f64::NEG_INFINITY;
        for &(k, lead, low) in self.factors.iter().rev() {
            let o = offset(lead, lead, low, ln_r);
            mid += weight * o.mid;
            ln_half = log_add_exp(ln_half, weight.ln() + o.ln_half);
            weight *= k as f64;
        }
        Offset { mid, ln_half }
    }

    fn growth_excess(&self) -> f64 {
        let mut weight = 1.0;
        let mut total = 0.0;
        for &(k, lead, low) in self.factors.iter().rev() {
            total += weight * (lead + low / self.radius).ln().max(0.0);
            weight *= k as f64;
        }
        total
    }

    fn step<S: Scalar>(&self, z: [S; 2]) -> [S; 2] {
        let (x, y) = if self.forward {
            self.f.eval_generic(z[0], z[1])
        } else {
            self.f.inverse_generic(z[0], z[1])
        };
        [x, y]
    }

    fn sector(&self, lx: f64, ly: f64) -> Option<f64> {
        if self.forward {
            (ly >= lx).then_some(ly)
        } else {
            (lx >= ly).then_some(lx)
        }
    }
}

fn check_point(p: Point2) -> Result<(), GreenError> {
    if p.is_finite() {
        Ok(())
    } else {
        Err(GreenError::NonFinite)
    }
}

/// Green function of a one-variable polynomial of degree at least 2.
#[derive(Clone, Debug)]
pub struct PolyGreen {
    poly: Poly,
    lead: f64,
    low: f64,
    min_radius: f64,
}

impl PolyGreen {
    pub fn new(poly: Poly) -> Result<Self, GreenError> {
        if poly.degree() < 2 {
            return Err(GreenError::Config("polynomial degree must be at least 2"));
        }
        let lead = poly.leading().norm();
        let low = poly.lower_abs_sum();
        let min_radius = escape_radius(poly.degree(), lead, low);
        Ok(Self {
            poly,
            lead,
            low,
            min_radius,
        })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// Radius outside of which every orbit escapes.
    pub fn escape_radius(&self) -> f64 {
        self.min_radius
    }

    fn dynamics(&self, cfg: &EscapeConfig) -> PolyDynamics<'_> {
        PolyDynamics {
            poly: &self.poly,
            lead: self.lead,
            low: self.low,
            radius: cfg.escape_radius.max(self.min_radius),
        }
    }

    pub fn eval(&self, z: Complex64, cfg: &EscapeConfig) -> Result<GreenEstimate, GreenError> {
        cfg.validate()?;
        check_point(Point2::new(z, Complex64::new(0.0, 0.0)))?;
        let run = Run {
            extra_depths: None,
            trace: None,
        };
        Ok(escape(&self.dynamics(cfg), [z, Complex64::new(0.0, 0.0)], cfg, run))
    }

    /// Iterates `extra_depths` steps past first escape, recording each depth.
    pub fn trace(
        &self,
        z: Complex64,
        cfg: &EscapeConfig,
        extra_depths: usize,
    ) -> Result<(GreenEstimate, Vec<TraceStep>), GreenError> {
        cfg.validate()?;
        check_point(Point2::new(z, Complex64::new(0.0, 0.0)))?;
        let mut steps = Vec::new();
        let run = Run {
            extra_depths: Some(extra_depths),
            trace: Some(&mut steps),
        };
        let est = escape(&self.dynamics(cfg), [z, Complex64::new(0.0, 0.0)], cfg, run);
        Ok((est, steps))
    }
}

/// Green function `G_h` of a regular endomorphism, with its escape constants
/// computed once.
#[derive(Clone, Debug)]
pub struct EndoGreen {
    h: RegularEndo,
    lo: f64,
    hi: f64,
    low: f64,
    min_radius: f64,
}

impl EndoGreen {
    pub fn new(h: RegularEndo) -> Result<Self, GreenError> {
        if !h.regularity_check()? {
            return Err(GreenError::NotRegular);
        }
        let data = h.escape_data().ok_or(GreenError::Uncertified)?;
        Ok(Self {
            lo: data.min_top,
            hi: data.max_top,
            low: data.lower_sum,
            min_radius: data.radius,
            h,
        })
    }

    pub fn map(&self) -> &RegularEndo {
        &self.h
    }

    pub fn escape_radius(&self) -> f64 {
        self.min_radius
    }

    fn dynamics(&self, cfg: &EscapeConfig) -> EndoDynamics<'_> {
        EndoDynamics {
            h: &self.h,
            lo: self.lo,
            hi: self.hi,
            low: self.low,
            radius: cfg.escape_radius.max(self.min_radius),
        }
    }

    pub fn eval(&self, p: Point2, cfg: &EscapeConfig) -> Result<GreenEstimate, GreenError> {
        cfg.validate()?;
        check_point(p)?;
        let run = Run {
            extra_depths: None,
            trace: None,
        };
        Ok(escape(&self.dynamics(cfg), [p.x, p.y], cfg, run))
    }

    pub fn trace(
        &self,
        p: Point2,
        cfg: &EscapeConfig,
        extra_depths: usize,
    ) -> Result<(GreenEstimate, Vec<TraceStep>), GreenError> {
        cfg.validate()?;
        check_point(p)?;
        let mut steps = Vec::new();
        let run = Run {
            extra_depths: Some(extra_depths),
            trace: Some(&mut steps),
        };
        let est = escape(&self.dynamics(cfg), [p.x, p.y], cfg, run);
        Ok((est, steps))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// Green functions `G^+`, `G^-` and `G = max(G^+, G^-)` of a Hénon map.
#[derive(Clone, Debug)]
pub struct HenonGreen {
    f: HenonMap,
    forward: Vec<(usize, f64, f64)>,
    backward: Vec<(usize, f64, f64)>,
    min_radius: f64,
}

impl HenonGreen {
    pub fn new(f: HenonMap) -> Self {
        Self {
            forward: f.forward_escape(),
            backward: f.backward_escape(),
            min_radius: f.filtration_radius(),
            f,
        }
    }

    pub fn map(&self) -> &HenonMap {
        &self.f
    }

    pub fn escape_radius(&self) -> f64 {
        self.min_radius
    }

    fn dynamics(&self, dir: Direction, cfg: &EscapeConfig) -> HenonDynamics<'_> {
        HenonDynamics {
            f: &self.f,
            factors: match dir {
                Direction::Forward => &self.forward,
                Direction::Backward => &self.backward,
            },
            forward: dir == Direction::Forward,
            radius: cfg.escape_radius.max(self.min_radius),
        }
    }

    pub fn eval(&self, p: Point2, dir: Direction, cfg: &EscapeConfig) -> Result<GreenEstimate, GreenError> {
        cfg.validate()?;
        check_point(p)?;
        let run = Run {
            extra_depths: None,
            trace: None,
        };
        Ok(escape(&self.dynamics(dir, cfg), [p.x, p.y], cfg, run))
    }

    pub fn eval_max(&self, p: Point2, cfg: &EscapeConfig) -> Result<GreenEstimate, GreenError> {
        let plus = self.eval(p, Direction::Forward, cfg)?;
        let minus = self.eval(p, Direction::Backward, cfg)?;
        Ok(plus.max(&minus))
    }

    pub fn trace(
        &self,
        p: Point2,
        dir: Direction,
        cfg: &EscapeConfig,
        extra_depths: usize,
    ) -> Result<(GreenEstimate, Vec<TraceStep>), GreenError> {
        cfg.validate()?;
        check_point(p)?;
        let mut steps = Vec::new();
        let run = Run {
            extra_depths: Some(extra_depths),
            trace: Some(&mut steps),
        };
        let est = escape(&self.dynamics(dir, cfg), [p.x, p.y], cfg, run);
        Ok((est, steps))
    }
}

pub fn green_poly(poly: &Poly, z: Complex64, cfg: &EscapeConfig) -> Result<GreenEstimate, GreenError> {
    PolyGreen::new(poly.clone())?.eval(z, cfg)
}

/// Rejects non-regular maps.
pub fn green_endo(h: &RegularEndo, p: Point2, cfg: &EscapeConfig) -> Result<GreenEstimate, GreenError> {
    EndoGreen::new(h.clone())?.eval(p, cfg)
}

pub fn green_henon(f: &HenonMap, p: Point2, dir: Direction, cfg: &EscapeConfig) -> Result<GreenEstimate, GreenError> {
    HenonGreen::new(f.clone()).eval(p, dir, cfg)
}

pub fn green_henon_max(f: &HenonMap, p: Point2, cfg: &EscapeConfig) -> Result<GreenEstimate, GreenError> {
    HenonGreen::new(f.clone()).eval_max(p, cfg)
}

/// Escape rate `G_i` of the `i`-th marked critical point (1-based).
pub fn green_activity(
    param: &DegreeDFamilyParam,
    i: usize,
    cfg: &EscapeConfig,
) -> Result<GreenEstimate, GreenError> {
    let crit = param.critical_points();
    if i == 0 || i > crit.len() {
        return Err(GreenError::CriticalIndex {
            index: i,
            count: crit.len(),
        });
    }
    PolyGreen::new(param.poly())?.eval(crit[i - 1], cfg)
}

/// `G_bif = max(d G_1, G_2, ..., G_{d-1})`.
pub fn green_bif(param: &DegreeDFamilyParam, cfg: &EscapeConfig) -> Result<GreenEstimate, GreenError> {
    let g = PolyGreen::new(param.poly())?;
    let d = param.degree() as f64;
    let mut acc: Option<GreenEstimate> = None;
    for (k, c) in param.critical_points().into_iter().enumerate() {
        let mut e = g.eval(c, cfg)?;
        if k == 0 {
            e = e.scaled(d);
        }
        acc = Some(match acc {
            Some(a) => a.max(&e),
            None => e,
        });
    }
    Ok(acc.expect("family has at least two critical points"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn half_henon() -> HenonMap {
        HenonMap::single(Poly::from_real(&[0.0, 0.0, 1.0]), c(0.5, 0.0)).unwrap()
    }

    #[test]
    fn power_map_closed_form() {
        let h = RegularEndo::power(2).unwrap();
        let cfg = EscapeConfig::default();
        let g = green_endo(&h, Point2::real(2.0, 0.5), &cfg).unwrap();
        assert!((g.value - 2f64.ln()).abs() < 1e-12);
        assert!(g.escaped);
        assert!(g.error_bound <= 1e-9);
        let g = green_endo(&h, Point2::real(1.0, 1.0), &cfg).unwrap();
        assert!(g.value <= g.error_bound);
    }

    #[test]
    fn bounded_orbit_reports_documented_bound() {
        let h = RegularEndo::power(2).unwrap();
        let cfg = EscapeConfig {
            max_iters: 40,
            ..EscapeConfig::default()
        };
        let g = green_endo(&h, Point2::real(0.5, 0.25), &cfg).unwrap();
        assert_eq!(g.value, 0.0);
        assert!(!g.escaped);
        assert_eq!(g.iterations_used, 40);
        // R = 4 and no growth excess for the exact power map
        assert_eq!(g.tail_bound, 4f64.ln() * 2f64.powi(-40));
    }

    #[test]
    fn non_regular_is_rejected() {
        let p = Poly2::from_terms(&[(2, 0, c(1.0, 0.0))]).unwrap();
        let q = Poly2::from_terms(&[(1, 1, c(1.0, 0.0))]).unwrap();
        let h = RegularEndo::new(p, q).unwrap();
        assert_eq!(
            green_endo(&h, Point2::real(1.0, 1.0), &EscapeConfig::default()),
            Err(GreenError::NotRegular)
        );
    }

    #[test]
    fn henon_fixed_point_has_zero_green() {
        let f = half_henon();
        let cfg = EscapeConfig::default();
        for dir in [Direction::Forward, Direction::Backward] {
            let g = green_henon(&f, Point2::ORIGIN, dir, &cfg).unwrap();
            assert_eq!(g.value, 0.0);
            assert!(!g.escaped);
        }
        assert_eq!(green_henon_max(&f, Point2::ORIGIN, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn tail_shrinks_by_degree_each_step() {
        let f = half_henon();
        let hg = HenonGreen::new(f);
        let cfg = EscapeConfig::default();
        let (_, steps) = hg.trace(Point2::real(0.3, 5.0), Direction::Forward, &cfg, 10).unwrap();
        assert_eq!(steps.len(), 11);
        for w in steps.windows(2) {
            assert!(w[1].ln_tail_bound <= w[0].ln_tail_bound - 2f64.ln() + 1e-12);
        }
    }

    #[test]
    fn offset_interval_contains_true_offset() {
        // |z^2 + 1| / |z|^2 at |z| = 3 lies in [8/9, 10/9]
        let o = offset(1.0, 1.0, 1.0, 3f64.ln());
        let half = o.ln_half.exp();
        assert!(o.mid - half <= (8.0f64 / 9.0).ln());
        assert!(o.mid + half >= (10.0f64 / 9.0).ln());
    }

    #[test]
    fn activity_index_checked() {
        let p = DegreeDFamilyParam::cubic(c(0.0, 0.0), c(0.0, 0.0));
        let cfg = EscapeConfig::default();
        assert!(matches!(green_activity(&p, 0, &cfg), Err(GreenError::CriticalIndex { .. })));
        assert!(matches!(green_activity(&p, 3, &cfg), Err(GreenError::CriticalIndex { .. })));
        assert_eq!(green_activity(&p, 2, &cfg).unwrap().value, 0.0);
        assert_eq!(green_bif(&p, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn rejects_bad_config() {
        let h = RegularEndo::power(2).unwrap();
        let cfg = EscapeConfig {
            escape_radius: 0.5,
            ..EscapeConfig::default()
        };
        assert!(matches!(green_endo(&h, Point2::ORIGIN, &cfg), Err(GreenError::Config(_))));
    }
}
