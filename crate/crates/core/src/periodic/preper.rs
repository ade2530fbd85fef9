use num_complex::Complex64;

use crate::green::{EndoGreen, EscapeConfig, GreenError, PolyGreen};
use crate::linalg::{eigenvalues2, mat2_mul, IDENTITY2};
use crate::systems::{PlaneMap, Point2};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PreperConfig {
    /// Number of orbit steps examined.
    pub horizon: usize,
    /// Relative closeness `tol (1 + |z_i|)` for an orbit to count as closed.
    pub tol: f64,
    pub escape: EscapeConfig,
}

impl Default for PreperConfig {
    fn default() -> Self {
        Self {
            horizon: 64,
            tol: 1e-9,
            escape: EscapeConfig::default(),
        }
    }
}

/// Numerical orbit type. Nothing here is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PreperVerdict {
    /// The orbit lands on a cycle of length `period` after `tail` steps and
    /// closes up again for three more loops.
    Preperiodic { tail: usize, period: usize },
    /// The Green function is positive beyond its error bound.
    Escaping,
    /// The orbit converges to an attracting cycle of this length without
    /// landing on it: the approach distances keep shrinking right up to the
    /// point where they fall below the tolerance.
    Attracted { period: usize },
    Undecided,
}

impl PreperVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            PreperVerdict::Preperiodic { .. } => "preperiodic",
            PreperVerdict::Escaping => "escaping",
            PreperVerdict::Attracted { .. } => "attracted",
            PreperVerdict::Undecided => "undecided",
        }
    }
}

const VERIFY_LOOPS: usize = 3;
/// Largest approach distance, relative to the orbit scale, still read as
/// convergence towards the cycle rather than an exact landing.
const APPROACH_TOL: f64 = 1e-2;

fn classify_orbit<P>(
    orbit: &[P],
    tol: f64,
    dist: impl Fn(&P, &P) -> f64,
    norm: impl Fn(&P) -> f64,
    cycle_radius: impl Fn(&[P]) -> f64,
) -> PreperVerdict {
    let h = orbit.len() - 1;
    let close = |a: usize, b: usize| dist(&orbit[a], &orbit[b]) <= tol * (1.0 + norm(&orbit[b]));
    for j in 1..=h {
        let Some(i) = (0..j).find(|&i| close(j, i)) else {
            continue;
        };
        let m = j - i;
        if i + (VERIFY_LOOPS + 1) * m > h {
            return PreperVerdict::Undecided;
        }
        if !(i..i + VERIFY_LOOPS * m).all(|t| close(t + m, t)) {
            continue;
        }
        let gap = |t: usize| dist(&orbit[t + m], &orbit[t]);
        let scale = 1.0 + norm(&orbit[i]);
        let approaching = i >= 1
            && gap(i - 1) <= APPROACH_TOL * scale
            && (i < 2 || gap(i - 2) > gap(i - 1))
            && cycle_radius(&orbit[i..i + m]) < 1.0;
        return if approaching {
            PreperVerdict::Attracted { period: m }
        } else {
            PreperVerdict::Preperiodic { tail: i, period: m }
        };
    }
    PreperVerdict::Undecided
}

/// Orbit type of `p` under a regular endomorphism.
pub fn preperiodicity_endo(g: &EndoGreen, p: Point2, cfg: &PreperConfig) -> Result<PreperVerdict, GreenError> {
    let est = g.eval(p, &cfg.escape)?;
    if est.value > est.error_bound {
        return Ok(PreperVerdict::Escaping);
    }
    let h = g.map();
    let mut orbit = Vec::with_capacity(cfg.horizon + 1);
    orbit.push(p);
    for k in 0..cfg.horizon {
        orbit.push(h.apply(orbit[k]));
    }
    if orbit.iter().any(|q| !q.is_finite()) {
        return Ok(PreperVerdict::Undecided);
    }
    Ok(classify_orbit(
        &orbit,
        cfg.tol,
        |a, b| a.dist_max(b),
        Point2::norm_max,
        |cycle| {
            let jac = cycle
                .iter()
                .fold(IDENTITY2, |acc, q| mat2_mul(&h.jacobian(*q), &acc));
            eigenvalues2(&jac)[0].norm()
        },
    ))
}

/// Orbit type of `z` under a one-variable polynomial.
pub fn preperiodicity_poly(g: &PolyGreen, z: Complex64, cfg: &PreperConfig) -> Result<PreperVerdict, GreenError> {
    let est = g.eval(z, &cfg.escape)?;
    if est.value > est.error_bound {
        return Ok(PreperVerdict::Escaping);
    }
    let poly = g.poly();
    let dpoly = poly.derivative();
    let mut orbit = Vec::with_capacity(cfg.horizon + 1);
    orbit.push(z);
    for k in 0..cfg.horizon {
        orbit.push(poly.eval(orbit[k]));
    }
    Ok(classify_orbit(
        &orbit,
        cfg.tol,
        |a, b| (a - b).norm(),
        |a| a.norm(),
        |cycle| cycle.iter().map(|w| dpoly.eval(*w).norm()).product(),
    ))
}
