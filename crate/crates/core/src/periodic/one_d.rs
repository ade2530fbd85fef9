use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{PeriodicError, PeriodicPoint, Stability};
use crate::ext::ExtComplex;
use crate::green::PolyGreen;
use crate::par;
use crate::poly::Poly;

/// Largest number of roots `deg^n` the one-variable solver accepts.
pub const MAX_1D_DEGREE: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AberthConfig {
    pub max_sweeps: usize,
    /// A root is frozen once its correction is below `step_tol (1 + |z|)`.
    pub step_tol: f64,
    /// Roots closer than `cluster_tol (1 + |z|)` are merged.
    pub cluster_tol: f64,
    /// Tolerance for deciding that a proper divisor of `n` is a period.
    pub period_tol: f64,
}

impl Default for AberthConfig {
    fn default() -> Self {
        Self {
            max_sweeps: 2000,
            step_tol: 1e-14,
            cluster_tol: 1e-7,
            period_tol: 1e-8,
        }
    }
}

/// `P^n(z) - z` and its derivative, as the Newton ratio `F / F'`.
fn newton_ratio(poly: &Poly, n: usize, z: Complex64) -> Complex64 {
    let (mut w, mut dw) = (z, Complex64::new(1.0, 0.0));
    for _ in 0..n {
        let (p, dp) = poly.eval_with_derivative(w);
        dw *= dp;
        w = p;
    }
    let big = w.norm().max(dw.norm());
    if big.is_finite() && big < 1e150 {
        return (w - z) / (dw - 1.0);
    }
    let (mut w, mut dw) = (ExtComplex::new(z), ExtComplex::new(Complex64::new(1.0, 0.0)));
    for _ in 0..n {
        let (p, dp) = poly.eval_with_derivative(w);
        dw = dw * dp;
        w = p;
    }
    let one = ExtComplex::new(Complex64::new(1.0, 0.0));
    (w - ExtComplex::new(z)).div(dw - one).to_c64()
}

fn orbit_value(poly: &Poly, n: usize, z: Complex64) -> (Complex64, Complex64) {
    let (mut w, mut dw) = (z, Complex64::new(1.0, 0.0));
    for _ in 0..n {
        let (p, dp) = poly.eval_with_derivative(w);
        dw *= dp;
        w = p;
    }
    (w, dw)
}

/// All solutions of `P^n(z) = z` by Aberth–Ehrlich simultaneous iteration
/// on the iterated polynomial, evaluated along orbits.
///
/// Roots that coalesce within the cluster tolerance are reported once with
/// their multiplicity, so multiplicities always sum to `deg^n`. Output is
/// sorted by `(re, im)`.
pub fn periodic_points_1d(
    poly: &Poly,
    n: usize,
    cfg: &AberthConfig,
) -> Result<Vec<PeriodicPoint<Complex64>>, PeriodicError> {
    if n == 0 {
        return Err(PeriodicError::ZeroPeriod);
    }
    let d = poly.degree();
    if d < 2 {
        return Err(PeriodicError::LowDegree);
    }
    let cap_err = PeriodicError::CapExceeded {
        degree: d,
        period: n,
        cap: MAX_1D_DEGREE,
    };
    let total = u32::try_from(n)
        .ok()
        .and_then(|e| d.checked_pow(e))
        .filter(|&t| t <= MAX_1D_DEGREE)
        .ok_or(cap_err)?;
    let roots = aberth(poly, n, total, cfg)?;
    let clusters = cluster(&roots, cfg.cluster_tol);
    let mut out = par::map_slice(&clusters, |members| {
        let mut z = members.iter().map(|&k| roots[k]).sum::<Complex64>() / members.len() as f64;
        if members.len() == 1 {
            z = polish(poly, n, z);
        }
        let (w, dw) = orbit_value(poly, n, z);
        let period = minimal_period(poly, n, z, cfg.period_tol);
        PeriodicPoint {
            location: z,
            period,
            multipliers: vec![dw],
            stability: Stability::classify(&[dw]),
            residual: (w - z).norm(),
            multiplicity: members.len(),
        }
    });
    out.sort_by(|a, b| {
        a.location
            .re
            .total_cmp(&b.location.re)
            .then(a.location.im.total_cmp(&b.location.im))
    });
    Ok(out)
}

fn aberth(poly: &Poly, n: usize, total: usize, cfg: &AberthConfig) -> Result<Vec<Complex64>, PeriodicError> {
    // Start on the circle of the filled Julia set's capacity, clipped to the
    // escape disk that contains every bounded orbit.
    let escape = PolyGreen::new(poly.clone())
        .map_err(|_| PeriodicError::LowDegree)?
        .escape_radius();
    let capacity = poly.leading().norm().powf(-1.0 / (poly.degree() as f64 - 1.0));
    let radius = capacity.min(escape);
    let mut z: Vec<Complex64> = (0..total)
        .map(|k| Complex64::from_polar(radius, TAU * (k as f64 + 0.25) / total as f64 + 0.4))
        .collect();
    let mut done = vec![false; total];
    for _ in 0..cfg.max_sweeps {
        let snapshot = &z;
        let flags = &done;
        let updates = par::map_range(total, |k| {
            if flags[k] {
                return None;
            }
            let zk = snapshot[k];
            let r = newton_ratio(poly, n, zk);
            if r == Complex64::new(0.0, 0.0) {
                return Some((Complex64::new(0.0, 0.0), true));
            }
            let s: Complex64 = snapshot
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &zj)| (zk - zj).inv())
                .sum();
            let denom = Complex64::new(1.0, 0.0) - r * s;
            let w = if denom.norm() > 0.0 && (r / denom).is_finite() {
                r / denom
            } else {
                r
            };
            let conv = w.norm() <= cfg.step_tol * (1.0 + zk.norm());
            Some((w, conv))
        });
        for (k, u) in updates.into_iter().enumerate() {
            if let Some((w, conv)) = u {
                z[k] -= w;
                done[k] = conv;
            }
        }
        if done.iter().all(|&f| f) {
            return Ok(z);
        }
    }
    let unconverged = done.iter().filter(|&&f| !f).count();
    // linear convergence at multiple roots stalls above the step tolerance;
    // accept if every stalled root already has a tiny residual
    let stalled_ok = (0..total).filter(|&k| !done[k]).all(|k| {
        let (w, _) = orbit_value(poly, n, z[k]);
        (w - z[k]).norm() <= 1e-6 * (1.0 + z[k].norm())
    });
    if stalled_ok {
        Ok(z)
    } else {
        Err(PeriodicError::NoConvergence {
            sweeps: cfg.max_sweeps,
            unconverged,
        })
    }
}

/// Single-linkage clusters of indices; output ordered by first member.
fn cluster(roots: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let n = roots.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| roots[a].re.total_cmp(&roots[b].re));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (pos, &a) in order.iter().enumerate() {
        for &b in &order[pos + 1..] {
            let window = tol * (1.0 + roots[a].norm().max(roots[b].norm()));
            if roots[b].re - roots[a].re > window {
                break;
            }
            if (roots[a] - roots[b]).norm() <= window {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn polish(poly: &Poly, n: usize, z0: Complex64) -> Complex64 {
    let residual = |z: Complex64| (orbit_value(poly, n, z).0 - z).norm();
    let mut z = z0;
    let mut best = residual(z);
    for _ in 0..4 {
        let cand = z - newton_ratio(poly, n, z);
        let r = residual(cand);
        if !(r < best) {
            break;
        }
        z = cand;
        best = r;
    }
    z
}

fn minimal_period(poly: &Poly, n: usize, z: Complex64, tol: f64) -> usize {
    let mut w = z;
    for k in 1..n {
        w = poly.eval(w);
        if n % k == 0 && (w - z).norm() <= tol * (1.0 + z.norm()) {
            return k;
        }
    }
    n
}
