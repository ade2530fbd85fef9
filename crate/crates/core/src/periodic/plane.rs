use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PeriodicError, PeriodicPoint, Stability};
use crate::linalg::{eigenvalues2, mat2_mul, DenseMatrix, Mat2, IDENTITY2};
use crate::par;
use crate::systems::{HenonMap, PlaneMap, Point2, RegularEndo};

/// Largest period accepted for Hénon maps.
pub const MAX_HENON_PERIOD: usize = 6;
/// Largest `D^n` accepted for endomorphisms (`D^(2n)` points).
pub const MAX_ENDO_ROOTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonConfig {
    /// Number of random seeds drawn in the search bidisk.
    pub seeds: usize,
    pub max_steps: usize,
    /// Seeds are drawn from ChaCha8 with this key and the seed index as stream.
    pub rng_seed: u64,
    /// Max-norm distance under which two solutions are merged.
    pub dedup_tol: f64,
    /// Residual a polished solution must reach to be reported.
    pub accept_residual: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            seeds: 4096,
            max_steps: 60,
            rng_seed: 0,
            dedup_tol: 1e-8,
            accept_residual: 1e-10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneSolutions {
    /// Sorted lexicographically by `(re x, im x, re y, im y)`.
    pub points: Vec<PeriodicPoint<Point2>>,
    /// Seeds whose Newton run stalled with a small but unacceptable residual.
    pub unresolved: usize,
    /// Singular Jacobians met and retried with a perturbed iterate.
    pub singular_retries: usize,
    pub seeds_tried: usize,
}

enum Outcome {
    Root(Point2),
    Stalled,
    Lost,
}

/// `f^n(p)` and `D(f^n)(p)`.
fn iterate_with_jacobian<M: PlaneMap>(map: &M, p: Point2, n: usize) -> (Point2, Mat2) {
    let mut q = p;
    let mut jac = IDENTITY2;
    for _ in 0..n {
        jac = mat2_mul(&map.jacobian(q), &jac);
        q = map.apply(q);
    }
    (q, jac)
}

fn random_point(rng: &mut ChaCha8Rng, radius: f64) -> Point2 {
    let mut coord = || {
        let r = radius * rng.random::<f64>().sqrt();
        Complex64::from_polar(r, std::f64::consts::TAU * rng.random::<f64>())
    };
    let x = coord();
    let y = coord();
    Point2::new(x, y)
}

fn shooting_residual<M: PlaneMap>(map: &M, z: &[Point2]) -> (Vec<Complex64>, f64) {
    let n = z.len();
    let mut f = Vec::with_capacity(2 * n);
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let d = map.apply(z[k]) - z[(k + 1) % n];
        worst = worst.max(d.norm_max());
        f.push(d.x);
        f.push(d.y);
    }
    (f, worst)
}

/// Multiple-shooting Newton for the cycle equations `f(z_k) = z_{k+1}`.
fn shoot<M: PlaneMap>(map: &M, n: usize, radius: f64, cfg: &NewtonConfig, rng: &mut ChaCha8Rng) -> (Outcome, usize) {
    let mut z = Vec::with_capacity(n);
    z.push(random_point(rng, radius));
    for k in 1..n {
        let next = map.apply(z[k - 1]);
        z.push(if next.is_finite() && next.norm_max() <= radius {
            next
        } else {
            random_point(rng, radius)
        });
    }
    let mut retries = 0;
    let (mut f, mut res) = shooting_residual(map, &z);
    for _ in 0..cfg.max_steps {
        let scale = 1.0 + z.iter().map(Point2::norm_max).fold(0.0, f64::max);
        if res <= 1e-13 * scale {
            break;
        }
        let mut jm = DenseMatrix::zeros(2 * n);
        for k in 0..n {
            let j = map.jacobian(z[k]);
            let next = (k + 1) % n;
            for a in 0..2 {
                for b in 0..2 {
                    let v = jm.get(2 * k + a, 2 * k + b) + j[a][b];
                    jm.set(2 * k + a, 2 * k + b, v);
                }
                let v = jm.get(2 * k + a, 2 * next + a) - 1.0;
                jm.set(2 * k + a, 2 * next + a, v);
            }
        }
        let rhs: Vec<Complex64> = f.iter().map(|v| -v).collect();
        let Some(delta) = jm.solve(&rhs) else {
            if retries >= 3 {
                return (Outcome::Lost, retries);
            }
            retries += 1;
            for zk in z.iter_mut() {
                *zk = *zk + random_point(rng, 1e-3 * radius);
            }
            (f, res) = shooting_residual(map, &z);
            continue;
        };
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let trial: Vec<Point2> = z
                .iter()
                .enumerate()
                .map(|(k, zk)| *zk + Point2::new(delta[2 * k], delta[2 * k + 1]) * t)
                .collect();
            let (tf, tres) = shooting_residual(map, &trial);
            if tres.is_finite() && tres < res {
                z = trial;
                f = tf;
                res = tres;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted || z.iter().any(|zk| !zk.is_finite() || zk.norm_max() > 4.0 * radius) {
            return (Outcome::Lost, retries);
        }
    }
    let p = polish(map, z[0], n);
    let (q, _) = iterate_with_jacobian(map, p, n);
    let residual = q.dist_max(&p);
    if residual <= cfg.accept_residual {
        (Outcome::Root(p), retries)
    } else if residual <= 1e-6 {
        (Outcome::Stalled, retries)
    } else {
        (Outcome::Lost, retries)
    }
}

/// Single-shooting Newton on `f^n(p) - p`, stopping when the residual no
/// longer decreases.
fn polish<M: PlaneMap>(map: &M, p0: Point2, n: usize) -> Point2 {
    let mut p = p0;
    let (q, mut jac) = iterate_with_jacobian(map, p, n);
    let mut res = q.dist_max(&p);
    let mut g = q - p;
    for _ in 0..8 {
        if res == 0.0 {
            break;
        }
        jac[0][0] -= 1.0;
        jac[1][1] -= 1.0;
        let m = DenseMatrix::from_rows(&[jac[0].to_vec(), jac[1].to_vec()]);
        let Some(d) = m.solve(&[-g.x, -g.y]) else {
            break;
        };
        let cand = p + Point2::new(d[0], d[1]);
        let (cq, cjac) = iterate_with_jacobian(map, cand, n);
        let cres = cq.dist_max(&cand);
        if !(cres < res) {
            break;
        }
        p = cand;
        res = cres;
        g = cq - cand;
        jac = cjac;
    }
    p
}

fn minimal_period<M: PlaneMap>(map: &M, p: Point2, n: usize) -> usize {
    let mut q = p;
    for k in 1..n {
        q = map.apply(q);
        if n % k == 0 && q.dist_max(&p) <= 1e-8 * (1.0 + p.norm_max()) {
            return k;
        }
    }
    n
}

/// Period-`n` points of a plane map by multiple-shooting Newton from random
/// seeds in the bidisk of radius `search_radius`.
///
/// There is no completeness certificate: points whose Newton basins the
/// seeds miss are absent. Every found point's cycle is added whole, and the
/// merge runs in seed order, so the output does not depend on the worker
/// count.
pub fn periodic_points_plane<M: PlaneMap>(
    map: &M,
    n: usize,
    search_radius: f64,
    cfg: &NewtonConfig,
) -> Result<PlaneSolutions, PeriodicError> {
    if n == 0 {
        return Err(PeriodicError::ZeroPeriod);
    }
    let needed = map.trapping_radius();
    if !(search_radius >= needed) {
        return Err(PeriodicError::SearchRadius {
            given: search_radius,
            needed,
        });
    }
    let outcomes = par::map_range(cfg.seeds, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        rng.set_stream(i as u64);
        shoot(map, n, search_radius, cfg, &mut rng)
    });
    let mut found: Vec<Point2> = Vec::new();
    let mut unresolved = 0;
    let mut singular_retries = 0;
    for (outcome, retries) in &outcomes {
        singular_retries += retries;
        match outcome {
            Outcome::Root(p) => {
                let period = minimal_period(map, *p, n);
                let mut q = *p;
                for _ in 0..period {
                    if !found.iter().any(|f| f.dist_max(&q) <= cfg.dedup_tol) {
                        found.push(polish(map, q, n));
                    }
                    q = map.apply(q);
                }
            }
            Outcome::Stalled => unresolved += 1,
            Outcome::Lost => {}
        }
    }
    let mut points: Vec<PeriodicPoint<Point2>> = par::map_slice(&found, |&p| {
        let (q, jac) = iterate_with_jacobian(map, p, n);
        let multipliers = eigenvalues2(&jac).to_vec();
        PeriodicPoint {
            location: p,
            period: minimal_period(map, p, n),
            stability: Stability::classify(&multipliers),
            multipliers,
            residual: q.dist_max(&p),
            multiplicity: 1,
        }
    });
    points.retain(|p| p.residual <= cfg.accept_residual);
    points.sort_by(|a, b| a.location.lex_cmp(&b.location));
    Ok(PlaneSolutions {
        points,
        unresolved,
        singular_retries,
        seeds_tried: cfg.seeds,
    })
}

/// Period-`n` points of a Hénon map; `n <= 6`.
pub fn periodic_points_henon(
    f: &HenonMap,
    n: usize,
    search_radius: f64,
    cfg: &NewtonConfig,
) -> Result<PlaneSolutions, PeriodicError> {
    if n > MAX_HENON_PERIOD {
        return Err(PeriodicError::PeriodCap {
            period: n,
            cap: MAX_HENON_PERIOD,
        });
    }
    periodic_points_plane(f, n, search_radius, cfg)
}

/// Period-`n` points of a regular endomorphism; requires `D^n <= 64`.
pub fn periodic_points_endo2(
    h: &RegularEndo,
    n: usize,
    search_radius: f64,
    cfg: &NewtonConfig,
) -> Result<PlaneSolutions, PeriodicError> {
    let d = h.degree();
    let within = u32::try_from(n)
        .ok()
        .and_then(|e| d.checked_pow(e))
        .is_some_and(|t| t <= MAX_ENDO_ROOTS);
    if !within {
        return Err(PeriodicError::CapExceeded {
            degree: d,
            period: n,
            cap: MAX_ENDO_ROOTS,
        });
    }
    if !h.trapping_radius().is_finite() {
        return Err(PeriodicError::NotRegular);
    }
    periodic_points_plane(h, n, search_radius, cfg)
}
