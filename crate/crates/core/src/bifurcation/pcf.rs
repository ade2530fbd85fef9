use num_complex::Complex64;

use super::BifError;
use crate::green::{green_bif, EscapeConfig, GreenEstimate};
use crate::linalg::DenseMatrix;
use crate::par;
use crate::periodic::MeasureSample;
use crate::systems::DegreeDFamilyParam;

/// Largest total orbit length `n + m` accepted per critical point.
pub const MAX_ORBIT_LENGTH: usize = 12;

/// One `(n_i, m_i)` per marked critical point: `P^(n+m)(c_i) = P^n(c_i)`.
pub type Combinatorics = Vec<(usize, usize)>;

#[derive(Clone, Debug, PartialEq)]
pub struct PcfSolution {
    pub param: DegreeDFamilyParam,
    pub combinatorics: Combinatorics,
    /// Max modulus of the residual vector.
    pub residual: f64,
    /// Determinant of the Jacobian of the residual map.
    pub transversality_det: Complex64,
    pub transverse: bool,
    /// Max-norm radius around `param` expected to contain the exact root.
    /// Tiny for simple roots; near a multiple root Newton converges only
    /// linearly and the radius is a few final step lengths.
    pub uncertainty: f64,
    /// `G_bif` at the parameter.
    pub green_bif: GreenEstimate,
}

/// Axis-aligned box in parameter space `(x_1, ..., x_{d-2}, y)`, sampled by
/// a lattice with `per_axis` nodes along each real axis of positive width.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedBox {
    pub lower: Vec<Complex64>,
    pub upper: Vec<Complex64>,
    pub per_axis: usize,
}

impl SeedBox {
    /// The box `|re|, |im| <= half_width` in every coordinate.
    pub fn centered(d: usize, half_width: f64, per_axis: usize) -> Self {
        let n = d - 1;
        Self {
            lower: vec![Complex64::new(-half_width, -half_width); n],
            upper: vec![Complex64::new(half_width, half_width); n],
            per_axis,
        }
    }

    fn axes(&self) -> Vec<(f64, f64)> {
        self.lower
            .iter()
            .zip(&self.upper)
            .flat_map(|(lo, hi)| [(lo.re, hi.re), (lo.im, hi.im)])
            .collect()
    }

    /// Lattice nodes in row-major order over the real axes.
    pub fn seeds(&self) -> Vec<Vec<Complex64>> {
        let axes = self.axes();
        let counts: Vec<usize> = axes
            .iter()
            .map(|(lo, hi)| if hi > lo { self.per_axis.max(1) } else { 1 })
            .collect();
        let total: usize = counts.iter().product();
        (0..total)
            .map(|mut idx| {
                let mut reals = vec![0.0; axes.len()];
                for a in (0..axes.len()).rev() {
                    let k = idx % counts[a];
                    idx /= counts[a];
                    let (lo, hi) = axes[a];
                    reals[a] = if counts[a] == 1 {
                        lo
                    } else {
                        lo + (hi - lo) * k as f64 / (counts[a] - 1) as f64
                    };
                }
                reals.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
            })
            .collect()
    }

    fn validate(&self, d: usize) -> Result<(), BifError> {
        if self.lower.len() != d - 1 || self.upper.len() != d - 1 {
            return Err(BifError::SeedBox("dimension must be d - 1"));
        }
        if self.axes().iter().any(|(lo, hi)| !(lo <= hi) || !lo.is_finite() || !hi.is_finite()) {
            return Err(BifError::SeedBox("lower corner must not exceed upper corner"));
        }
        if self.per_axis == 0 {
            return Err(BifError::SeedBox("per_axis must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PcfConfig {
    /// Residual a solution must reach.
    pub tol: f64,
    pub max_steps: usize,
    /// Max-norm distance under which parameters are merged.
    pub dedup_tol: f64,
    /// Transverse iff `|det| > det_rel_tol * prod(row norms)`.
    pub det_rel_tol: f64,
    pub escape: EscapeConfig,
}

impl Default for PcfConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_steps: 100,
            dedup_tol: 1e-8,
            det_rel_tol: 1e-6,
            escape: EscapeConfig::default(),
        }
    }
}

fn check_combinatorics(d: usize, comb: &[(usize, usize)]) -> Result<(), BifError> {
    if comb.len() != d - 1 {
        return Err(BifError::CombinatoricsLength {
            expected: d - 1,
            got: comb.len(),
        });
    }
    for &(n, m) in comb {
        if m == 0 {
            return Err(BifError::ZeroCycle);
        }
        if n + m > MAX_ORBIT_LENGTH {
            return Err(BifError::OrbitCap(n + m));
        }
    }
    Ok(())
}

/// `P^(n_i + m_i)(c_i) - P^(n_i)(c_i)` for each marked critical point.
pub fn pcf_residual(param: &DegreeDFamilyParam, comb: &[(usize, usize)]) -> Result<Vec<Complex64>, BifError> {
    check_combinatorics(param.degree(), comb)?;
    let poly = param.poly();
    Ok(param
        .critical_points()
        .into_iter()
        .zip(comb)
        .map(|(c, &(n, m))| {
            let mut g = c;
            let mut at_n = c;
            for k in 0..n + m {
                if k == n {
                    at_n = g;
                }
                g = poly.eval(g);
            }
            g - at_n
        })
        .collect())
}

/// Residual vector and its Jacobian with respect to `(x_1, ..., y)`, by
/// forward-mode differentiation along each critical orbit.
pub fn pcf_jacobian(
    param: &DegreeDFamilyParam,
    comb: &[(usize, usize)],
) -> Result<(Vec<Complex64>, DenseMatrix), BifError> {
    check_combinatorics(param.degree(), comb)?;
    let poly = param.poly();
    let dpoly = poly.derivative();
    let partials = param.param_partials();
    let dim = param.degree() - 1;
    let mut jac = DenseMatrix::zeros(dim);
    let mut res = Vec::with_capacity(dim);
    for (i, (c, &(n, m))) in param.critical_points().into_iter().zip(comb).enumerate() {
        let mut g = c;
        let mut grad = param.critical_point_gradient(i + 1);
        let (mut g_n, mut grad_n) = (g, grad.clone());
        for k in 0..n + m {
            if k == n {
                g_n = g;
                grad_n = grad.clone();
            }
            let dp = dpoly.eval(g);
            grad = grad
                .iter()
                .zip(&partials)
                .map(|(gl, pl)| dp * gl + pl.eval(g))
                .collect();
            g = poly.eval(g);
        }
        res.push(g - g_n);
        for l in 0..dim {
            jac.set(i, l, grad[l] - grad_n[l]);
        }
    }
    Ok((res, jac))
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Largest uncertainty radius assigned to a converged root, relative to
/// `1 + |theta|`.
const MAX_UNCERTAINTY: f64 = 1e-6;

fn newton(d: usize, comb: &[(usize, usize)], seed: &[Complex64], cfg: &PcfConfig) -> Option<(Vec<Complex64>, f64)> {
    let mut theta = seed.to_vec();
    let param = DegreeDFamilyParam::from_params(d, &theta).ok()?;
    let (mut r, mut jac) = pcf_jacobian(&param, comb).ok()?;
    let mut res = max_norm(&r);
    for _ in 0..cfg.max_steps {
        if !res.is_finite() {
            return None;
        }
        // keep going past the tolerance: multiple roots converge only
        // linearly and stopping early leaves clusters of near-copies
        if res == 0.0 {
            break;
        }
        let rhs: Vec<Complex64> = r.iter().map(|v| -v).collect();
        let delta = jac.solve(&rhs)?;
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..20 {
            let trial: Vec<Complex64> = theta.iter().zip(&delta).map(|(a, b)| a + b * t).collect();
            let p = DegreeDFamilyParam::from_params(d, &trial).ok()?;
            let (tr, tj) = pcf_jacobian(&p, comb).ok()?;
            let tres = max_norm(&tr);
            if tres.is_finite() && tres < res {
                theta = trial;
                r = tr;
                jac = tj;
                res = tres;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        let step = max_norm(&delta);
        if !accepted || max_norm(&theta) > 1e3 || step <= 4.0 * f64::EPSILON * (1.0 + max_norm(&theta)) {
            break;
        }
    }
    if res > cfg.tol {
        return None;
    }
    // one more step estimates the distance to the exact root: a multiple
    // root converges linearly, each step covering a fixed fraction of it
    let cap = MAX_UNCERTAINTY * (1.0 + max_norm(&theta));
    let rhs: Vec<Complex64> = r.iter().map(|v| -v).collect();
    let param = DegreeDFamilyParam::from_params(d, &theta).ok()?;
    // residual noise pushed through J^-1 bounds how far rounding alone
    // can hide the root; it dominates where the residual cancels to zero
    let noise = 64.0 * f64::EPSILON * orbit_scale(&param, comb);
    let radius = match (jac.solve(&rhs), inverse_norm(&jac)) {
        (Some(delta), Some(inv)) => (4.0 * max_norm(&delta) + inv * noise).min(cap),
        // numerically singular: the root is multiple and its position
        // is only known to within the cap
        _ => cap,
    };
    Some((theta, radius))
}

/// Largest modulus along the marked orbits up to their relation depth.
fn orbit_scale(param: &DegreeDFamilyParam, comb: &[(usize, usize)]) -> f64 {
    let poly = param.poly();
    let mut scale = 0.0f64;
    for (c, &(n, m)) in param.critical_points().into_iter().zip(comb) {
        let mut g = c;
        scale = scale.max(g.norm());
        for _ in 0..n + m {
            g = poly.eval(g);
            scale = scale.max(g.norm());
        }
    }
    scale
}

/// Infinity norm of the inverse, column by column.
fn inverse_norm(jac: &DenseMatrix) -> Option<f64> {
    let n = jac.dim();
    let mut rows = vec![0.0; n];
    for j in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        let col = jac.solve(&e)?;
        for (acc, v) in rows.iter_mut().zip(&col) {
            *acc += v.norm();
        }
    }
    Some(rows.into_iter().fold(0.0, f64::max))
}

fn finish(d: usize, comb: &[(usize, usize)], theta: Vec<Complex64>, radius: f64, cfg: &PcfConfig) -> Result<PcfSolution, BifError> {
    let param = DegreeDFamilyParam::from_params(d, &theta)?;
    let (r, jac) = pcf_jacobian(&param, comb)?;
    let det = jac.determinant();
    let row_norms: f64 = (0..d - 1)
        .map(|i| (0..d - 1).map(|j| jac.get(i, j).norm_sqr()).sum::<f64>().sqrt())
        .product();
    Ok(PcfSolution {
        green_bif: green_bif(&param, &cfg.escape)?,
        param,
        combinatorics: comb.to_vec(),
        residual: max_norm(&r),
        transversality_det: det,
        // a root Newton cannot pin down sits on a singular Jacobian
        transverse: det.norm() > cfg.det_rel_tol * row_norms && radius <= cfg.dedup_tol,
        uncertainty: radius,
    })
}

/// Whether two roots with uncertainty radii `ra`, `rb` are the same.
fn same_param(a: &[Complex64], ra: f64, b: &[Complex64], rb: f64, tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol * (1.0 + x.norm()) + ra + rb)
}

fn lex_params(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Parameters where every marked critical point satisfies its relation,
/// by damped Newton from each node of the seed lattice.
///
/// Solutions are merged in seed order and returned sorted by parameter.
/// A singular Jacobian at a root does not drop it: it is reported with
/// `transverse = false`.
pub fn pcf_solve(
    d: usize,
    comb: &[(usize, usize)],
    seeds: &SeedBox,
    cfg: &PcfConfig,
) -> Result<Vec<PcfSolution>, BifError> {
    if d < 3 {
        return Err(crate::systems::SystemError::FamilyDegree(d).into());
    }
    check_combinatorics(d, comb)?;
    seeds.validate(d)?;
    let nodes = seeds.seeds();
    let roots = par::map_slice(&nodes, |s| newton(d, comb, s, cfg));
    // merge in seed order; a cluster keeps its best-determined member
    let mut unique: Vec<(Vec<Complex64>, f64)> = Vec::new();
    for (theta, radius) in roots.into_iter().flatten() {
        match unique.iter_mut().find(|(u, ru)| same_param(u, *ru, &theta, radius, cfg.dedup_tol)) {
            Some(slot) if radius < slot.1 => *slot = (theta, radius),
            Some(_) => {}
            None => unique.push((theta, radius)),
        }
    }
    unique.sort_by(|a, b| lex_params(&a.0, &b.0));
    unique.into_iter().map(|(t, r)| finish(d, comb, t, r, cfg)).collect()
}

/// All combinatorics with `n_i + m_i <= max_len` and `m_i >= 1`, ordered by
/// the orbit lengths first and the preperiods second.
pub fn enumerate_combinatorics(d: usize, max_len: usize) -> Vec<Combinatorics> {
    let per_point: Vec<(usize, usize)> = (1..=max_len)
        .flat_map(|len| (0..len).map(move |n| (n, len - n)))
        .collect();
    let mut all: Vec<Combinatorics> = vec![Vec::new()];
    for _ in 0..d - 1 {
        all = all
            .into_iter()
            .flat_map(|prefix| {
                per_point.iter().map(move |&pair| {
                    let mut v = prefix.clone();
                    v.push(pair);
                    v
                })
            })
            .collect();
    }
    let key = |c: &Combinatorics| {
        let mut k: Vec<usize> = c.iter().map(|&(n, m)| n + m).collect();
        k.extend(c.iter().map(|&(n, _)| n));
        k
    };
    all.sort_by_key(key);
    all
}

#[derive(Clone, Debug, PartialEq)]
pub struct PcfSample {
    /// Uniform measure on the distinct parameters found.
    pub sample: MeasureSample<DegreeDFamilyParam>,
    pub solutions: Vec<PcfSolution>,
    /// Number of new parameters contributed by each combinatorics, in
    /// enumeration order.
    pub per_combinatorics: Vec<(Combinatorics, usize)>,
}

/// Union of [`pcf_solve`] over every combinatorics with orbit lengths up to
/// `max_len`. A parameter satisfying several relations is kept once, under
/// the first combinatorics in enumeration order.
pub fn pcf_equi_sample(d: usize, max_len: usize, seeds: &SeedBox, cfg: &PcfConfig) -> Result<PcfSample, BifError> {
    if max_len == 0 {
        return Err(BifError::ZeroCycle);
    }
    if max_len > MAX_ORBIT_LENGTH {
        return Err(BifError::OrbitCap(max_len));
    }
    let mut solutions: Vec<PcfSolution> = Vec::new();
    let mut per_combinatorics = Vec::new();
    for comb in enumerate_combinatorics(d, max_len) {
        let mut added = 0;
        for s in pcf_solve(d, &comb, seeds, cfg)? {
            let theta = s.param.params();
            if !solutions
                .iter()
                .any(|u| same_param(&u.param.params(), u.uncertainty, &theta, s.uncertainty, cfg.dedup_tol))
            {
                solutions.push(s);
                added += 1;
            }
        }
        per_combinatorics.push((comb, added));
    }
    solutions.sort_by(|a, b| lex_params(&a.param.params(), &b.param.params()));
    let sample = MeasureSample::uniform(solutions.iter().map(|s| s.param.clone()).collect()).map_err(|_| BifError::Empty)?;
    Ok(PcfSample {
        sample,
        solutions,
        per_combinatorics,
    })
}
