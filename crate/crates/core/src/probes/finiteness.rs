use super::ProbeError;
use crate::green::EndoGreen;
use crate::par;
use crate::periodic::{
    periodic_points_plane, preperiodicity_endo, MeasureSample, NewtonConfig, PeriodicError, PreperConfig, PreperVerdict,
    MAX_HENON_PERIOD,
};
use crate::systems::{DegreeDFamilyParam, PlaneMap, Point2};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FinitenessConfig {
    /// Periods `1..=nmax` are enumerated.
    pub nmax: usize,
    pub newton: NewtonConfig,
    pub preper: PreperConfig,
    /// Search bidisk radius; the map's trapping radius when `None`.
    pub search_radius: Option<f64>,
}

impl Default for FinitenessConfig {
    fn default() -> Self {
        Self {
            nmax: 4,
            newton: NewtonConfig::default(),
            preper: PreperConfig::default(),
            search_radius: None,
        }
    }
}

/// A periodic point of `f` that is numerically preperiodic for `h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommonPoint {
    pub location: Point2,
    /// Minimal period under `f`.
    pub period: usize,
    /// Preperiod and cycle length under `h`.
    pub tail: usize,
    pub h_period: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommonPointsReport {
    pub common: Vec<CommonPoint>,
    /// Periodic points whose `h`-orbit type could not be decided.
    pub undecided: Vec<Point2>,
    pub escaping: usize,
    pub attracted: usize,
    /// Distinct periodic points of `f` examined, all periods merged.
    pub periodic_count: usize,
    pub unresolved_seeds: usize,
}

/// Distinct periodic points of periods `1..=nmax`, sorted, with minimal periods.
fn periodic_union<M: PlaneMap>(f: &M, cfg: &FinitenessConfig) -> Result<(Vec<(Point2, usize)>, usize), ProbeError> {
    if cfg.nmax > MAX_HENON_PERIOD {
        return Err(PeriodicError::PeriodCap {
            period: cfg.nmax,
            cap: MAX_HENON_PERIOD,
        }
        .into());
    }
    let radius = cfg.search_radius.unwrap_or_else(|| f.trapping_radius());
    let mut all: Vec<(Point2, usize)> = Vec::new();
    let mut unresolved = 0;
    for n in 1..=cfg.nmax {
        let sol = periodic_points_plane(f, n, radius, &cfg.newton)?;
        unresolved += sol.unresolved;
        for p in sol.points {
            if !all.iter().any(|(q, _)| q.dist_max(&p.location) <= cfg.newton.dedup_tol) {
                all.push((p.location, p.period));
            }
        }
    }
    all.sort_by(|a, b| a.0.lex_cmp(&b.0));
    Ok((all, unresolved))
}

/// Periodic points of `f` (periods up to `nmax`) that are preperiodic for `h`.
///
/// Works for any plane map, so `f` and its inverse can be probed alike.
pub fn common_points_probe<M: PlaneMap>(
    f: &M,
    h: &EndoGreen,
    cfg: &FinitenessConfig,
) -> Result<CommonPointsReport, ProbeError> {
    let (points, unresolved_seeds) = periodic_union(f, cfg)?;
    let verdicts = par::map_slice(&points, |(p, _)| preperiodicity_endo(h, *p, &cfg.preper));
    let mut report = CommonPointsReport {
        common: Vec::new(),
        undecided: Vec::new(),
        escaping: 0,
        attracted: 0,
        periodic_count: points.len(),
        unresolved_seeds,
    };
    for ((p, period), verdict) in points.iter().zip(verdicts) {
        match verdict? {
            PreperVerdict::Preperiodic { tail, period: h_period } => report.common.push(CommonPoint {
                location: *p,
                period: *period,
                tail,
                h_period,
            }),
            PreperVerdict::Escaping => report.escaping += 1,
            PreperVerdict::Attracted { .. } => report.attracted += 1,
            PreperVerdict::Undecided => report.undecided.push(*p),
        }
    }
    Ok(report)
}

/// A periodic point of `f` lying within `tol` of a PCF cubic parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PcfMatch {
    pub point: Point2,
    pub period: usize,
    /// The PCF parameter `(x, y)`.
    pub param: Point2,
    pub distance: f64,
}

/// Periodic points of `f` (periods up to `nmax`) that coincide, within
/// max-norm `tol`, with a parameter of a cubic PCF sample.
pub fn per_pcf_probe<M: PlaneMap>(
    f: &M,
    pcf: &MeasureSample<DegreeDFamilyParam>,
    cfg: &FinitenessConfig,
    tol: f64,
) -> Result<Vec<PcfMatch>, ProbeError> {
    let params = pcf
        .points
        .iter()
        .map(|q| match q.params().as_slice() {
            [x, y] => Ok(Point2::new(*x, *y)),
            _ => Err(ProbeError::NotCubic),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (points, _) = periodic_union(f, cfg)?;
    let mut matches = Vec::new();
    for (p, period) in points {
        let nearest = params
            .iter()
            .map(|q| (q.dist_max(&p), *q))
            .fold(None, |best: Option<(f64, Point2)>, cand| match best {
                Some(b) if b.0 <= cand.0 => Some(b),
                _ => Some(cand),
            });
        if let Some((distance, param)) = nearest {
            if distance <= tol {
                matches.push(PcfMatch {
                    point: p,
                    period,
                    param,
                    distance,
                });
            }
        }
    }
    Ok(matches)
}
