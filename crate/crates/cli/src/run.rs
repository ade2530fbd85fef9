//! Subcommand execution, artifact writing and the run manifest.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use cdyn_core::bifurcation::{pcf_equi_sample, PcfConfig, PcfSample, SeedBox};
use cdyn_core::green::GreenEstimate;
use cdyn_core::par;
use cdyn_core::periodic::{
    periodic_points_1d, periodic_points_endo2, periodic_points_henon, AberthConfig, NewtonConfig, PeriodicPoint, PreperConfig,
};
use cdyn_core::probes::{
    common_points_probe, compare_green, invariance_residual, per_pcf_probe, slice_laplacian, FieldGrid, FinitenessConfig,
    SliceSpec,
};
use cdyn_core::green::EndoGreen;
use cdyn_core::{Complex64, PlaneMap, Point2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::config::Config;
use crate::error::CliError;
use crate::output::{complex, grid_csv, num, parse_grid_csv, point4, SliceJson};
use crate::render::{render_field, render_values, Palette};
use crate::systems::{self, FIELD_NAMES};
use crate::{Command, ProbeKind};

#[derive(Clone, Debug, Serialize)]
pub struct TaskRecord {
    pub name: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub elapsed_ms: f64,
    #[serde(skip)]
    pub exit_code: i32,
}

/// What a run produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub out_dir: PathBuf,
    /// Artifact file names inside `out_dir`, in write order (the manifest
    /// is not listed).
    pub outputs: Vec<String>,
    pub tasks: Vec<TaskRecord>,
    /// A config error that stopped the run.
    pub fatal: Option<String>,
}

struct Run<'a> {
    cfg: &'a Config,
    seed: u64,
    out: PathBuf,
    outputs: Vec<String>,
    tasks: Vec<TaskRecord>,
}

impl Run<'_> {
    fn write(&mut self, name: &str, bytes: impl AsRef<[u8]>) -> Result<(), CliError> {
        fs::write(self.out.join(name), bytes)?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    fn write_json(&mut self, name: &str, value: &impl Serialize) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Numerical(e.to_string()))?;
        text.push('\n');
        self.write(name, text)
    }

    /// Runs one task. Numerical and cap failures are recorded and yield
    /// `None`; config errors abort the run.
    fn task<T>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<T, CliError>) -> Result<Option<T>, CliError> {
        let t0 = Instant::now();
        let result = f(self);
        let elapsed_ms = t0.elapsed().as_secs_f64() * 1e3;
        match result {
            Ok(v) => {
                self.tasks.push(TaskRecord {
                    name: name.to_string(),
                    status: "ok",
                    error: None,
                    detail: None,
                    elapsed_ms,
                    exit_code: 0,
                });
                Ok(Some(v))
            }
            Err(e) if e.exit_code() == 1 => Err(e),
            Err(e) => {
                self.tasks.push(TaskRecord {
                    name: name.to_string(),
                    status: "error",
                    error: Some(e.to_string()),
                    detail: None,
                    elapsed_ms,
                    exit_code: e.exit_code(),
                });
                Ok(None)
            }
        }
    }

    fn note(&mut self, detail: String) {
        if let Some(t) = self.tasks.last_mut() {
            t.detail = Some(detail);
        }
    }

    fn newton(&self) -> Result<NewtonConfig, CliError> {
        let d = NewtonConfig::default();
        Ok(NewtonConfig {
            seeds: self.cfg.usize_or("newton.seeds", d.seeds)?,
            max_steps: self.cfg.usize_or("newton.max_steps", d.max_steps)?,
            rng_seed: self.seed,
            ..d
        })
    }
}

/// Reads a slice from `<prefix>.*`.
fn slice(cfg: &Config, prefix: &str, default_kind: &str, default_dir: Point2, default_half: f64) -> Result<SliceSpec, CliError> {
    let key = |k: &str| format!("{prefix}.{k}");
    let kind = cfg.choice(&key("kind"), default_kind, &["square", "line", "plane"])?;
    let origin = cfg.point_or(&key("origin"), Point2::ORIGIN)?;
    let half = cfg.real_or(&key("half_width"), default_half)?;
    let res = cfg.usize_or(&key("resolution"), 64)?;
    let s = match kind {
        "square" => SliceSpec::real_square(origin, half, res),
        "line" => SliceSpec::complex_line(origin, cfg.point_or(&key("direction"), default_dir)?, half, res),
        _ => SliceSpec {
            origin,
            basis: [
                cfg.point_or(&key("u"), Point2::real(1.0, 0.0))?,
                cfg.point_or(&key("v"), Point2::real(0.0, 1.0))?,
            ],
            extents: [half, half],
            resolution: [res, res],
        },
    };
    s.validate().map_err(|e| cfg.error(&key("kind"), e.to_string()))?;
    Ok(s)
}

fn palette(cfg: &Config, key: &str) -> Result<Palette, CliError> {
    Palette::parse(cfg.choice(key, "binary", Palette::NAMES)?).ok_or_else(|| cfg.error(key, "unknown palette"))
}

fn pcf_sample(cfg: &Config, len_key: &str) -> Result<PcfSample, CliError> {
    let d = systems::family_degree(cfg)?;
    let max_len = cfg.usize_or(len_key, 1)?;
    let half = cfg.real_or("pcf.half_width", 3.0)?;
    let per_axis = cfg.usize_or("pcf.per_axis", 6)?;
    if !(half > 0.0) || per_axis == 0 {
        return Err(cfg.error("pcf.half_width", "seed box needs a positive half width and per_axis >= 1"));
    }
    let pc = PcfConfig {
        escape: systems::escape_config(cfg)?,
        ..PcfConfig::default()
    };
    Ok(pcf_equi_sample(d, max_len, &SeedBox::centered(d, half, per_axis), &pc)?)
}

fn cmd_green(run: &mut Run) -> Result<(), CliError> {
    let cfg = run.cfg;
    let name = cfg.choice("green.field", "endo", FIELD_NAMES)?;
    let field = systems::field(cfg, "green.field", name)?;
    let points = cfg.points("green.points")?;
    let mut csv = String::from("value,error_bound,iterations,escaped\n");
    for (k, p) in points.into_iter().enumerate() {
        let est: Option<GreenEstimate> = run.task(&format!("green[{k}]"), |_| Ok(field.estimate(p)?))?;
        if let Some(e) = est {
            csv.push_str(&format!("{},{},{},{}\n", num(e.value), num(e.error_bound), e.iterations_used, e.escaped));
        }
    }
    run.write("green.csv", csv)
}

fn cmd_grid(run: &mut Run, section: &str, default_field: &str) -> Result<(), CliError> {
    let cfg = run.cfg;
    let fkey = format!("{section}.field");
    let name = cfg.choice(&fkey, default_field, FIELD_NAMES)?;
    let field = systems::field(cfg, &fkey, name)?;
    let (kind, dir) = if section == "bif" {
        ("line", Point2::real(0.0, 1.0))
    } else {
        ("square", Point2::real(1.0, 0.0))
    };
    let s = slice(cfg, &format!("{section}.slice"), kind, dir, 2.0)?;
    let pal = palette(cfg, &format!("{section}.palette"))?;
    if let Some(grid) = run.task("grid", |_| Ok(FieldGrid::sample(field.as_ref(), &s)?))? {
        run.write(&format!("{section}.csv"), grid_csv(&grid))?;
        run.write(&format!("{section}.ppm"), render_field(&grid, pal))?;
    }
    Ok(())
}

fn cmd_pcf(run: &mut Run) -> Result<(), CliError> {
    let cfg = run.cfg;
    let Some(sample) = run.task("pcf", |_| pcf_sample(cfg, "pcf.max_orbit_length"))? else {
        return Ok(());
    };
    let d = systems::family_degree(cfg)?;
    let coord_names: Vec<String> = if d == 3 {
        vec!["x".into()]
    } else {
        (1..=d - 2).map(|k| format!("x{k}")).collect()
    };
    let mut header: Vec<String> = Vec::new();
    for n in coord_names.iter().map(String::as_str).chain(["y"]) {
        header.push(format!("re({n})"));
        header.push(format!("im({n})"));
    }
    for k in 1..d {
        header.push(format!("n{k}"));
        header.push(format!("m{k}"));
    }
    header.extend(["residual", "det", "transverse"].map(String::from));
    let mut csv = header.join(",") + "\n";
    for s in &sample.solutions {
        let mut row: Vec<String> = Vec::new();
        for c in s.param.params() {
            row.push(num(c.re));
            row.push(num(c.im));
        }
        for (n, m) in &s.combinatorics {
            row.push(n.to_string());
            row.push(m.to_string());
        }
        row.push(num(s.residual));
        row.push(complex(s.transversality_det));
        row.push(s.transverse.to_string());
        csv.push_str(&(row.join(",") + "\n"));
    }
    run.note(format!(
        "{} parameters; per combinatorics: {}",
        sample.solutions.len(),
        sample
            .per_combinatorics
            .iter()
            .map(|(c, k)| format!("{c:?}={k}"))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    run.write("pcf.csv", csv)
}

fn periodic_rows<L>(points: &[PeriodicPoint<L>], loc: impl Fn(&L) -> [String; 4]) -> String {
    let mut csv = String::from("period,re(x),im(x),re(y),im(y),|λ1|,|λ2|,class,residual\n");
    for p in points {
        let [a, b, c, d] = loc(&p.location);
        let l1 = p.multipliers.first().map(|m| num(m.norm())).unwrap_or_default();
        let l2 = p.multipliers.get(1).map(|m| num(m.norm())).unwrap_or_default();
        csv.push_str(&format!(
            "{},{a},{b},{c},{d},{l1},{l2},{},{}\n",
            p.period,
            p.stability.as_str(),
            num(p.residual)
        ));
    }
    csv
}

fn cmd_periodic(run: &mut Run) -> Result<(), CliError> {
    let cfg = run.cfg;
    let system = cfg.choice("periodic.system", "henon", &["poly", "endo", "henon"])?;
    let n = cfg.usize_or("periodic.period", 1)?;
    if n == 0 {
        return Err(cfg.error("periodic.period", "must be at least 1"));
    }
    let radius = cfg.real_opt("periodic.search_radius")?;
    let newton = run.newton()?;
    let csv = match system {
        "poly" => {
            let p = systems::poly(cfg)?;
            run.task("periodic", |_| Ok(periodic_points_1d(&p, n, &AberthConfig::default())?))?
                .map(|pts| periodic_rows(&pts, |z| [num(z.re), num(z.im), num(0.0), num(0.0)]))
        }
        _ => {
            let sols = if system == "henon" {
                let f = systems::henon(cfg)?;
                let r = radius.unwrap_or_else(|| f.trapping_radius());
                run.task("periodic", |_| Ok(periodic_points_henon(&f, n, r, &newton)?))?
            } else {
                let h = systems::endo(cfg)?;
                let r = radius.unwrap_or_else(|| h.trapping_radius());
                run.task("periodic", |_| Ok(periodic_points_endo2(&h, n, r, &newton)?))?
            };
            sols.map(|s| {
                run.note(format!(
                    "seeds {}, unresolved {}, singular retries {}",
                    s.seeds_tried, s.unresolved, s.singular_retries
                ));
                periodic_rows(&s.points, |p| point4(*p).map(num))
            })
        }
    };
    match csv {
        Some(csv) => run.write("periodic.csv", csv),
        None => Ok(()),
    }
}

fn random_points(seed: u64, n: usize, radius: f64) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut z = || Complex64::new(rng.random_range(-radius..radius), rng.random_range(-radius..radius));
            Point2::new(z(), z())
        })
        .collect()
}

fn probe_separation(run: &mut Run) -> Result<(), CliError> {
    let cfg = run.cfg;
    let a = systems::field(cfg, "probe.a", cfg.choice("probe.a", "endo", FIELD_NAMES)?)?;
    let b = systems::field(cfg, "probe.b", cfg.choice("probe.b", "henon", FIELD_NAMES)?)?;
    let s = slice(cfg, "probe.slice", "square", Point2::real(1.0, 0.0), 2.0)?;
    if let Some(r) = run.task("separation", |_| Ok(compare_green(a.as_ref(), b.as_ref(), &s)?))? {
        run.write_json(
            "separation.json",
            &json!({
                "probe": "separation",
                "slice": SliceJson::from(&s),
                "sup": r.sup_discrepancy,
                "l1": r.l1_discrepancy,
                "error_bound": r.combined_error_bound,
                "separated": r.separated(),
                "argmax": point4(r.argmax_location),
            }),
        )?;
    }
    Ok(())
}

fn probe_invariance(run: &mut Run) -> Result<(), CliError> {
    let cfg = run.cfg;
    let map = cfg.choice("probe.map", "endo", &["endo", "henon", "henon_inverse"])?;
    let default_field = if map == "endo" { "endo" } else { "henon+" };
    let fname = cfg.choice("probe.field", default_field, FIELD_NAMES)?;
    let field = systems::field(cfg, "probe.field", fname)?;
    let samples = cfg.usize_or("probe.samples", 1000)?;
    let radius = cfg.real_or("probe.sample_radius", 2.5)?;
    if samples == 0 || !(radius > 0.0) {
        return Err(cfg.error("probe.samples", "need at least one sample and a positive radius"));
    }
    let sample = random_points(run.seed, samples, radius);
    let (image, degree): (Box<dyn Fn(Point2) -> Point2 + Sync>, f64) = if map == "endo" {
        let h = systems::endo(cfg)?;
        let d = h.degree() as f64;
        (Box::new(move |p| h.eval(p)), d)
    } else {
        let f = systems::henon(cfg)?;
        let d = f.degree() as f64;
        if map == "henon" {
            (Box::new(move |p| f.eval(p)), d)
        } else {
            (Box::new(move |p| f.inverse_eval(p)), d)
        }
    };
    // G+ grows by d under f and shrinks by d under f^-1; G- the other way
    let natural = match (map, fname) {
        ("henon", "henon-") | ("henon_inverse", "henon+") => 1.0 / degree,
        _ => degree,
    };
    let scale = cfg.real_or("probe.scale", natural)?;
    if let Some(r) = run.task("invariance", |_| Ok(invariance_residual(&image, field.as_ref(), scale, &sample)?))? {
        run.write_json(
            "invariance.json",
            &json!({
                "probe": "invariance",
                "map": map,
                "field": fname,
                "scale": scale,
                "samples": samples,
                "residual": r.residual,
                "consistent": r.residual <= 0.0,
                "max_gap": r.max_gap,
                "worst": point4(sample[r.worst_index]),
            }),
        )?;
    }
    Ok(())
}

fn probe_laplacian(run: &mut Run) -> Result<(), CliError> {
    let cfg = run.cfg;
    let fname = cfg.choice("probe.field", "endo", FIELD_NAMES)?;
    let field = systems::field(cfg, "probe.field", fname)?;
    let lines = cfg.usize_or("probe.lines", 0)?;
    if lines == 0 {
        let s = slice(cfg, "probe.slice", "line", Point2::real(1.0, 0.0), 2.0)?;
        if !s.is_complex_line() {
            return Err(cfg.error("probe.slice.kind", "the Laplacian needs a complex line"));
        }
        let Some((grid, rep)) = run.task("laplacian", |_| {
            let grid = FieldGrid::sample(field.as_ref(), &s)?;
            let rep = slice_laplacian(&grid)?;
            Ok((grid, rep))
        })?
        else {
            return Ok(());
        };
        let cols = s.resolution[0];
        let mut csv = String::from("row,col,u,v,density,tolerance\n");
        for (k, (d, t)) in rep.density.iter().zip(&rep.tolerance).enumerate() {
            let (u, v) = s.coords(k / cols, k % cols);
            csv.push_str(&format!("{},{},{},{},{},{}\n", k / cols, k % cols, num(u), num(v), num(*d), num(*t)));
        }
        run.write("laplacian.csv", csv)?;
        let (wr, wc) = (rep.worst_index / cols, rep.worst_index % cols);
        run.write_json(
            "laplacian.json",
            &json!({
                "probe": "laplacian",
                "field": fname,
                "slice": SliceJson::from(&grid.slice),
                "spacing": rep.spacing,
                "min_margin": rep.min_margin,
                "subharmonic": rep.is_subharmonic(),
                "mass": rep.mass,
                "worst": point4(s.point(wr, wc)),
            }),
        )?;
        return Ok(());
    }
    let half = cfg.real_or("probe.slice.half_width", 1.5)?;
    let res = cfg.usize_or("probe.slice.resolution", 64)?;
    let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
    let mut reports = Vec::new();
    let mut all = true;
    for k in 0..lines {
        let mut z = || Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
        let origin = Point2::new(z(), z());
        let dir = Point2::new(z(), z());
        let dir = dir * (1.0 / dir.norm_max());
        let s = SliceSpec::complex_line(origin, dir, half, res);
        s.validate().map_err(|e| cfg.error("probe.slice.resolution", e.to_string()))?;
        if let Some(rep) = run.task(&format!("line[{k}]"), |_| Ok(slice_laplacian(&FieldGrid::sample(field.as_ref(), &s)?)?))? {
            all &= rep.is_subharmonic();
            reports.push(json!({
                "origin": point4(origin),
                "direction": point4(dir),
                "min_margin": rep.min_margin,
                "subharmonic": rep.is_subharmonic(),
                "mass": rep.mass,
            }));
        } else {
            all = false;
        }
    }
    run.write_json(
        "laplacian.json",
        &json!({
            "probe": "laplacian",
            "field": fname,
            "half_width": half,
            "resolution": res,
            "all_subharmonic": all,
            "lines": reports,
        }),
    )
}

fn finiteness_config(run: &Run) -> Result<FinitenessConfig, CliError> {
    let cfg = run.cfg;
    let d = PreperConfig::default();
    Ok(FinitenessConfig {
        nmax: cfg.usize_or("probe.nmax", 4)?,
        newton: run.newton()?,
        preper: PreperConfig {
            horizon: cfg.usize_or("probe.horizon", d.horizon)?,
            tol: cfg.real_or("probe.tol", d.tol)?,
            escape: systems::escape_config(cfg)?,
        },
        search_radius: None,
    })
}

fn probe_common(run: &mut Run) -> Result<(), CliError> {
    let cfg = run.cfg;
    let f = systems::henon(cfg)?;
    let h = EndoGreen::new(systems::endo(cfg)?).map_err(|e| cfg.error("system.endo", e.to_string()))?;
    let fc = finiteness_config(run)?;
    if let Some(rep) = run.task("common", |_| Ok(common_points_probe(&f, &h, &fc)?))? {
        let common: Vec<_> = rep
            .common
            .iter()
            .map(|c| json!({"location": point4(c.location), "period": c.period, "tail": c.tail, "h_period": c.h_period}))
            .collect();
        run.write_json(
            "common.json",
            &json!({
                "probe": "common",
                "nmax": fc.nmax,
                "common": common,
                "undecided": rep.undecided.iter().map(|p| point4(*p)).collect::<Vec<_>>(),
                "escaping": rep.escaping,
                "attracted": rep.attracted,
                "periodic_count": rep.periodic_count,
                "unresolved_seeds": rep.unresolved_seeds,
            }),
        )?;
    }
    Ok(())
}

fn probe_pcf(run: &mut Run) -> Result<(), CliError> {
    let cfg = run.cfg;
    let f = systems::henon(cfg)?;
    let fc = finiteness_config(run)?;
    let tol = cfg.real_or("probe.tol", 1e-8)?;
    let Some(sample) = run.task("pcf_sample", |_| pcf_sample(cfg, "probe.max_orbit_length"))? else {
        return Ok(());
    };
    if let Some(matches) = run.task("per_pcf", |_| Ok(per_pcf_probe(&f, &sample.sample, &fc, tol)?))? {
        let list: Vec<_> = matches
            .iter()
            .map(|m| json!({"point": point4(m.point), "period": m.period, "param": point4(m.param), "distance": m.distance}))
            .collect();
        run.write_json(
            "pcf_matches.json",
            &json!({"probe": "pcf", "nmax": fc.nmax, "tol": tol, "parameters": sample.solutions.len(), "matches": list}),
        )?;
    }
    Ok(())
}

fn cmd_render(run: &mut Run) -> Result<(), CliError> {
    let cfg = run.cfg;
    let key = "render.input";
    let path = cfg.raw(key).ok_or_else(|| cfg.error(key, "required"))?;
    let text = fs::read_to_string(path).map_err(|e| cfg.error(key, format!("{path}: {e}")))?;
    let grid = parse_grid_csv(&text).map_err(|e| cfg.error(key, format!("{path}: {e}")))?;
    let pal = palette(cfg, "render.palette")?;
    let img = render_values(grid.cols, grid.rows, &grid.values, &grid.error_bounds, pal);
    run.task("render", |r| r.write("render.ppm", img))?;
    Ok(())
}

fn dispatch(run: &mut Run, command: Command) -> Result<(), CliError> {
    match command {
        Command::Green => cmd_green(run),
        Command::Julia => cmd_grid(run, "julia", "endo"),
        Command::Bif => cmd_grid(run, "bif", "bif"),
        Command::Pcf => cmd_pcf(run),
        Command::Periodic => cmd_periodic(run),
        Command::Render => cmd_render(run),
        Command::Probe { kind } => match kind {
            ProbeKind::Separation => probe_separation(run),
            ProbeKind::Invariance => probe_invariance(run),
            ProbeKind::Laplacian => probe_laplacian(run),
            ProbeKind::Common => probe_common(run),
            ProbeKind::Pcf => probe_pcf(run),
        },
    }
}

/// Settings taken from the command line; `None` defers to the config.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

/// Parses `config_text`, runs `command`, writes artifacts and the manifest.
///
/// `Err` means nothing was run (config or output-directory failure).
pub fn execute(config_text: &str, command: Command, ov: &Overrides) -> Result<Outcome, CliError> {
    let mut cfg = Config::parse(config_text)?;
    if let Some(s) = ov.seed {
        cfg.set("seed", s.to_string());
    }
    let seed = cfg.u64_opt("seed")?.unwrap_or(0);
    let threads = match ov.threads {
        Some(t) => Some(t),
        None => cfg.usize_opt("threads")?,
    };
    if threads == Some(0) {
        return Err(cfg.error("threads", "must be at least 1"));
    }
    let out = ov.out.clone().unwrap_or_else(|| PathBuf::from(cfg.str_or("out", "cdyn-out")));
    fs::create_dir_all(&out)?;

    let started = Instant::now();
    let mut run = Run {
        cfg: &cfg,
        seed,
        out: out.clone(),
        outputs: Vec::new(),
        tasks: Vec::new(),
    };
    let result = match threads {
        Some(n) => par::with_threads(n, || dispatch(&mut run, command)),
        None => dispatch(&mut run, command),
    };
    let Run { outputs, tasks, .. } = run;
    let (exit_code, fatal) = match &result {
        Err(e) => (e.exit_code(), Some(e.to_string())),
        Ok(()) => (tasks.iter().map(|t| t.exit_code).max().unwrap_or(0), None),
    };
    let manifest = json!({
        "tool": "cdyn",
        "version": env!("CARGO_PKG_VERSION"),
        "core_version": cdyn_core::VERSION,
        "command": command.label(),
        "seed": seed,
        "threads": threads,
        "config": cfg.echo(),
        "outputs": outputs,
        "tasks": tasks,
        "fatal": fatal,
        "exit_code": exit_code,
        "elapsed_ms": started.elapsed().as_secs_f64() * 1e3,
    });
    let mut text = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Numerical(e.to_string()))?;
    text.push('\n');
    fs::write(out.join(MANIFEST), text)?;
    Ok(Outcome {
        exit_code,
        out_dir: out,
        outputs,
        tasks,
        fatal,
    })
}

pub const MANIFEST: &str = "manifest.json";

/// [`execute`] with the config read from `path` (empty when `None`).
pub fn execute_file(path: Option<&Path>, command: Command, ov: &Overrides) -> Result<Outcome, CliError> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Syntax(format!("{}: {e}", p.display())))?,
        None => String::new(),
    };
    execute(&text, command, ov)
}
