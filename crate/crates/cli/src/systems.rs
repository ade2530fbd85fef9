//! Building maps and Green fields from config sections.
//!
//! Menu names:
//!
//! | name         | map                         |
//! |--------------|-----------------------------|
//! | `power2`     | `(x^2, y^2)`                |
//! | `power3`     | `(x^3, y^3)`                |
//! | `sum2`       | `(x^2 + y, y^2 + x)`        |
//! | `henon_half` | `(x, y) -> (y, y^2 - x/2)`  |
//! | `cubic`      | the cubic family (degree 3) |

use cdyn_core::green::{EndoGreen, EscapeConfig, HenonGreen, PolyGreen};
use cdyn_core::probes::{ActivityField, BifField, EndoField, GreenField, HenonField, HenonKind, PolyField};
use cdyn_core::{Complex64, HenonMap, Poly, RegularEndo};

use crate::config::Config;
use crate::error::CliError;
use crate::expr::{parse_complex, parse_poly};

pub const FIELD_NAMES: &[&str] = &["endo", "henon", "henon+", "henon-", "bif", "activity1", "activity2", "poly"];

fn endo_menu(name: &str) -> Option<RegularEndo> {
    match name {
        "power2" => RegularEndo::power(2).ok(),
        "power3" => RegularEndo::power(3).ok(),
        "sum2" => {
            let p = parse_poly("x^2 + y", &["x", "y"]).ok()?.to_poly2().ok()?;
            let q = parse_poly("y^2 + x", &["x", "y"]).ok()?.to_poly2().ok()?;
            RegularEndo::new(p, q).ok()
        }
        _ => None,
    }
}

pub fn escape_config(cfg: &Config) -> Result<EscapeConfig, CliError> {
    let d = EscapeConfig::default();
    let e = EscapeConfig {
        escape_radius: cfg.real_or("escape.radius", d.escape_radius)?,
        max_iters: cfg.usize_or("escape.max_iters", d.max_iters)?,
        target_error: cfg.real_or("escape.target_error", d.target_error)?,
    };
    if !(e.escape_radius.is_finite() && e.escape_radius > 1.0) {
        return Err(cfg.error("escape.radius", "must be a finite number above 1"));
    }
    if e.max_iters == 0 {
        return Err(cfg.error("escape.max_iters", "must be at least 1"));
    }
    if !(e.target_error.is_finite() && e.target_error > 0.0) {
        return Err(cfg.error("escape.target_error", "must be a positive finite number"));
    }
    e.validate().map_err(|err| cfg.error("escape.radius", err.to_string()))?;
    Ok(e)
}

/// `system.endo.*`; defaults to `power2`.
pub fn endo(cfg: &Config) -> Result<RegularEndo, CliError> {
    if cfg.has("system.endo.p") || cfg.has("system.endo.q") {
        if cfg.has("system.endo.menu") {
            return Err(cfg.error("system.endo.menu", "give either a menu name or p/q, not both"));
        }
        let coord = |key: &str| {
            let src = cfg.raw(key).ok_or_else(|| cfg.error(key, "required"))?;
            parse_poly(src, &["x", "y"])
                .and_then(|e| e.to_poly2())
                .map_err(|e| cfg.error(key, e.to_string()))
        };
        let (p, q) = (coord("system.endo.p")?, coord("system.endo.q")?);
        let h = RegularEndo::new(p, q).map_err(|e| cfg.error("system.endo.p", e.to_string()))?;
        return match h.regularity_check() {
            Ok(true) => Ok(h),
            Ok(false) => Err(cfg.error("system.endo.p", "top homogeneous parts share a nontrivial zero")),
            Err(e) => Err(cfg.error("system.endo.p", e.to_string())),
        };
    }
    let name = cfg.str_or("system.endo.menu", "power2");
    endo_menu(name).ok_or_else(|| cfg.error("system.endo.menu", "expected power2, power3 or sum2"))
}

/// `system.henon.*`; defaults to `henon_half`.
pub fn henon(cfg: &Config) -> Result<HenonMap, CliError> {
    let explicit: Vec<&str> = cfg.keys_with_prefix("system.henon.factor").collect();
    if explicit.is_empty() {
        let name = cfg.str_or("system.henon.menu", "henon_half");
        if name != "henon_half" {
            return Err(cfg.error("system.henon.menu", "expected henon_half"));
        }
        return HenonMap::single(Poly::monomial(2), Complex64::new(0.5, 0.0))
            .map_err(|e| cfg.error("system.henon.menu", e.to_string()));
    }
    if cfg.has("system.henon.menu") {
        return Err(cfg.error("system.henon.menu", "give either a menu name or factors, not both"));
    }
    let mut indices: Vec<usize> = explicit
        .iter()
        .filter_map(|k| k.strip_prefix("system.henon.factor")?.split('.').next()?.parse().ok())
        .collect();
    indices.sort_unstable();
    indices.dedup();
    let mut factors = Vec::new();
    for (pos, &n) in indices.iter().enumerate() {
        let pkey = format!("system.henon.factor{n}.p");
        let dkey = format!("system.henon.factor{n}.delta");
        if n != pos + 1 {
            return Err(cfg.error(&pkey, "factors must be numbered 1, 2, ... without gaps"));
        }
        let p = cfg
            .raw(&pkey)
            .ok_or_else(|| cfg.error(&pkey, "required"))
            .and_then(|src| parse_poly(src, &["y"]).map_err(|e| cfg.error(&pkey, e.to_string())))?
            .to_poly();
        let delta = cfg
            .raw(&dkey)
            .ok_or_else(|| cfg.error(&dkey, "required"))
            .and_then(|src| parse_complex(src).map_err(|e| cfg.error(&dkey, e.to_string())))?;
        factors.push((p, delta));
    }
    HenonMap::new(factors).map_err(|e| cfg.error("system.henon.factor1.p", e.to_string()))
}

/// `system.poly.p` in the variable `z`; defaults to `z^2`.
pub fn poly(cfg: &Config) -> Result<Poly, CliError> {
    let key = "system.poly.p";
    let p = parse_poly(cfg.str_or(key, "z^2"), &["z"])
        .map_err(|e| cfg.error(key, e.to_string()))?
        .to_poly();
    if p.degree() < 2 {
        return Err(cfg.error(key, "degree must be at least 2"));
    }
    Ok(p)
}

pub fn family_degree(cfg: &Config) -> Result<usize, CliError> {
    let d = cfg.usize_or("system.family.degree", 3)?;
    if d < 3 {
        return Err(cfg.error("system.family.degree", "must be at least 3"));
    }
    Ok(d)
}

/// A Green field by name; `key` is only used for diagnostics.
pub fn field(cfg: &Config, key: &str, name: &str) -> Result<Box<dyn GreenField>, CliError> {
    let esc = escape_config(cfg)?;
    let henon_kind = |kind| -> Result<Box<dyn GreenField>, CliError> {
        Ok(Box::new(HenonField {
            green: HenonGreen::new(henon(cfg)?),
            kind,
            cfg: esc,
        }))
    };
    let cubic_only = || {
        if family_degree(cfg)? != 3 {
            return Err(cfg.error(key, "parameter-space fields are defined on the cubic family only"));
        }
        Ok(())
    };
    match name {
        "endo" => Ok(Box::new(EndoField {
            green: EndoGreen::new(endo(cfg)?).map_err(|e| cfg.error("system.endo", e.to_string()))?,
            cfg: esc,
        })),
        "henon" => henon_kind(HenonKind::Max),
        "henon+" => henon_kind(HenonKind::Forward),
        "henon-" => henon_kind(HenonKind::Backward),
        "bif" => {
            cubic_only()?;
            Ok(Box::new(BifField { cfg: esc }))
        }
        "activity1" | "activity2" => {
            cubic_only()?;
            Ok(Box::new(ActivityField {
                index: if name == "activity1" { 1 } else { 2 },
                cfg: esc,
            }))
        }
        "poly" => Ok(Box::new(PolyField {
            green: PolyGreen::new(poly(cfg)?).map_err(|e| cfg.error("system.poly.p", e.to_string()))?,
            cfg: esc,
        })),
        _ => Err(cfg.error(key, format!("expected one of {}", FIELD_NAMES.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cdyn_core::Point2;

    #[test]
    fn menu_defaults() {
        let cfg = Config::default();
        assert_eq!(endo(&cfg).unwrap(), RegularEndo::power(2).unwrap());
        let f = henon(&cfg).unwrap();
        assert_eq!(f.eval(Point2::real(1.0, 2.0)), Point2::real(2.0, 3.5));
    }

    #[test]
    fn explicit_factors_match_the_menu() {
        let cfg = Config::parse("system.henon.factor1.p = \"y^2\"\nsystem.henon.factor1.delta = 1/2\n").unwrap();
        let f = henon(&cfg).unwrap();
        let g = henon(&Config::default()).unwrap();
        let p = Point2::real(0.3, -1.1);
        assert_eq!(f.eval(p), g.eval(p));
    }

    #[test]
    fn explicit_endo() {
        let cfg = Config::parse("system.endo.p = \"x^2 + y\"\nsystem.endo.q = \"y^2 + x\"\n").unwrap();
        let menu = Config::parse("system.endo.menu = sum2\n").unwrap();
        assert_eq!(endo(&cfg).unwrap(), endo(&menu).unwrap());
    }

    #[test]
    fn bad_systems_are_config_errors() {
        let cases = [
            "system.henon.factor2.p = y^2\nsystem.henon.factor2.delta = 1\n",
            "system.henon.factor1.p = y^2\n",
            "system.henon.factor1.p = y^2\nsystem.henon.factor1.delta = 0\n",
            "system.endo.p = x^2\nsystem.endo.q = x^2\n",
            "system.endo.menu = cube\n",
            "system.poly.p = z + 1\n",
        ];
        for text in cases {
            let cfg = Config::parse(text).unwrap();
            let err = match (endo(&cfg), henon(&cfg), poly(&cfg)) {
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => e,
                _ => panic!("accepted: {text}"),
            };
            assert_eq!(err.exit_code(), 1, "{text}: {err}");
        }
        assert!(field(&Config::default(), "green.field", "nope").is_err());
    }
}
