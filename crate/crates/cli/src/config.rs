//! Flat `key = value` configuration with dotted section prefixes.
//!
//! ```text
//! # comment
//! seed = 42
//! system.henon.factor1.p = "y^2"
//! system.henon.factor1.delta = 1/2
//! probe.slice.half_width = 2
//! ```
//!
//! Values may be quoted. Keys are checked against a fixed schema so typos
//! fail with a line number instead of being ignored.

use std::collections::BTreeMap;

use cdyn_core::{Complex64, Point2};

use crate::error::CliError;
use crate::expr::{parse_complex, parse_point, parse_points, parse_real};

#[derive(Clone, Debug, PartialEq)]
struct Entry {
    value: String,
    line: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, Entry>,
}

const SLICE_KEYS: &[&str] = &["kind", "origin", "direction", "u", "v", "half_width", "resolution"];

fn known_key(key: &str) -> bool {
    const FLAT: &[&str] = &[
        "seed",
        "threads",
        "out",
        "escape.radius",
        "escape.max_iters",
        "escape.target_error",
        "newton.seeds",
        "newton.max_steps",
        "system.endo.menu",
        "system.endo.p",
        "system.endo.q",
        "system.henon.menu",
        "system.poly.p",
        "system.family.degree",
        "green.field",
        "green.points",
        "julia.field",
        "julia.palette",
        "bif.field",
        "bif.palette",
        "pcf.degree",
        "pcf.max_orbit_length",
        "pcf.half_width",
        "pcf.per_axis",
        "periodic.system",
        "periodic.period",
        "periodic.search_radius",
        "probe.a",
        "probe.b",
        "probe.field",
        "probe.map",
        "probe.scale",
        "probe.samples",
        "probe.sample_radius",
        "probe.lines",
        "probe.nmax",
        "probe.horizon",
        "probe.tol",
        "probe.max_orbit_length",
        "render.input",
        "render.palette",
    ];
    if FLAT.contains(&key) {
        return true;
    }
    for prefix in ["julia.slice.", "bif.slice.", "probe.slice."] {
        if let Some(rest) = key.strip_prefix(prefix) {
            return SLICE_KEYS.contains(&rest);
        }
    }
    // system.henon.factor<N>.{p,delta}
    if let Some(rest) = key.strip_prefix("system.henon.factor") {
        if let Some((n, field)) = rest.split_once('.') {
            return !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()) && n != "0" && (field == "p" || field == "delta");
        }
    }
    false
}

fn unquote(raw: &str) -> Result<String, String> {
    let v = raw.trim();
    if let Some(inner) = v.strip_prefix('"') {
        let inner = inner.strip_suffix('"').ok_or("unterminated quote")?;
        if inner.contains('"') {
            return Err("stray quote inside value".into());
        }
        return Ok(inner.to_string());
    }
    if v.contains('"') {
        return Err("stray quote in value".into());
    }
    Ok(v.to_string())
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = match raw.find('#') {
                // `#` inside quotes is not a comment
                Some(pos) if raw[..pos].matches('"').count() % 2 == 0 => &raw[..pos],
                _ => raw,
            };
            if content.trim().is_empty() {
                continue;
            }
            let err = |key: &str, msg: String| CliError::Config {
                line: Some(line),
                key: key.to_string(),
                msg,
            };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(content.trim(), "expected `key = value`".into()))?;
            let key = key.trim();
            if !known_key(key) {
                return Err(err(key, "unknown key".into()));
            }
            let value = unquote(value).map_err(|m| err(key, m))?;
            if value.is_empty() {
                return Err(err(key, "empty value".into()));
            }
            if entries
                .insert(key.to_string(), Entry { value, line: Some(line) })
                .is_some()
            {
                return Err(err(key, "duplicate key".into()));
            }
        }
        Ok(Self { entries })
    }

    /// Sets a value from outside the file (command-line overrides).
    pub fn set(&mut self, key: &str, value: String) {
        debug_assert!(known_key(key));
        self.entries.insert(key.to_string(), Entry { value, line: None });
    }

    /// Canonical text form: sorted keys, every value quoted. Parsing it
    /// gives back the same settings.
    pub fn echo(&self) -> String {
        self.entries
            .iter()
            .map(|(k, e)| format!("{k} = \"{}\"\n", e.value))
            .collect()
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn has_prefix(&self, prefix: &str) -> bool {
        self.entries.keys().any(|k| k.starts_with(prefix))
    }

    /// Keys under `prefix`, sorted.
    pub fn keys_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.entries.keys().filter(move |k| k.starts_with(prefix)).map(String::as_str)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.value.as_str())
    }

    /// A diagnostic for `key`, carrying its line when the key is present.
    pub fn error(&self, key: &str, msg: impl Into<String>) -> CliError {
        CliError::Config {
            line: self.entries.get(key).and_then(|e| e.line),
            key: key.to_string(),
            msg: msg.into(),
        }
    }

    fn typed<T, E: std::fmt::Display>(&self, key: &str, f: impl FnOnce(&str) -> Result<T, E>) -> Result<Option<T>, CliError> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => f(v).map(Some).map_err(|e| self.error(key, e.to_string())),
        }
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.raw(key).unwrap_or(default)
    }

    pub fn u64_opt(&self, key: &str) -> Result<Option<u64>, CliError> {
        self.typed(key, |v| v.parse::<u64>())
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, CliError> {
        Ok(self.typed(key, |v| v.parse::<usize>())?.unwrap_or(default))
    }

    pub fn usize_opt(&self, key: &str) -> Result<Option<usize>, CliError> {
        self.typed(key, |v| v.parse::<usize>())
    }

    pub fn real_opt(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.typed(key, parse_real)
    }

    pub fn real_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.real_opt(key)?.unwrap_or(default))
    }

    pub fn complex_or(&self, key: &str, default: Complex64) -> Result<Complex64, CliError> {
        Ok(self.typed(key, parse_complex)?.unwrap_or(default))
    }

    pub fn point_or(&self, key: &str, default: Point2) -> Result<Point2, CliError> {
        Ok(self.typed(key, parse_point)?.unwrap_or(default))
    }

    pub fn points(&self, key: &str) -> Result<Vec<Point2>, CliError> {
        let pts = self.typed(key, parse_points)?.ok_or_else(|| self.error(key, "required"))?;
        if pts.is_empty() {
            return Err(self.error(key, "no points given"));
        }
        Ok(pts)
    }

    /// A choice among fixed names.
    pub fn choice<'a>(&'a self, key: &str, default: &'a str, allowed: &[&str]) -> Result<&'a str, CliError> {
        let v = self.str_or(key, default);
        if allowed.contains(&v) {
            Ok(v)
        } else {
            Err(self.error(key, format!("expected one of {}", allowed.join(", "))))
        }
    }
}
