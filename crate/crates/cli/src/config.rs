//! Run configuration: key tables per subcommand, config-file parsing and
//! typed resolution with range checks.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown key `{key}` for `{subcommand}`")]
    UnknownKey { key: String, subcommand: String },
    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: String, reason: String },
    #[error("missing required key `{0}`")]
    Missing(String),
    #[error("key `{0}` given twice in config file")]
    Duplicate(String),
    #[error("config file {path}: {reason}")]
    File { path: String, reason: String },
    #[error("{0}")]
    Usage(String),
}

impl ConfigError {
    /// The offending key, when there is one.
    pub fn key(&self) -> Option<&str> {
        match self {
            Self::UnknownKey { key, .. } | Self::Invalid { key, .. } => Some(key),
            Self::Missing(k) | Self::Duplicate(k) => Some(k),
            Self::File { .. } => Some("config"),
            Self::Usage(_) => None,
        }
    }

    fn invalid(key: &str, reason: impl Into<String>) -> Self {
        Self::Invalid {
            key: key.to_string(),
            reason: reason.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subcommand {
    Solve,
    Metric,
    Volume,
    Classes,
    Dims,
    Metaplectic,
    Obstruction,
    Zeta,
    Sweep,
}

impl Subcommand {
    pub const ALL: [Subcommand; 9] = [
        Self::Solve,
        Self::Metric,
        Self::Volume,
        Self::Classes,
        Self::Dims,
        Self::Metaplectic,
        Self::Obstruction,
        Self::Zeta,
        Self::Sweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Solve => "solve",
            Self::Metric => "metric",
            Self::Volume => "volume",
            Self::Classes => "classes",
            Self::Dims => "dims",
            Self::Metaplectic => "metaplectic",
            Self::Obstruction => "obstruction",
            Self::Zeta => "zeta",
            Self::Sweep => "sweep",
        }
    }

    pub fn about(self) -> &'static str {
        match self {
            Self::Solve => "Solve the vortex equation on a flat torus",
            Self::Metric => "Moduli symplectic form at one divisor by both routes",
            Self::Volume => "Symplectic volume of the one-vortex moduli space",
            Self::Classes => "Kähler class, canonical class and prequantum checks",
            Self::Dims => "Dimension of the quantum Hilbert space",
            Self::Metaplectic => "Existence of a square root of the canonical bundle",
            Self::Obstruction => "Projective flatness test for the quantum bundle",
            Self::Zeta => "Spectral zeta function and log-determinant of the Laplacian",
            Self::Sweep => "Tabulate one of the exact checks or ζ′(0) over a parameter range",
        }
    }

    /// Subcommands whose `τ` may come from an integer level `k`.
    fn takes_tau(self) -> bool {
        matches!(self, Self::Solve | Self::Metric | Self::Volume | Self::Classes)
    }
}

impl FromStr for Subcommand {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| ConfigError::Usage(format!("unknown subcommand `{s}`")))
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug)]
pub enum Kind {
    Int {
        min: u64,
        max: u64,
    },
    /// Power of two in `[min, max]`.
    Pow2 {
        min: u64,
        max: u64,
    },
    /// `min < x ≤ max`.
    Float {
        min: f64,
        max: f64,
    },
    /// `min ≤ x ≤ max`.
    FloatClosed {
        min: f64,
        max: f64,
    },
    /// `re,im` with `im > 0`.
    Modulus,
    /// `x,y;x,y;...` lattice coordinates.
    Points,
    /// `a,b,c` with each `min < x ≤ max`.
    Floats {
        min: f64,
        max: f64,
    },
    Bool,
    Choice(&'static [&'static str]),
    Path,
}

#[derive(Clone, Copy, Debug)]
pub struct KeySpec {
    pub name: &'static str,
    pub kind: Kind,
    pub default: Option<&'static str>,
    pub help: &'static str,
}

const fn key(name: &'static str, kind: Kind, default: Option<&'static str>, help: &'static str) -> KeySpec {
    KeySpec {
        name,
        kind,
        default,
        help,
    }
}

const GENUS_MAX: u64 = 64;
const LEVEL_MAX: u64 = 100_000;

const FORMAT: KeySpec = key("format", Kind::Choice(&["json", "csv"]), Some("json"), "report format");
const OUTPUT: KeySpec = key("output", Kind::Path, None, "report path; stdout when absent");
const TAU: KeySpec = key(
    "tau",
    Kind::Float { min: 0.0, max: 1e8 },
    None,
    "symmetry-breaking scale τ",
);
const LEVEL: KeySpec = key(
    "k",
    Kind::Int { min: 1, max: LEVEL_MAX },
    None,
    "integer level; sets τ = 4πk/V",
);
const VOLUME: KeySpec = key(
    "volume",
    Kind::Float { min: 0.0, max: 1e6 },
    Some("1"),
    "surface area V",
);
const MODULUS: KeySpec = key("modulus", Kind::Modulus, Some("0,1"), "torus modulus as re,im");
const TOLERANCE: KeySpec = key(
    "tolerance",
    Kind::Float { min: 0.0, max: 1e-2 },
    Some("1e-10"),
    "Newton residual tolerance",
);
const GENUS: KeySpec = key("g", Kind::Int { min: 0, max: GENUS_MAX }, None, "genus");
const DEGREE: KeySpec = key("d", Kind::Int { min: 1, max: LEVEL_MAX }, None, "vortex number");
const POINTS: KeySpec = key(
    "points",
    Kind::Points,
    None,
    "vortex positions x,y;x,y in lattice coordinates",
);
const STEP: KeySpec = key("step", Kind::Float { min: 0.0, max: 0.1 }, None, "moduli stencil step");

pub fn keys(sub: Subcommand) -> Vec<KeySpec> {
    let res = |default| {
        key(
            "resolution",
            Kind::Pow2 { min: 32, max: 1024 },
            Some(default),
            "grid points per side",
        )
    };
    let torus_degree = key("d", Kind::Int { min: 1, max: 16 }, Some("1"), "vortex number");
    let mut out = match sub {
        Subcommand::Solve => vec![
            TAU,
            LEVEL,
            VOLUME,
            torus_degree,
            MODULUS,
            res("128"),
            TOLERANCE,
            key(
                "max_iter",
                Kind::Int { min: 1, max: 10_000 },
                Some("100"),
                "Newton iteration cap",
            ),
            POINTS,
        ],
        Subcommand::Metric => vec![
            TAU,
            LEVEL,
            VOLUME,
            torus_degree,
            MODULUS,
            res("64"),
            TOLERANCE,
            POINTS,
            key(
                "route",
                Kind::Choice(&["both", "deformation", "fiberint"]),
                Some("both"),
                "which route(s) to evaluate",
            ),
            STEP,
            key(
                "richardson",
                Kind::Bool,
                Some("false"),
                "Richardson-combine steps h and h/2",
            ),
        ],
        Subcommand::Volume => vec![
            TAU,
            LEVEL,
            VOLUME,
            MODULUS,
            res("64"),
            TOLERANCE,
            key(
                "grid",
                Kind::Int { min: 4, max: 64 },
                Some("8"),
                "moduli grid points per side",
            ),
            STEP,
        ],
        Subcommand::Classes => vec![
            GENUS,
            key("d", Kind::Int { min: 1, max: 1000 }, None, "vortex number"),
            TAU,
            LEVEL,
            VOLUME,
        ],
        Subcommand::Dims => vec![
            GENUS,
            DEGREE,
            key("k", Kind::Int { min: 1, max: LEVEL_MAX }, None, "level"),
            key(
                "h1",
                Kind::Int { min: 0, max: GENUS_MAX },
                Some("0"),
                "h¹ of the spinor-twisted bundle",
            ),
        ],
        Subcommand::Metaplectic => vec![key("g", Kind::Int { min: 0, max: 32 }, None, "genus"), DEGREE],
        Subcommand::Obstruction => vec![
            GENUS,
            key("k", Kind::Int { min: 1, max: 1000 }, None, "level"),
            key("d", Kind::Int { min: 1, max: 1000 }, None, "vortex number"),
        ],
        Subcommand::Zeta => vec![
            MODULUS,
            VOLUME,
            key(
                "t",
                Kind::Floats { min: 1.0, max: 64.0 },
                Some("2,3,4"),
                "points t > 1 where ζ(t) is reported",
            ),
            key(
                "spectrum_cutoff",
                Kind::Float { min: 0.0, max: 1e7 },
                None,
                "list eigenvalues of −Δ up to this value",
            ),
            res("64"),
        ],
        Subcommand::Sweep => vec![
            key(
                "what",
                Kind::Choice(&["dims", "metaplectic", "obstruction", "prequantum", "zeta"]),
                None,
                "quantity to tabulate",
            ),
            key(
                "g_min",
                Kind::Int { min: 0, max: GENUS_MAX },
                Some("0"),
                "smallest genus",
            ),
            key(
                "g_max",
                Kind::Int { min: 0, max: GENUS_MAX },
                Some("4"),
                "largest genus",
            ),
            key(
                "d_min",
                Kind::Int { min: 1, max: 1000 },
                Some("1"),
                "smallest vortex number",
            ),
            key(
                "d_max",
                Kind::Int { min: 1, max: 1000 },
                Some("8"),
                "largest vortex number",
            ),
            key("k_min", Kind::Int { min: 1, max: 1000 }, Some("1"), "smallest level"),
            key("k_max", Kind::Int { min: 1, max: 1000 }, Some("12"), "largest level"),
            key(
                "h1",
                Kind::Int { min: 0, max: GENUS_MAX },
                Some("0"),
                "h¹ for dims rows",
            ),
            key(
                "modulus_re",
                Kind::FloatClosed { min: -0.5, max: 0.5 },
                Some("0"),
                "Re ϖ for zeta rows",
            ),
            key(
                "im_min",
                Kind::Float { min: 0.0, max: 100.0 },
                Some("0.5"),
                "smallest Im ϖ",
            ),
            key(
                "im_max",
                Kind::Float { min: 0.0, max: 100.0 },
                Some("3"),
                "largest Im ϖ",
            ),
            key(
                "steps",
                Kind::Int { min: 1, max: 10_000 },
                Some("11"),
                "number of Im ϖ samples",
            ),
            VOLUME,
        ],
    };
    out.push(FORMAT);
    out.push(OUTPUT);
    out
}

/// Raw configuration: subcommand plus unparsed key-value pairs, file values
/// already overridden by flags.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub parameters: BTreeMap<String, String>,
    pub output_format: OutputFormat,
}

/// Flat `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::File {
            path: String::new(),
            reason: format!("line {}: expected `key = value`", lineno + 1),
        })?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(ConfigError::File {
                path: String::new(),
                reason: format!("line {}: empty key", lineno + 1),
            });
        }
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(ConfigError::Duplicate(k.to_string()));
        }
    }
    Ok(map)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let file_err = |reason: String| ConfigError::File {
        path: path.display().to_string(),
        reason,
    };
    let bytes = std::fs::read(path).map_err(|e| file_err(e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|_| file_err("not valid UTF-8".into()))?;
    parse_config_text(text.strip_prefix('\u{feff}').unwrap_or(&text)).map_err(|e| match e {
        ConfigError::File { reason, .. } => file_err(reason),
        other => other,
    })
}

impl RunConfig {
    /// File values first, then flags on top. Unknown keys are rejected here.
    pub fn from_sources(
        subcommand: Subcommand,
        file: Option<BTreeMap<String, String>>,
        flags: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, ConfigError> {
        let mut parameters = file.unwrap_or_default();
        parameters.extend(flags);
        let table = keys(subcommand);
        if let Some(bad) = parameters.keys().find(|k| !table.iter().any(|s| s.name == k.as_str())) {
            return Err(ConfigError::UnknownKey {
                key: bad.clone(),
                subcommand: subcommand.name().into(),
            });
        }
        let output_format = match parameters.get("format").map(String::as_str) {
            None | Some("json") => OutputFormat::Json,
            Some("csv") => OutputFormat::Csv,
            Some(other) => {
                return Err(ConfigError::invalid(
                    "format",
                    format!("expected json or csv, got `{other}`"),
                ))
            }
        };
        Ok(Self {
            subcommand,
            parameters,
            output_format,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(u64),
    Float(f64),
    Complex(Complex64),
    Points(Vec<(f64, f64)>),
    Floats(Vec<f64>),
    Bool(bool),
    Text(String),
}

fn parse_float(name: &str, s: &str) -> Result<f64, ConfigError> {
    let x: f64 = s
        .parse()
        .map_err(|_| ConfigError::invalid(name, format!("`{s}` is not a number")))?;
    if !x.is_finite() {
        return Err(ConfigError::invalid(name, "must be finite"));
    }
    Ok(x)
}

fn parse_pair(name: &str, s: &str) -> Result<(f64, f64), ConfigError> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| ConfigError::invalid(name, format!("expected `a,b`, got `{s}`")))?;
    Ok((parse_float(name, a.trim())?, parse_float(name, b.trim())?))
}

fn parse_value(spec: &KeySpec, s: &str) -> Result<Value, ConfigError> {
    let name = spec.name;
    let bad = |reason: String| ConfigError::invalid(name, reason);
    match spec.kind {
        Kind::Int { min, max } | Kind::Pow2 { min, max } => {
            let v: u64 = s
                .parse()
                .map_err(|_| bad(format!("`{s}` is not a nonnegative integer")))?;
            if v < min || v > max {
                return Err(bad(format!("{v} outside [{min}, {max}]")));
            }
            if matches!(spec.kind, Kind::Pow2 { .. }) && !v.is_power_of_two() {
                return Err(bad(format!("{v} is not a power of two")));
            }
            Ok(Value::Int(v))
        }
        Kind::Float { min, max } => {
            let v = parse_float(name, s)?;
            if !(v > min && v <= max) {
                return Err(bad(format!("{v} outside ({min}, {max}]")));
            }
            Ok(Value::Float(v))
        }
        Kind::FloatClosed { min, max } => {
            let v = parse_float(name, s)?;
            if !(v >= min && v <= max) {
                return Err(bad(format!("{v} outside [{min}, {max}]")));
            }
            Ok(Value::Float(v))
        }
        Kind::Modulus => {
            let (re, im) = parse_pair(name, s)?;
            if im <= 0.0 {
                return Err(bad(format!("imaginary part must be positive, got {im}")));
            }
            Ok(Value::Complex(Complex64::new(re, im)))
        }
        Kind::Points => {
            let pts = s
                .split(';')
                .filter(|p| !p.trim().is_empty())
                .map(|p| parse_pair(name, p.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            if pts.is_empty() {
                return Err(bad("no points given".into()));
            }
            Ok(Value::Points(pts))
        }
        Kind::Floats { min, max } => {
            let v = s
                .split(',')
                .map(|p| parse_float(name, p.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(x) = v.iter().find(|&&x| !(x > min && x <= max)) {
                return Err(bad(format!("{x} outside ({min}, {max}]")));
            }
            Ok(Value::Floats(v))
        }
        Kind::Bool => match s {
            "true" => Ok(Value::Bool(true)),
            "false" => Ok(Value::Bool(false)),
            _ => Err(bad(format!("expected true or false, got `{s}`"))),
        },
        Kind::Choice(options) => {
            if options.contains(&s) {
                Ok(Value::Text(s.into()))
            } else {
                Err(bad(format!("expected one of {}, got `{s}`", options.join(", "))))
            }
        }
        Kind::Path => {
            if s.is_empty() {
                return Err(bad("empty path".into()));
            }
            Ok(Value::Text(s.into()))
        }
    }
}

/// Typed, range-checked configuration in key-table order.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub subcommand: Subcommand,
    pub format: OutputFormat,
    pub values: Vec<(&'static str, Value)>,
}

impl Resolved {
    fn get(&self, name: &str) -> Option<&Value> {
        self.values.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }

    pub fn has(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn int(&self, name: &str) -> u64 {
        match self.get(name) {
            Some(Value::Int(v)) => *v,
            other => panic!("key `{name}` is not an integer: {other:?}"),
        }
    }

    pub fn float(&self, name: &str) -> f64 {
        match self.get(name) {
            Some(Value::Float(v)) => *v,
            Some(Value::Int(v)) => *v as f64,
            other => panic!("key `{name}` is not a number: {other:?}"),
        }
    }

    pub fn opt_float(&self, name: &str) -> Option<f64> {
        self.has(name).then(|| self.float(name))
    }

    pub fn complex(&self, name: &str) -> Complex64 {
        match self.get(name) {
            Some(Value::Complex(v)) => *v,
            other => panic!("key `{name}` is not a modulus: {other:?}"),
        }
    }

    pub fn points(&self, name: &str) -> Option<&[(f64, f64)]> {
        match self.get(name) {
            Some(Value::Points(v)) => Some(v),
            _ => None,
        }
    }

    pub fn floats(&self, name: &str) -> &[f64] {
        match self.get(name) {
            Some(Value::Floats(v)) => v,
            other => panic!("key `{name}` is not a list: {other:?}"),
        }
    }

    pub fn flag(&self, name: &str) -> bool {
        matches!(self.get(name), Some(Value::Bool(true)))
    }

    pub fn text(&self, name: &str) -> Option<&str> {
        match self.get(name) {
            Some(Value::Text(v)) => Some(v),
            _ => None,
        }
    }

    pub fn output(&self) -> Option<PathBuf> {
        self.text("output").map(PathBuf::from)
    }
}

fn require_order(r: &Resolved, lo: &str, hi: &str) -> Result<(), ConfigError> {
    if r.float(lo) > r.float(hi) {
        return Err(ConfigError::invalid(hi, format!("must be at least `{lo}`")));
    }
    Ok(())
}

pub fn resolve(cfg: &RunConfig) -> Result<Resolved, ConfigError> {
    let sub = cfg.subcommand;
    let mut values = Vec::new();
    for spec in keys(sub) {
        let raw = cfg.parameters.get(spec.name).map(String::as_str).or(spec.default);
        if let Some(raw) = raw {
            values.push((spec.name, parse_value(&spec, raw)?));
        }
    }
    let mut r = Resolved {
        subcommand: sub,
        format: cfg.output_format,
        values,
    };

    if sub.takes_tau() {
        match (r.has("tau"), r.has("k")) {
            (true, true) => return Err(ConfigError::invalid("k", "give either `tau` or `k`, not both")),
            (false, false) => return Err(ConfigError::Missing("tau".into())),
            (false, true) => {
                let tau = 4.0 * PI * r.float("k") / r.float("volume");
                let at = r.values.iter().position(|(k, _)| *k == "k").unwrap_or(0);
                r.values.insert(at, ("tau", Value::Float(tau)));
            }
            (true, false) => {}
        }
    }
    for spec in keys(sub) {
        let optional = matches!(spec.name, "points" | "step" | "output" | "spectrum_cutoff")
            || (sub.takes_tau() && matches!(spec.name, "tau" | "k"));
        if spec.default.is_none() && !optional && !r.has(spec.name) {
            return Err(ConfigError::Missing(spec.name.into()));
        }
    }
    match sub {
        Subcommand::Solve | Subcommand::Metric => {
            if let Some(pts) = r.points("points") {
                let d = r.int("d");
                if pts.len() as u64 != d {
                    return Err(ConfigError::invalid(
                        "points",
                        format!("{} points given for d = {d}", pts.len()),
                    ));
                }
            }
        }
        Subcommand::Sweep => {
            require_order(&r, "g_min", "g_max")?;
            require_order(&r, "d_min", "d_max")?;
            require_order(&r, "k_min", "k_max")?;
            require_order(&r, "im_min", "im_max")?;
            let what = r.text("what").unwrap_or_default();
            if what == "metaplectic" && r.int("g_max") > 32 {
                return Err(ConfigError::invalid("g_max", "metaplectic sweeps go up to g = 32"));
            }
            let span = |a: &str, b: &str| r.int(b) - r.int(a) + 1;
            let rows = match what {
                "zeta" => r.int("steps"),
                "metaplectic" => span("g_min", "g_max") * span("d_min", "d_max"),
                _ => span("g_min", "g_max") * span("d_min", "d_max") * span("k_min", "k_max"),
            };
            if rows > 2_000_000 {
                return Err(ConfigError::invalid(
                    "k_max",
                    format!("sweep of {rows} rows is too large"),
                ));
            }
        }
        _ => {}
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(sub: Subcommand, pairs: &[(&str, &str)]) -> Result<RunConfig, ConfigError> {
        RunConfig::from_sources(sub, None, pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())))
    }

    #[test]
    fn file_parsing_and_override() {
        let file = parse_config_text("# run\n g = 2 \nd=2 # inline\n\nk = 5\n").unwrap();
        let c = RunConfig::from_sources(Subcommand::Dims, Some(file), [("k".to_string(), "3".to_string())]).unwrap();
        let r = resolve(&c).unwrap();
        assert_eq!(r.int("k"), 3);
        assert_eq!(r.int("g"), 2);
        assert_eq!(r.int("h1"), 0);
        assert_eq!(r.format, OutputFormat::Json);
    }

    #[test]
    fn errors_name_the_key() {
        let e = cfg(Subcommand::Dims, &[("genus", "2")]).unwrap_err();
        assert_eq!(e.key(), Some("genus"));
        let e = resolve(&cfg(Subcommand::Solve, &[("tau", "10"), ("resolution", "100")]).unwrap()).unwrap_err();
        assert_eq!(e.key(), Some("resolution"));
        let e = resolve(&cfg(Subcommand::Solve, &[("tau", "-1")]).unwrap()).unwrap_err();
        assert_eq!(e.key(), Some("tau"));
        let e = resolve(&cfg(Subcommand::Dims, &[("g", "2"), ("d", "1")]).unwrap()).unwrap_err();
        assert_eq!(e, ConfigError::Missing("k".into()));
        let e = resolve(&cfg(Subcommand::Solve, &[("tau", "30"), ("k", "2")]).unwrap()).unwrap_err();
        assert_eq!(e.key(), Some("k"));
        let e =
            resolve(&cfg(Subcommand::Solve, &[("tau", "30"), ("d", "2"), ("points", "0.1,0.1")]).unwrap()).unwrap_err();
        assert_eq!(e.key(), Some("points"));
        let e = resolve(&cfg(Subcommand::Zeta, &[("modulus", "0,-1")]).unwrap()).unwrap_err();
        assert_eq!(e.key(), Some("modulus"));
        assert_eq!(
            parse_config_text("a = 1\na = 2").unwrap_err(),
            ConfigError::Duplicate("a".into())
        );
        assert!(parse_config_text("no equals sign").is_err());
    }

    #[test]
    fn level_sets_tau() {
        let r = resolve(
            &cfg(
                Subcommand::Classes,
                &[("g", "1"), ("d", "1"), ("k", "2"), ("volume", "2")],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(r.float("tau"), 4.0 * PI * 2.0 / 2.0);
    }
}
