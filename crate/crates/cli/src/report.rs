//! Report assembly: JSON with fixed key order and 17-significant-digit
//! floats, CSV tables, atomic file writes.

use std::fmt::Display;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{Map, Number, Value as Json};

use crate::config::{Resolved, Value};

/// `x` with 17 significant digits; `null` when not finite.
pub fn num(x: f64) -> Json {
    if x.is_finite() {
        Json::Number(Number::from_str(&fmt_float(x)).expect("formatted float is valid JSON"))
    } else {
        Json::Null
    }
}

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Integer of any width, emitted verbatim.
pub fn int(x: impl Display) -> Json {
    Json::Number(Number::from_str(&x.to_string()).expect("integer is valid JSON"))
}

/// Exact rational as `"p/q"`, or `"p"` when integral.
pub fn rational(q: &BigRational) -> Json {
    Json::String(fmt_rational(q))
}

pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn complex(z: Complex64) -> Json {
    Json::Array(vec![num(z.re), num(z.im)])
}

pub fn floats(xs: &[f64]) -> Json {
    Json::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Insertion-ordered JSON object.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Obj(pub Map<String, Json>);

impl Obj {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(mut self, key: &str, value: impl Into<Json>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Json>) {
        self.0.insert(key.to_string(), value.into());
    }
}

impl From<Obj> for Json {
    fn from(o: Obj) -> Self {
        Json::Object(o.0)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Json>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Json>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Rows as JSON arrays, for reports that carry their table inline.
    pub fn to_json(&self) -> Json {
        Obj::new()
            .put("columns", self.header.clone())
            .put(
                "rows",
                self.rows.iter().map(|r| Json::Array(r.clone())).collect::<Vec<_>>(),
            )
            .into()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Precondition not met; an answer, not a crash.
    Domain,
    Internal,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Ok => 0,
            Self::Domain => 2,
            Self::Internal => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Ok => "ok",
            Self::Domain => "domain_error",
            Self::Internal => "internal_error",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub result: Obj,
    pub table: Option<Table>,
    pub error: Option<Failure>,
}

impl Outcome {
    pub fn ok(result: Obj, table: Option<Table>) -> Self {
        Self {
            status: Status::Ok,
            result,
            table,
            error: None,
        }
    }

    pub fn failed(status: Status, kind: &str, message: impl Into<String>, result: Obj) -> Self {
        Self {
            status,
            result,
            table: None,
            error: Some(Failure {
                kind: kind.into(),
                message: message.into(),
            }),
        }
    }
}

fn config_value(v: &Value) -> Json {
    match v {
        Value::Int(x) => int(x),
        Value::Float(x) => num(*x),
        Value::Complex(z) => complex(*z),
        Value::Points(p) => Json::Array(p.iter().map(|&(x, y)| floats(&[x, y])).collect()),
        Value::Floats(x) => floats(x),
        Value::Bool(b) => Json::Bool(*b),
        Value::Text(s) => Json::String(s.clone()),
    }
}

fn config_json(cfg: &Resolved) -> Json {
    let mut o = Obj::new();
    for (k, v) in &cfg.values {
        o.set(k, config_value(v));
    }
    o.into()
}

pub fn render_json(cfg: &Resolved, out: &Outcome) -> String {
    let mut o = Obj::new()
        .put("tool", "vortexq")
        .put("version", vortexq::VERSION)
        .put("subcommand", cfg.subcommand.name())
        .put("config", config_json(cfg))
        .put("status", out.status.name())
        .put("exit_code", out.status.exit_code())
        .put("result", out.result.clone());
    if let Some(f) = &out.error {
        o.set(
            "error",
            Obj::new()
                .put("kind", f.kind.as_str())
                .put("message", f.message.as_str()),
        );
    }
    let mut s = serde_json::to_string_pretty(&Json::from(o)).expect("report serializes");
    s.push('\n');
    s
}

fn flatten(prefix: &str, v: &Json, table: &mut Table) {
    match v {
        Json::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, table);
            }
        }
        other => table.push(vec![Json::String(prefix.into()), other.clone()]),
    }
}

fn cell(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Null => String::new(),
        other => other.to_string(),
    }
}

/// Header comments carry version, status and the resolved configuration;
/// without a natural table the result is flattened to `key,value` rows.
pub fn render_csv(cfg: &Resolved, out: &Outcome) -> String {
    let mut buf = Vec::new();
    writeln!(
        buf,
        "# vortexq {} {} status={}",
        vortexq::VERSION,
        cfg.subcommand.name(),
        out.status.name()
    )
    .unwrap();
    for (k, v) in &cfg.values {
        let shown = match config_value(v) {
            Json::String(s) => s,
            other => other.to_string(),
        };
        writeln!(buf, "# {k} = {shown}").unwrap();
    }
    if let Some(f) = &out.error {
        writeln!(buf, "# error {}: {}", f.kind, f.message.replace('\n', " ")).unwrap();
    }
    let flat;
    let table = match &out.table {
        Some(t) => t,
        None => {
            let mut t = Table::new(&["key", "value"]);
            flatten("", &Json::from(out.result.clone()), &mut t);
            flat = t;
            &flat
        }
    };
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(&table.header).unwrap();
        for row in &table.rows {
            w.write_record(row.iter().map(cell)).unwrap();
        }
        w.flush().unwrap();
    }
    String::from_utf8(buf).expect("csv is UTF-8")
}

/// Write to a temporary file beside `path`, then rename over it.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
