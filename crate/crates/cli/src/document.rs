//! The JSON solution document.

use std::fmt;

use serde_json::{json, Map, Value};

use qes2_core::geometry::SphereSolution;
use qes2_core::grid::chebyshev;
use qes2_core::prolongation::omega;
use qes2_core::{AdmissibleRange, ModelParams, Profile, RootPair};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub x: f64,
    pub b: f64,
    pub b1: f64,
    pub b2: f64,
    pub r: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionDocument {
    pub m: f64,
    pub lambda: f64,
    pub c: f64,
    pub x1: f64,
    pub x2: f64,
    pub period: f64,
    pub c_range: AdmissibleRange,
    pub alpha: f64,
    pub b0: f64,
    pub grid: Option<Vec<GridRow>>,
}

fn num(v: f64) -> Value {
    // unbounded range ends become null
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}

fn range_to_json(r: &AdmissibleRange) -> Value {
    match *r {
        AdmissibleRange::Empty => json!({ "kind": "empty" }),
        AdmissibleRange::Open { lower, upper } => json!({ "kind": "open", "lower": num(lower), "upper": num(upper) }),
    }
}

fn range_from_json(v: &Value) -> Result<AdmissibleRange, String> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or("c_range.kind missing")?;
    let bound = |key: &str, inf: f64| match v.get(key) {
        Some(Value::Null) => Ok(inf),
        Some(x) => x.as_f64().ok_or(format!("c_range.{key} is not a number")),
        None => Err(format!("c_range.{key} missing")),
    };
    match kind {
        "empty" => Ok(AdmissibleRange::Empty),
        "open" => Ok(AdmissibleRange::Open {
            lower: bound("lower", f64::NEG_INFINITY)?,
            upper: bound("upper", f64::INFINITY)?,
        }),
        other => Err(format!("unknown c_range kind {other:?}")),
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
impl fmt::Display for SolutionDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_string_pretty(&self.to_json()).map_err(|_| fmt::Error)?;
        writeln!(f, "{s}")
    }
}

impl SolutionDocument {
    pub fn from_solution(
        sol: &SphereSolution,
        c_range: AdmissibleRange,
        grid: Option<usize>,
    ) -> Result<Self, qes2_core::Error> {
        let p = sol.params();
        let rows = match grid {
            None => None,
            Some(n) => {
                let mut rows = Vec::with_capacity(n);
                for x in chebyshev(sol.roots.x1, sol.roots.x2, n) {
                    let e = sol.eval(x)?;
                    rows.push(GridRow { x, b: e.b, b1: e.b1, b2: e.b2, r: -e.b2, omega: omega(sol, x)? });
                }
                Some(rows)
            }
        };
        Ok(Self {
            m: p.m,
            lambda: p.lambda,
            c: p.c,
            x1: sol.roots.x1,
            x2: sol.roots.x2,
            period: sol.period,
            c_range,
            alpha: sol.profile.alpha().0,
            b0: sol.profile.value(0.0)?,
            grid: rows,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
        doc.insert("params".into(), json!({ "m": num(self.m), "lambda": num(self.lambda), "c": num(self.c) }));
        doc.insert("roots".into(), json!({ "x1": num(self.x1), "x2": num(self.x2) }));
        doc.insert("period".into(), num(self.period));
        doc.insert(
            "derived".into(),
            json!({ "c_range": range_to_json(&self.c_range), "alpha": num(self.alpha), "B0": num(self.b0) }),
        );
        if let Some(rows) = &self.grid {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "x": num(r.x), "B": num(r.b), "B1": num(r.b1), "B2": num(r.b2), "R": num(r.r), "Omega": num(r.omega) }))
                .collect();
            doc.insert("grid".into(), Value::Array(rows));
        }
        Value::Object(doc)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let v: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        let version = v.get("schema_version").and_then(Value::as_u64).ok_or("schema_version missing")?;
        if version != SCHEMA_VERSION {
            return Err(format!("unsupported schema_version {version}"));
        }
        let field = |path: &[&str]| -> Result<f64, String> {
            let mut cur = &v;
            for k in path {
                cur = cur.get(k).ok_or_else(|| format!("{} missing", path.join(".")))?;
            }
            cur.as_f64().ok_or_else(|| format!("{} is not a number", path.join(".")))
        };
        let derived = v.get("derived").ok_or("derived missing")?;
        let grid = match v.get("grid") {
            None | Some(Value::Null) => None,
            Some(Value::Array(rows)) => {
                let mut out = Vec::with_capacity(rows.len());
                for row in rows {
                    let g = |k: &str| row.get(k).and_then(Value::as_f64).ok_or(format!("grid row field {k} missing"));
                    out.push(GridRow {
                        x: g("x")?,
                        b: g("B")?,
                        b1: g("B1")?,
                        b2: g("B2")?,
                        r: g("R")?,
                        omega: g("Omega")?,
                    });
                }
                Some(out)
            }
            Some(_) => return Err("grid is not an array".into()),
        };
        Ok(Self {
            m: field(&["params", "m"])?,
            lambda: field(&["params", "lambda"])?,
            c: field(&["params", "c"])?,
            x1: field(&["roots", "x1"])?,
            x2: field(&["roots", "x2"])?,
            period: field(&["period"])?,
            c_range: range_from_json(derived.get("c_range").ok_or("derived.c_range missing")?)?,
            alpha: field(&["derived", "alpha"])?,
            b0: field(&["derived", "B0"])?,
            grid,
        })
    }

    /// Rebuilds the solution with the roots and period stored in the document.
    pub fn to_solution(&self) -> Result<SphereSolution, qes2_core::Error> {
        let profile = Profile::new(ModelParams::sphere(self.m, self.lambda, self.c))?;
        let db1 = profile.eval(self.x1)?.b1;
        let db2 = profile.eval(self.x2)?.b1;
        let roots = RootPair::new(self.x1, self.x2, db1, db2);
        Ok(SphereSolution { profile, roots, period: self.period })
    }
}
