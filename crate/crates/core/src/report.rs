//! Machine-readable run reports shared by the command-line front end.

use serde::{Deserialize, Serialize};

use crate::bounds::LowerBound;
use crate::bracket::{BoundBracket, Provenance};
use crate::eigen::GapEstimate;

/// Serde helpers writing non-finite floats as the strings "inf", "-inf", "nan".
pub mod float {
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    struct FloatVisitor;

    impl Visitor<'_> for FloatVisitor {
        type Value = f64;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a number or one of \"inf\", \"-inf\", \"nan\"")
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            match v {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        d.deserialize_any(FloatVisitor)
    }

    /// Same encoding for optional values.
    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            #[derive(Deserialize)]
            struct Wrap(#[serde(with = "super")] f64);
            Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportInputs {
    pub family: Option<String>,
    pub n: Option<u32>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub weight: Option<String>,
    pub n_cells: usize,
    pub tail_tol: f64,
    pub seed: u64,
    pub count: Option<usize>,
    pub function: Option<String>,
    pub scope: Option<String>,
    pub id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedBracket {
    pub name: String,
    #[serde(flatten)]
    pub bracket: BoundBracket,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    #[serde(with = "float")]
    pub value: f64,
    pub source: Provenance,
    /// "informative", "non-informative", "grid-infimum" or "not-applicable".
    pub status: String,
    pub note: Option<String>,
}

impl NamedValue {
    pub fn new(name: &str, value: f64, source: Provenance) -> Self {
        NamedValue { name: name.into(), value, source, status: "informative".into(), note: None }
    }

    pub fn from_lower(name: &str, bound: &LowerBound, source: Provenance) -> Self {
        let status = serde_json::to_value(bound.status)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        NamedValue {
            name: name.into(),
            value: bound.value,
            source,
            status,
            note: bound.argmin.map(|r| format!("argmin r = {r:e}")),
        }
    }

    pub fn not_applicable(name: &str, source: Provenance, why: String) -> Self {
        NamedValue { name: name.into(), value: f64::NAN, source, status: "not-applicable".into(), note: Some(why) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub function: String,
    pub count: usize,
    pub seed: u64,
    pub ratio: f64,
    pub ci_half_width: f64,
    pub batches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(with = "float")]
    pub measured: f64,
    #[serde(with = "float")]
    pub expected: f64,
    /// Signed margin; negative means violated.
    #[serde(with = "float")]
    pub slack: f64,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    #[serde(with = "cells")]
    pub cells: Vec<Option<f64>>,
}

mod cells {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Cell(#[serde(with = "super::float::option")] Option<f64>);

    pub fn serialize<S: Serializer>(v: &[Option<f64>], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|c| Cell(*c)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Option<f64>>, D::Error> {
        Ok(Vec::<Cell>::deserialize(d)?.into_iter().map(|c| c.0).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Warning { warnings: Vec<String> },
    Error { message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: ReportInputs,
    pub brackets: Vec<NamedBracket>,
    pub values: Vec<NamedValue>,
    pub solver: Option<GapEstimate>,
    pub monte_carlo: Option<MonteCarloSummary>,
    pub checks: Vec<CheckResult>,
    pub table: Option<Table>,
    pub status: Status,
}

/// Header row of the CSV form of every report except `table`.
pub const CSV_HEADER: &str = "kind,name,lower,upper,value,error,source,status";

fn csv_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        String::new()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl RunReport {
    pub fn new(command: &str, inputs: ReportInputs) -> Self {
        RunReport {
            command: command.into(),
            inputs,
            brackets: Vec::new(),
            values: Vec::new(),
            solver: None,
            monte_carlo: None,
            checks: Vec::new(),
            table: None,
            status: Status::Ok,
        }
    }

    pub fn warn(&mut self, msg: String) {
        match &mut self.status {
            Status::Ok => self.status = Status::Warning { warnings: vec![msg] },
            Status::Warning { warnings } => warnings.push(msg),
            Status::Error { .. } => {}
        }
    }

    pub fn failed_checks(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.table {
            out.push_str("label,");
            out.push_str(&t.columns.join(","));
            out.push('\n');
            for row in &t.rows {
                out.push_str(&csv_text(&row.label));
                for c in &row.cells {
                    out.push(',');
                    out.push_str(&c.map(csv_num).unwrap_or_default());
                }
                out.push('\n');
            }
            return out;
        }
        out.push_str(CSV_HEADER);
        out.push('\n');
        let mut line = |fields: [String; 8]| {
            out.push_str(&fields.join(","));
            out.push('\n');
        };
        for b in &self.brackets {
            line([
                "bracket".into(),
                csv_text(&b.name),
                csv_num(b.bracket.lower),
                csv_num(b.bracket.upper),
                String::new(),
                String::new(),
                csv_text(&format!("{}/{}", b.bracket.lower_source, b.bracket.upper_source)),
                String::new(),
            ]);
        }
        for v in &self.values {
            line([
                "value".into(),
                csv_text(&v.name),
                String::new(),
                String::new(),
                csv_num(v.value),
                String::new(),
                v.source.to_string(),
                v.status.clone(),
            ]);
        }
        if let Some(s) = &self.solver {
            line([
                "solver".into(),
                "radial-gap".into(),
                String::new(),
                String::new(),
                csv_num(s.value),
                csv_num(s.error_estimate),
                Provenance::Eigensolver.to_string(),
                if s.warnings.is_empty() { "ok".into() } else { "warning".into() },
            ]);
        }
        if let Some(m) = &self.monte_carlo {
            line([
                "monte-carlo".into(),
                csv_text(&m.function),
                csv_num(m.ratio - m.ci_half_width),
                csv_num(m.ratio + m.ci_half_width),
                csv_num(m.ratio),
                csv_num(m.ci_half_width),
                Provenance::RayleighQuotient.to_string(),
                String::new(),
            ]);
        }
        for c in &self.checks {
            line([
                "check".into(),
                csv_text(&c.name),
                String::new(),
                csv_num(c.expected),
                csv_num(c.measured),
                csv_num(c.slack),
                String::new(),
                if c.passed { "pass".into() } else { "fail".into() },
            ]);
        }
        out
    }
}
