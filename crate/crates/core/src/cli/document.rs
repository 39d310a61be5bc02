//! The versioned report document and its JSON, CSV and table renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenarios::VerificationReport;

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingInfo {
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub order: String,
}

/// A labelled value from an algebra command (`gb`, `nf`, ...).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    /// Invocation parameters as strings, keyed by flag name.
    pub params: BTreeMap<String, String>,
    pub ring: Option<RingInfo>,
    pub items: Vec<Item>,
    pub reports: Vec<VerificationReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            params: BTreeMap::new(),
            ring: None,
            items: Vec::new(),
            reports: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn item(&mut self, label: impl Into<String>, value: impl Into<String>) {
        self.items.push(Item {
            label: label.into(),
            value: value.into(),
        });
    }

    pub fn budget_exceeded(&self) -> bool {
        self.reports.iter().any(|r| r.budget_exceeded)
    }

    /// Exploratory reports do not count as failures.
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.exploratory || r.passed())
    }

    /// 0 when everything passed, 1 on a failed verification, 3 when a budget
    /// stopped a computation.
    pub fn exit_code(&self) -> i32 {
        if self.budget_exceeded() {
            3
        } else if self.all_passed() {
            0
        } else {
            1
        }
    }

    /// Canonical JSON: keys sorted, integers only, trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self).map_err(|e| Error::Io(e.to_string()))?;
        let mut s = serde_json::to_string_pretty(&value).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ReportDocument = serde_json::from_str(text).map_err(|e| Error::Io(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Io(format!(
                "schema version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    /// Per-n length rows when any report has them, coefficient rows when only
    /// fits are present, otherwise the items.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        if self.reports.iter().any(|r| !r.rows.is_empty()) {
            w.write_record(["report", "n", "observed", "predicted", "route", "closure"])
                .map_err(io)?;
            for rep in &self.reports {
                for row in &rep.rows {
                    let predicted = row.predicted.map(|p| p.to_string()).unwrap_or_default();
                    w.write_record([
                        rep.title.as_str(),
                        &row.n.to_string(),
                        &row.observed.to_string(),
                        &predicted,
                        &row.route,
                        &row.closure,
                    ])
                    .map_err(io)?;
                }
            }
        } else if !self.reports.is_empty() {
            w.write_record(["report", "j", "fitted", "predicted"]).map_err(io)?;
            for rep in &self.reports {
                let len = rep
                    .fitted
                    .as_ref()
                    .map_or(0, Vec::len)
                    .max(rep.predicted.as_ref().map_or(0, Vec::len));
                for j in 0..len {
                    let get = |v: &Option<Vec<i64>>| v.as_ref().and_then(|v| v.get(j)).map(|x| x.to_string());
                    w.write_record([
                        rep.title.clone(),
                        j.to_string(),
                        get(&rep.fitted).unwrap_or_default(),
                        get(&rep.predicted).unwrap_or_default(),
                    ])
                    .map_err(io)?;
                }
            }
        } else {
            w.write_record(["label", "value"]).map_err(io)?;
            for it in &self.items {
                w.write_record([&it.label, &it.value]).map_err(io)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if let Some(ring) = &self.ring {
            let _ = writeln!(
                out,
                "ring: F_{}[{}], order {}",
                ring.characteristic,
                ring.variables.join(", "),
                ring.order
            );
        }
        let width = self.items.iter().map(|i| i.label.len()).max().unwrap_or(0);
        for it in &self.items {
            let _ = writeln!(out, "{:<width$}  {}", it.label, it.value);
        }
        for rep in &self.reports {
            write_report(&mut out, rep);
        }
        out
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Table => Ok(self.to_table()),
        }
    }
}

fn write_report(out: &mut String, rep: &VerificationReport) {
    let _ = writeln!(out, "\n{}: {} ({} ms)", rep.title, rep.verdict(), rep.elapsed_ms);
    if !rep.rows.is_empty() {
        let _ = writeln!(
            out,
            "  {:>3}  {:>9}  {:>9}  {:<17}  closure",
            "n", "observed", "predicted", "route"
        );
        for row in &rep.rows {
            let predicted = row.predicted.map_or("-".to_string(), |p| p.to_string());
            let _ = writeln!(
                out,
                "  {:>3}  {:>9}  {:>9}  {:<17}  {}",
                row.n, row.observed, predicted, row.route, row.closure
            );
            if !row.evidence.is_empty() {
                let _ = writeln!(out, "       evidence: {}", row.evidence);
            }
        }
    }
    if let Some(f) = &rep.fitted {
        let _ = writeln!(out, "  fitted    e = {f:?}");
    }
    if let Some(p) = &rep.predicted {
        let _ = writeln!(out, "  predicted e = {p:?}");
    }
    for a in &rep.assertions {
        let tag = if a.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "  [{tag}] {}: {}", a.name, a.detail);
    }
    for n in &rep.notes {
        let _ = writeln!(out, "  note: {n}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::LengthRow;

    fn sample() -> ReportDocument {
        let mut doc = ReportDocument::new("verify");
        doc.param("scenario", "5,4,4");
        let mut rep = VerificationReport::new("scenario 5,4,4", vec![5, 4, 4], 2);
        for (n, l) in [(1, 3), (2, 13)] {
            rep.rows.push(LengthRow {
                n,
                observed: l,
                predicted: Some(l),
                route: "f-pure-colon".into(),
                closure: format!("I^{n} + m^{}", n + 2),
                evidence: String::new(),
            });
        }
        rep.assert("lengths", true, "ok");
        doc.reports.push(rep);
        doc
    }

    #[test]
    fn json_round_trip() {
        let doc = sample();
        let text = doc.to_json().unwrap();
        assert_eq!(ReportDocument::from_json(&text).unwrap(), doc);
        fn no_floats(v: &serde_json::Value) -> bool {
            match v {
                serde_json::Value::Number(n) => !n.is_f64(),
                serde_json::Value::Array(a) => a.iter().all(no_floats),
                serde_json::Value::Object(o) => o.values().all(no_floats),
                _ => true,
            }
        }
        assert!(no_floats(&serde_json::from_str(&text).unwrap()));
        let keys: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn csv_rows() {
        let csv = sample().to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "report,n,observed,predicted,route,closure");
        assert!(lines[1].starts_with("\"scenario 5,4,4\",1,3,3,"));
        assert!(lines[2].starts_with("\"scenario 5,4,4\",2,13,13,"));
    }

    #[test]
    fn exit_codes() {
        let mut doc = sample();
        assert_eq!(doc.exit_code(), 0);
        doc.reports[0].assert("x", false, "");
        assert_eq!(doc.exit_code(), 1);
        doc.reports[0].budget_exceeded = true;
        assert_eq!(doc.exit_code(), 3);
    }

    #[test]
    fn wrong_schema_rejected() {
        let text = sample()
            .to_json()
            .unwrap()
            .replace("\"schema_version\": 1", "\"schema_version\": 99");
        assert!(ReportDocument::from_json(&text).is_err());
    }
}
