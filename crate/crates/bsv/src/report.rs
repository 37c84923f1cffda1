//! Verification reports and their JSON / text forms.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Witnessed,
    Asserted,
    /// Passed, but computed modulo this prime.
    CertifiedModP(u64),
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Witnessed => "witnessed",
            Status::Asserted => "asserted",
            Status::CertifiedModP(_) => "certified-mod-p",
        }
    }

    pub fn is_fail(&self) -> bool {
        *self == Status::Fail
    }

    pub fn label(&self) -> String {
        match self {
            Status::CertifiedModP(p) => format!("mod-p({p})"),
            s => s.as_str().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub id: String,
    pub status: Status,
    pub details: String,
    /// Structured payload (chart data, residues, ...).
    pub data: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionData {
    pub gamma_order: u64,
    pub h_order: u64,
    pub hprime_order: u64,
    pub quotient_order: u64,
    pub nontrivial: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChecklistEntry {
    pub id: String,
    pub status: Status,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub scenario: String,
    pub field: String,
    /// Prime used for modular certificates.
    pub prime: u64,
    pub exact: bool,
    pub checks: Vec<Record>,
    pub obstruction: Option<ObstructionData>,
    pub checklist: Vec<ChecklistEntry>,
    pub local_models: Vec<Value>,
    pub notes: Vec<String>,
    pub timing_ms: u128,
}

pub const SCHEMA_VERSION: &str = "1";

impl Report {
    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|r| r.status.is_fail()) || self.checklist.iter().any(|c| c.status.is_fail())
    }

    pub fn get(&self, id: &str) -> Option<&Record> {
        self.checks.iter().find(|r| r.id == id)
    }

    /// JSON value; serde_json's default map is ordered, so keys come out
    /// sorted.
    pub fn to_json(&self) -> Value {
        let status = |s: &Status, m: &mut Map<String, Value>| {
            m.insert("status".into(), json!(s.as_str()));
            if let Status::CertifiedModP(p) = s {
                m.insert("prime".into(), json!(p));
            }
        };
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("id".into(), json!(r.id));
                m.insert("details".into(), json!(r.details));
                status(&r.status, &mut m);
                if let Some(d) = &r.data {
                    m.insert("data".into(), d.clone());
                }
                Value::Object(m)
            })
            .collect();
        let checklist: Vec<Value> = self
            .checklist
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("id".into(), json!(c.id));
                m.insert("details".into(), json!(c.details));
                status(&c.status, &mut m);
                Value::Object(m)
            })
            .collect();
        let obstruction = match &self.obstruction {
            Some(o) => json!({
                "gamma_order": o.gamma_order,
                "H_order": o.h_order,
                "Hprime_order": o.hprime_order,
                "quotient_order": o.quotient_order,
                "nontrivial": o.nontrivial,
                "checklist": checklist,
            }),
            None => json!({ "checklist": checklist }),
        };
        json!({
            "schema": SCHEMA_VERSION,
            "scenario": self.scenario,
            "field": self.field,
            "prime": self.prime,
            "exact": self.exact,
            "checks": checks,
            "obstruction": obstruction,
            "local_models": self.local_models,
            "notes": self.notes,
            "ok": !self.has_failures(),
            "timing_ms": self.timing_ms as u64,
            "toolchain": {
                "package": env!("CARGO_PKG_NAME"),
                "version": env!("CARGO_PKG_VERSION"),
                "commit": option_env!("BSV_COMMIT").unwrap_or("unknown"),
            },
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
        s.push('\n');
        s
    }

    /// One line per check, status column aligned.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String, String)> =
            self.checks.iter().map(|r| (r.id.clone(), r.status.label(), r.details.clone())).collect();
        rows.extend(self.checklist.iter().map(|c| (format!("checklist/{}", c.id), c.status.label(), c.details.clone())));
        let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let sw = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
        let mut out = format!("scenario {} (field {}, prime {})\n", self.scenario, self.field, self.prime);
        for (id, st, d) in rows {
            out.push_str(&format!("{id:<w$}  {st:<sw$}  {d}\n"));
        }
        if let Some(o) = &self.obstruction {
            out.push_str(&format!(
                "obstruction: gamma {} H {} H' {} quotient {} nontrivial {}\n",
                o.gamma_order, o.h_order, o.hprime_order, o.quotient_order, o.nontrivial
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!("result: {}\n", if self.has_failures() { "FAIL" } else { "OK" }));
        out
    }
}

/// JSON for comparisons across runs: the timing field removed.
pub fn without_timing(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.remove("timing_ms");
    }
    v
}

/// JSON Schema (draft 2020-12) of the report.
pub fn schema() -> Value {
    let status = json!({ "enum": ["pass", "fail", "witnessed", "asserted", "certified-mod-p"] });
    let record = json!({
        "type": "object",
        "required": ["id", "status", "details"],
        "properties": {
            "id": { "type": "string" },
            "status": status,
            "prime": { "type": "integer", "description": "present when status is certified-mod-p" },
            "details": { "type": "string" },
            "data": {}
        }
    });
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "bsv verification report",
        "type": "object",
        "required": ["schema", "scenario", "field", "prime", "exact", "checks", "obstruction", "local_models", "ok", "timing_ms", "toolchain"],
        "properties": {
            "schema": { "const": SCHEMA_VERSION },
            "scenario": { "type": "string" },
            "field": { "type": "string" },
            "prime": { "type": "integer" },
            "exact": { "type": "boolean" },
            "checks": { "type": "array", "items": record },
            "obstruction": {
                "type": "object",
                "required": ["checklist"],
                "properties": {
                    "gamma_order": { "type": "integer" },
                    "H_order": { "type": "integer" },
                    "Hprime_order": { "type": "integer" },
                    "quotient_order": { "type": "integer" },
                    "nontrivial": { "type": "boolean" },
                    "checklist": { "type": "array", "items": record }
                }
            },
            "local_models": { "type": "array" },
            "notes": { "type": "array", "items": { "type": "string" } },
            "ok": { "type": "boolean" },
            "timing_ms": { "type": "integer", "description": "excluded from determinism comparisons" },
            "toolchain": { "type": "object" }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty() -> Report {
        Report {
            scenario: "t".into(),
            field: "qw".into(),
            prime: 10009,
            exact: false,
            checks: vec![],
            obstruction: None,
            checklist: vec![],
            local_models: vec![],
            notes: vec![],
            timing_ms: 5,
        }
    }

    #[test]
    fn empty_check_list() {
        let v = empty().to_json();
        assert_eq!(v["checks"], json!([]));
        assert_eq!(v["schema"], "1");
    }

    #[test]
    fn keys_sorted_and_text_aligned() {
        let mut r = empty();
        r.checks.push(Record { id: "a".into(), status: Status::Pass, details: "x".into(), data: None });
        r.checks.push(Record { id: "longer-id".into(), status: Status::CertifiedModP(7), details: "y".into(), data: None });
        let s = r.to_json_string();
        let keys: Vec<usize> = ["\"checks\"", "\"exact\"", "\"field\"", "\"schema\""].iter().map(|k| s.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let t = r.to_text();
        let lines: Vec<&str> = t.lines().skip(1).take(2).collect();
        assert_eq!(lines[0].find("pass"), lines[1].find("mod-p"));
        assert!(!r.has_failures());
    }
}
