//! Structured verification reports shared by every checking operation.

use std::fmt;

use serde_json::{json, Map, Number, Value};

/// Exact integer as a JSON number, no float rounding.
pub fn json_int<T: fmt::Display>(value: T) -> Value {
    let number: Number = value
        .to_string()
        .parse()
        .expect("decimal integers are valid JSON numbers");
    Value::Number(number)
}

/// One named check with its outcome and the values that decided it.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Non-contractual diagnostics never fail a report.
    pub contractual: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
            contractual: true,
        }
    }

    pub fn diagnostic(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            contractual: false,
            ..Self::new(name, passed, detail)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// True when every contractual check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.contractual).all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.contractual && !c.passed)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "passed": c.passed,
                    "contractual": c.contractual,
                    "detail": c.detail,
                })
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("title".into(), Value::String(self.title.clone()));
        obj.insert("passed".into(), Value::Bool(self.passed()));
        obj.insert("checks".into(), Value::Array(checks));
        Value::Object(obj)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        for c in &self.checks {
            let tag = match (c.contractual, c.passed) {
                (true, true) => "PASS",
                (true, false) => "FAIL",
                (false, true) => "note",
                (false, false) => "note!",
            };
            writeln!(f, "[{tag}] {}: {}", c.name, c.detail)?;
        }
        let total = self.checks.iter().filter(|c| c.contractual).count();
        let failed = self.failures().count();
        write!(
            f,
            "{}: {} of {} checks passed",
            if failed == 0 { "OK" } else { "FAILED" },
            total - failed,
            total
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostics_do_not_fail_reports() {
        let mut r = Report::new("t");
        r.push(Check::new("a", true, ""));
        r.push(Check::diagnostic("b", false, ""));
        assert!(r.passed());
        r.push(Check::new("c", false, "witness"));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn big_integers_stay_exact_in_json() {
        let v = json_int("123456789012345678901234567890");
        assert_eq!(v.to_string(), "123456789012345678901234567890");
    }
}
