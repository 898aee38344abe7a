//! Structured results: named facts plus pass/fail/skip checks with
//! witnesses and timings, as JSON or text.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// What a check body reports.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass,
    /// Failure with a machine-readable witness.
    Fail(Value),
    Skip(String),
}

impl Verdict {
    /// Pass when `ok`, otherwise fail with the witness.
    pub fn expect(ok: bool, witness: impl FnOnce() -> Value) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(witness())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub section: String,
    pub name: String,
    pub subject: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub millis: f64,
}

impl Check {
    /// Runs and times `body`. A resource limit becomes a skip; any other
    /// error becomes a failure with the error as witness.
    pub fn run(
        section: &str,
        name: &str,
        subject: &str,
        body: impl FnOnce() -> Result<Verdict>,
    ) -> Check {
        let start = Instant::now();
        let verdict = match body() {
            Ok(v) => v,
            Err(e @ Error::ResourceLimit { .. }) => Verdict::Skip(e.to_string()),
            Err(e) => Verdict::Fail(serde_json::json!({ "error": e.to_string() })),
        };
        let millis = start.elapsed().as_secs_f64() * 1e3;
        let (status, witness, reason) = match verdict {
            Verdict::Pass => (Status::Pass, None, None),
            Verdict::Fail(w) => (Status::Fail, Some(w), None),
            Verdict::Skip(r) => (Status::Skip, None, Some(r)),
        };
        Check {
            section: section.to_string(),
            name: name.to_string(),
            subject: subject.to_string(),
            status,
            witness,
            reason,
            millis,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fact {
    pub name: String,
    pub value: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub title: String,
    pub facts: Vec<Fact>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn fact(&mut self, name: impl Into<String>, value: impl Serialize) {
        self.facts.push(Fact {
            name: name.into(),
            value: serde_json::to_value(value).unwrap_or(Value::Null),
        });
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn counts(&self) -> Counts {
        let mut c = Counts::default();
        for k in &self.checks {
            match k.status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::Skip => c.skip += 1,
            }
        }
        c
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// The same report with every timing zeroed, for comparing runs.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.millis = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["summary"] = serde_json::to_value(self.counts()).expect("counts serialize");
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.title);
        for f in &self.facts {
            let v = match &f.value {
                Value::String(s) => s.clone(),
                v => v.to_string(),
            };
            let _ = writeln!(out, "{}: {}", f.name, v);
        }
        let mut section = None;
        for c in &self.checks {
            if section != Some(&c.section) {
                let _ = writeln!(out, "[{}]", c.section);
                section = Some(&c.section);
            }
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let _ = write!(
                out,
                "  {tag}  {}  {}  ({:.1} ms)",
                c.name, c.subject, c.millis
            );
            if let Some(w) = &c.witness {
                let _ = write!(out, "  witness: {w}");
            }
            if let Some(r) = &c.reason {
                let _ = write!(out, "  reason: {r}");
            }
            out.push('\n');
        }
        let n = self.counts();
        let _ = writeln!(
            out,
            "summary: {} passed, {} failed, {} skipped",
            n.pass, n.fail, n.skip
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn statuses_and_rendering() {
        let mut r = Report::new("demo");
        r.fact("size", 5);
        r.push(Check::run("s", "ok", "C2", || Ok(Verdict::Pass)));
        r.push(Check::run("s", "bad", "L5", || {
            Ok(Verdict::Fail(json!({"x": "a"})))
        }));
        r.push(Check::run("s", "big", "X", || {
            Err(Error::ResourceLimit {
                what: "carrier",
                limit: 4,
            })
        }));
        r.push(Check::run("t", "err", "Y", || Err(Error::breach("c", "w"))));
        assert_eq!(
            r.counts(),
            Counts {
                pass: 1,
                fail: 2,
                skip: 1
            }
        );
        assert!(!r.passed());
        let text = r.to_text();
        assert!(text.contains("FAIL  bad  L5"));
        assert!(text.contains("witness: {\"x\":\"a\"}"));
        assert!(text.contains("SKIP  big"));
        assert!(text.contains("summary: 1 passed, 2 failed, 1 skipped"));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["summary"]["fail"], 2);
        assert_eq!(v["checks"][1]["witness"]["x"], "a");
        assert_eq!(v["facts"][0]["value"], 5);
    }

    #[test]
    fn expect_helper() {
        assert_eq!(Verdict::expect(true, || json!(1)), Verdict::Pass);
        assert_eq!(Verdict::expect(false, || json!(1)), Verdict::Fail(json!(1)));
    }
}
