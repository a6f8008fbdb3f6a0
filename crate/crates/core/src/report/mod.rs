//! Check records and reports shared by the library suites and the CLI.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified (or refuted) claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub params: String,
    pub status: Status,
    pub detail: String,
    /// Wall-clock milliseconds; zero unless timings were requested, so that
    /// reports stay byte-identical across runs.
    pub ms: u64,
}

impl Check {
    pub fn new(
        suite: &str,
        name: &str,
        params: impl Into<String>,
        status: Status,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            suite: suite.to_string(),
            name: name.to_string(),
            params: params.into(),
            status,
            detail: detail.into(),
            ms: 0,
        }
    }

    pub fn pass(suite: &str, name: &str, params: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(suite, name, params, Status::Pass, detail)
    }

    pub fn fail(suite: &str, name: &str, params: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(suite, name, params, Status::Fail, detail)
    }

    pub fn skipped(suite: &str, name: &str, params: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(suite, name, params, Status::Skipped, detail)
    }

    /// Pass when `failures` is empty; otherwise fail quoting the first few.
    pub fn from_failures(
        suite: &str,
        name: &str,
        params: impl Into<String>,
        checked: usize,
        failures: &[String],
    ) -> Self {
        if failures.is_empty() {
            Self::pass(suite, name, params, format!("{checked} cases agree"))
        } else {
            let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
            Self::fail(
                suite,
                name,
                params,
                format!("{} of {checked} cases fail; first: {}", failures.len(), shown.join("; ")),
            )
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Echo of the run parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextEcho {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub p: u32,
    pub level: u32,
    pub trunc: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// A full run: context echo, individual checks and the tally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub context: ContextEcho,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(context: ContextEcho, checks: Vec<Check>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report {
            context,
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// Process exit status for this report: 0 when nothing failed, 1
    /// otherwise.
    pub fn exit_code(&self) -> u8 {
        u8::from(!self.all_passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }

    /// Per-suite plain-text table.
    pub fn to_text(&self) -> String {
        let c = &self.context;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "context: {}{} p={} level={} trunc={} seed={}",
            c.cartan_type, c.rank, c.p, c.level, c.trunc, c.seed
        );
        let mut suite = "";
        for check in &self.checks {
            if check.suite != suite {
                suite = &check.suite;
                let _ = writeln!(out, "\n[{suite}]");
            }
            let status = match check.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = write!(out, "  {status:<4}  {:<28} {:<28} {}", check.name, check.params, check.detail);
            if check.ms > 0 {
                let _ = write!(out, " ({} ms)", check.ms);
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(out, "\nsummary: {} pass, {} fail, {} skipped", s.pass, s.fail, s.skipped);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report::new(
            ContextEcho {
                cartan_type: "A".into(),
                rank: 1,
                p: 7,
                level: 1,
                trunc: 12,
                seed: 0,
            },
            vec![
                Check::pass("qcomb", "qb_mult", "m=2", "ok"),
                Check::fail("tau", "membership", "", "coefficient 3"),
                Check::skipped("qyb", "ybe", "", "not requested"),
            ],
        )
    }

    #[test]
    fn summary_counts() {
        let r = sample();
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, skipped: 1 });
        assert!(!r.all_passed());
        assert_eq!(r.exit_code(), 1);
        assert_eq!(Report::new(r.context.clone(), vec![]).exit_code(), 0);
    }

    #[test]
    fn json_roundtrip_and_schema_keys() {
        let r = sample();
        let s = r.to_json();
        assert_eq!(Report::from_json(&s).unwrap(), r);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        for key in ["type", "rank", "p", "level", "trunc", "seed"] {
            assert!(v["context"].get(key).is_some(), "{key}");
        }
        for key in ["suite", "name", "params", "status", "detail", "ms"] {
            assert!(v["checks"][0].get(key).is_some(), "{key}");
        }
        assert_eq!(v["checks"][1]["status"], "fail");
    }

    #[test]
    fn failure_summary_quotes_first_cases() {
        let c = Check::from_failures("s", "n", "", 10, &["a".into(), "b".into()]);
        assert_eq!(c.status, Status::Fail);
        assert!(c.detail.starts_with("2 of 10"));
        assert!(Check::from_failures("s", "n", "", 10, &[]).passed());
    }
}
