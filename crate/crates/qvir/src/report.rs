//! Check reports and suite results.
//!
//! Every identity verification produces a [`CheckReport`]: a named check with
//! its parameters, the measured residual, the tolerance it was held to, and
//! the resulting pass flag. A [`SuiteResult`] aggregates reports plus the
//! residuals that are recorded but deliberately not asserted (out-of-window
//! commutators and other cases outside the validity domain of the identity).
//!
//! Serialization is flat, diff-friendly JSON with sorted keys; two runs with
//! the same configuration produce byte-identical output apart from the
//! `wall_time_s` field.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One verified identity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckReport {
    /// Build a report; the pass flag is always `residual ≤ tol`.
    pub fn new(name: &str, params: BTreeMap<String, String>, residual: f64, tol: f64) -> Self {
        CheckReport {
            name: name.to_string(),
            params,
            residual,
            tol,
            pass: residual <= tol,
        }
    }
}

/// A measured residual that is reported but not counted as pass/fail.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecordedResidual {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub residual: f64,
    pub note: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Outcome of a whole suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<CheckReport>,
    pub recorded: Vec<RecordedResidual>,
    pub summary: Summary,
    pub wall_time_s: f64,
}

impl SuiteResult {
    pub fn new(
        suite: &str,
        params: BTreeMap<String, String>,
        mut checks: Vec<CheckReport>,
        mut recorded: Vec<RecordedResidual>,
        wall_time_s: f64,
    ) -> Self {
        // deterministic ordering regardless of parallel execution
        checks.sort_by(|a, b| (&a.name, &a.params).cmp(&(&b.name, &b.params)));
        recorded.sort_by(|a, b| (&a.name, &a.params).cmp(&(&b.name, &b.params)));
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        SuiteResult {
            suite: suite.to_string(),
            params,
            checks,
            recorded,
            summary,
            wall_time_s,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite result serializes")
    }
}

/// Convenience for building parameter maps: `params!{"D" => d, "n" => n}`.
#[macro_export]
macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = std::collections::BTreeMap::new();
        $( m.insert($k.to_string(), format!("{}", $v)); )*
        m
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_follows_tolerance() {
        let r = CheckReport::new("x", BTreeMap::new(), 1e-12, 1e-10);
        assert!(r.pass);
        let r = CheckReport::new("x", BTreeMap::new(), 1e-8, 1e-10);
        assert!(!r.pass);
    }

    #[test]
    fn empty_suite_serializes() {
        let s = SuiteResult::new("all", BTreeMap::new(), vec![], vec![], 0.0);
        let json = s.to_json();
        assert!(json.contains("\"total\": 0"));
        let back: SuiteResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back.summary.total, 0);
    }

    #[test]
    fn summary_counts_consistent() {
        let checks = vec![
            CheckReport::new("a", BTreeMap::new(), 0.0, 1e-10),
            CheckReport::new("b", BTreeMap::new(), 1.0, 1e-10),
        ];
        let s = SuiteResult::new("lattice", BTreeMap::new(), checks, vec![], 0.1);
        assert_eq!(s.summary.total, 2);
        assert_eq!(s.summary.passed, 1);
        assert_eq!(s.summary.failed, 1);
        assert!(!s.all_passed());
    }
}
