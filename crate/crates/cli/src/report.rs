//! Report types for `towerlab verify`. Serialization order of the struct
//! fields is the stable JSON key order; checks are sorted by name before a
//! report is assembled, so a report is deterministic for a fixed catalog and
//! seed (timing aside).

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

pub fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name: name.into(), pass, detail: detail.into() }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub timing_ms: u128,
}

impl RunReport {
    /// One line per check plus a summary, the text form printed by the CLI.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{tag}] {}: {}\n", c.name, c.detail));
        }
        let ok = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "suite={} seed={} checks={}/{} {} ({} ms)\n",
            self.suite,
            self.seed,
            ok,
            self.checks.len(),
            if self.passed { "passed" } else { "FAILED" },
            self.timing_ms
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_follow_field_order() {
        let report = RunReport {
            command: "verify --suite tower --seed 0".into(),
            suite: "tower".into(),
            seed: 0,
            passed: true,
            checks: vec![check("a", true, "ok")],
            timing_ms: 5,
        };
        let json = serde_json::to_string(&report).unwrap();
        let command = json.find("\"command\"").unwrap();
        let suite = json.find("\"suite\"").unwrap();
        let seed = json.find("\"seed\"").unwrap();
        let passed = json.find("\"passed\"").unwrap();
        let checks = json.find("\"checks\"").unwrap();
        let timing = json.find("\"timing_ms\"").unwrap();
        assert!(command < suite && suite < seed && seed < passed);
        assert!(passed < checks && checks < timing);
    }

    #[test]
    fn text_rendering_marks_failures() {
        let report = RunReport {
            command: "verify --suite tower --seed 0".into(),
            suite: "tower".into(),
            seed: 0,
            passed: false,
            checks: vec![check("good", true, "fine"), check("bad", false, "broken")],
            timing_ms: 1,
        };
        let text = report.render_text();
        assert!(text.contains("[PASS] good: fine"));
        assert!(text.contains("[FAIL] bad: broken"));
        assert!(text.contains("checks=1/2 FAILED"));
    }
}
