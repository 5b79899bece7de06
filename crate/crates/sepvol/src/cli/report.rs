//! Verification-report shapes shared by the suite runner and the CLI.

use serde::Serialize;

/// One expected/actual comparison inside a case.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, expected: impl ToString, actual: impl ToString) -> Check {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let pass = expected == actual;
        Check { name: name.to_string(), expected, actual, pass }
    }

    /// A check whose pass/fail was decided elsewhere.
    pub fn judged(name: &str, expected: impl ToString, actual: impl ToString, pass: bool) -> Check {
        Check {
            name: name.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        }
    }
}

/// Identifies a verification case: a graph (by name plus its file form) and
/// a permutation in cycle notation.
#[derive(Clone, Debug, Serialize)]
pub struct CaseId {
    pub graph: serde_json::Value,
    pub sigma: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: CaseId,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl CaseReport {
    pub fn new(case: CaseId, checks: Vec<Check>) -> CaseReport {
        let pass = checks.iter().all(|c| c.pass);
        CaseReport { case, checks, pass }
    }

    /// Sort key: graph name then sigma, for order-independent assembly.
    pub fn key(&self) -> (String, String) {
        let name = self
            .case
            .graph
            .get("name")
            .and_then(|v| v.as_str())
            .unwrap_or_default()
            .to_string();
        (name, self.case.sigma.clone())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub n_max: usize,
    pub random_seed: u64,
    pub total_cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
    pub cases: Vec<CaseReport>,
}

impl VerifyReport {
    pub fn new(suite: &str, n_max: usize, random_seed: u64, mut cases: Vec<CaseReport>) -> Self {
        cases.sort_by_key(CaseReport::key);
        let passed = cases.iter().filter(|c| c.pass).count();
        let failed = cases.len() - passed;
        VerifyReport {
            suite: suite.to_string(),
            n_max,
            random_seed,
            total_cases: cases.len(),
            passed,
            failed,
            all_pass: failed == 0,
            cases,
        }
    }

    /// CSV form: one row per check, fields quoted where needed.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("graph,sigma,check,expected,actual,pass\n");
        for case in &self.cases {
            let (name, sigma) = case.key();
            for check in &case.checks {
                let row = [
                    name.clone(),
                    sigma.clone(),
                    check.name.clone(),
                    check.expected.clone(),
                    check.actual.clone(),
                    check.pass.to_string(),
                ];
                let quoted: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
                out.push_str(&quoted.join(","));
                out.push('\n');
            }
        }
        out
    }
}

pub fn csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
