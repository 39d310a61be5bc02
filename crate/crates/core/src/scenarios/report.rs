use serde::{Deserialize, Serialize};

/// One tabulated `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthRow {
    pub n: u32,
    pub observed: u64,
    pub predicted: Option<u64>,
    pub route: String,
    pub closure: String,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of verifying one scenario (or one shifted filtration) end to end.
/// Contains integers and strings only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub title: String,
    /// `[p, r, v]` for scenarios, `[p, r, d + 1]` for shifted filtrations.
    pub params: Vec<u32>,
    pub n_max: u32,
    pub rows: Vec<LengthRow>,
    pub fitted: Option<Vec<i64>>,
    pub predicted: Option<Vec<i64>>,
    pub assertions: Vec<Assertion>,
    pub notes: Vec<String>,
    /// Some step stopped on a computation budget.
    pub budget_exceeded: bool,
    /// No theorem covers the scenario; assertions record evidence, not claims.
    pub exploratory: bool,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>, params: Vec<u32>, n_max: u32) -> Self {
        VerificationReport {
            title: title.into(),
            params,
            n_max,
            rows: Vec::new(),
            fitted: None,
            predicted: None,
            assertions: Vec::new(),
            notes: Vec::new(),
            budget_exceeded: false,
            exploratory: false,
            elapsed_ms: 0,
        }
    }

    pub fn assert(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records a failed step; budget errors also set the flag.
    pub fn record_error(&mut self, name: impl Into<String>, err: &crate::error::Error) {
        if matches!(err, crate::error::Error::Budget(_)) {
            self.budget_exceeded = true;
        }
        self.assert(name, false, err.to_string());
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn verdict(&self) -> &'static str {
        if self.exploratory {
            "EXPLORATORY"
        } else if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.passed).collect()
    }
}
