//! Verification reports: named checks with max entrywise errors and witnesses.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Location and values of the worst-offending entry of a failed (or passed) check.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// Indices of the worst entry (row/column, or flat index for vectors).
    pub location: Vec<usize>,
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl Witness {
    pub fn entry(row: usize, col: usize, lhs: Complex64, rhs: Complex64) -> Self {
        Witness {
            location: vec![row, col],
            lhs,
            rhs,
        }
    }
}

/// One named sub-check inside a verification report.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub max_error: f64,
    pub witness: Option<Witness>,
}

/// Outcome of a verifier: a named check with pass/fail, the maximum
/// entrywise error over all sub-checks, and a witness for the worst entry.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub name: String,
    pub tolerance: f64,
    pub passed: bool,
    pub max_error: f64,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    /// The sub-check carrying the largest error, if any sub-checks exist.
    pub fn worst_check(&self) -> Option<&CheckResult> {
        self.checks
            .iter()
            .max_by(|a, b| a.max_error.total_cmp(&b.max_error))
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Accumulates sub-checks into a [`VerificationReport`].
pub struct ReportBuilder {
    name: String,
    tolerance: f64,
    checks: Vec<CheckResult>,
    started: std::time::Instant,
}

impl ReportBuilder {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        ReportBuilder {
            name: name.into(),
            tolerance,
            checks: Vec::new(),
            started: std::time::Instant::now(),
        }
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Record a sub-check from its measured max error; passes iff within tolerance.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        max_error: f64,
        witness: Option<Witness>,
    ) -> &mut Self {
        let passed = max_error <= self.tolerance;
        self.checks.push(CheckResult {
            name: name.into(),
            passed,
            max_error,
            witness,
        });
        self
    }

    /// Record a boolean sub-check; failure is reported with an infinite error
    /// so it can never pass by tolerance.
    pub fn check_bool(&mut self, name: impl Into<String>, ok: bool) -> &mut Self {
        self.checks.push(CheckResult {
            name: name.into(),
            passed: ok,
            max_error: if ok { 0.0 } else { f64::INFINITY },
            witness: None,
        });
        self
    }

    /// Record a sub-check that must *fail* the tolerance (negative control).
    pub fn check_expect_failure(
        &mut self,
        name: impl Into<String>,
        max_error: f64,
        witness: Option<Witness>,
    ) -> &mut Self {
        let passed = max_error > self.tolerance;
        self.checks.push(CheckResult {
            name: name.into(),
            passed,
            max_error,
            witness,
        });
        self
    }

    pub fn finish(self) -> VerificationReport {
        let passed = self.checks.iter().all(|c| c.passed);
        let max_error = self
            .checks
            .iter()
            .map(|c| c.max_error)
            .fold(0.0_f64, f64::max);
        VerificationReport {
            name: self.name,
            tolerance: self.tolerance,
            passed,
            max_error,
            checks: self.checks,
            elapsed_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

// Serialized form; elapsed time is deliberately excluded so that identical
// inputs produce identical bytes.
#[derive(Serialize, Deserialize)]
struct WitnessDto {
    location: Vec<usize>,
    lhs: (f64, f64),
    rhs: (f64, f64),
}

#[derive(Serialize, Deserialize)]
struct CheckDto {
    name: String,
    passed: bool,
    max_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDto>,
}

#[derive(Serialize, Deserialize)]
struct ReportDto {
    name: String,
    tolerance: f64,
    passed: bool,
    max_error: f64,
    checks: Vec<CheckDto>,
}

impl Serialize for VerificationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportDto {
            name: self.name.clone(),
            tolerance: self.tolerance,
            passed: self.passed,
            max_error: self.max_error,
            checks: self
                .checks
                .iter()
                .map(|c| CheckDto {
                    name: c.name.clone(),
                    passed: c.passed,
                    max_error: c.max_error,
                    witness: c.witness.as_ref().map(|w| WitnessDto {
                        location: w.location.clone(),
                        lhs: (w.lhs.re, w.lhs.im),
                        rhs: (w.rhs.re, w.rhs.im),
                    }),
                })
                .collect(),
        }
        .serialize(s)
    }
}
