//! Pass/fail reports for verification scenarios.

use serde::{Deserialize, Serialize};

use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass, witness: None }
    }

    pub fn with_witness(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        Check { name: name.into(), pass, witness: Some(witness.into()) }
    }

    /// Compares two series at the smaller cap; on failure the witness names the first
    /// differing monomial.
    pub fn series_eq(name: impl Into<String>, lhs: &Series, rhs: &Series) -> Self {
        match lhs.first_difference(rhs) {
            None => Check::new(name, true),
            Some((m, l, r)) => Check::with_witness(
                name,
                false,
                format!("first difference at monomial {:?}: {} vs {}", m.letters(), l, r),
            ),
        }
    }

    pub fn from_result<E: std::fmt::Display>(name: impl Into<String>, result: Result<bool, E>) -> Self {
        match result {
            Ok(pass) => Check::new(name, pass),
            Err(e) => Check::with_witness(name, false, e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Appends another report's checks, prefixing their names with its suite.
    pub fn absorb(&mut self, other: Report) {
        for mut check in other.checks {
            check.name = format!("{}/{}", other.suite, check.name);
            self.checks.push(check);
        }
    }
}
