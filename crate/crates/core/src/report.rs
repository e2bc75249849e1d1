//! Pass/fail records produced by the verification routines.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// Which published statement the check exercises.
    pub reference: String,
    pub passed: bool,
    /// Human-readable evidence; for failures, the offending value.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, name: impl Into<String>, reference: impl Into<String>, passed: bool, witness: Option<String>) {
        self.checks.push(Check { name: name.into(), reference: reference.into(), passed, witness });
    }

    pub fn pass(&mut self, name: impl Into<String>, reference: impl Into<String>) {
        self.record(name, reference, true, None);
    }

    pub fn check(&mut self, name: impl Into<String>, reference: impl Into<String>, passed: bool, witness: impl FnOnce() -> String) {
        let witness = (!passed).then(witness);
        self.record(name, reference, passed, witness);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> + '_ {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    /// First failure formatted for assertion messages.
    pub fn summary(&self) -> String {
        match self.failures().next() {
            None => format!("{} checks passed", self.len()),
            Some(c) => format!(
                "{} of {} checks failed; first: {} [{}] {}",
                self.failures().count(),
                self.len(),
                c.name,
                c.reference,
                c.witness.as_deref().unwrap_or("")
            ),
        }
    }
}
