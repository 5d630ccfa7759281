//! Named pass/fail records for identity suites.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn from_result(name: &str, r: Result<()>) -> Check {
        match r {
            Ok(()) => Check { name: name.to_string(), passed: true, detail: String::new() },
            Err(e) => Check { name: name.to_string(), passed: false, detail: e.to_string() },
        }
    }
}

/// Fails with `IdentityViolation` naming every failed check.
pub fn require_all(checks: &[Check]) -> Result<()> {
    let failed: Vec<String> =
        checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::IdentityViolation(failed.join("; ")))
    }
}

/// Returns `Err(StructureViolation)` with the message unless `cond` holds.
pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::StructureViolation(msg()))
    }
}
