use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

/// Outcome of a verification harness: how many individual checks ran and
/// the first one that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub checks: usize,
    pub witness: Option<String>,
    /// Set when the input is degenerate and every check holds vacuously.
    pub vacuous: bool,
}

impl CheckReport {
    pub fn new(name: &'static str) -> Self {
        CheckReport {
            name,
            checks: 0,
            witness: None,
            vacuous: false,
        }
    }

    pub fn vacuous(name: &'static str) -> Self {
        CheckReport {
            vacuous: true,
            ..Self::new(name)
        }
    }

    /// Records one check; keeps only the first failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
        ok
    }

    pub fn verdict(&self) -> Verdict {
        if self.witness.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} checks",
            self.name,
            self.verdict(),
            self.checks
        )?;
        if self.vacuous {
            f.write_str(", vacuous")?;
        }
        f.write_str(")")?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}
