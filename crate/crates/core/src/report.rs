use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// One itemized verification result. For exact checks the status is PASS
/// iff the residual has no nonzero coefficient.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual_nonzero_count: usize,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records an exact check from the number of nonzero residual coefficients.
    pub fn residual(&mut self, name: impl Into<String>, nonzero: usize) {
        self.checks.push(Check {
            name: name.into(),
            status: if nonzero == 0 {
                Status::Pass
            } else {
                Status::Fail
            },
            residual_nonzero_count: nonzero,
        });
    }

    /// Records a yes/no check; a failure counts as one nonzero residual.
    pub fn flag(&mut self, name: impl Into<String>, ok: bool) {
        self.residual(name, usize::from(!ok));
    }

    pub fn inconclusive(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Inconclusive,
            residual_nonzero_count: 0,
        });
    }

    pub fn merge(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.status != Status::Pass)
            .collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let s = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            if c.status == Status::Fail {
                writeln!(
                    f,
                    "{s:<12} {} (nonzero residual: {})",
                    c.name, c.residual_nonzero_count
                )?;
            } else {
                writeln!(f, "{s:<12} {}", c.name)?;
            }
        }
        Ok(())
    }
}
