//! Pass/fail records shared by the identity suites and the index pipeline.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// The relation being tested, written out.
    pub identity: String,
    pub pass: bool,
    pub details: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(
        &mut self,
        name: impl Into<String>,
        identity: impl Into<String>,
        pass: bool,
        details: impl Into<String>,
    ) -> bool {
        self.checks.push(Check {
            name: name.into(),
            identity: identity.into(),
            pass,
            details: details.into(),
        });
        pass
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    /// Merges runs of checks with the same name into one line each, keeping
    /// the first failure's details. Order of first appearance is preserved.
    pub fn summarized(&self) -> CheckReport {
        let mut out: Vec<(Check, usize)> = Vec::new();
        for c in &self.checks {
            match out.iter_mut().find(|(s, _)| s.name == c.name) {
                Some((s, n)) => {
                    *n += 1;
                    if s.pass && !c.pass {
                        s.pass = false;
                        s.details = c.details.clone();
                    }
                }
                None => out.push((c.clone(), 1)),
            }
        }
        CheckReport {
            checks: out
                .into_iter()
                .map(|(mut c, n)| {
                    if c.pass {
                        c.details = if n == 1 {
                            "1 case".to_string()
                        } else {
                            format!("{n} cases")
                        };
                    }
                    c
                })
                .collect(),
        }
    }
}
