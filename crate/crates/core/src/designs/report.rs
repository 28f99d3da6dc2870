use std::fmt;

use serde::Serialize;

pub const MAX_WITNESSES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub id: String,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct VerifyReport {
    pub pass: bool,
    pub conditions: Vec<Condition>,
    /// Remarks that do not affect `pass`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Collects violation witnesses for one condition, keeping at most ten.
pub struct Witnesses {
    id: String,
    items: Vec<String>,
}

impl Witnesses {
    pub fn new(id: &str) -> Self {
        Witnesses { id: id.to_string(), items: Vec::new() }
    }

    pub fn push(&mut self, w: String) {
        if self.items.len() < MAX_WITNESSES {
            self.items.push(w);
        }
    }

    pub fn is_clean(&self) -> bool {
        self.items.is_empty()
    }
}

impl VerifyReport {
    pub fn new() -> Self {
        VerifyReport { pass: true, conditions: Vec::new(), warnings: Vec::new() }
    }

    pub fn add(&mut self, w: Witnesses) {
        let pass = w.items.is_empty();
        self.pass &= pass;
        self.conditions.push(Condition { id: w.id, pass, witnesses: w.items });
    }

    pub fn add_flag(&mut self, id: &str, ok: bool, why: impl FnOnce() -> String) {
        let mut w = Witnesses::new(id);
        if !ok {
            w.push(why());
        }
        self.add(w);
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.warnings.extend(other.warnings);
        for c in other.conditions {
            if !self.conditions.iter().any(|x| x.id == c.id) {
                self.pass &= c.pass;
                self.conditions.push(c);
            }
        }
    }

    pub fn condition(&self, id: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.conditions.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conditions {
            writeln!(f, "{:<22} {}", c.id, if c.pass { "ok" } else { "FAIL" })?;
            for w in &c.witnesses {
                writeln!(f, "    {w}")?;
            }
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        write!(f, "result: {}", if self.pass { "pass" } else { "fail" })
    }
}
