//! Structured pass/fail records for theorem hypotheses and arithmetic chains.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    /// Stable identifier, e.g. `main.I.G1.alpha[0]`.
    pub id: String,
    pub text: String,
    pub pass: bool,
    pub evidence: BTreeMap<String, String>,
}

impl Clause {
    pub fn new(id: impl Into<String>, text: impl Into<String>, pass: bool) -> Self {
        Self {
            id: id.into(),
            text: text.into(),
            pass,
            evidence: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.evidence.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub theorem: String,
    pub clauses: Vec<Clause>,
    pub overall: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl HypothesisReport {
    pub fn new(theorem: impl Into<String>) -> Self {
        Self {
            theorem: theorem.into(),
            clauses: Vec::new(),
            overall: true,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, clause: Clause) {
        self.overall &= clause.pass;
        self.clauses.push(clause);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends every clause of `other`, prefixing nothing.
    pub fn absorb(&mut self, other: HypothesisReport) {
        for c in other.clauses {
            self.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn clause(&self, id: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id == id)
    }

    pub fn first_failure(&self) -> Option<&Clause> {
        self.clauses.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
