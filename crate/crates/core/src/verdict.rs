//! Bounded pass/fail verdicts with replayable counterexamples.

use serde::Serialize;
use serde_json::Value;

/// A single failed check together with the data needed to replay it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub check: String,
    pub detail: Value,
}

impl Witness {
    pub fn new(check: impl Into<String>, detail: Value) -> Self {
        Witness {
            check: check.into(),
            detail,
        }
    }
}

/// Outcome of an exhaustive or sampled check.
///
/// `holds` is true iff `witnesses` is empty. `informative` is false when the
/// quantified range was empty, so a pass says nothing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub informative: bool,
    pub cases: u64,
    pub witnesses: Vec<Witness>,
}

impl Default for Verdict {
    fn default() -> Self {
        Verdict::new()
    }
}

impl Verdict {
    pub fn new() -> Self {
        Verdict {
            holds: true,
            informative: false,
            cases: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn case(&mut self) {
        self.cases += 1;
        self.informative = true;
    }

    pub fn fail(&mut self, witness: Witness) {
        self.holds = false;
        self.witnesses.push(witness);
    }

    /// Records `witness` only if no failure of the same check is present yet.
    pub fn fail_once(&mut self, witness: Witness) {
        if !self.witnesses.iter().any(|w| w.check == witness.check) {
            self.fail(witness);
        } else {
            self.holds = false;
        }
    }

    pub fn has_failed(&self, check: &str) -> bool {
        self.witnesses.iter().any(|w| w.check == check)
    }

    pub fn first(&self) -> Option<&Witness> {
        self.witnesses.first()
    }

    pub fn absorb(&mut self, other: Verdict) {
        self.cases += other.cases;
        self.informative |= other.informative;
        if !other.holds {
            self.holds = false;
        }
        self.witnesses.extend(other.witnesses);
    }
}
