use serde::Serialize;
use serde_json::Value;

/// One auditable decision of a construction.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TraceStep {
    pub op: String,
    pub inputs: Value,
    pub choice: Value,
    pub justification: String,
}

/// Ordered record of every filter, reorientation and selection a
/// construction made.
#[derive(Clone, Debug, Default, Serialize, PartialEq)]
#[serde(transparent)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(
        &mut self,
        op: &str,
        inputs: Value,
        choice: Value,
        justification: impl Into<String>,
    ) {
        self.steps.push(TraceStep {
            op: op.to_string(),
            inputs,
            choice,
            justification: justification.into(),
        });
    }

    pub fn extend(&mut self, other: Trace) {
        self.steps.extend(other.steps);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn ops(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|s| s.op.as_str())
    }
}
