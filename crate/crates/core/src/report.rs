//! Law-check outcomes.

use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::value::Value;

/// Named values making up one point of an instance space.
///
/// Values print in the script literal syntax, so a counterexample can be
/// pasted back into a script and replayed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    bindings: Vec<(String, Value)>,
}

impl Instance {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.push(name, value);
        self
    }

    pub fn push(&mut self, name: &str, value: impl Into<Value>) {
        self.bindings.push((name.to_owned(), value.into()));
    }

    pub fn pop(&mut self) -> Option<(String, Value)> {
        self.bindings.pop()
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.bindings.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (n, v)) in self.bindings.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{n} = {v}")?;
        }
        Ok(())
    }
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.bindings.len()))?;
        for (n, v) in &self.bindings {
            map.serialize_entry(n, &v.to_string())?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Instance),
    BudgetExceeded(u128),
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "fail",
            Outcome::BudgetExceeded(_) => "budget_exceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub id: String,
    pub instances: u64,
    pub outcome: Outcome,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn counterexample(&self) -> Option<&Instance> {
        match &self.outcome {
            Outcome::Fail(c) => Some(c),
            _ => None,
        }
    }
}

impl Serialize for LawReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LawReport", 5)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("instances", &self.instances)?;
        st.serialize_field("outcome", self.outcome.label())?;
        match &self.outcome {
            Outcome::Fail(c) => st.serialize_field("counterexample", c)?,
            Outcome::BudgetExceeded(n) => st.serialize_field("estimate", &n.to_string())?,
            Outcome::Pass => {}
        }
        st.end()
    }
}
