//! Verification reports.
//!
//! A report is a list of records `{property, instance, status, max_deviation}`
//! plus free-form observations. Reports carry no timestamp, so identical
//! inputs give byte-identical JSON.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyRecord {
    pub property: String,
    pub instance: String,
    pub status: Status,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub ring: String,
    pub records: Vec<PropertyRecord>,
    pub observations: BTreeMap<String, serde_json::Value>,
}

impl Report {
    pub fn new(command: &str, ring: String) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            ring,
            records: Vec::new(),
            observations: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&PropertyRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail).collect()
    }

    pub fn observe(&mut self, key: &str, value: impl Serialize) {
        self.observations.insert(key.into(), serde_json::to_value(value).expect("serializable observation"));
    }

    pub fn push(&mut self, check: Check) {
        self.records.push(check.record());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Accumulates many instances of one property into a single record that
/// keeps the worst instance as its witness.
#[derive(Clone, Debug)]
pub struct Check {
    pub property: String,
    pub tolerance: f64,
    pub count: usize,
    pub failures: usize,
    pub max_deviation: f64,
    pub worst: Option<String>,
}

impl Check {
    pub fn new(property: impl Into<String>, tolerance: f64) -> Self {
        Check { property: property.into(), tolerance, count: 0, failures: 0, max_deviation: 0.0, worst: None }
    }

    pub fn add(&mut self, instance: impl FnOnce() -> String, deviation: f64) {
        self.count += 1;
        let bad = deviation.is_nan() || deviation > self.tolerance;
        if bad {
            self.failures += 1;
        }
        if deviation.is_nan() || deviation > self.max_deviation || self.worst.is_none() {
            self.max_deviation = if deviation.is_nan() { f64::MAX } else { deviation.max(self.max_deviation) };
            self.worst = Some(instance());
        }
    }

    /// Exact checks count as deviation 0 or 1.
    pub fn add_bool(&mut self, instance: impl FnOnce() -> String, ok: bool) {
        self.add(instance, if ok { 0.0 } else { 1.0 });
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.count > 0
    }

    pub fn record(&self) -> PropertyRecord {
        let instance = match (&self.worst, self.failures) {
            (None, _) => "no instances".to_string(),
            (Some(w), 0) => format!("{} instances, largest deviation at {w}", self.count),
            (Some(w), n) => format!("{n} of {} instances failed, worst {w}", self.count),
        };
        PropertyRecord {
            property: self.property.clone(),
            instance,
            status: if self.passed() { Status::Pass } else { Status::Fail },
            max_deviation: self.max_deviation,
        }
    }
}
