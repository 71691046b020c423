use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::table::{float_value, Table};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Versions {
    pub fockent: &'static str,
    #[serde(rename = "fockent-core")]
    pub fockent_core: &'static str,
}

impl Default for Versions {
    fn default() -> Self {
        Self { fockent: env!("CARGO_PKG_VERSION"), fockent_core: fockent_core::VERSION }
    }
}

/// Result of one command. Keys serialize in insertion order; `timings` is
/// present only when requested so that default output stays byte-stable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub versions: Versions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Map<String, Value>>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_owned(),
            inputs: Map::new(),
            outputs: Map::new(),
            versions: Versions::default(),
            timings: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// A command's report together with the table written in CSV mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub report: RunReport,
    pub table: Table,
}

/// Wall-clock seconds per named stage, in the order the stages ran.
#[derive(Debug)]
pub struct Stopwatch {
    stages: Vec<(String, f64)>,
    last: Instant,
}

impl Default for Stopwatch {
    fn default() -> Self {
        Self { stages: Vec::new(), last: Instant::now() }
    }
}

impl Stopwatch {
    pub fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.stages.push((stage.to_owned(), (now - self.last).as_secs_f64()));
        self.last = now;
    }

    pub fn into_map(self) -> Map<String, Value> {
        let total: f64 = self.stages.iter().map(|(_, t)| t).sum();
        let mut map: Map<String, Value> = self
            .stages
            .into_iter()
            .map(|(k, t)| (format!("{k}_seconds"), float_value(t)))
            .collect();
        map.insert("total_seconds".into(), float_value(total));
        map
    }
}
