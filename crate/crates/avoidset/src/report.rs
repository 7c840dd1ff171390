//! JSON report envelope shared by the CLI: sorted keys, counts as decimal
//! strings, reals with 12 significant digits, byte-stable for golden files.

use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::dpcount::BigCount;
use crate::setcore::Family;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Top-level envelope printed by every CLI subcommand.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub params: Map<String, Value>,
    pub result: Value,
    pub wall_ms: u64,
}

impl RunReport {
    pub fn new(command: &str, params: Map<String, Value>, result: Value, started: Instant) -> RunReport {
        RunReport {
            command: command.to_string(),
            params,
            result,
            wall_ms: started.elapsed().as_millis() as u64,
        }
    }

    /// serde_json's default map is ordered, so serialization sorts keys.
    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "params": Value::Object(self.params.clone()),
            "result": self.result,
            "version": VERSION,
            "wall_ms": self.wall_ms,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("report serializes")
    }
}

/// Arbitrary-precision count as a decimal string (no precision loss).
pub fn big(value: &BigCount) -> Value {
    Value::String(value.to_string())
}

pub fn bigint(value: &num_bigint::BigInt) -> Value {
    Value::String(value.to_string())
}

pub fn rational(value: &num_rational::BigRational) -> Value {
    Value::String(format!("{}/{}", value.numer(), value.denom()))
}

/// Real with 12 significant digits, byte-stable across platforms.
pub fn real(value: f64) -> Value {
    Value::String(format!("{value:.11e}"))
}

pub fn uint(value: u64) -> Value {
    Value::String(value.to_string())
}

/// Family in the text exchange format, one line per entry.
pub fn family(f: &Family) -> Value {
    Value::Array(f.to_text().lines().map(|l| Value::String(l.to_string())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_counts_are_strings() {
        let mut params = Map::new();
        params.insert("n".into(), uint(3));
        params.insert("a".into(), uint(1));
        let rep = RunReport {
            command: "bound".into(),
            params,
            result: big(&BigCount::from(20u32)),
            wall_ms: 0,
        };
        let text = rep.to_json();
        assert!(text.find("\"a\"").unwrap() < text.find("\"n\"").unwrap());
        assert!(text.find("\"command\"").unwrap() < text.find("\"version\"").unwrap());
        assert!(text.contains("\"20\""));
    }

    #[test]
    fn real_formatting_is_stable() {
        assert_eq!(real(0.0774602), Value::String("7.74602000000e-2".into()));
    }

    #[test]
    fn family_round_trips_through_report() {
        let f = Family::from_sets(3, &[vec![], vec![1, 2]]).unwrap();
        let v = family(&f);
        let lines: Vec<String> = v
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().to_string())
            .collect();
        let back = Family::parse(&lines.join("\n")).unwrap();
        assert_eq!(back, f);
    }
}
