//! Report envelope and its JSON encoding.
//!
//! Floats are written with 17 significant digits, which round-trips every
//! `f64`; integers stay integers. Field order follows insertion order, so the
//! same inputs always give byte-identical output.

use serde::Serialize;
use serde_json::{Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const ENERGY_UNIT: &str = "hbar_omega = 1";

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
}

impl Check {
    pub fn residual(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            passed: max_residual < tolerance,
            max_residual,
        }
    }

    pub fn flag(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            max_residual: 0.0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub version: String,
    pub energy_unit: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl ReportEnvelope {
    pub fn new(command: &str, inputs: Value) -> Self {
        ReportEnvelope {
            command: command.to_string(),
            version: VERSION.to_string(),
            energy_unit: ENERGY_UNIT.to_string(),
            inputs,
            results: Value::Object(Map::new()),
            checks: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is plain data");
        write_json(&value)
    }
}

/// 17 significant digits; always contains a `.` or an exponent so the text
/// parses back as a float.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific formatting has an exponent");
    if (-5..=15).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, x)
    } else {
        sci
    }
}

pub fn write_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(value: &Value, level: usize, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                out.push_str(&format_f64(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("strings serialize")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            // Short scalar arrays stay on one line.
            if items.iter().all(|v| !v.is_array() && !v.is_object()) {
                out.push('[');
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(v, level, out);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                indent(level + 1, out);
                write_value(v, level + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            indent(level, out);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                indent(level + 1, out);
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_value(v, level + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            indent(level, out);
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(format_f64(0.5), "0.50000000000000000");
        assert_eq!(format_f64(1.0), "1.0000000000000000");
        assert_eq!(format_f64(0.0), "0.0000000000000000");
        assert_eq!(format_f64(1234.5), "1234.5000000000000");
        assert_eq!(format_f64(1e-12), "9.9999999999999998e-13");
        assert_eq!(format_f64(2.5e20), "2.5000000000000000e20");
        assert_eq!(format_f64(f64::NAN), "null");
    }

    #[test]
    fn floats_round_trip_through_text() {
        for x in [0.1, 1.0 / 3.0, 3f64.sqrt(), 1e15 + 0.5, 123456789.123, -7.25e-7, 1e300] {
            let s = format_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
            let v: Value = serde_json::from_str(&s).unwrap();
            assert!(v.is_f64(), "{s} parsed as an integer");
        }
    }

    #[test]
    fn envelope_round_trip_is_byte_identical() {
        let mut env = ReportEnvelope::new("test", serde_json::json!({"m": 6, "q": 0.3}));
        env.results = serde_json::json!({"diag": [0.5, 1.3660254037844386], "nested": {"a": [], "b": "x\"y"}});
        env.checks.push(Check::residual("aq", 1.2e-15, 1e-10));
        let text = env.to_json();
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(write_json(&parsed), text);
        assert!(text.find("\"command\"").unwrap() < text.find("\"version\"").unwrap());
    }
}
