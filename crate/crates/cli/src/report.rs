use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Significant digits kept for every real number in a report.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Serialize)]
pub struct Engine {
    pub core: &'static str,
    pub cli: &'static str,
}

impl Engine {
    pub fn current() -> Self {
        Engine {
            core: bellgame::VERSION,
            cli: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub engine: Engine,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&round_reals(v)).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn round(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("formatted float parses")
}

/// Rounds every non-integer number to [`SIGNIFICANT_DIGITS`].
pub fn round_reals(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            serde_json::Number::from_f64(round(x)).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_reals).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_reals(v))).collect::<Map<_, _>>()),
        other => other,
    }
}
