use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use crate::args::OutputArgs;

pub const TOOL: &str = "trigbounds";

/// Seventeen significant digits; parses back to the same `f64`.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt17).unwrap_or_default()
}

/// Everything that varies between identical invocations.
#[derive(Debug, Serialize)]
pub struct Timestamp {
    pub unix_seconds: u64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub wall_time_ms: BTreeMap<String, f64>,
}

impl Timestamp {
    pub fn now() -> Self {
        let unix_seconds = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Timestamp { unix_seconds, wall_time_ms: BTreeMap::new() }
    }
}

#[derive(Debug, Serialize)]
pub struct Envelope<'a, C: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub timestamp: Timestamp,
    pub config: &'a C,
    pub reports: Value,
}

impl<'a, C: Serialize> Envelope<'a, C> {
    pub fn new(command: &'a str, config: &'a C, reports: Value) -> Self {
        Envelope {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command,
            timestamp: Timestamp::now(),
            config,
            reports,
        }
    }

    pub fn to_bytes(&self) -> io::Result<Vec<u8>> {
        let mut bytes = serde_json::to_vec_pretty(self)?;
        bytes.push(b'\n');
        Ok(bytes)
    }
}

/// Moves every `wall_time_ms` field of an array of reports into the timestamp, keyed by `key`.
pub fn extract_wall_times(reports: &mut Value, key: impl Fn(&Value) -> String) -> BTreeMap<String, f64> {
    let mut times = BTreeMap::new();
    if let Value::Array(items) = reports {
        for item in items {
            let name = key(item);
            if let Value::Object(map) = item {
                if let Some(t) = map.remove("wall_time_ms").and_then(|v| v.as_f64()) {
                    times.insert(name, t);
                }
            }
        }
    }
    times
}

/// Rows to CSV bytes with a header line.
pub fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> io::Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(&row)?;
    }
    writer.into_inner().map_err(|e| e.into_error())
}

pub fn deliver(output: &OutputArgs, bytes: &[u8], stdout: &mut dyn Write) -> io::Result<()> {
    match &output.out {
        Some(path) => File::create(path)?.write_all(bytes),
        None => stdout.write_all(bytes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, std::f64::consts::PI, -2.5e-300, 6.02214076e23] {
            let s = fmt17(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(fmt_opt(None), "");
    }

    #[test]
    fn wall_times_are_moved_out() {
        let mut v = serde_json::json!([{"chain": "C1", "wall_time_ms": 3.5}, {"chain": "C2"}]);
        let t = extract_wall_times(&mut v, |r| r["chain"].as_str().unwrap_or("").to_string());
        assert_eq!(t.get("C1"), Some(&3.5));
        assert!(v[0].get("wall_time_ms").is_none());
    }
}
